#include "tlscond/errors.hpp"

namespace tlscond {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::shape: return "ShapeError";
    case ErrorKind::invalid_input: return "InvalidInput";
    case ErrorKind::io: return "IoError";
    case ErrorKind::no_unique_solution: return "NoUniqueSolution";
    case ErrorKind::trivial_problem: return "TrivialProblem";
    case ErrorKind::not_applicable: return "NotApplicable";
    case ErrorKind::ill_conditioned_gap: return "IllConditionedGap";
    case ErrorKind::convergence: return "ConvergenceError";
    case ErrorKind::degenerate_vector: return "DegenerateVector";
    case ErrorKind::factorization: return "FactorizationError";
    case ErrorKind::singular_block: return "SingularBlock";
    case ErrorKind::gap_failure: return "GapFailure";
    case ErrorKind::perturbation_too_large: return "PerturbationTooLarge";
    case ErrorKind::verdict_failure: return "VerdictFailure";
  }
  return "Error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::shape:
    case ErrorKind::invalid_input:
    case ErrorKind::io:
      return 2;
    case ErrorKind::no_unique_solution:
    case ErrorKind::trivial_problem:
      return 3;
    case ErrorKind::not_applicable:
    case ErrorKind::ill_conditioned_gap:
      return 4;
    default:
      return 5;
  }
}

}  // namespace tlscond
