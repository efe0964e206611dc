#pragma once

#include <stdexcept>
#include <string>

namespace tlscond {

/// Error classes raised by the library. Each maps onto a stable CLI exit code.
enum class ErrorKind {
  parse,
  shape,
  invalid_input,
  io,
  no_unique_solution,
  trivial_problem,
  not_applicable,
  ill_conditioned_gap,
  convergence,
  degenerate_vector,
  factorization,
  singular_block,
  gap_failure,
  perturbation_too_large,
  verdict_failure,
};

const char* to_string(ErrorKind kind) noexcept;

/// 0 success; 2 parse/shape; 3 no unique solution; 4 not applicable or
/// ill-conditioned gap; 5 internal numerical failure.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TLSCOND_DECLARE_ERROR(Name, Kind)                          \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(Kind, what) {}  \
  };

TLSCOND_DECLARE_ERROR(ParseError, ErrorKind::parse)
TLSCOND_DECLARE_ERROR(ShapeError, ErrorKind::shape)
TLSCOND_DECLARE_ERROR(InvalidInput, ErrorKind::invalid_input)
TLSCOND_DECLARE_ERROR(IoError, ErrorKind::io)
TLSCOND_DECLARE_ERROR(NoUniqueSolution, ErrorKind::no_unique_solution)
TLSCOND_DECLARE_ERROR(TrivialProblem, ErrorKind::trivial_problem)
TLSCOND_DECLARE_ERROR(NotApplicable, ErrorKind::not_applicable)
TLSCOND_DECLARE_ERROR(IllConditionedGap, ErrorKind::ill_conditioned_gap)
TLSCOND_DECLARE_ERROR(ConvergenceError, ErrorKind::convergence)
TLSCOND_DECLARE_ERROR(DegenerateVector, ErrorKind::degenerate_vector)
TLSCOND_DECLARE_ERROR(FactorizationError, ErrorKind::factorization)
TLSCOND_DECLARE_ERROR(SingularBlock, ErrorKind::singular_block)
TLSCOND_DECLARE_ERROR(GapFailure, ErrorKind::gap_failure)
TLSCOND_DECLARE_ERROR(PerturbationTooLarge, ErrorKind::perturbation_too_large)
TLSCOND_DECLARE_ERROR(VerdictFailure, ErrorKind::verdict_failure)

#undef TLSCOND_DECLARE_ERROR

}  // namespace tlscond
