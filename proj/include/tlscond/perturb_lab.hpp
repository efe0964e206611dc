#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tlscond/cond_exact.hpp"
#include "tlscond/problem.hpp"
#include "tlscond/tls_core.hpp"

namespace tlscond {

/// A perturbation (dA, db) of unit Frobenius norm.
struct PerturbationDirection {
  Eigen::MatrixXd delta_a;
  Eigen::VectorXd delta_b;

  /// [vec(dA); db], columns of dA stacked.
  Eigen::VectorXd stacked() const;
  static PerturbationDirection from_stacked(const Eigen::VectorXd& z, Eigen::Index m,
                                            Eigen::Index n);
  /// Scales to unit Frobenius norm. Throws InvalidInput for a zero direction.
  PerturbationDirection normalized() const;
  double norm() const;
};

/// Everything about the unperturbed problem a probe needs.
struct ProbeBase {
  TlsProblem problem;
  SvdBundle bundle;
  TlsSolution solution;
  ExactFormulaWork work;  // includes K
  double kappa = 0.0;     // ||K||_2
  double rel_gap = 0.0;
};

ProbeBase make_probe_base(const TlsProblem& problem);

/// Direction with standard-normal entries, normalized.
PerturbationDirection random_direction(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

/// x + t K [vec(dA); db].
Eigen::VectorXd first_order_prediction(const ExactFormulaWork& work, const TlsSolution& solution,
                                       const PerturbationDirection& direction, double t);

/// Minimum relative gap of a perturbed problem, as a fraction of the base gap.
inline constexpr double kGapPersistence = 1e-3;

/// Solution of the perturbed problem, solved from scratch. Throws
/// PerturbationTooLarge when the perturbed gap closes or shrinks below
/// kGapPersistence times the base gap.
Eigen::VectorXd perturbed_solution(const ProbeBase& base, const PerturbationDirection& direction,
                                   double t);

/// ||x(t) - x|| / t.
double perturbation_ratio(const ProbeBase& base, const PerturbationDirection& direction, double t);
double perturbation_ratio(const TlsProblem& problem, const PerturbationDirection& direction,
                          double t);

/// Unit top right singular vector of K, reshaped; its largest-magnitude entry
/// is made positive. Throws InvalidInput if K was not built.
PerturbationDirection worst_direction(const ExactFormulaWork& work);

struct ConvergencePoint {
  double t = 0.0;
  double ratio = 0.0;
  double remainder = 0.0;         // |ratio - ||K z|||
  double vector_remainder = 0.0;  // ||(x(t) - x)/t - K z||
  bool rounding_dominated = false;
};

struct ConvergenceStudy {
  double predicted_ratio = 0.0;  // ||K z||
  std::vector<ConvergencePoint> points;
  /// Least-squares slope of log(remainder) against log(t) over points not
  /// flagged as rounding dominated; nullopt with fewer than two such points.
  std::optional<double> slope;
  std::optional<double> vector_slope;
};

/// Steps below this multiple of ||[A b]||_F are treated as rounding dominated.
inline constexpr double kRoundingFloor = 1e-12;

ConvergenceStudy convergence_study(const ProbeBase& base, const PerturbationDirection& direction,
                                   const std::vector<double>& t_list);
ConvergenceStudy convergence_study(const TlsProblem& problem,
                                   const PerturbationDirection& direction,
                                   const std::vector<double>& t_list);

/// Steps scale * rel_gap * ||[A b]||_F * 10^-k for k = 0..count-1.
std::vector<double> default_step_list(const ProbeBase& base, int count = 4, double scale = 1e-2);

struct ValidationSummary {
  double kappa_reference = 0.0;
  double max_observed_ratio = 0.0;
  double worst_direction_ratio = 0.0;
  int trials = 0;
  double step = 0.0;
  double tolerance = 0.0;
  std::vector<double> ratios;  // in trial order
  ConvergenceStudy convergence;
  bool sound = false;     // max_observed_ratio <= kappa (1 + tolerance)
  bool attained = false;  // worst_direction_ratio >= kappa (1 - tolerance)
};

inline constexpr double kValidationTolerance = 1e-3;
inline constexpr double kDefaultRelativeStep = 1e-8;

struct ValidationOptions {
  int trials = 100;
  std::optional<double> step;  // default kDefaultRelativeStep * ||[A b]||_F
  std::uint64_t seed = 0;
  double tolerance = kValidationTolerance;
  bool with_convergence = true;
};

/// Random-direction sweep plus the worst direction. Trial i uses the sub-seed
/// derive_seed(seed, i); the convergence study runs along one more random
/// direction drawn from its own stream. Throws InvalidInput for negative trials or a
/// non-positive step; propagates PerturbationTooLarge.
ValidationSummary monte_carlo_validate(const TlsProblem& problem, const ValidationOptions& options);

}  // namespace tlscond
