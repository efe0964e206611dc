#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlscond/cond_exact.hpp"
#include "tlscond/problem.hpp"
#include "tlscond/tls_core.hpp"

namespace tlscond {

enum class BoundFamily { simple_sandwich, sharp_sandwich, kappa1, kappa2_lower, kappa2_upper, bhm };

const char* to_string(BoundFamily family) noexcept;

struct BoundPair {
  std::optional<double> lower;  // nullopt: not applicable
  std::optional<double> upper;
  BoundFamily family = BoundFamily::simple_sandwich;
  std::string applicability_note;
};

struct FamilyVerdict {
  BoundFamily family = BoundFamily::simple_sandwich;
  std::optional<bool> encloses;   // lower <= kappa <= upper on the present ends
  std::optional<double> sharpness;  // upper / lower
};

/// Sufficient conditions under which the kappa1 lower bound is dominated by
/// the kappa2 lower bound (n >= 2 only).
struct DominanceCheck {
  bool applicable = false;
  bool gap_condition = false;     // sigma_hat_{n-1} >= sigma_{n+1} + sqrt(sigma_hat_n^2 - sigma_{n+1}^2)
  bool simple_condition = false;  // sigma_hat_{n-1} >= 2 sigma_hat_n
  bool kappa1_le_kappa2 = false;
};

/// kappa1 upper <= bound with sigma_hat_1 <= bound with sigma_1.
struct UpperChain {
  double kappa1_upper = 0.0;
  double with_sigma_hat_1 = 0.0;
  double with_sigma_1 = 0.0;
  bool holds = false;
};

struct BoundsReport {
  double kappa_reference = 0.0;  // from svd_condition
  std::optional<double> kappa_reference_rel;
  std::vector<BoundPair> pairs;           // absolute
  std::vector<BoundPair> relative_pairs;  // scaled by ||[A b]||_F / ||x||
  Eigen::VectorXd beta;  // last row of V without its final -alpha
  double alpha = 1.0;
  double rho = 0.0;      // sigma_{n+1} / sigma_n
  std::vector<FamilyVerdict> verdicts;
  bool factor4_guaranteed = false;  // alpha <= 1/2 on a problem with x != 0
  DominanceCheck dominance;
  UpperChain upper_chain;

  const BoundPair& pair(BoundFamily family) const;
  const BoundPair& relative_pair(BoundFamily family) const;
  const FamilyVerdict& verdict(BoundFamily family) const;
  bool all_enclose() const;
};

/// Relative slack applied to every enclosure check.
inline constexpr double kVerdictTolerance = 1e-9;

BoundPair simple_sandwich(const TlsSolution& solution, const ExactFormulaWork& work);
BoundPair sharp_sandwich(const TlsSolution& solution, const SvdBundle& bundle,
                         const ExactFormulaWork& work);
BoundPair sv_bounds_kappa1(const SvdBundle& bundle, const TlsSolution& solution);
BoundPair lower_kappa2(const SvdBundle& bundle, const TlsSolution& solution);
/// Throws NotApplicable when alpha > 1/2.
BoundPair upper_kappa2(const SvdBundle& bundle, const TlsSolution& solution);
/// sigma_hat_1 / (sigma_hat_n - sigma_{n+1}); an estimate, not a bound.
BoundPair bhm_approx(const SvdBundle& bundle);

DominanceCheck kappa_lower_dominance(const SvdBundle& bundle, const TlsSolution& solution);
UpperChain kappa1_upper_chain(const SvdBundle& bundle, const TlsSolution& solution);

/// Evaluates every family against the svd_condition reference value.
BoundsReport bounds_report(const TlsProblem& problem, const SvdBundle& bundle,
                           const TlsSolution& solution, const ExactFormulaWork& work);

}  // namespace tlscond
