#include "tlscond/cond_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "tlscond/errors.hpp"

namespace tlscond {

const char* to_string(BoundFamily family) noexcept {
  switch (family) {
    case BoundFamily::simple_sandwich: return "simple_sandwich";
    case BoundFamily::sharp_sandwich: return "sharp_sandwich";
    case BoundFamily::kappa1: return "kappa1";
    case BoundFamily::kappa2_lower: return "kappa2_lower";
    case BoundFamily::kappa2_upper: return "kappa2_upper";
    case BoundFamily::bhm: return "bhm";
  }
  return "unknown";
}

namespace {

double inv_alpha(const TlsSolution& solution) { return 1.0 / solution.alpha; }

template <typename T>
const T& find_family(const std::vector<T>& items, BoundFamily family) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& p) { return p.family == family; });
  if (it == items.end()) throw InvalidInput(std::string("no entry for ") + to_string(family));
  return *it;
}

}  // namespace

const BoundPair& BoundsReport::pair(BoundFamily family) const {
  return find_family(pairs, family);
}

const BoundPair& BoundsReport::relative_pair(BoundFamily family) const {
  return find_family(relative_pairs, family);
}

const FamilyVerdict& BoundsReport::verdict(BoundFamily family) const {
  return find_family(verdicts, family);
}

bool BoundsReport::all_enclose() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const FamilyVerdict& v) { return v.encloses.value_or(true); });
}

BoundPair simple_sandwich(const TlsSolution& solution, const ExactFormulaWork& work) {
  const double s_n = work.s_diag(work.s_diag.size() - 1);
  const double ia = inv_alpha(solution);
  return {ia * s_n, ia * ia * s_n, BoundFamily::simple_sandwich, {}};
}

BoundPair sharp_sandwich(const TlsSolution& solution, const SvdBundle& bundle,
                         const ExactFormulaWork& work) {
  const Eigen::Index n = bundle.cols();
  const double s_n = work.s_diag(n - 1);
  const double xn = solution.x.norm();
  BoundPair out{std::nullopt, std::nullopt, BoundFamily::sharp_sandwich, {}};
  if (xn == 0.0) {
    // alpha = 1: V11 is orthogonal and the condition number is exactly s_n.
    out.lower = s_n;
    out.upper = s_n;
    out.applicability_note = "x = 0: exact value s_n";
    return out;
  }
  const double ia = inv_alpha(solution);
  const Eigen::VectorXd beta = bundle.v_aug.row(n).head(n).transpose();
  // sqrt(1 - alpha^2) = ||x|| alpha, and 1 - alpha^2 - beta_n^2 = sum_{i<n} beta_i^2.
  const double root = xn * solution.alpha;
  const double weighted = beta.cwiseProduct(work.s_diag).norm();
  const double tail = beta.head(n - 1).norm();
  const double lead = ia * ia * weighted / root;
  out.lower = 0.5 * (lead + ia * s_n * tail / root);
  out.upper = lead + ia * s_n;
  if (solution.alpha <= 0.5) out.applicability_note = "alpha <= 1/2: upper < 4 lower";
  return out;
}

BoundPair sv_bounds_kappa1(const SvdBundle& bundle, const TlsSolution& solution) {
  const Eigen::Index n = bundle.cols();
  const double s = bundle.sigma_min();
  const double ia = inv_alpha(solution);
  BoundPair out{std::nullopt, std::nullopt, BoundFamily::kappa1, {}};
  out.upper = ia * std::hypot(bundle.sigma_hat_min(), s) / bundle.gap_squared;
  if (n >= 2) {
    const double sh = bundle.sigma_hat(n - 2);
    out.lower = ia * std::hypot(sh, s) / ((sh - s) * (sh + s));
  } else {
    out.applicability_note = "n = 1: lower bound needs sigma_hat_{n-1}";
  }
  return out;
}

BoundPair lower_kappa2(const SvdBundle& bundle, const TlsSolution& solution) {
  BoundPair out{std::nullopt, std::nullopt, BoundFamily::kappa2_lower, {}};
  out.lower = inv_alpha(solution) / std::sqrt(bundle.gap_squared);
  return out;
}

BoundPair upper_kappa2(const SvdBundle& bundle, const TlsSolution& solution) {
  if (solution.alpha > 0.5) {
    throw NotApplicable("kappa2 upper bound requires alpha <= 1/2, got alpha = " +
                        std::to_string(solution.alpha));
  }
  const Eigen::Index n = bundle.cols();
  const double s = bundle.sigma_min();
  const double s_n = bundle.sigma(n - 1);
  const double rho2 = (s / s_n) * (s / s_n);
  const double one_minus_rho2 = bundle.lambda()(n - 1) / (s_n * s_n);
  const double factor = std::sqrt((1.0 + 31.0 * rho2) / one_minus_rho2);
  BoundPair out = lower_kappa2(bundle, solution);
  out.family = BoundFamily::kappa2_upper;
  out.upper = factor * *out.lower;
  return out;
}

BoundPair bhm_approx(const SvdBundle& bundle) {
  const double sh_n = bundle.sigma_hat_min();
  // sigma_hat_1 / (sigma_hat_n - s) written over the accurately evaluated squared gap.
  const double value = bundle.sigma_hat(0) * (sh_n + bundle.sigma_min()) / bundle.gap_squared;
  return {std::nullopt, value, BoundFamily::bhm, "heuristic estimate, no bound guarantee"};
}

DominanceCheck kappa_lower_dominance(const SvdBundle& bundle, const TlsSolution& solution) {
  DominanceCheck d;
  const Eigen::Index n = bundle.cols();
  if (n < 2) return d;
  d.applicable = true;
  const double sh_prev = bundle.sigma_hat(n - 2);
  d.gap_condition = sh_prev >= bundle.sigma_min() + std::sqrt(bundle.gap_squared);
  d.simple_condition = sh_prev >= 2.0 * bundle.sigma_hat_min();
  const auto k1 = sv_bounds_kappa1(bundle, solution);
  const auto k2 = lower_kappa2(bundle, solution);
  d.kappa1_le_kappa2 = *k1.lower <= *k2.lower * (1.0 + kVerdictTolerance);
  return d;
}

UpperChain kappa1_upper_chain(const SvdBundle& bundle, const TlsSolution& solution) {
  UpperChain c;
  const double s = bundle.sigma_min();
  const double ia = inv_alpha(solution);
  c.kappa1_upper = *sv_bounds_kappa1(bundle, solution).upper;
  c.with_sigma_hat_1 = ia * std::hypot(bundle.sigma_hat(0), s) / bundle.gap_squared;
  c.with_sigma_1 = ia * std::hypot(bundle.sigma(0), s) / bundle.gap_squared;
  const double slack = 1.0 + kVerdictTolerance;
  c.holds = c.kappa1_upper <= c.with_sigma_hat_1 * slack &&
            c.with_sigma_hat_1 <= c.with_sigma_1 * slack;
  return c;
}

BoundsReport bounds_report(const TlsProblem& /*problem*/, const SvdBundle& bundle,
                           const TlsSolution& solution, const ExactFormulaWork& work) {
  BoundsReport rep;
  const Eigen::Index n = bundle.cols();
  rep.kappa_reference = svd_condition(work, bundle, solution).kappa_abs;
  rep.kappa_reference_rel = relative_condition(rep.kappa_reference, work);
  rep.alpha = solution.alpha;
  rep.beta = bundle.v_aug.row(n).head(n).transpose();
  rep.rho = bundle.sigma_min() / bundle.sigma(n - 1);
  rep.factor4_guaranteed = solution.alpha <= 0.5 && solution.x.norm() > 0.0;

  rep.pairs.push_back(simple_sandwich(solution, work));
  rep.pairs.push_back(sharp_sandwich(solution, bundle, work));
  rep.pairs.push_back(sv_bounds_kappa1(bundle, solution));
  rep.pairs.push_back(lower_kappa2(bundle, solution));
  try {
    rep.pairs.push_back(upper_kappa2(bundle, solution));
  } catch (const NotApplicable& e) {
    rep.pairs.push_back({std::nullopt, std::nullopt, BoundFamily::kappa2_upper, e.what()});
  }
  rep.pairs.push_back(bhm_approx(bundle));

  const auto scale = relative_condition(1.0, work);
  for (const auto& p : rep.pairs) {
    BoundPair rel = p;
    if (!scale) {
      rel.lower.reset();
      rel.upper.reset();
      rel.applicability_note = "x = 0: relative condition number undefined";
    } else if (p.family != BoundFamily::bhm) {
      // The BHM estimate is already a relative quantity.
      if (rel.lower) *rel.lower *= *scale;
      if (rel.upper) *rel.upper *= *scale;
    }
    rep.relative_pairs.push_back(std::move(rel));
  }

  const double kappa = rep.kappa_reference;
  const double slack = 1.0 + kVerdictTolerance;
  for (const auto& p : rep.pairs) {
    FamilyVerdict v;
    v.family = p.family;
    if (p.family != BoundFamily::bhm && (p.lower || p.upper)) {
      bool ok = true;
      if (p.lower) ok = ok && *p.lower <= kappa * slack;
      if (p.upper) ok = ok && kappa <= *p.upper * slack;
      v.encloses = ok;
    }
    if (p.lower && p.upper && *p.lower > 0.0) v.sharpness = *p.upper / *p.lower;
    rep.verdicts.push_back(v);
  }
  rep.dominance = kappa_lower_dominance(bundle, solution);
  rep.upper_chain = kappa1_upper_chain(bundle, solution);
  return rep;
}

}  // namespace tlscond
