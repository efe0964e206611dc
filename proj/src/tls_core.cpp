#include "tlscond/tls_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tlscond/errors.hpp"
#include "tlscond/linalg.hpp"

namespace tlscond {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void normalize_signs(SvdBundle& bundle) {
  const Eigen::Index n = bundle.cols();
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double last = bundle.v_aug(n, j);
    const bool flip = (j < n) ? last < 0.0 : last > 0.0;
    if (flip) {
      bundle.v_aug.col(j) *= -1.0;
      bundle.u_aug.col(j) *= -1.0;
    }
  }
}

double evaluate_gap_squared(const SvdBundle& bundle) {
  const Eigen::VectorXd lam = bundle.lambda().cwiseMax(0.0);
  const Eigen::MatrixXd scaled = bundle.v11() * lam.cwiseSqrt().asDiagonal();
  const Eigen::VectorXd sv = linalg::singular_values(scaled);
  const double smallest = sv(sv.size() - 1);
  return smallest * smallest;
}

IdentityResiduals identity_residuals(const TlsProblem& problem, const SvdBundle& bundle,
                                     const Eigen::VectorXd& x, const Eigen::VectorXd& r,
                                     double alpha, const Eigen::VectorXd& v_last) {
  const double s2 = bundle.sigma_min() * bundle.sigma_min();
  const double xn2 = x.squaredNorm();
  IdentityResiduals out;
  out.optimal_value = std::abs(r.squaredNorm() / (1.0 + xn2) - s2);
  out.gradient = (problem.a().transpose() * r - s2 * x).norm();
  Eigen::VectorXd expected(x.size() + 1);
  expected << x, -1.0;
  out.singular_vector = (v_last - alpha * expected).norm();

  out.optimal_value_tolerance = 1e-10 * s2;
  out.gradient_tolerance = 1e-10 * s2 * std::max(1.0, std::sqrt(xn2));
  out.singular_vector_tolerance = 1e-10;
  return out;
}

}  // namespace

Eigen::VectorXd SvdBundle::lambda() const {
  const double s = sigma_min();
  const Eigen::Index n = cols();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = (sigma(i) - s) * (sigma(i) + s);
  return out;
}

SvdBundle svd_bundle(const TlsProblem& problem) {
  auto hat = linalg::thin_svd(problem.a());
  auto aug = linalg::thin_svd(problem.augmented());
  SvdBundle bundle{std::move(hat.values), std::move(hat.u), std::move(hat.v),
                   std::move(aug.values), std::move(aug.u), std::move(aug.v)};
  normalize_signs(bundle);
  bundle.gap_squared = evaluate_gap_squared(bundle);
  return bundle;
}

GapDiagnostics check_uniqueness(const SvdBundle& bundle) {
  GapDiagnostics d;
  const double s_last = bundle.sigma_min();
  const double s_hat_n = bundle.sigma_hat_min();
  const double s_n = bundle.sigma(bundle.cols() - 1);
  const double scale = bundle.sigma(0);
  const double dims = static_cast<double>(std::max(bundle.rows(), bundle.cols() + 1));

  // Values at rounding level relative to sigma_1 are indistinguishable from 0.
  d.nontrivial = s_last > kEps * dims * scale;
  if (s_hat_n > 0.0) {
    d.rel_gap = bundle.gap_squared / (s_hat_n * (s_hat_n + s_last));
  }
  d.gap_ok = d.rel_gap > 0.0;
  d.ratio_sigma_n = s_n > 0.0 ? s_last / s_n : 0.0;
  d.ratio_sigma_hat_n = 1.0 - d.rel_gap;
  return d;
}

TlsSolution solve_tls(const TlsProblem& problem, const SvdBundle& bundle) {
  const GapDiagnostics diag = check_uniqueness(bundle);
  if (!diag.gap_ok) {
    throw NoUniqueSolution("sigma_{n+1} is not below sigma_hat_n; the TLS solution is not unique");
  }
  if (!diag.nontrivial) {
    throw TrivialProblem("sigma_{n+1} = 0: b lies in the range of A");
  }
  const Eigen::Index n = problem.cols();
  const Eigen::VectorXd v_last = bundle.v_aug.col(n);
  if (std::abs(v_last(n)) <= 1e-14) {
    throw DegenerateVector("last entry of v_{n+1} vanishes despite a positive gap");
  }

  TlsSolution sol;
  sol.x = -v_last.head(n) / v_last(n);
  sol.alpha = 1.0 / std::sqrt(1.0 + sol.x.squaredNorm());
  sol.r = problem.a() * sol.x - problem.b();
  sol.last_right_vector = v_last;
  sol.identity_residuals =
      identity_residuals(problem, bundle, sol.x, sol.r, sol.alpha, sol.last_right_vector);
  if (!sol.identity_residuals.within_tolerance()) {
    sol.warnings.emplace_back("identity residuals exceed tolerance");
  }

  if (diag.rel_gap >= kCrossCheckGate) {
    const double s2 = bundle.sigma_min() * bundle.sigma_min();
    Eigen::MatrixXd p = problem.a().transpose() * problem.a();
    p.diagonal().array() -= s2;
    Eigen::LLT<Eigen::MatrixXd> llt(p);
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd xn = llt.solve(problem.a().transpose() * problem.b());
      const double denom = std::max(sol.x.norm(), xn.norm());
      sol.cross_check_difference = denom > 0.0 ? (sol.x - xn).norm() / denom : 0.0;
      sol.cross_check = sol.cross_check_difference <= kCrossCheckTolerance
                            ? CrossCheckStatus::agreed
                            : CrossCheckStatus::disagreed;
      sol.x_normal_equations = std::move(xn);
    } else {
      sol.cross_check = CrossCheckStatus::disagreed;
      sol.cross_check_difference = std::numeric_limits<double>::infinity();
    }
    if (sol.cross_check == CrossCheckStatus::disagreed) {
      sol.warnings.emplace_back("normal-equations cross-check disagrees with the SVD solution");
    }
  } else {
    sol.cross_check = CrossCheckStatus::skipped_small_gap;
    sol.warnings.emplace_back("relative gap below 1e-6: normal-equations cross-check skipped");
  }
  return sol;
}

TlsSolution solve_tls(const TlsProblem& problem) {
  return solve_tls(problem, svd_bundle(problem));
}

ResidualDiagnostics residual_diagnostics(const TlsProblem& problem, const SvdBundle& bundle,
                                         const TlsSolution& solution) {
  ResidualDiagnostics out;
  out.identities = identity_residuals(problem, bundle, solution.x, solution.r, solution.alpha,
                                      solution.last_right_vector);
  const double xn = solution.x.norm();
  GolubCheck& g = out.golub;
  g.applicable = xn > 0.0;
  if (g.applicable) {
    const Eigen::Index n = problem.cols();
    const double s_hat_n = bundle.sigma_hat_min();
    g.lower = std::abs(bundle.u_hat.col(n - 1).dot(problem.b())) / (2.0 * xn);
    g.gap = bundle.gap_squared / (s_hat_n + bundle.sigma_min());
    g.upper = problem.b().norm() / xn;
    constexpr double slack = 1e-9;
    g.holds = g.lower <= g.gap * (1.0 + slack) && g.gap <= g.upper * (1.0 + slack);
  }
  return out;
}

}  // namespace tlscond
