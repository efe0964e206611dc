#include "tlscond/cond_exact.hpp"

#include <cmath>

#include "tlscond/errors.hpp"
#include "tlscond/linalg.hpp"

namespace tlscond {

const char* to_string(CondMethod method) noexcept {
  switch (method) {
    case CondMethod::kronecker: return "kron";
    case CondMethod::cholesky: return "cholesky";
    case CondMethod::svd: return "svd";
    case CondMethod::baboulin: return "baboulin";
  }
  return "unknown";
}

std::optional<double> relative_condition(double kappa_abs, const ExactFormulaWork& work) {
  if (work.x_norm > 0.0) return kappa_abs * work.augmented_norm / work.x_norm;
  return std::nullopt;
}

namespace {

ConditionEstimate make_estimate(double kappa, CondMethod method, const ExactFormulaWork& work) {
  ConditionEstimate e;
  e.kappa_abs = kappa;
  e.kappa_rel = relative_condition(kappa, work);
  e.method = method;
  return e;
}

void require_gap(const ExactFormulaWork& work, CondMethod method, ConditionEstimate* estimate) {
  if (work.rel_gap < kIllConditionedGap) {
    throw IllConditionedGap(std::string(to_string(method)) + " formula: relative gap " +
                            std::to_string(work.rel_gap) + " is below 1e-6");
  }
  if (estimate && work.rel_gap < kGapWarning) {
    estimate->warnings.emplace_back("relative gap below 1e-3: result may be inaccurate");
  }
}

}  // namespace

ExactFormulaWork build_formula_work(const TlsProblem& problem, const SvdBundle& bundle,
                                    const TlsSolution& solution) {
  const Eigen::Index n = problem.cols();
  const double s = bundle.sigma_min();
  const double s2 = s * s;
  const Eigen::MatrixXd& a = problem.a();

  ExactFormulaWork w;
  w.alpha = solution.alpha;
  w.x_norm = solution.x.norm();
  w.augmented_norm = problem.augmented_norm();
  w.rel_gap = check_uniqueness(bundle).rel_gap;

  const Eigen::MatrixXd gram = a.transpose() * a;
  w.p_matrix = gram;
  w.p_matrix.diagonal().array() -= s2;
  w.c_matrix = gram;
  w.c_matrix.diagonal().array() += s2;
  w.c_matrix -= (2.0 * s2 / (1.0 + solution.x.squaredNorm())) * solution.x *
                solution.x.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(w.c_matrix);
  if (llt.info() == Eigen::Success) w.l_factor = llt.matrixL();

  w.v11 = bundle.v11();
  w.lambda_diag = bundle.lambda();
  w.d_b.resize(n);
  w.s_diag.resize(n);
  w.d_hat.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w.d_b(i) = std::hypot(bundle.sigma(i), s);
    w.s_diag(i) = w.d_b(i) / w.lambda_diag(i);
    const double sh = bundle.sigma_hat(i);
    w.d_hat(i) = 1.0 / ((sh - s) * (sh + s));
  }
  return w;
}

ExactFormulaWork build_k_matrix(const TlsProblem& problem, const SvdBundle& bundle,
                                const TlsSolution& solution) {
  ExactFormulaWork w = build_formula_work(problem, bundle, solution);
  const Eigen::Index m = problem.rows();
  const Eigen::Index n = problem.cols();
  const Eigen::VectorXd& x = solution.x;
  const Eigen::VectorXd& r = solution.r;
  const double r2 = r.squaredNorm();
  if (r2 == 0.0) throw TrivialProblem("residual r = Ax - b vanishes; K is undefined");

  w.g_of_x = Eigen::MatrixXd::Zero(m, m * (n + 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    w.g_of_x.block(0, j * m, m, m).diagonal().setConstant(x(j));
  }
  w.g_of_x.block(0, n * m, m, m).diagonal().setConstant(-1.0);

  // 2 A^T (r r^T / ||r||^2) G(x) - A^T G(x) = W G(x) with W = 2 (A^T r) r^T / ||r||^2 - A^T.
  const Eigen::MatrixXd at = problem.a().transpose();
  const Eigen::MatrixXd wmat = (2.0 / r2) * (at * r) * r.transpose() - at;
  Eigen::MatrixXd rhs(n, m * (n + 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    auto block = rhs.middleCols(j * m, m);
    block = x(j) * wmat;
    block.row(j) -= r.transpose();  // [I_n (x) r^T  O]
  }
  rhs.middleCols(n * m, m) = -wmat;

  Eigen::LLT<Eigen::MatrixXd> p_llt(w.p_matrix);
  if (p_llt.info() == Eigen::Success) {
    w.k_matrix = p_llt.solve(rhs);
  } else {
    w.k_matrix = w.p_matrix.partialPivLu().solve(rhs);
  }
  return w;
}

ConditionEstimate kron_condition(const ExactFormulaWork& work, const TlsProblem& /*problem*/,
                                 const TlsSolution& /*solution*/) {
  if (!work.has_k()) throw InvalidInput("kron_condition needs the explicit K matrix");
  ConditionEstimate e = make_estimate(linalg::spectral_norm(work.k_matrix),
                                      CondMethod::kronecker, work);
  if (work.rel_gap < kGapWarning) {
    e.warnings.emplace_back("relative gap below 1e-3: P is ill conditioned");
  }
  return e;
}

ConditionEstimate cholesky_condition(const ExactFormulaWork& work, const TlsProblem& /*problem*/,
                                     const SvdBundle& /*bundle*/, const TlsSolution& solution) {
  require_gap(work, CondMethod::cholesky, nullptr);
  if (work.l_factor.size() == 0) {
    throw FactorizationError("C = A^T A + s^2 I - 2 s^2 x x^T/(1+|x|^2) is not numerically positive definite");
  }
  Eigen::LLT<Eigen::MatrixXd> p_llt(work.p_matrix);
  if (p_llt.info() != Eigen::Success) {
    throw FactorizationError("P = A^T A - s^2 I is not numerically positive definite");
  }
  const Eigen::MatrixXd y = p_llt.solve(work.l_factor);
  ConditionEstimate e =
      make_estimate(linalg::spectral_norm(y) / solution.alpha, CondMethod::cholesky, work);
  require_gap(work, CondMethod::cholesky, &e);
  return e;
}

ConditionEstimate svd_condition(const ExactFormulaWork& work, const SvdBundle& /*bundle*/,
                                const TlsSolution& solution) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(work.v11.transpose());
  if (!lu.isInvertible()) {
    throw SingularBlock("V11 is numerically singular");
  }
  const Eigen::MatrixXd y = lu.solve(Eigen::MatrixXd(work.s_diag.asDiagonal()));
  if (!y.allFinite()) throw SingularBlock("solve with V11^T produced non-finite values");
  return make_estimate(linalg::spectral_norm(y) / solution.alpha, CondMethod::svd, work);
}

ConditionEstimate baboulin_condition(const ExactFormulaWork& work, const SvdBundle& bundle,
                                     const TlsSolution& solution) {
  require_gap(work, CondMethod::baboulin, nullptr);
  const Eigen::MatrixXd middle =
      work.d_hat.asDiagonal() * (bundle.v_hat.transpose() * work.v11) * work.d_b.asDiagonal();
  ConditionEstimate e =
      make_estimate(linalg::spectral_norm(middle) / solution.alpha, CondMethod::baboulin, work);
  require_gap(work, CondMethod::baboulin, &e);
  return e;
}

V11Analysis v11_spectrum(const SvdBundle& bundle, const TlsSolution& /*solution*/) {
  V11Analysis out;
  out.singular_values = linalg::singular_values(bundle.v11());
  const Eigen::Index n = out.singular_values.size();
  out.alpha_from_v11 = out.singular_values(n - 1);
  out.kappa_v11 = out.singular_values(0) / out.alpha_from_v11;
  return out;
}

}  // namespace tlscond
