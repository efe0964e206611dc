#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlscond/problem.hpp"
#include "tlscond/tls_core.hpp"

namespace tlscond {

/// Intermediate matrices shared by the exact condition-number formulas.
///
/// Perturbations are stacked as [vec(dA); db] with vec() stacking the columns
/// of dA, so column j*m + i of K is the derivative with respect to A(i, j) and
/// the last m columns belong to b.
struct ExactFormulaWork {
  Eigen::MatrixXd k_matrix;  // n x m(n+1); empty unless requested
  Eigen::MatrixXd g_of_x;    // m x m(n+1) = [x^T -1] (x) I_m; empty unless requested
  Eigen::MatrixXd p_matrix;  // A^T A - sigma_{n+1}^2 I
  Eigen::MatrixXd c_matrix;  // A^T A + sigma_{n+1}^2 I - 2 sigma_{n+1}^2 x x^T / (1 + ||x||^2)
  Eigen::MatrixXd l_factor;  // C = L L^T; empty if the factorization failed
  Eigen::MatrixXd v11;       // V(1:n, 1:n)
  Eigen::VectorXd s_diag;    // sqrt(sigma_i^2 + sigma_{n+1}^2) / (sigma_i^2 - sigma_{n+1}^2)
  Eigen::VectorXd d_hat;     // 1 / (sigma_hat_i^2 - sigma_{n+1}^2)
  Eigen::VectorXd d_b;       // sqrt(sigma_i^2 + sigma_{n+1}^2)
  Eigen::VectorXd lambda_diag;  // sigma_i^2 - sigma_{n+1}^2

  double alpha = 1.0;
  double x_norm = 0.0;
  double augmented_norm = 0.0;  // ||[A b]||_F
  double rel_gap = 0.0;

  bool has_k() const noexcept { return k_matrix.size() > 0; }
};

enum class CondMethod { kronecker, cholesky, svd, baboulin };

const char* to_string(CondMethod method) noexcept;

struct ConditionEstimate {
  double kappa_abs = 0.0;
  std::optional<double> kappa_rel;  // absent when x == 0
  CondMethod method = CondMethod::svd;
  std::vector<std::string> warnings;
};

struct V11Analysis {
  Eigen::VectorXd singular_values;  // descending
  double kappa_v11 = 1.0;
  double alpha_from_v11 = 1.0;
};

/// Below this relative gap the Cholesky and two-SVD formulas refuse to run.
inline constexpr double kIllConditionedGap = 1e-6;
/// Below this relative gap they run but attach a warning.
inline constexpr double kGapWarning = 1e-3;

/// Everything except K and G(x), which cost O(n m^2 (n+1)) memory.
ExactFormulaWork build_formula_work(const TlsProblem& problem, const SvdBundle& bundle,
                                    const TlsSolution& solution);

/// Full work including the explicit first-order map K.
/// Throws TrivialProblem when r == 0.
ExactFormulaWork build_k_matrix(const TlsProblem& problem, const SvdBundle& bundle,
                                const TlsSolution& solution);

/// kappa = ||K||_2. Requires work.has_k().
ConditionEstimate kron_condition(const ExactFormulaWork& work, const TlsProblem& problem,
                                 const TlsSolution& solution);

/// kappa = sqrt(1+||x||^2) ||P^{-1} L||. Throws IllConditionedGap or FactorizationError.
ConditionEstimate cholesky_condition(const ExactFormulaWork& work, const TlsProblem& problem,
                                     const SvdBundle& bundle, const TlsSolution& solution);

/// kappa = sqrt(1+||x||^2) ||V11^{-T} S||, via an LU solve with V11^T.
/// The reference formula; throws SingularBlock if V11 is numerically singular.
ConditionEstimate svd_condition(const ExactFormulaWork& work, const SvdBundle& bundle,
                                const TlsSolution& solution);

/// kappa = sqrt(1+||x||^2) ||D_hat V_hat^T V11 D||. Throws IllConditionedGap.
ConditionEstimate baboulin_condition(const ExactFormulaWork& work, const SvdBundle& bundle,
                                     const TlsSolution& solution);

V11Analysis v11_spectrum(const SvdBundle& bundle, const TlsSolution& solution);

/// kappa * ||[A b]||_F / ||x||, or nullopt when x == 0.
std::optional<double> relative_condition(double kappa_abs, const ExactFormulaWork& work);

}  // namespace tlscond
