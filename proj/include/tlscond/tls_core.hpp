#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlscond/problem.hpp"

namespace tlscond {

/// Thin SVDs of A and of [A b].
///
/// Singular vectors of [A b] are sign-normalized: for j < n the last-row entry
/// V(n+1, j) is made nonnegative, and the last column is flipped so that
/// V(n+1, n+1) <= 0. The matching columns of the left factor are flipped with
/// them, so U diag(sigma) V^T is unchanged.
struct SvdBundle {
  Eigen::VectorXd sigma_hat;  // n values of A, descending
  Eigen::MatrixXd u_hat;      // m x n
  Eigen::MatrixXd v_hat;      // n x n
  Eigen::VectorXd sigma;      // n+1 values of [A b], descending
  Eigen::MatrixXd u_aug;      // m x (n+1)
  Eigen::MatrixXd v_aug;      // (n+1) x (n+1)

  /// sigma_hat_n^2 - sigma_{n+1}^2, evaluated as the squared smallest
  /// singular value of V11 * diag(sigma_i^2 - sigma_{n+1}^2)^{1/2}. This is
  /// the smallest eigenvalue of A^T A - sigma_{n+1}^2 I and stays accurate
  /// when the two singular values agree to nearly all digits, where the plain
  /// difference is rounding noise.
  double gap_squared = 0.0;

  Eigen::Index rows() const noexcept { return u_aug.rows(); }
  Eigen::Index cols() const noexcept { return sigma_hat.size(); }
  double sigma_min() const { return sigma(sigma.size() - 1); }  // sigma_{n+1}
  double sigma_hat_min() const { return sigma_hat(sigma_hat.size() - 1); }
  Eigen::MatrixXd v11() const { return v_aug.topLeftCorner(cols(), cols()); }
  /// sigma_i^2 - sigma_{n+1}^2 for i = 1..n, as (sigma_i - s)(sigma_i + s).
  Eigen::VectorXd lambda() const;
};

struct GapDiagnostics {
  bool gap_ok = false;      // sigma_{n+1} < sigma_hat_n
  bool nontrivial = false;  // sigma_{n+1} > 0
  double rel_gap = 0.0;     // (sigma_hat_n - sigma_{n+1}) / sigma_hat_n
  double ratio_sigma_n = 0.0;      // sigma_{n+1} / sigma_n
  double ratio_sigma_hat_n = 0.0;  // sigma_{n+1} / sigma_hat_n == 1 - rel_gap
};

/// Residuals of the three identities tying x, r and v_{n+1} together.
struct IdentityResiduals {
  double optimal_value = 0.0;    // | ||r||^2/(1+||x||^2) - sigma_{n+1}^2 |
  double gradient = 0.0;         // || A^T r - sigma_{n+1}^2 x ||
  double singular_vector = 0.0;  // || v_{n+1} - alpha [x; -1] ||

  double optimal_value_tolerance = 0.0;
  double gradient_tolerance = 0.0;
  double singular_vector_tolerance = 0.0;

  bool within_tolerance() const noexcept {
    return optimal_value <= optimal_value_tolerance && gradient <= gradient_tolerance &&
           singular_vector <= singular_vector_tolerance;
  }
};

enum class CrossCheckStatus { agreed, disagreed, skipped_small_gap };

struct TlsSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd r;  // A x - b
  double alpha = 1.0;  // 1 / sqrt(1 + ||x||^2)
  Eigen::VectorXd last_right_vector;  // v_{n+1}, last entry -alpha
  IdentityResiduals identity_residuals;

  /// Normal-equations solution (A^T A - sigma_{n+1}^2 I)^{-1} A^T b, when evaluated.
  std::optional<Eigen::VectorXd> x_normal_equations;
  CrossCheckStatus cross_check = CrossCheckStatus::skipped_small_gap;
  double cross_check_difference = 0.0;  // relative, in the 2-norm
  std::vector<std::string> warnings;

  double x_norm() const { return x.norm(); }
};

struct GolubCheck {
  bool applicable = false;  // false when x == 0
  double lower = 0.0;       // |u_hat_n^T b| / (2 ||x||)
  double gap = 0.0;         // sigma_hat_n - sigma_{n+1}
  double upper = 0.0;       // ||b|| / ||x||
  bool holds = false;
};

struct ResidualDiagnostics {
  IdentityResiduals identities;
  GolubCheck golub;
};

inline constexpr double kCrossCheckGate = 1e-6;
inline constexpr double kCrossCheckTolerance = 1e-8;

/// Throws ConvergenceError if either decomposition fails.
SvdBundle svd_bundle(const TlsProblem& problem);

GapDiagnostics check_uniqueness(const SvdBundle& bundle);

/// x from the last right singular vector of [A b]; the normal-equations
/// formula is evaluated as a cross-check when rel_gap >= 1e-6.
/// Throws NoUniqueSolution, TrivialProblem or DegenerateVector.
TlsSolution solve_tls(const TlsProblem& problem, const SvdBundle& bundle);

/// Convenience: bundle + solve.
TlsSolution solve_tls(const TlsProblem& problem);

ResidualDiagnostics residual_diagnostics(const TlsProblem& problem, const SvdBundle& bundle,
                                         const TlsSolution& solution);

}  // namespace tlscond
