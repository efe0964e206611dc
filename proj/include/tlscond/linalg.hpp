#pragma once

#include <Eigen/Dense>

namespace tlscond::linalg {

struct ThinSvd {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
};

/// Thin SVD with singular values in descending order. One-sided Jacobi for
/// narrow matrices, divide and conquer beyond `kJacobiColumnLimit` columns.
/// Throws ConvergenceError if the kernel fails or produces non-finite output.
ThinSvd thin_svd(const Eigen::MatrixXd& m);

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

/// Largest singular value (2-norm). Zero for an empty matrix.
double spectral_norm(const Eigen::MatrixXd& m);

inline constexpr Eigen::Index kJacobiColumnLimit = 160;

}  // namespace tlscond::linalg
