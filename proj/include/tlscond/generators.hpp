#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "tlscond/problem.hpp"

namespace tlscond {

/// All generators draw from std::mt19937_64. Normal variates come from
/// std::normal_distribution and uniforms from std::uniform_real_distribution,
/// so outputs are reproducible within one build, not across standard libraries.
using Rng = std::mt19937_64;

/// Mixes (seed, stream) into an independent 64-bit seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

enum class GeneratorKind { alpha_controlled, kamm_nagy };

struct GeneratorConfig {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  double alpha_target = 0.5;
  std::uint64_t seed = 0;
  GeneratorKind kind = GeneratorKind::alpha_controlled;
};

struct KammNagyConfig {
  Eigen::Index m = 100;
  Eigen::Index omega = 8;  // kernel half-width; n = m - 2 omega
  double spread = 1.25;    // Gaussian kernel width
  double gamma = 1e-3;     // relative noise level
  std::uint64_t seed = 0;

  Eigen::Index n() const noexcept { return m - 2 * omega; }
};

/// Pieces of a Kamm-Nagy instance, before and after noise.
struct KammNagyParts {
  Eigen::MatrixXd t_bar;  // noise-free Toeplitz matrix
  Eigen::VectorXd g_bar;  // all ones
  Eigen::MatrixXd e;      // Toeplitz noise, ||e||_2 = gamma ||t_bar||_2
  Eigen::VectorXd e_rhs;  // ||e_rhs|| = gamma ||g_bar||
};

inline constexpr int kGapRetries = 10;

/// Haar-distributed orthogonal matrix: QR of a standard normal matrix with
/// the signs of diag(R) folded into Q.
Eigen::MatrixXd haar_orthogonal(Eigen::Index n, std::uint64_t seed);

/// (n+1) x (n+1) orthogonal V with V(n+1, n+1) = -alpha whose leading block is
/// U diag(1, ..., 1, alpha) v_tilde^T for a random orthogonal U.
/// Throws InvalidInput unless 0 < alpha < 1 and v_tilde is square of order n.
Eigen::MatrixXd generate_v(Eigen::Index n, const Eigen::MatrixXd& v_tilde, double alpha,
                           std::uint64_t seed);

/// [A b] = U Sigma V^T with U, Sigma from the thin SVD of a uniform(0,1)
/// m x (n+1) matrix and V from generate_v, so the TLS solution has
/// 1/sqrt(1+||x||^2) = alpha. Retries with derived seeds when the instance
/// has no unique TLS solution; throws GapFailure after kGapRetries attempts.
TlsProblem generate_ab_alpha(Eigen::Index m, Eigen::Index n, double alpha, std::uint64_t seed);

TlsProblem generate(const GeneratorConfig& config);

/// t_i = exp(-(omega - i + 1)^2 / (2 spread^2)) / sqrt(2 pi spread^2) for
/// i = 1..2 omega + 1 (1-based), zero below.
Eigen::VectorXd gaussian_kernel_column(Eigen::Index m, Eigen::Index omega, double spread);

/// m x n lower-triangular Toeplitz matrix with the given first column.
Eigen::MatrixXd lower_toeplitz(const Eigen::VectorXd& first_column, Eigen::Index n);

KammNagyParts kamm_nagy_parts(const KammNagyConfig& config, std::uint64_t seed);

/// A = T_bar + E, b = g_bar + e. Throws InvalidInput for bad configs and
/// GapFailure when kGapRetries draws all lack a unique TLS solution.
TlsProblem kamm_nagy_problem(const KammNagyConfig& config);

}  // namespace tlscond
