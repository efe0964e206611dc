#include "tlscond/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tlscond/errors.hpp"
#include "tlscond/linalg.hpp"
#include "tlscond/tls_core.hpp"

namespace tlscond {
namespace {

Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = dist(rng);
  }
  return z;
}

bool has_unique_solution(const TlsProblem& problem) {
  const auto diag = check_uniqueness(svd_bundle(problem));
  return diag.gap_ok && diag.nontrivial;
}

std::string format_label(const char* kind, std::initializer_list<std::pair<const char*, double>> kv,
                         std::uint64_t seed) {
  std::ostringstream out;
  out << kind << '(';
  for (const auto& [k, v] : kv) out << k << '=' << v << ',';
  out << "seed=" << seed << ')';
  return out.str();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Eigen::MatrixXd haar_orthogonal(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("haar_orthogonal needs n >= 1");
  Rng rng(seed);
  const Eigen::MatrixXd z = standard_normal(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (packed(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Eigen::MatrixXd generate_v(Eigen::Index n, const Eigen::MatrixXd& v_tilde, double alpha,
                           std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidInput("generate_v needs 0 < alpha < 1, got " + std::to_string(alpha));
  }
  if (n < 1 || v_tilde.rows() != n || v_tilde.cols() != n) {
    throw InvalidInput("generate_v needs an n x n orthogonal v_tilde");
  }
  const Eigen::MatrixXd u = haar_orthogonal(n, seed);
  const double c = std::sqrt((1.0 - alpha) * (1.0 + alpha));

  Eigen::MatrixXd v(n + 1, n + 1);
  v.topLeftCorner(n, n) = u.leftCols(n - 1) * v_tilde.leftCols(n - 1).transpose() +
                          alpha * u.col(n - 1) * v_tilde.col(n - 1).transpose();
  v.topRightCorner(n, 1) = c * u.col(n - 1);
  v.bottomLeftCorner(1, n) = c * v_tilde.col(n - 1).transpose();
  v(n, n) = -alpha;
  return v;
}

TlsProblem generate_ab_alpha(Eigen::Index m, Eigen::Index n, double alpha, std::uint64_t seed) {
  if (n < 1 || m <= n) throw ShapeError("generate_ab_alpha needs m > n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidInput("generate_ab_alpha needs 0 < alpha < 1, got " + std::to_string(alpha));
  }
  for (int attempt = 0; attempt < kGapRetries; ++attempt) {
    const std::uint64_t sub = attempt == 0 ? seed : derive_seed(seed, 1000 + attempt);
    const Eigen::MatrixXd v_tilde = haar_orthogonal(n, derive_seed(sub, 1));
    const Eigen::MatrixXd v = generate_v(n, v_tilde, alpha, derive_seed(sub, 2));

    Rng rng(derive_seed(sub, 3));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd b(m, n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) b(i, j) = unit(rng);
    }
    const auto svd = linalg::thin_svd(b);
    const Eigen::MatrixXd ab = svd.u * svd.values.asDiagonal() * v.transpose();

    TlsProblem problem = TlsProblem::from_augmented(
        ab, format_label("ab_alpha", {{"m", double(m)}, {"n", double(n)}, {"alpha", alpha}}, seed));
    if (has_unique_solution(problem)) return problem;
  }
  throw GapFailure("generate_ab_alpha: no instance with a unique TLS solution after " +
                   std::to_string(kGapRetries) + " attempts");
}

TlsProblem generate(const GeneratorConfig& config) {
  if (config.kind == GeneratorKind::alpha_controlled) {
    return generate_ab_alpha(config.m, config.n, config.alpha_target, config.seed);
  }
  KammNagyConfig kn;
  kn.m = config.m;
  kn.seed = config.seed;
  return kamm_nagy_problem(kn);
}

Eigen::VectorXd gaussian_kernel_column(Eigen::Index m, Eigen::Index omega, double spread) {
  if (omega < 1 || m < 2 * omega + 1) {
    throw InvalidInput("gaussian_kernel_column needs omega >= 1 and m >= 2 omega + 1");
  }
  if (!(spread > 0.0)) throw InvalidInput("kernel spread must be positive");
  Eigen::VectorXd t = Eigen::VectorXd::Zero(m);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * spread * spread);
  for (Eigen::Index i = 1; i <= 2 * omega + 1; ++i) {
    const double d = static_cast<double>(omega - i + 1);
    t(i - 1) = norm * std::exp(-d * d / (2.0 * spread * spread));
  }
  return t;
}

Eigen::MatrixXd lower_toeplitz(const Eigen::VectorXd& first_column, Eigen::Index n) {
  const Eigen::Index m = first_column.size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, n);
  for (Eigen::Index j = 0; j < n && j < m; ++j) {
    t.col(j).tail(m - j) = first_column.head(m - j);
  }
  return t;
}

KammNagyParts kamm_nagy_parts(const KammNagyConfig& config, std::uint64_t seed) {
  if (config.omega < 1 || config.n() < 1) {
    throw InvalidInput("Kamm-Nagy config needs omega >= 1 and m - 2 omega >= 1");
  }
  if (!(config.spread > 0.0) || !(config.gamma >= 0.0)) {
    throw InvalidInput("Kamm-Nagy config needs spread > 0 and gamma >= 0");
  }
  const Eigen::Index m = config.m;
  const Eigen::Index n = config.n();
  const Eigen::Index support = 2 * config.omega + 1;

  KammNagyParts parts;
  parts.t_bar = lower_toeplitz(gaussian_kernel_column(m, config.omega, config.spread), n);
  parts.g_bar = Eigen::VectorXd::Ones(m);

  Rng rng(seed);
  Eigen::VectorXd noise_column = Eigen::VectorXd::Zero(m);
  noise_column.head(support) = standard_normal(support, 1, rng);
  parts.e = lower_toeplitz(noise_column, n);
  parts.e_rhs = standard_normal(m, 1, rng);

  parts.e *= config.gamma * linalg::spectral_norm(parts.t_bar) / linalg::spectral_norm(parts.e);
  parts.e_rhs *= config.gamma * parts.g_bar.norm() / parts.e_rhs.norm();
  return parts;
}

TlsProblem kamm_nagy_problem(const KammNagyConfig& config) {
  for (int attempt = 0; attempt < kGapRetries; ++attempt) {
    const std::uint64_t sub = attempt == 0 ? config.seed : derive_seed(config.seed, 1000 + attempt);
    const KammNagyParts parts = kamm_nagy_parts(config, sub);
    TlsProblem problem(parts.t_bar + parts.e, parts.g_bar + parts.e_rhs,
                       format_label("kamm_nagy",
                                    {{"m", double(config.m)},
                                     {"omega", double(config.omega)},
                                     {"spread", config.spread},
                                     {"gamma", config.gamma}},
                                    config.seed));
    if (has_unique_solution(problem)) return problem;
  }
  throw GapFailure("kamm_nagy_problem: no instance with a unique TLS solution after " +
                   std::to_string(kGapRetries) + " attempts");
}

}  // namespace tlscond
