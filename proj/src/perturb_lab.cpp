#include "tlscond/perturb_lab.hpp"

#include <algorithm>
#include <cmath>

#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"
#include "tlscond/linalg.hpp"

namespace tlscond {
namespace {

constexpr std::uint64_t kConvergenceStream = 0xC0FFEEull << 32;

std::optional<double> loglog_slope(const std::vector<ConvergencePoint>& points,
                                   double ConvergencePoint::*field) {
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    const double value = p.*field;
    if (p.rounding_dominated || !(value > 0.0)) continue;
    xs.push_back(std::log10(p.t));
    ys.push_back(std::log10(value));
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

Eigen::VectorXd PerturbationDirection::stacked() const {
  const Eigen::Index m = delta_a.rows();
  const Eigen::Index n = delta_a.cols();
  Eigen::VectorXd z(m * (n + 1));
  z.head(m * n) = delta_a.reshaped();
  z.tail(m) = delta_b;
  return z;
}

PerturbationDirection PerturbationDirection::from_stacked(const Eigen::VectorXd& z,
                                                          Eigen::Index m, Eigen::Index n) {
  if (z.size() != m * (n + 1)) throw ShapeError("stacked direction has the wrong length");
  PerturbationDirection d;
  d.delta_a = z.head(m * n).reshaped(m, n);
  d.delta_b = z.tail(m);
  return d;
}

double PerturbationDirection::norm() const {
  return std::sqrt(delta_a.squaredNorm() + delta_b.squaredNorm());
}

PerturbationDirection PerturbationDirection::normalized() const {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidInput("cannot normalize a zero direction");
  return {delta_a / nrm, delta_b / nrm};
}

ProbeBase make_probe_base(const TlsProblem& problem) {
  SvdBundle bundle = svd_bundle(problem);
  TlsSolution solution = solve_tls(problem, bundle);
  ExactFormulaWork work = build_k_matrix(problem, bundle, solution);
  const double kappa = kron_condition(work, problem, solution).kappa_abs;
  const double gap = check_uniqueness(bundle).rel_gap;
  return {problem, std::move(bundle), std::move(solution), std::move(work), kappa, gap};
}

PerturbationDirection random_direction(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  PerturbationDirection d;
  d.delta_a.resize(m, n);
  d.delta_b.resize(m);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) d.delta_a(i, j) = dist(rng);
  }
  for (Eigen::Index i = 0; i < m; ++i) d.delta_b(i) = dist(rng);
  return d.normalized();
}

Eigen::VectorXd first_order_prediction(const ExactFormulaWork& work, const TlsSolution& solution,
                                       const PerturbationDirection& direction, double t) {
  if (!work.has_k()) throw InvalidInput("first_order_prediction needs K");
  if (t == 0.0) return solution.x;
  return solution.x + t * (work.k_matrix * direction.stacked());
}

Eigen::VectorXd perturbed_solution(const ProbeBase& base, const PerturbationDirection& direction,
                                   double t) {
  const TlsProblem p = base.problem.perturbed(direction.delta_a, direction.delta_b, t);
  const SvdBundle bundle = svd_bundle(p);
  const GapDiagnostics gap = check_uniqueness(bundle);
  if (!gap.gap_ok || gap.rel_gap < kGapPersistence * base.rel_gap) {
    throw PerturbationTooLarge("step " + std::to_string(t) +
                               " shrinks the singular value gap below the persistence threshold");
  }
  try {
    return solve_tls(p, bundle).x;
  } catch (const NoUniqueSolution& e) {
    throw PerturbationTooLarge(e.what());
  }
}

double perturbation_ratio(const ProbeBase& base, const PerturbationDirection& direction, double t) {
  if (!(t > 0.0)) throw InvalidInput("perturbation step must be positive");
  return (perturbed_solution(base, direction, t) - base.solution.x).norm() / t;
}

double perturbation_ratio(const TlsProblem& problem, const PerturbationDirection& direction,
                          double t) {
  return perturbation_ratio(make_probe_base(problem), direction, t);
}

PerturbationDirection worst_direction(const ExactFormulaWork& work) {
  if (!work.has_k()) throw InvalidInput("worst_direction needs K");
  const Eigen::Index n = work.k_matrix.rows();
  const Eigen::Index m = work.k_matrix.cols() / (n + 1);
  const auto svd = linalg::thin_svd(work.k_matrix);
  Eigen::VectorXd z = svd.v.col(0);
  Eigen::Index imax = 0;
  z.cwiseAbs().maxCoeff(&imax);
  if (z(imax) < 0.0) z = -z;
  return PerturbationDirection::from_stacked(z, m, n).normalized();
}

ConvergenceStudy convergence_study(const ProbeBase& base, const PerturbationDirection& direction,
                                   const std::vector<double>& t_list) {
  ConvergenceStudy study;
  const Eigen::VectorXd kz = base.work.k_matrix * direction.stacked();
  study.predicted_ratio = kz.norm();
  const double floor = kRoundingFloor * base.problem.augmented_norm();
  for (double t : t_list) {
    if (!(t > 0.0)) throw InvalidInput("convergence steps must be positive");
    const Eigen::VectorXd dx = (perturbed_solution(base, direction, t) - base.solution.x) / t;
    ConvergencePoint p;
    p.t = t;
    p.ratio = dx.norm();
    p.remainder = std::abs(p.ratio - study.predicted_ratio);
    p.vector_remainder = (dx - kz).norm();
    p.rounding_dominated = t < floor;
    study.points.push_back(p);
  }
  study.slope = loglog_slope(study.points, &ConvergencePoint::remainder);
  study.vector_slope = loglog_slope(study.points, &ConvergencePoint::vector_remainder);
  return study;
}

ConvergenceStudy convergence_study(const TlsProblem& problem,
                                   const PerturbationDirection& direction,
                                   const std::vector<double>& t_list) {
  return convergence_study(make_probe_base(problem), direction, t_list);
}

std::vector<double> default_step_list(const ProbeBase& base, int count, double scale) {
  std::vector<double> steps;
  double t = scale * std::min(1.0, base.rel_gap) * base.problem.augmented_norm();
  for (int k = 0; k < count; ++k, t /= 10.0) steps.push_back(t);
  return steps;
}

ValidationSummary monte_carlo_validate(const TlsProblem& problem, const ValidationOptions& options) {
  if (options.trials < 0) throw InvalidInput("trials must be nonnegative");
  const ProbeBase base = make_probe_base(problem);
  const double step = options.step.value_or(kDefaultRelativeStep * problem.augmented_norm());
  if (!(step > 0.0)) throw InvalidInput("validation step must be positive");

  ValidationSummary s;
  s.kappa_reference = base.kappa;
  s.trials = options.trials;
  s.step = step;
  s.tolerance = options.tolerance;
  s.ratios.reserve(static_cast<std::size_t>(options.trials));
  for (int i = 0; i < options.trials; ++i) {
    const auto dir = random_direction(problem.rows(), problem.cols(),
                                      derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    s.ratios.push_back(perturbation_ratio(base, dir, step));
  }
  const auto worst = worst_direction(base.work);
  s.worst_direction_ratio = perturbation_ratio(base, worst, step);
  s.max_observed_ratio = s.ratios.empty()
                             ? s.worst_direction_ratio
                             : std::max(*std::max_element(s.ratios.begin(), s.ratios.end()),
                                        s.worst_direction_ratio);
  if (options.with_convergence) {
    // A generic direction: along special ones (e.g. the worst direction when
    // x = 0) the map can be odd in t and the remainder drops to second order.
    const auto dir = random_direction(problem.rows(), problem.cols(),
                                      derive_seed(options.seed, kConvergenceStream));
    s.convergence = convergence_study(base, dir, default_step_list(base));
  }
  s.sound = s.max_observed_ratio <= s.kappa_reference * (1.0 + options.tolerance);
  s.attained = s.worst_direction_ratio >= s.kappa_reference * (1.0 - options.tolerance);
  return s;
}

}  // namespace tlscond
