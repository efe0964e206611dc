#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"
#include "tlscond/perturb_lab.hpp"

using namespace tlscond;

namespace {

PerturbationDirection unit(Eigen::Index m, Eigen::Index n, Eigen::Index index) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m * (n + 1));
  z(index) = 1.0;
  return PerturbationDirection::from_stacked(z, m, n);
}

}  // namespace

TEST(Direction, StackRoundTrip) {
  const auto d = random_direction(4, 2, 3);
  EXPECT_NEAR(d.norm(), 1.0, 1e-14);
  const auto e = PerturbationDirection::from_stacked(d.stacked(), 4, 2);
  EXPECT_EQ(e.delta_a, d.delta_a);
  EXPECT_EQ(e.delta_b, d.delta_b);
  EXPECT_EQ(d.stacked()(5), d.delta_a(1, 1));
  EXPECT_THROW(PerturbationDirection{}.normalized(), InvalidInput);
}

TEST(Prediction, FixtureA) {
  const auto base = make_probe_base(oracle::fix_a());
  const auto db2 = unit(2, 1, 3);
  EXPECT_NEAR(first_order_prediction(base.work, base.solution, db2, 1e-6)(0), 0.0, 1e-20);
  const auto da21 = unit(2, 1, 1);
  EXPECT_NEAR(first_order_prediction(base.work, base.solution, da21, 1e-6)(0), 1e-6 / 3, 1e-20);
  EXPECT_EQ(first_order_prediction(base.work, base.solution, da21, 0.0), base.solution.x);
}

TEST(Ratio, FixtureA) {
  const auto base = make_probe_base(oracle::fix_a());
  EXPECT_NEAR(perturbation_ratio(base, unit(2, 1, 1), 1e-8), 1.0 / 3, 1e-6);
}

TEST(Ratio, TooLarge) {
  const auto base = make_probe_base(oracle::fix_b());
  EXPECT_THROW(perturbation_ratio(base, unit(2, 1, 2), 0.0), InvalidInput);
  // b -> [0, 1] ties sigma_2 with sigma_hat_1.
  PerturbationDirection d = unit(2, 1, 2);
  d.delta_b(0) = -1.0;
  EXPECT_THROW(perturbation_ratio(base, d, 1.0), PerturbationTooLarge);
}

TEST(Worst, FixtureA) {
  const auto base = make_probe_base(oracle::fix_a());
  const auto w = worst_direction(base.work);
  EXPECT_NEAR(w.delta_a(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(w.delta_a(1, 0), 1 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(w.delta_b(0), 2 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(w.delta_b(1), 0.0, 1e-15);
  EXPECT_NEAR(perturbation_ratio(base, w, 1e-8) / (std::sqrt(5.0) / 3), 1.0, 1e-3);
}

TEST(Worst, AttainsNorm) {
  const auto base = make_probe_base(generate_ab_alpha(12, 3, 0.4, 2));
  const auto w = worst_direction(base.work);
  EXPECT_NEAR(w.norm(), 1.0, 1e-14);
  EXPECT_NEAR((base.work.k_matrix * w.stacked()).norm() / base.kappa, 1.0, 1e-10);
}

TEST(Convergence, FirstOrderRemainder) {
  const auto base = make_probe_base(generate_ab_alpha(20, 5, 0.5, 3));
  const auto w = worst_direction(base.work);
  const auto study = convergence_study(base, w, {1e-4, 1e-5, 1e-6});
  ASSERT_EQ(study.points.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    const double drop = study.points[i - 1].vector_remainder / study.points[i].vector_remainder;
    EXPECT_GT(drop, 5.0);
    EXPECT_LT(drop, 20.0);
  }
  ASSERT_TRUE(study.slope.has_value());
  EXPECT_NEAR(*study.slope, 1.0, 0.2);
}

TEST(Convergence, HalvingHalvesRemainder) {
  const auto base = make_probe_base(generate_ab_alpha(20, 5, 0.5, 4));
  const auto d = random_direction(20, 5, 8);
  const auto study = convergence_study(base, d, {2e-4, 1e-4});
  EXPECT_NEAR(study.points[0].vector_remainder / study.points[1].vector_remainder, 2.0, 0.2);
}

TEST(Convergence, RoundingFloorFlagged) {
  const auto base = make_probe_base(oracle::fix_b());
  const double t = 1e-13 * base.problem.augmented_norm();
  const auto study = convergence_study(base, worst_direction(base.work), {1e-4, t});
  EXPECT_FALSE(study.points[0].rounding_dominated);
  EXPECT_TRUE(study.points[1].rounding_dominated);
  EXPECT_FALSE(study.slope.has_value());
}

TEST(MonteCarlo, FixtureB) {
  ValidationOptions opt;
  opt.seed = 21;
  const auto s = monte_carlo_validate(oracle::fix_b(), opt);
  const double kappa = std::sqrt(3.0) * oracle::phi;
  EXPECT_EQ(s.ratios.size(), 100u);
  for (double r : s.ratios) EXPECT_LE(r, kappa * 1.001);
  EXPECT_GE(s.worst_direction_ratio, kappa * 0.999);
  EXPECT_TRUE(s.sound);
  EXPECT_TRUE(s.attained);
}

TEST(MonteCarlo, ZeroTrialsAndDeterminism) {
  ValidationOptions opt;
  opt.trials = 0;
  const auto s = monte_carlo_validate(oracle::fix_a(), opt);
  EXPECT_TRUE(s.ratios.empty());
  EXPECT_EQ(s.max_observed_ratio, s.worst_direction_ratio);

  opt.trials = 10;
  opt.seed = 4;
  const auto p = generate_ab_alpha(10, 3, 0.5, 1);
  EXPECT_EQ(monte_carlo_validate(p, opt).ratios, monte_carlo_validate(p, opt).ratios);
}

TEST(MonteCarlo, RejectsBadOptions) {
  ValidationOptions opt;
  opt.trials = -1;
  EXPECT_THROW(monte_carlo_validate(oracle::fix_b(), opt), InvalidInput);
  opt.trials = 1;
  opt.step = 0.0;
  EXPECT_THROW(monte_carlo_validate(oracle::fix_b(), opt), InvalidInput);
}
