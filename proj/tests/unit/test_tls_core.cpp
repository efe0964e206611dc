#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"
#include "tlscond/tls_core.hpp"

using namespace tlscond;

TEST(SvdBundle, FixtureSpectra) {
  const auto a = svd_bundle(oracle::fix_a());
  EXPECT_NEAR(a.sigma(0), 2.0, 1e-15);
  EXPECT_NEAR(a.sigma(1), 1.0, 1e-15);
  EXPECT_NEAR(a.sigma_hat(0), 2.0, 1e-15);

  const auto b = svd_bundle(oracle::fix_b());
  EXPECT_NEAR(b.sigma(0) * b.sigma(0), (3 + std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(b.sigma(1) * b.sigma(1), (3 - std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(b.sigma_hat(0), 1.0, 1e-15);
}

TEST(SvdBundle, InterlacingAndReconstruction) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = generate_ab_alpha(12, 5, 0.3, seed);
    const auto s = svd_bundle(p);
    for (Eigen::Index i = 0; i < 5; ++i) {
      EXPECT_GE(s.sigma(i) * (1 + 1e-14), s.sigma_hat(i));
      EXPECT_GE(s.sigma_hat(i) * (1 + 1e-14), s.sigma(i + 1));
    }
    const Eigen::MatrixXd rec = s.u_aug * s.sigma.asDiagonal() * s.v_aug.transpose();
    EXPECT_LT((rec - p.augmented()).norm(), 1e-13 * p.augmented_norm());
    EXPECT_LE(s.v_aug(5, 5), 0.0);
  }
}

TEST(Uniqueness, GapArithmetic) {
  Eigen::MatrixXd a(3, 1);
  a << 2, 0, 0;
  Eigen::VectorXd b(3);
  b << 0, 1, 0;
  const auto d = check_uniqueness(svd_bundle({a, b}));
  EXPECT_TRUE(d.gap_ok);
  EXPECT_TRUE(d.nontrivial);
  EXPECT_NEAR(d.rel_gap, 0.5, 1e-15);
  EXPECT_NEAR(d.ratio_sigma_hat_n, 0.5, 1e-15);
}

TEST(Uniqueness, TrivialWhenConsistent) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const Eigen::VectorXd b = a * Eigen::Vector2d(2, -1);
  const TlsProblem p(a, b);
  EXPECT_FALSE(check_uniqueness(svd_bundle(p)).nontrivial);
  EXPECT_THROW(solve_tls(p), TrivialProblem);
}

TEST(Uniqueness, TiedSingularValues) {
  Eigen::MatrixXd a(2, 1);
  a << 1, 0;
  Eigen::VectorXd b(2);
  b << 0, 1;
  EXPECT_FALSE(check_uniqueness(svd_bundle({a, b})).gap_ok);
  EXPECT_THROW(solve_tls({a, b}), NoUniqueSolution);
}

TEST(Solve, FixtureA) {
  const auto s = solve_tls(oracle::fix_a());
  EXPECT_EQ(s.x.norm(), 0.0);
  EXPECT_NEAR(s.r(0), 0.0, 1e-15);
  EXPECT_NEAR(s.r(1), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.alpha, 1.0);
}

TEST(Solve, FixtureB) {
  const auto s = solve_tls(oracle::fix_b());
  EXPECT_NEAR(s.x(0), oracle::phi, 1e-15);
  EXPECT_NEAR(s.r(0), (std::sqrt(5.0) - 1) / 2, 1e-15);
  EXPECT_NEAR(s.r(1), -1.0, 1e-15);
  EXPECT_EQ(s.cross_check, CrossCheckStatus::agreed);
  EXPECT_TRUE(s.identity_residuals.within_tolerance());
}

TEST(Solve, AgreesWithEigenOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_ab_alpha(20, 4, 0.5, seed);
    const auto s = solve_tls(p);
    const Eigen::VectorXd ref = oracle::eig_tls(p.a(), p.b());
    EXPECT_LT((s.x - ref).norm(), 1e-10 * ref.norm());
    EXPECT_NEAR(s.alpha, 0.5, 1e-10);
    EXPECT_TRUE(s.identity_residuals.within_tolerance()) << seed;
  }
}

TEST(Solve, SmallGapSkipsCrossCheck) {
  const auto s = solve_tls(generate_ab_alpha(15, 10, 1e-8, 3));
  EXPECT_EQ(s.cross_check, CrossCheckStatus::skipped_small_gap);
  EXPECT_FALSE(s.warnings.empty());
}

TEST(Golub, FixtureBChain) {
  const auto p = oracle::fix_b();
  const auto b = svd_bundle(p);
  const auto g = residual_diagnostics(p, b, solve_tls(p, b)).golub;
  ASSERT_TRUE(g.applicable);
  EXPECT_NEAR(g.lower, 1 / (2 * oracle::phi), 1e-14);
  EXPECT_NEAR(g.gap, 1 - 1 / oracle::phi, 1e-14);
  EXPECT_NEAR(g.upper, std::sqrt(2.0) / oracle::phi, 1e-14);
  EXPECT_TRUE(g.holds);
}

TEST(Golub, NotApplicableForZeroSolution) {
  const auto p = oracle::fix_a();
  const auto b = svd_bundle(p);
  EXPECT_FALSE(residual_diagnostics(p, b, solve_tls(p, b)).golub.applicable);
}
