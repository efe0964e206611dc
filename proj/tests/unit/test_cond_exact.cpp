#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tlscond/cond_exact.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"

using namespace tlscond;

namespace {

struct Solved {
  TlsProblem problem;
  SvdBundle bundle;
  TlsSolution solution;
  ExactFormulaWork work;

  explicit Solved(TlsProblem p)
      : problem(std::move(p)),
        bundle(svd_bundle(problem)),
        solution(solve_tls(problem, bundle)),
        work(build_k_matrix(problem, bundle, solution)) {}

  double kron() const { return kron_condition(work, problem, solution).kappa_abs; }
  double chol() const { return cholesky_condition(work, problem, bundle, solution).kappa_abs; }
  double svd() const { return svd_condition(work, bundle, solution).kappa_abs; }
  double bab() const { return baboulin_condition(work, bundle, solution).kappa_abs; }
};

}  // namespace

TEST(KMatrix, FixtureAExact) {
  Solved s(oracle::fix_a());
  ASSERT_EQ(s.work.k_matrix.rows(), 1);
  ASSERT_EQ(s.work.k_matrix.cols(), 4);
  const double expected[] = {0.0, 1.0 / 3, 2.0 / 3, 0.0};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(s.work.k_matrix(0, j), expected[j], 1e-14);
}

TEST(KMatrix, Shape) {
  Solved s(generate_ab_alpha(5, 3, 0.5, 1));
  EXPECT_EQ(s.work.k_matrix.rows(), 3);
  EXPECT_EQ(s.work.k_matrix.cols(), 20);
}

TEST(KMatrix, MatchesFiniteDifferences) {
  for (auto p : {oracle::fix_b(), generate_ab_alpha(8, 3, 0.6, 2), generate_ab_alpha(10, 4, 0.3, 5)}) {
    Solved s(p);
    const Eigen::MatrixXd fd = oracle::fd_k(p);
    EXPECT_LT((s.work.k_matrix - fd).norm(), 1e-6 * fd.norm()) << p.label();
  }
}

TEST(Condition, FixtureA) {
  Solved s(oracle::fix_a());
  const double k = std::sqrt(5.0) / 3;
  EXPECT_NEAR(s.kron(), k, 1e-14);
  EXPECT_NEAR(s.chol(), k, 1e-14);
  EXPECT_NEAR(s.svd(), k, 1e-14);
  EXPECT_NEAR(s.bab(), k, 1e-14);
  EXPECT_FALSE(svd_condition(s.work, s.bundle, s.solution).kappa_rel.has_value());
  EXPECT_NEAR(s.work.c_matrix(0, 0), 5.0, 1e-14);
  EXPECT_NEAR(s.work.l_factor(0, 0), std::sqrt(5.0), 1e-14);
}

TEST(Condition, FixtureBClosedForm) {
  Solved s(oracle::fix_b());
  const double k = (5 + std::sqrt(5.0)) / 2 * std::sqrt(3.0 / 5);
  for (double v : {s.kron(), s.chol(), s.svd(), s.bab()}) EXPECT_NEAR(v / k, 1.0, 1e-10);
  const double kr = *svd_condition(s.work, s.bundle, s.solution).kappa_rel;
  EXPECT_NEAR(kr, k * std::sqrt(3.0) / oracle::phi, 1e-10 * kr);
  EXPECT_NEAR(kr, 3.0, 1e-10);
  // brute-force K agrees
  EXPECT_NEAR(oracle::norm2(oracle::fd_k(s.problem)) / k, 1.0, 1e-6);
}

TEST(Condition, FourFormulasAgreeAndMatchDenseOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Solved s(generate_ab_alpha(50, 10, 0.5, seed));
    const double ref = s.svd();
    EXPECT_NEAR(s.kron() / ref, 1.0, 1e-8);
    EXPECT_NEAR(s.chol() / ref, 1.0, 1e-8);
    EXPECT_NEAR(s.bab() / ref, 1.0, 1e-8);
    EXPECT_NEAR(oracle::dense_svd_kappa(s.problem) / ref, 1.0, 1e-8);
  }
}

TEST(Condition, SmallGapGates) {
  const auto p = generate_ab_alpha(15, 10, 1e-8, 11);
  const auto b = svd_bundle(p);
  const auto sol = solve_tls(p, b);
  const auto w = build_formula_work(p, b, sol);
  EXPECT_THROW(cholesky_condition(w, p, b, sol), IllConditionedGap);
  EXPECT_THROW(baboulin_condition(w, b, sol), IllConditionedGap);
  const auto e = svd_condition(w, b, sol);
  EXPECT_TRUE(std::isfinite(e.kappa_abs));
  EXPECT_TRUE(e.warnings.empty());
}

TEST(Condition, KronNeedsK) {
  const auto p = oracle::fix_b();
  const auto b = svd_bundle(p);
  const auto sol = solve_tls(p, b);
  EXPECT_THROW(kron_condition(build_formula_work(p, b, sol), p, sol), InvalidInput);
}

TEST(Condition, MethodNames) {
  EXPECT_STREQ(to_string(CondMethod::kronecker), "kron");
  EXPECT_STREQ(to_string(CondMethod::baboulin), "baboulin");
}

TEST(V11, FixtureBSingleValueIsAlpha) {
  const auto p = oracle::fix_b();
  const auto b = svd_bundle(p);
  const auto sol = solve_tls(p, b);
  const auto v = v11_spectrum(b, sol);
  EXPECT_NEAR(v.singular_values(0), 1 / std::sqrt(1 + oracle::phi * oracle::phi), 1e-14);
}

TEST(V11, SpectrumIsOnesThenAlpha) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = generate_ab_alpha(20, 6, 0.2, seed);
    const auto b = svd_bundle(p);
    const auto sol = solve_tls(p, b);
    const auto v = v11_spectrum(b, sol);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(v.singular_values(i), 1.0, 1e-10);
    EXPECT_NEAR(v.singular_values(5), sol.alpha, 1e-10);
  }
}

TEST(V11, TinyAlphaCondition) {
  const auto p = generate_ab_alpha(15, 10, 1e-8, 4);
  const auto b = svd_bundle(p);
  EXPECT_NEAR(v11_spectrum(b, solve_tls(p, b)).kappa_v11 / 1e8, 1.0, 1e-6);
}

TEST(Relative, Scaling) {
  Solved s(oracle::fix_b());
  EXPECT_NEAR(*relative_condition(2.0, s.work), 2.0 * std::sqrt(3.0) / oracle::phi, 1e-14);
  Solved z(oracle::fix_a());
  EXPECT_FALSE(relative_condition(1.0, z.work).has_value());
}
