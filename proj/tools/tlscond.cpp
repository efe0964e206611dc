#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tlscond/cond_bounds.hpp"
#include "tlscond/cond_exact.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"
#include "tlscond/perturb_lab.hpp"
#include "tlscond/problem.hpp"
#include "tlscond/report.hpp"
#include "tlscond/tables.hpp"
#include "tlscond/tls_core.hpp"

using namespace tlscond;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "n/a"; }

ProblemFormat pick_format(const std::string& flag, const std::string& path) {
  if (flag == "mm") return ProblemFormat::matrix_market;
  if (flag == "csv") return ProblemFormat::csv;
  return format_from_path(path);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_solve(const TlsProblem& problem) {
  const SvdBundle bundle = svd_bundle(problem);
  const TlsSolution sol = solve_tls(problem, bundle);
  const GapDiagnostics gap = check_uniqueness(bundle);
  std::cout << "m " << problem.rows() << "\nn " << problem.cols() << '\n';
  std::cout << "x";
  for (Eigen::Index i = 0; i < sol.x.size(); ++i) std::cout << ' ' << num(sol.x(i));
  std::cout << "\nx_norm " << num(sol.x_norm()) << "\nalpha " << num(sol.alpha)
            << "\nresidual_norm " << num(sol.r.norm()) << "\nsigma_n1 " << num(bundle.sigma_min())
            << "\nsigma_hat_n " << num(bundle.sigma_hat_min()) << "\nrel_gap " << num(gap.rel_gap)
            << "\nidentities_ok " << (sol.identity_residuals.within_tolerance() ? "yes" : "no")
            << '\n';
  print_warnings(sol.warnings);
  return 0;
}

int cmd_cond(const TlsProblem& problem, const std::string& method) {
  const SvdBundle bundle = svd_bundle(problem);
  const TlsSolution sol = solve_tls(problem, bundle);
  const bool want_k = method == "kron" || method == "all";
  const ExactFormulaWork work = want_k ? build_k_matrix(problem, bundle, sol)
                                       : build_formula_work(problem, bundle, sol);
  auto run = [&](CondMethod m) -> ConditionEstimate {
    switch (m) {
      case CondMethod::kronecker: return kron_condition(work, problem, sol);
      case CondMethod::cholesky: return cholesky_condition(work, problem, bundle, sol);
      case CondMethod::svd: return svd_condition(work, bundle, sol);
      case CondMethod::baboulin: return baboulin_condition(work, bundle, sol);
    }
    throw InvalidInput("unknown method");
  };
  auto emit = [&](const ConditionEstimate& e) {
    std::cout << to_string(e.method) << " kappa " << num(e.kappa_abs) << " kappa_rel "
              << num(e.kappa_rel) << '\n';
    print_warnings(e.warnings);
  };
  if (method != "all") {
    const CondMethod m = method == "kron"       ? CondMethod::kronecker
                         : method == "cholesky" ? CondMethod::cholesky
                         : method == "svd"      ? CondMethod::svd
                                                : CondMethod::baboulin;
    emit(run(m));
    return 0;
  }
  // With --method all, a gated method is reported and the others still run.
  int status = 0;
  for (CondMethod m : {CondMethod::kronecker, CondMethod::cholesky, CondMethod::svd,
                       CondMethod::baboulin}) {
    try {
      emit(run(m));
    } catch (const Error& e) {
      std::cout << to_string(m) << " error " << to_string(e.kind()) << '\n';
      std::cerr << "error: " << e.what() << '\n';
      if (status == 0) status = exit_code(e.kind());
    }
  }
  return status;
}

int cmd_bounds(const TlsProblem& problem) {
  const SvdBundle bundle = svd_bundle(problem);
  const TlsSolution sol = solve_tls(problem, bundle);
  const ExactFormulaWork work = build_formula_work(problem, bundle, sol);
  const BoundsReport rep = bounds_report(problem, bundle, sol, work);
  std::cout << "kappa " << num(rep.kappa_reference) << "\nkappa_rel " << num(rep.kappa_reference_rel)
            << "\nalpha " << num(rep.alpha) << "\nrho " << num(rep.rho) << '\n';
  std::printf("%-16s %-24s %-24s %-24s %-24s %s\n", "family", "lower", "upper", "lower_rel",
              "upper_rel", "encloses");
  for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
    const BoundPair& p = rep.pairs[i];
    const BoundPair& r = rep.relative_pairs[i];
    const FamilyVerdict& v = rep.verdict(p.family);
    const std::string encl = v.encloses ? (*v.encloses ? "yes" : "NO") : "-";
    std::printf("%-16s %-24s %-24s %-24s %-24s %s\n", to_string(p.family), num(p.lower).c_str(),
                num(p.upper).c_str(), num(r.lower).c_str(), num(r.upper).c_str(), encl.c_str());
    if (!p.applicability_note.empty()) std::cerr << "note: " << p.applicability_note << '\n';
  }
  if (!rep.all_enclose()) throw VerdictFailure("a bound family fails to enclose kappa");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total least squares solver and condition number toolkit"};
  app.require_subcommand(1);

  std::string input, format = "auto", method = "all", out, kind = "alpha";
  long long m = 0, n = 0, omega = 8;
  double alpha = 0.5, spread = 1.25, gamma = 1e-3;
  std::uint64_t seed = 1;
  int trials = 100, example = 2, seeds = 1;
  std::optional<double> step;
  bool json = false;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", input, "problem file (.mtx, .mm or .csv)")->required();
    sub->add_option("--format", format, "mm, csv or auto")
        ->check(CLI::IsMember({"mm", "csv", "auto"}));
  };

  auto* solve = app.add_subcommand("solve", "solve a TLS problem");
  add_input(solve);
  auto* cond = app.add_subcommand("cond", "condition number");
  add_input(cond);
  cond->add_option("--method", method)->check(
      CLI::IsMember({"kron", "cholesky", "svd", "baboulin", "all"}));
  auto* bounds = app.add_subcommand("bounds", "condition number bounds");
  add_input(bounds);

  auto* gen = app.add_subcommand("gen", "generate a test problem");
  gen->add_option("--kind", kind)->check(CLI::IsMember({"alpha", "kammnagy"}));
  gen->add_option("--m", m)->required();
  gen->add_option("--n", n, "columns (alpha kind)");
  gen->add_option("--alpha", alpha, "target alpha in (0,1)");
  gen->add_option("--omega", omega, "kernel half-width");
  gen->add_option("--spread", spread, "kernel width");
  gen->add_option("--gamma", gamma, "noise level");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out)->required();

  auto* validate = app.add_subcommand("validate", "perturbation experiments");
  add_input(validate);
  validate->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  validate->add_option("--step", step, "step relative to ||[A b]||_F (default 1e-8)");
  validate->add_option("--seed", seed);

  auto* table = app.add_subcommand("table", "example tables");
  table->add_option("--example", example)->check(CLI::IsMember({1, 2}));
  table->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
  table->add_option("--seed", seed);
  table->add_option("--out", out)->required();
  table->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed() || cond->parsed() || bounds->parsed() || validate->parsed()) {
      const TlsProblem problem = load_problem(input, pick_format(format, input));
      if (solve->parsed()) return cmd_solve(problem);
      if (cond->parsed()) return cmd_cond(problem, method);
      if (bounds->parsed()) return cmd_bounds(problem);

      ValidationOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      if (step) opt.step = *step * problem.augmented_norm();
      const ValidationSummary s = monte_carlo_validate(problem, opt);
      std::cout << "kappa " << num(s.kappa_reference) << "\ntrials " << s.trials << "\nstep "
                << num(s.step) << "\nmax_observed_ratio " << num(s.max_observed_ratio)
                << "\nworst_direction_ratio " << num(s.worst_direction_ratio)
                << "\nconvergence_slope " << num(s.convergence.slope) << "\nsound "
                << (s.sound ? "yes" : "no") << "\nattained " << (s.attained ? "yes" : "no")
                << '\n';
      if (!s.sound) throw VerdictFailure("observed ratio exceeds kappa");
      return 0;
    }
    if (gen->parsed()) {
      if (kind == "alpha") {
        save_problem(generate_ab_alpha(m, n, alpha, seed), out, format_from_path(out));
      } else {
        KammNagyConfig c{m, omega, spread, gamma, seed};
        save_problem(kamm_nagy_problem(c), out, format_from_path(out));
      }
      return 0;
    }
    TableOptions opt{seed, seeds};
    const ReportDocument doc =
        example == 1 ? run_table_example1({100, 300, 500}, opt)
                     : run_table_example2({{500, 350}, {1000, 750}}, {1e-2, 1e-3, 1e-5, 1e-7}, opt);
    save_report(doc, out, json ? ReportFormat::json : ReportFormat::csv);
    std::cout << format_report_table(doc);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
}
