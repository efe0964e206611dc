#include "tlscond/tables.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tlscond/cond_bounds.hpp"
#include "tlscond/cond_exact.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/generators.hpp"
#include "tlscond/tls_core.hpp"

namespace tlscond {
namespace {

FieldValue median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

// Median over replicates, cell by cell. Not-applicable cells are skipped.
ReportRow median_row(const std::vector<ReportRow>& replicates, const std::string& label) {
  ReportRow row;
  row.label = label;
  for (const auto& [name, unused] : replicates.front().fields) {
    std::vector<double> values;
    for (const auto& r : replicates) {
      if (auto v = r.get(name)) values.push_back(*v);
    }
    row.set(name, median(std::move(values)));
  }
  return row;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::ostringstream out;
  for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? " " : "") << seeds[i];
  return out.str();
}

ReportDocument run_rows(std::size_t count, const std::vector<std::uint64_t>& seeds,
                        const std::function<ReportRow(std::size_t, std::uint64_t)>& make_row) {
  ReportDocument doc;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ReportRow> replicates;
    for (const auto s : seeds) replicates.push_back(make_row(i, s));
    doc.rows.push_back(median_row(replicates, replicates.front().label));
  }
  doc.set_metadata("seeds", join_seeds(seeds));
  doc.set_metadata("replicates", std::to_string(seeds.size()));
  return doc;
}

}  // namespace

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> columns = {
      "m",       "n",   "alpha", "sigma_ratio", "gap_hat", "kappa_rel", "kappa2_lower_rel",
      "kappa2_upper_rel", "kappa1_upper_rel", "bhm"};
  return columns;
}

ReportRow table_row(const TlsProblem& problem, const std::string& label) {
  const SvdBundle bundle = svd_bundle(problem);
  const TlsSolution solution = solve_tls(problem, bundle);
  const ExactFormulaWork work = build_formula_work(problem, bundle, solution);
  const BoundsReport bounds = bounds_report(problem, bundle, solution, work);
  if (!bounds.all_enclose()) {
    throw VerdictFailure("a bound family fails to enclose the condition number on " + label);
  }
  const GapDiagnostics gap = check_uniqueness(bundle);

  ReportRow row;
  row.label = label;
  row.set("m", static_cast<double>(problem.rows()));
  row.set("n", static_cast<double>(problem.cols()));
  row.set("alpha", solution.alpha);
  row.set("sigma_ratio", gap.ratio_sigma_n);
  row.set("gap_hat", gap.rel_gap);
  row.set("kappa_rel", bounds.kappa_reference_rel);
  row.set("kappa2_lower_rel", bounds.relative_pair(BoundFamily::kappa2_lower).lower);
  row.set("kappa2_upper_rel", bounds.relative_pair(BoundFamily::kappa2_upper).upper);
  row.set("kappa1_upper_rel", bounds.relative_pair(BoundFamily::kappa1).upper);
  row.set("bhm", bounds.relative_pair(BoundFamily::bhm).upper);
  return row;
}

std::vector<std::uint64_t> replicate_seeds(const TableOptions& options) {
  if (options.seeds < 1) throw InvalidInput("seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < options.seeds; ++k) seeds.push_back(options.seed + static_cast<std::uint64_t>(k));
  return seeds;
}

ReportDocument run_table_example1(const std::vector<Eigen::Index>& m_list,
                                  const TableOptions& options) {
  ReportDocument doc = run_rows(m_list.size(), replicate_seeds(options),
                                [&](std::size_t i, std::uint64_t seed) {
                                  KammNagyConfig config;
                                  config.m = m_list[i];
                                  config.seed = seed;
                                  if (config.m < 2 * config.omega + 2) {
                                    throw InvalidInput("Example 1 rows need m >= 18");
                                  }
                                  return table_row(kamm_nagy_problem(config),
                                                   "m=" + std::to_string(config.m));
                                });
  doc.set_metadata("example", "1");
  doc.set_metadata("generator", "kamm_nagy omega=8 spread=1.25 gamma=0.001");
  return doc;
}

ReportDocument run_table_example2(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& shapes,
                                  const std::vector<double>& alphas,
                                  const TableOptions& options) {
  ReportDocument doc = run_rows(shapes.size() * alphas.size(), replicate_seeds(options),
                                [&](std::size_t i, std::uint64_t seed) {
                                  const auto [m, n] = shapes[i / alphas.size()];
                                  const double alpha = alphas[i % alphas.size()];
                                  std::ostringstream label;
                                  label << "m=" << m << " n=" << n << " alpha=" << alpha;
                                  return table_row(generate_ab_alpha(m, n, alpha, seed), label.str());
                                });
  doc.set_metadata("example", "2");
  doc.set_metadata("generator", "ab_alpha");
  return doc;
}

}  // namespace tlscond
