#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tlscond/problem.hpp"
#include "tlscond/report.hpp"

namespace tlscond {

/// Column names shared by both tables, in output order.
///   sigma_ratio        sigma_{n+1} / sigma_n
///   gap_hat            1 - sigma_{n+1} / sigma_hat_n
///   kappa_rel          relative condition number (two-SVD formula)
///   kappa2_lower_rel, kappa2_upper_rel, kappa1_upper_rel   relative bounds
///   bhm                sigma_hat_1 / (sigma_hat_n - sigma_{n+1})
const std::vector<std::string>& table_columns();

/// One table row for an arbitrary problem. Throws VerdictFailure when a bound
/// family fails to enclose the reference value.
ReportRow table_row(const TlsProblem& problem, const std::string& label);

struct TableOptions {
  std::uint64_t seed = 1;
  int seeds = 1;  // replicates; cells are medians over replicates
};

/// Replicate k uses seed + k.
std::vector<std::uint64_t> replicate_seeds(const TableOptions& options);

/// Toeplitz deblurring rows (omega = 8, spread = 1.25, gamma = 1e-3), one per m.
ReportDocument run_table_example1(const std::vector<Eigen::Index>& m_list,
                                  const TableOptions& options = {});

/// Controlled-alpha rows, one per (shape, alpha); every row of one replicate
/// uses the same generator seed.
ReportDocument run_table_example2(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& shapes,
                                  const std::vector<double>& alphas,
                                  const TableOptions& options = {});

}  // namespace tlscond
