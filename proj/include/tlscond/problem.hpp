#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

namespace tlscond {

/// The data pair (A, b) of a total least squares problem, with m > n >= 1 and
/// finite entries. Immutable once constructed.
class TlsProblem {
 public:
  /// Throws ShapeError on m <= n, n == 0 or a length mismatch, and
  /// InvalidInput on non-finite entries.
  TlsProblem(Eigen::MatrixXd a, Eigen::VectorXd b, std::string label = {});

  /// Splits an m x (n+1) array into [A b]; the last column is b.
  static TlsProblem from_augmented(const Eigen::MatrixXd& ab, std::string label = {});

  const Eigen::MatrixXd& a() const noexcept { return a_; }
  const Eigen::VectorXd& b() const noexcept { return b_; }
  const std::string& label() const noexcept { return label_; }
  Eigen::Index rows() const noexcept { return a_.rows(); }
  Eigen::Index cols() const noexcept { return a_.cols(); }

  Eigen::MatrixXd augmented() const;
  double augmented_norm() const;  // ||[A b]||_F

  /// (A + t*dA, b + t*db), relabelled.
  TlsProblem perturbed(const Eigen::MatrixXd& delta_a, const Eigen::VectorXd& delta_b,
                       double t) const;

  TlsProblem scaled(double c) const;

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::string label_;
};

enum class ProblemFormat { matrix_market, csv };

/// Picks MatrixMarket for ".mtx"/".mm" extensions and CSV otherwise.
ProblemFormat format_from_path(const std::filesystem::path& path);

/// Reads an m x (n+1) array holding [A b]. Throws IoError when the file cannot
/// be opened, ParseError on malformed content and ShapeError when m <= n.
TlsProblem load_problem(const std::filesystem::path& path, ProblemFormat format);

/// Writes [A b] with 17 significant digits so doubles round-trip exactly.
void save_problem(const TlsProblem& problem, const std::filesystem::path& path,
                  ProblemFormat format);

TlsProblem parse_problem_csv(const std::string& text, std::string label = {});
TlsProblem parse_problem_matrix_market(const std::string& text, std::string label = {});

}  // namespace tlscond
