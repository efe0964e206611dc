#include "tlscond/problem.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "tlscond/errors.hpp"
#include "text_util.hpp"

namespace tlscond {

TlsProblem::TlsProblem(Eigen::MatrixXd a, Eigen::VectorXd b, std::string label)
    : a_(std::move(a)), b_(std::move(b)), label_(std::move(label)) {
  if (a_.cols() < 1 || a_.rows() <= a_.cols()) {
    throw ShapeError("TLS problem needs m > n >= 1, got m=" + std::to_string(a_.rows()) +
                     ", n=" + std::to_string(a_.cols()));
  }
  if (b_.size() != a_.rows()) {
    throw ShapeError("right-hand side has length " + std::to_string(b_.size()) +
                     ", expected " + std::to_string(a_.rows()));
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw InvalidInput("TLS problem contains non-finite entries");
  }
}

TlsProblem TlsProblem::from_augmented(const Eigen::MatrixXd& ab, std::string label) {
  if (ab.rows() == 0 || ab.cols() < 2) {
    throw ShapeError("augmented array must have at least two columns and one row");
  }
  const Eigen::Index n = ab.cols() - 1;
  return TlsProblem(ab.leftCols(n), ab.col(n), std::move(label));
}

Eigen::MatrixXd TlsProblem::augmented() const {
  Eigen::MatrixXd ab(rows(), cols() + 1);
  ab << a_, b_;
  return ab;
}

double TlsProblem::augmented_norm() const {
  return std::sqrt(a_.squaredNorm() + b_.squaredNorm());
}

TlsProblem TlsProblem::perturbed(const Eigen::MatrixXd& delta_a,
                                 const Eigen::VectorXd& delta_b, double t) const {
  return TlsProblem(a_ + t * delta_a, b_ + t * delta_b, label_ + "+perturbed");
}

TlsProblem TlsProblem::scaled(double c) const {
  return TlsProblem(c * a_, c * b_, label_);
}

ProblemFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".mtx" || ext == ".mm") return ProblemFormat::matrix_market;
  return ProblemFormat::csv;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  for (const auto& field : detail::split_csv_line(line)) {
    auto value = detail::parse_double(detail::trim(field));
    if (!value) return false;
    out.push_back(*value);
  }
  return !out.empty();
}

}  // namespace

TlsProblem parse_problem_csv(const std::string& text, std::string label) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const bool numeric = parse_row(line, row);
    if (first) {
      first = false;
      // First line is the header; a fully numeric first line is taken as data.
      if (!numeric) continue;
    }
    if (!numeric) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed numeric row");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ShapeError("CSV contains no data rows");
  Eigen::MatrixXd ab(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < ab.rows(); ++i) {
    for (Eigen::Index j = 0; j < ab.cols(); ++j) ab(i, j) = rows[i][j];
  }
  return TlsProblem::from_augmented(ab, std::move(label));
}

TlsProblem parse_problem_matrix_market(const std::string& text, std::string label) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty MatrixMarket file");
  std::istringstream banner(line);
  std::string tag, object, layout, field, symmetry;
  banner >> tag >> object >> layout >> field >> symmetry;
  auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(layout) != "array" ||
      lower(field) != "real" || lower(symmetry) != "general") {
    throw ParseError("expected '%%MatrixMarket matrix array real general' header");
  }
  do {
    if (!std::getline(in, line)) throw ParseError("missing MatrixMarket size line");
  } while (detail::trim(line).empty() || line.front() == '%');

  long long m = 0, cols = 0;
  {
    std::istringstream size_line(line);
    std::string extra;
    if (!(size_line >> m >> cols) || (size_line >> extra) || m <= 0 || cols <= 0) {
      throw ParseError("malformed MatrixMarket size line: '" + line + "'");
    }
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m * cols));
  std::string token;
  while (in >> token) {
    if (token.front() == '%') {
      std::getline(in, line);
      continue;
    }
    auto value = detail::parse_double(token);
    if (!value) throw ParseError("malformed MatrixMarket entry '" + token + "'");
    values.push_back(*value);
  }
  if (values.size() != static_cast<std::size_t>(m * cols)) {
    throw ParseError("MatrixMarket array declares " + std::to_string(m * cols) +
                     " entries, found " + std::to_string(values.size()));
  }
  // Array format stores entries column by column.
  Eigen::Map<const Eigen::MatrixXd> ab(values.data(), m, cols);
  return TlsProblem::from_augmented(ab, std::move(label));
}

TlsProblem load_problem(const std::filesystem::path& path, ProblemFormat format) {
  const std::string text = read_file(path);
  const std::string label = path.stem().string();
  return format == ProblemFormat::csv ? parse_problem_csv(text, label)
                                      : parse_problem_matrix_market(text, label);
}

void save_problem(const TlsProblem& problem, const std::filesystem::path& path,
                  ProblemFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const Eigen::MatrixXd ab = problem.augmented();
  if (format == ProblemFormat::csv) {
    for (Eigen::Index j = 0; j < problem.cols(); ++j) out << 'a' << (j + 1) << ',';
    out << "b\n";
    for (Eigen::Index i = 0; i < ab.rows(); ++i) {
      for (Eigen::Index j = 0; j < ab.cols(); ++j) {
        if (j) out << ',';
        out << detail::format_double(ab(i, j));
      }
      out << '\n';
    }
  } else {
    out << "%%MatrixMarket matrix array real general\n";
    if (!problem.label().empty()) out << "% " << problem.label() << '\n';
    out << ab.rows() << ' ' << ab.cols() << '\n';
    for (Eigen::Index j = 0; j < ab.cols(); ++j) {
      for (Eigen::Index i = 0; i < ab.rows(); ++i) out << detail::format_double(ab(i, j)) << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace tlscond
