#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/problem.hpp"
#include "tlscond/report.hpp"

using namespace tlscond;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("tlscond_test_" + name);
}

}  // namespace

TEST(Problem, CsvColumnSplit) {
  const auto p = parse_problem_csv("2,0\n0,1\n");
  EXPECT_EQ(p.rows(), 2);
  EXPECT_EQ(p.cols(), 1);
  EXPECT_EQ(p.a()(0, 0), 2.0);
  EXPECT_EQ(p.b()(1), 1.0);
}

TEST(Problem, CsvHeaderIsSkipped) {
  const auto p = parse_problem_csv("a1,b\n2,0\n0,1\n");
  EXPECT_EQ(p.rows(), 2);
}

TEST(Problem, ShapeRejected) {
  EXPECT_THROW(parse_problem_csv("1,2,3,4,5\n1,2,3,4,5\n1,2,3,4,5\n"), ShapeError);
  EXPECT_THROW(TlsProblem(Eigen::MatrixXd(3, 0), Eigen::VectorXd(3)), ShapeError);
  EXPECT_THROW(TlsProblem(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(2)), ShapeError);
}

TEST(Problem, RaggedCsvIsParseError) {
  EXPECT_THROW(parse_problem_csv("1,2\n3\n4,5\n"), ParseError);
  EXPECT_THROW(parse_problem_csv("1,2\n3,x\n4,5\n"), ParseError);
}

TEST(Problem, NonFiniteRejected) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(3, 1);
  a(1, 0) = std::nan("");
  EXPECT_THROW(TlsProblem(a, Eigen::VectorXd::Ones(3)), InvalidInput);
}

TEST(Problem, MatrixMarketWrongCount) {
  const std::string text = "%%MatrixMarket matrix array real general\n3 2\n1\n2\n3\n4\n5\n";
  EXPECT_THROW(parse_problem_matrix_market(text), ParseError);
}

TEST(Problem, MatrixMarketColumnMajor) {
  const std::string text =
      "%%MatrixMarket matrix array real general\n% comment\n3 2\n1\n2\n3\n4\n5\n6\n";
  const auto p = parse_problem_matrix_market(text);
  EXPECT_EQ(p.a()(2, 0), 3.0);
  EXPECT_EQ(p.b()(0), 4.0);
}

TEST(Problem, RoundTripBothFormats) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(6, 3, [&] { return d(rng); });
  Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(6, [&] { return d(rng); });
  const TlsProblem p(a, b);
  for (auto [name, fmt] : {std::pair{"p.mtx", ProblemFormat::matrix_market},
                           std::pair{"p.csv", ProblemFormat::csv}}) {
    const auto path = temp_file(name);
    save_problem(p, path, fmt);
    const auto q = load_problem(path, format_from_path(path));
    EXPECT_EQ(q.a(), p.a());
    EXPECT_EQ(q.b(), p.b());
    fs::remove(path);
  }
}

TEST(Problem, MissingFileIsIoError) {
  EXPECT_THROW(load_problem("/nonexistent/dir/x.csv", ProblemFormat::csv), IoError);
}

TEST(Problem, PerturbedAndScaled) {
  const auto p = oracle::fix_b();
  const auto q = p.perturbed(Eigen::MatrixXd::Ones(2, 1), Eigen::VectorXd::Ones(2), 0.5);
  EXPECT_DOUBLE_EQ(q.a()(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(q.b()(0), 1.5);
  EXPECT_DOUBLE_EQ(p.scaled(2.0).augmented_norm(), 2.0 * std::sqrt(3.0));
}

TEST(Report, MinimalCsv) {
  ReportDocument doc;
  ReportRow row;
  row.label = "r";
  row.set("kappa", 1.5);
  doc.rows.push_back(row);
  const std::string csv = report_to_csv(doc);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,kappa");
}

TEST(Report, NotApplicableIsJsonNull) {
  ReportDocument doc;
  ReportRow row;
  row.label = "r";
  row.set("kappa2_upper", std::nullopt);
  doc.rows.push_back(row);
  EXPECT_NE(report_to_json(doc).find("null"), std::string::npos);
}

TEST(Report, RoundTripThreeRows) {
  ReportDocument doc;
  doc.set_metadata("seeds", "1 2 3");
  for (int i = 0; i < 3; ++i) {
    ReportRow row;
    row.label = "row, \"" + std::to_string(i) + "\"";
    row.set("a", 0.1 * i + 1.0 / 3.0);
    row.set("b", i == 1 ? FieldValue{} : FieldValue{1e-300 * (i + 1)});
    doc.rows.push_back(row);
  }
  for (auto [name, fmt] : {std::pair{"r.json", ReportFormat::json},
                           std::pair{"r.csv", ReportFormat::csv}}) {
    const auto path = temp_file(name);
    save_report(doc, path, fmt);
    const auto back = load_report(path, fmt);
    ASSERT_EQ(back.rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(back.rows[i].label, doc.rows[i].label);
      EXPECT_EQ(back.rows[i].get("a"), doc.rows[i].get("a"));
      EXPECT_EQ(back.rows[i].get("b"), doc.rows[i].get("b"));
    }
    if (fmt == ReportFormat::json) EXPECT_EQ(back.metadata_value("seeds"), "1 2 3");
    fs::remove(path);
  }
}

TEST(Report, EmptyOrNonFiniteRejected) {
  ReportDocument doc;
  EXPECT_THROW(save_report(doc, temp_file("e.csv"), ReportFormat::csv), InvalidInput);
  ReportRow row;
  row.label = "r";
  row.set("x", std::numeric_limits<double>::infinity());
  doc.rows.push_back(row);
  EXPECT_THROW(save_report(doc, temp_file("e.csv"), ReportFormat::csv), InvalidInput);
}

TEST(Report, TableHasThreeSignificantDigits) {
  ReportDocument doc;
  ReportRow row;
  row.label = "r";
  row.set("kappa", 123456.0);
  doc.rows.push_back(row);
  EXPECT_NE(format_report_table(doc).find("1.23e+05"), std::string::npos);
}
