#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlscond {

/// A numeric cell; std::nullopt means "not applicable".
using FieldValue = std::optional<double>;

struct ReportRow {
  std::string label;
  std::vector<std::pair<std::string, FieldValue>> fields;

  /// Overwrites an existing field or appends a new one, keeping insertion order.
  void set(const std::string& name, FieldValue value);
  /// Returns nullopt both for missing and not-applicable fields.
  FieldValue get(const std::string& name) const;
  bool has(const std::string& name) const;
};

struct ReportDocument {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ReportRow> rows;

  void set_metadata(const std::string& key, std::string value);
  std::optional<std::string> metadata_value(const std::string& key) const;
  /// Union of field names over all rows, in first-seen order.
  std::vector<std::string> columns() const;
};

enum class ReportFormat { csv, json };

/// CSV: header "label,<columns...>", "NA" for not-applicable cells, no metadata.
/// JSON: {"metadata": {...}, "rows": [{"label": ..., <column>: number|null}]}.
/// Numbers are written with 17 significant digits. Throws InvalidInput on an
/// empty report and IoError on write failure.
void save_report(const ReportDocument& report, const std::filesystem::path& path,
                 ReportFormat format);

ReportDocument load_report(const std::filesystem::path& path, ReportFormat format);

std::string report_to_csv(const ReportDocument& report);
std::string report_to_json(const ReportDocument& report);
ReportDocument report_from_csv(const std::string& text);
ReportDocument report_from_json(const std::string& text);

/// Fixed-width text table, 3 significant digits in scientific notation.
std::string format_report_table(const ReportDocument& report);

}  // namespace tlscond
