#include "tlscond/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"
#include "tlscond/errors.hpp"

namespace tlscond {

void ReportRow::set(const std::string& name, FieldValue value) {
  for (auto& [key, cell] : fields) {
    if (key == name) {
      cell = value;
      return;
    }
  }
  fields.emplace_back(name, value);
}

FieldValue ReportRow::get(const std::string& name) const {
  for (const auto& [key, cell] : fields) {
    if (key == name) return cell;
  }
  return std::nullopt;
}

bool ReportRow::has(const std::string& name) const {
  return std::any_of(fields.begin(), fields.end(),
                     [&](const auto& f) { return f.first == name; });
}

void ReportDocument::set_metadata(const std::string& key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(key, std::move(value));
}

std::optional<std::string> ReportDocument::metadata_value(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> ReportDocument::columns() const {
  std::vector<std::string> names;
  for (const auto& row : rows) {
    for (const auto& [key, cell] : row.fields) {
      if (std::find(names.begin(), names.end(), key) == names.end()) names.push_back(key);
    }
  }
  return names;
}

std::string report_to_csv(const ReportDocument& report) {
  const auto cols = report.columns();
  std::ostringstream out;
  out << "label";
  for (const auto& c : cols) out << ',' << detail::quote_csv_field(c);
  out << '\n';
  for (const auto& row : report.rows) {
    out << detail::quote_csv_field(row.label);
    for (const auto& c : cols) {
      const auto v = row.get(c);
      out << ',' << (v ? detail::format_double(*v) : std::string("NA"));
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const ReportDocument& report) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) doc["metadata"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["label"] = row.label;
    for (const auto& [key, cell] : row.fields) {
      if (cell) {
        r[key] = *cell;
      } else {
        r[key] = nullptr;
      }
    }
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

ReportDocument report_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ReportDocument doc;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (header.empty()) {
      if (fields.empty() || fields.front() != "label") {
        throw ParseError("report CSV must start with a 'label' column");
      }
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError("report CSV row has " + std::to_string(fields.size()) +
                       " fields, header has " + std::to_string(header.size()));
    }
    ReportRow row;
    row.label = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto cell = detail::trim(fields[i]);
      if (cell == "NA") {
        row.set(header[i], std::nullopt);
        continue;
      }
      auto value = detail::parse_double(cell);
      if (!value) throw ParseError("malformed report value '" + fields[i] + "'");
      row.set(header[i], *value);
    }
    doc.rows.push_back(std::move(row));
  }
  if (header.empty()) throw ParseError("empty report CSV");
  return doc;
}

ReportDocument report_from_json(const std::string& text) {
  ReportDocument doc;
  nlohmann::ordered_json parsed;
  try {
    parsed = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  if (!parsed.is_object() || !parsed.contains("rows") || !parsed["rows"].is_array()) {
    throw ParseError("report JSON needs a 'rows' array");
  }
  if (parsed.contains("metadata")) {
    for (const auto& [k, v] : parsed["metadata"].items()) {
      doc.metadata.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  for (const auto& r : parsed["rows"]) {
    ReportRow row;
    for (const auto& [k, v] : r.items()) {
      if (k == "label") {
        row.label = v.get<std::string>();
      } else if (v.is_null()) {
        row.set(k, std::nullopt);
      } else if (v.is_number()) {
        row.set(k, v.get<double>());
      } else {
        throw ParseError("report field '" + k + "' is neither a number nor null");
      }
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

void save_report(const ReportDocument& report, const std::filesystem::path& path,
                 ReportFormat format) {
  if (report.rows.empty()) throw InvalidInput("refusing to save a report with no rows");
  for (const auto& row : report.rows) {
    for (const auto& [key, cell] : row.fields) {
      if (cell && !std::isfinite(*cell)) {
        throw InvalidInput("report field '" + key + "' is not finite");
      }
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << (format == ReportFormat::csv ? report_to_csv(report) : report_to_json(report));
  if (!out) throw IoError("failed writing " + path.string());
}

ReportDocument load_report(const std::filesystem::path& path, ReportFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return format == ReportFormat::csv ? report_from_csv(buffer.str())
                                     : report_from_json(buffer.str());
}

std::string format_report_table(const ReportDocument& report) {
  const auto cols = report.columns();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"label"};
  head.insert(head.end(), cols.begin(), cols.end());
  cells.push_back(head);
  for (const auto& row : report.rows) {
    std::vector<std::string> line{row.label};
    for (const auto& c : cols) {
      const auto v = row.get(c);
      if (!v) {
        line.emplace_back("-");
        continue;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2e", *v);
      line.emplace_back(buf);
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      out << line[i] << std::string(width[i] - line[i].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tlscond
