#include "waring/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace waring {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* type_name(ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Exact: return "exact";
    case ColumnType::Real: return "real";
    case ColumnType::Text: return "text";
    case ColumnType::Boolean: return "boolean";
  }
  return "text";
}

ColumnType type_from_name(const std::string& name) {
  if (name == "integer") return ColumnType::Integer;
  if (name == "exact") return ColumnType::Exact;
  if (name == "real") return ColumnType::Real;
  if (name == "text") return ColumnType::Text;
  if (name == "boolean") return ColumnType::Boolean;
  throw std::invalid_argument("report: unknown column type \"" + name + "\"");
}

void check_cell(const Cell& cell, ColumnType type, const std::string& name) {
  const bool ok = (type == ColumnType::Integer && std::holds_alternative<std::int64_t>(cell)) ||
                  (type == ColumnType::Exact && std::holds_alternative<i128>(cell)) ||
                  (type == ColumnType::Real && std::holds_alternative<double>(cell)) ||
                  (type == ColumnType::Text && std::holds_alternative<std::string>(cell)) ||
                  (type == ColumnType::Boolean && std::holds_alternative<bool>(cell));
  if (!ok) throw std::invalid_argument("report: cell type mismatch in column " + name);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

ordered_json to_json(const Cell& cell, ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return std::get<std::int64_t>(cell);
    case ColumnType::Exact: return to_string(std::get<i128>(cell));
    case ColumnType::Real: {
      const double v = std::get<double>(cell);
      if (!std::isfinite(v)) return nullptr;
      return round12(v);
    }
    case ColumnType::Text: return std::get<std::string>(cell);
    case ColumnType::Boolean: return std::get<bool>(cell);
  }
  return nullptr;
}

Cell from_json(const ordered_json& j, ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return j.get<std::int64_t>();
    case ColumnType::Exact: return parse_i128(j.get<std::string>());
    case ColumnType::Real: return j.is_null() ? std::nan("") : j.get<double>();
    case ColumnType::Text: return j.get<std::string>();
    case ColumnType::Boolean: return j.get<bool>();
  }
  return std::string{};
}

std::string csv_cell(const Cell& cell, ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return std::to_string(std::get<std::int64_t>(cell));
    case ColumnType::Exact: return to_string(std::get<i128>(cell));
    case ColumnType::Real: {
      const double v = std::get<double>(cell);
      return std::isnan(v) ? std::string{} : format_real(v);
    }
    case ColumnType::Text: {
      const auto& s = std::get<std::string>(cell);
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + "\"";
    }
    case ColumnType::Boolean: return std::get<bool>(cell) ? "true" : "false";
  }
  return {};
}

bool cells_equal(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return a == b;
}

}  // namespace

bool operator==(const Field& a, const Field& b) {
  return a.name == b.name && a.type == b.type && cells_equal(a.value, b.value);
}

bool operator==(const Report& a, const Report& b) {
  if (a.kind != b.kind || a.metadata != b.metadata || a.columns != b.columns ||
      a.rows.size() != b.rows.size())
    return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c)
      if (!cells_equal(a.rows[r][c], b.rows[r][c])) return false;
  }
  return true;
}

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("report: row width does not match columns");
  for (std::size_t c = 0; c < row.size(); ++c) check_cell(row[c], columns[c].type, columns[c].name);
  rows.push_back(std::move(row));
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string emit_report(const Report& report, ReportFormat format) {
  if (report.rows.empty()) throw std::invalid_argument("empty report");

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    for (std::size_t c = 0; c < report.columns.size(); ++c)
      out << (c ? "," : "") << report.columns[c].name;
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << csv_cell(row[c], report.columns[c].type);
      out << '\n';
    }
    return out.str();
  }

  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = report.kind;
  ordered_json meta = ordered_json::object();
  ordered_json meta_types = ordered_json::object();
  for (const auto& f : report.metadata) {
    check_cell(f.value, f.type, f.name);
    meta[f.name] = to_json(f.value, f.type);
    meta_types[f.name] = type_name(f.type);
  }
  doc["metadata"] = std::move(meta);
  doc["metadata_types"] = std::move(meta_types);
  ordered_json columns = ordered_json::array();
  for (const auto& c : report.columns) columns.push_back({{"name", c.name}, {"type", type_name(c.type)}});
  doc["columns"] = std::move(columns);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c)
      obj[report.columns[c].name] = to_json(row[c], report.columns[c].type);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  const std::string text = emit_report(report, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
}

Report parse_json_report(const std::string& text) {
  const auto doc = ordered_json::parse(text);
  if (doc.at("schema_version").get<int>() != kReportSchemaVersion)
    throw std::invalid_argument("report: unsupported schema version");
  Report report;
  report.kind = doc.at("kind").get<std::string>();
  const auto& meta_types = doc.at("metadata_types");
  for (const auto& [name, value] : doc.at("metadata").items()) {
    const auto type = type_from_name(meta_types.at(name).get<std::string>());
    report.metadata.push_back({name, type, from_json(value, type)});
  }
  for (const auto& c : doc.at("columns"))
    report.columns.push_back({c.at("name").get<std::string>(),
                              type_from_name(c.at("type").get<std::string>())});
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& c : report.columns) cells.push_back(from_json(row.at(c.name), c.type));
    report.rows.push_back(std::move(cells));
  }
  return report;
}

}  // namespace waring
