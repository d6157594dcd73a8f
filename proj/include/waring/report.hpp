#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "waring/int128.hpp"

namespace waring {

enum class ColumnType {
  Integer,  // fits int64; JSON number
  Exact,    // 128-bit exact integer; JSON decimal string
  Real,     // 12 significant digits; JSON number or null
  Text,
  Boolean,
};

using Cell = std::variant<std::int64_t, i128, double, std::string, bool>;

struct Column {
  std::string name;
  ColumnType type;
  friend bool operator==(const Column&, const Column&) = default;
};

struct Field {
  std::string name;
  ColumnType type;
  Cell value;
};

bool operator==(const Field& a, const Field& b);

struct Report {
  std::string kind;
  std::vector<Field> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

bool operator==(const Report& a, const Report& b);

enum class ReportFormat { Csv, Json };

inline constexpr int kReportSchemaVersion = 1;

/// Deterministic rendering: stable column order, exact integers as decimal
/// strings, reals with 12 significant digits. Throws std::invalid_argument
/// ("empty report") when there are no rows.
std::string emit_report(const Report& report, ReportFormat format);
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

/// Inverse of emit_report(..., Json).
Report parse_json_report(const std::string& text);

/// "%.12g", or "nan"/"inf"/"-inf".
std::string format_real(double value);

}  // namespace waring
