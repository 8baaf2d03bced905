#include "emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qwoa::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw CliError(kExitInternal, "record has " + std::to_string(row.size()) + " cells, expected " +
                                      std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw CliError(kExitUsage, "unknown format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell, Format format) {
  return std::visit(
      [format](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return format == Format::Csv ? csv_field(v) : nlohmann::json(v).dump();
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (format == Format::Json && !std::isfinite(v)) return "null";
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << csv_field(table.columns[c]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c], Format::Csv);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  if (table.rows.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << "  {";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? ", " : "") << nlohmann::json(table.columns[c]).dump() << ": "
          << cell_text(table.rows[r][c], Format::Json);
    out << (r + 1 < table.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

void emit(const Table& table, Format format, const std::string& path, std::ostream& fallback) {
  auto write = [&](std::ostream& out) {
    if (format == Format::Csv)
      write_csv(table, out);
    else
      write_json(table, out);
  };
  if (path.empty()) {
    write(fallback);
    if (!fallback) throw CliError(kExitResource, "failed writing output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw CliError(kExitResource, "cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw CliError(kExitResource, "failed writing '" + path + "'");
}

}  // namespace qwoa::cli
