#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qwoa::cli {

/// Carries the process exit code chosen by the failing stage.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitCountMismatch = 4;
inline constexpr int kExitInternal = 5;

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

/// Homogeneous records: every row has one cell per column, in column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format format_from_string(const std::string& s);

/// Doubles use 12 significant digits; non-finite values print as nan/inf in
/// CSV and null in JSON.
std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Writes to `path`, or to `fallback` when path is empty. I/O failure raises
/// CliError with kExitResource.
void emit(const Table& table, Format format, const std::string& path, std::ostream& fallback);

}  // namespace qwoa::cli
