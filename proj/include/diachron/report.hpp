#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace diachron::report {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, std::string>;

/// A named result table; written as <name>.csv or <name>.json.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { kCsv, kJson };

/// Ten significant digits, shortest form ("%.10g").
std::string format_number(double value);

std::string to_csv(const Table& table);
/// Array of row objects with keys in column order.
Json to_json(const Table& table);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws IoError naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
void write_json(const std::filesystem::path& path, const Json& doc);

/// Writes each table into out_dir and returns the written paths in order.
std::vector<std::filesystem::path> emit_tables(const std::vector<Table>& tables, Format format,
                                               const std::filesystem::path& out_dir);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace diachron::report
