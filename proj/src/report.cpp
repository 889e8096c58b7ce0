#include "diachron/report.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "diachron/csv.hpp"
#include "diachron/error.hpp"

namespace diachron::report {
namespace fs = std::filesystem;

std::string format_number(double value) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.10g", value);
  return buf.data();
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out = csv::format_record(table.columns);
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    fields.clear();
    for (const Cell& cell : row) fields.push_back(cell_text(cell));
    out += csv::format_record(fields);
  }
  return out;
}

Json to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError(path.string(), "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError(path.string(), "rename failed: " + ec.message());
  }
}

void write_json(const fs::path& path, const Json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

std::vector<fs::path> emit_tables(const std::vector<Table>& tables, Format format, const fs::path& out_dir) {
  std::vector<fs::path> written;
  for (const Table& table : tables) {
    if (format == Format::kCsv) {
      fs::path path = out_dir / (table.name + ".csv");
      write_file_atomic(path, to_csv(table));
      written.push_back(std::move(path));
    } else {
      fs::path path = out_dir / (table.name + ".json");
      write_json(path, to_json(table));
      written.push_back(std::move(path));
    }
  }
  return written;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for hashing");
  const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError(path.string(), "digest init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

}  // namespace diachron::report
