#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diachron::csv {

using Record = std::vector<std::string>;

/// Streaming RFC 4180 reader: comma separator, '"' quoting with "" escapes,
/// CRLF or LF record ends, embedded separators and newlines inside quotes.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record; std::nullopt at end of input. A trailing blank
  /// line is not a record. Throws MalformedRow on an unterminated quote or on
  /// stray characters after a closing quote.
  std::optional<Record> next();

  /// 1-based number of the record most recently returned.
  std::size_t record_number() const noexcept { return records_; }

 private:
  std::istream& in_;
  std::size_t records_ = 0;
};

/// Header lookup: maps required column names to positions.
class Header {
 public:
  explicit Header(Record names) : names_(std::move(names)) {}

  /// Throws MissingColumn when `name` is absent.
  std::size_t require(std::string_view name) const;
  std::size_t size() const noexcept { return names_.size(); }

 private:
  Record names_;
};

/// Quotes a field when it contains a comma, quote, CR, or LF.
std::string escape(std::string_view field);

/// Joins fields into one record terminated by '\n'.
std::string format_record(const std::vector<std::string>& fields);

}  // namespace diachron::csv
