#include "diachron/csv.hpp"

#include <algorithm>

#include "diachron/error.hpp"

namespace diachron::csv {

std::optional<Record> Reader::next() {
  Record record;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;  // closing quote seen, field must end next
  bool any = false;
  const std::size_t row = records_ + 1;

  int c;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    any = true;
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in_.peek() == '\n') in_.get();
      record.push_back(std::move(field));
      ++records_;
      return record;
    } else if (after_quote) {
      throw MalformedRow(row, "text after closing quote");
    } else if (ch == '"' && field.empty()) {
      in_quotes = true;
    } else {
      field.push_back(ch);
    }
  }
  if (in_quotes) throw MalformedRow(row, "unterminated quoted field");
  if (!any) return std::nullopt;
  record.push_back(std::move(field));
  ++records_;
  return record;
}

std::size_t Header::require(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw MissingColumn(std::string(name));
  return static_cast<std::size_t>(it - names_.begin());
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string format_record(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace diachron::csv
