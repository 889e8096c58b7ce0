#include "diachron/corpus.hpp"

#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "diachron/csv.hpp"
#include "diachron/error.hpp"

namespace diachron {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence starting at `pos`; advances `pos`. Returns
// kInvalid (consuming one byte) on a malformed or overlong sequence.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2018 || cp == 0x2019 || cp == 0x02BC; }

// Lowercase form of a non-ASCII letter, or 0 when `cp` is not a letter we keep.
char32_t fold_letter(char32_t cp) {
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return cp;
  if ((cp >= 0xC0 && cp <= 0xD6) || (cp >= 0xD8 && cp <= 0xDE)) return cp + 0x20;
  if ((cp >= 0xDF && cp <= 0xF6) || (cp >= 0xF8 && cp <= 0xFF)) return cp;
  // Latin Extended-A
  if (cp == 0x130) return U'i';
  if (cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
  if (cp == 0x178) return 0xFF;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return cp % 2 == 0 ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return cp % 2 == 1 ? cp + 1 : cp;
  // Greek
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E || cp == 0x38F) return cp + 63;
  if ((cp >= 0x391 && cp <= 0x3A1) || (cp >= 0x3A3 && cp <= 0x3AB)) return cp + 0x20;
  if (cp == 0x390 || (cp >= 0x3AC && cp <= 0x3CE)) return cp;
  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x430 && cp <= 0x45F) return cp;
  return 0;
}

bool ieq(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; };
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

std::optional<std::int64_t> parse_id(std::string_view field) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0) return std::nullopt;
  return value;
}

csv::Header read_header(csv::Reader& reader) {
  auto names = reader.next();
  if (!names) names.emplace();
  if (!names->empty() && names->front().starts_with("\xEF\xBB\xBF")) names->front().erase(0, 3);
  return csv::Header(std::move(*names));
}

}  // namespace

Corpus::Corpus(std::vector<CleanLine> lines, IngestSummary summary)
    : lines_(std::move(lines)), summary_(std::move(summary)) {
  for (std::size_t i = 0; i < lines_.size(); ++i) by_year_[lines_[i].air_year].push_back(i);
  summary_.cleaned_lines = lines_.size();
  summary_.years.clear();
  for (const auto& [year, _] : by_year_) summary_.years.push_back(year);
}

ScriptLines read_script_lines(std::istream& in, const ParseOptions& options) {
  csv::Reader reader(in);
  const csv::Header header = read_header(reader);
  const std::size_t id_col = header.require("id");
  const std::size_t episode_col = header.require("episode_id");
  const std::size_t speaking_col = header.require("speaking_line");
  const std::size_t text_col = header.require("raw_text");

  ScriptLines out;
  std::unordered_set<std::int64_t> seen_ids;
  while (auto record = reader.next()) {
    ++out.rows_read;
    const std::size_t row = reader.record_number();
    if (record->size() != header.size()) {
      if (options.skip_malformed) {
        ++out.malformed_skipped;
        continue;
      }
      throw MalformedRow(row, "expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(record->size()));
    }
    const auto line_id = parse_id((*record)[id_col]);
    const auto episode_id = parse_id((*record)[episode_col]);
    if (!line_id || !episode_id) {
      if (options.skip_malformed) {
        ++out.malformed_skipped;
        continue;
      }
      throw MalformedRow(row, "non-numeric id");
    }
    if (!seen_ids.insert(*line_id).second) {
      if (options.skip_malformed) {
        ++out.malformed_skipped;
        continue;
      }
      throw MalformedRow(row, "duplicate id " + std::to_string(*line_id));
    }
    if (!ieq((*record)[speaking_col], "true")) continue;
    out.lines.push_back({*line_id, *episode_id, true, std::move((*record)[text_col])});
  }
  return out;
}

std::vector<RawScriptLine> parse_script_lines(std::istream& in) { return read_script_lines(in).lines; }

std::vector<Episode> parse_episodes(std::istream& in) {
  csv::Reader reader(in);
  const csv::Header header = read_header(reader);
  const std::size_t id_col = header.require("id");
  const std::size_t date_col = header.require("original_air_date");
  const std::size_t title_col = header.require("title");

  std::vector<Episode> episodes;
  while (auto record = reader.next()) {
    const std::size_t row = reader.record_number();
    if (record->size() != header.size()) throw MalformedRow(row, "field count mismatch");
    const auto id = parse_id((*record)[id_col]);
    if (!id) throw MalformedRow(row, "non-numeric id");
    const std::string& date = (*record)[date_col];
    int year = 0;
    if (date.size() < 4) throw BadDate(row);
    for (std::size_t i = 0; i < 4; ++i) {
      if (date[i] < '0' || date[i] > '9') throw BadDate(row);
      year = year * 10 + (date[i] - '0');
    }
    if (date.size() > 4 && date[4] != '-') throw BadDate(row);
    if (year < 1900 || year > 2100) throw BadDate(row);
    episodes.push_back({*id, year, (*record)[title_col]});
  }
  return episodes;
}

std::optional<std::string> clean_line(std::string_view raw) {
  if (const auto colon = raw.find(':'); colon != std::string_view::npos) raw.remove_prefix(colon + 1);

  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  const auto emit = [&](auto&& append) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    append();
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const char32_t cp = decode_utf8(raw, pos);
    if (is_apostrophe(cp)) continue;
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z') {
        emit([&] { out.push_back(static_cast<char>(c + 32)); });
      } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
        emit([&] { out.push_back(c); });
      } else {
        pending_space = true;
      }
      continue;
    }
    const char32_t lower = cp == kInvalid ? 0 : fold_letter(cp);
    if (lower == 0) {
      pending_space = true;
    } else {
      emit([&] { encode_utf8(lower, out); });
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

Corpus build_corpus(const std::vector<RawScriptLine>& lines, const std::vector<Episode>& episodes,
                    std::size_t rows_read, std::size_t malformed_skipped) {
  std::unordered_map<std::int64_t, int> year_of;
  for (const Episode& e : episodes) year_of.try_emplace(e.episode_id, e.air_year);

  IngestSummary summary;
  summary.lines_read = rows_read ? rows_read : lines.size();
  summary.malformed_skipped = malformed_skipped;

  std::vector<CleanLine> clean;
  for (const RawScriptLine& line : lines) {
    if (!line.speaking) continue;
    ++summary.speaking_lines;
    auto text = clean_line(line.raw_text);
    if (!text) {
      ++summary.dropped_empty;
      continue;
    }
    const auto year = year_of.find(line.episode_id);
    if (year == year_of.end()) {
      ++summary.dropped_unmatched;
      continue;
    }
    clean.push_back({line.line_id, line.episode_id, year->second, std::move(*text)});
  }
  if (clean.empty()) throw EmptyCorpus();
  return Corpus(std::move(clean), std::move(summary));
}

}  // namespace diachron
