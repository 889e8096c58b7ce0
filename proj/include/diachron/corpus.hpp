#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diachron {

struct RawScriptLine {
  std::int64_t line_id = 0;
  std::int64_t episode_id = 0;
  bool speaking = false;
  std::string raw_text;

  bool operator==(const RawScriptLine&) const = default;
};

struct Episode {
  std::int64_t episode_id = 0;
  int air_year = 0;
  std::string title;
};

struct CleanLine {
  std::int64_t line_id = 0;
  std::int64_t episode_id = 0;
  int air_year = 0;
  std::string text;
};

/// Counters accumulated while reading and joining the two input files.
struct IngestSummary {
  std::size_t lines_read = 0;
  std::size_t speaking_lines = 0;
  std::size_t cleaned_lines = 0;
  std::size_t dropped_unmatched = 0;
  std::size_t dropped_empty = 0;
  std::size_t malformed_skipped = 0;
  std::vector<int> years;
};

/// Cleaned, year-tagged dialogue. Immutable once built.
class Corpus {
 public:
  Corpus(std::vector<CleanLine> lines, IngestSummary summary);

  const std::vector<CleanLine>& lines() const noexcept { return lines_; }
  /// Year -> indices into lines(), in source order.
  const std::map<int, std::vector<std::size_t>>& by_year() const noexcept { return by_year_; }
  const IngestSummary& summary() const noexcept { return summary_; }
  std::size_t size() const noexcept { return lines_.size(); }

 private:
  std::vector<CleanLine> lines_;
  std::map<int, std::vector<std::size_t>> by_year_;
  IngestSummary summary_;
};

struct ParseOptions {
  /// Skip rows whose field count or ids are malformed instead of throwing.
  bool skip_malformed = false;
};

/// Result of reading the script-lines file. `rows_read` counts every data row,
/// speaking or not; `malformed_skipped` is nonzero only in lenient mode.
struct ScriptLines {
  std::vector<RawScriptLine> lines;
  std::size_t rows_read = 0;
  std::size_t malformed_skipped = 0;
};

/// Reads script lines and keeps rows whose speaking_line is "true" (any case).
ScriptLines read_script_lines(std::istream& csv, const ParseOptions& options = {});
std::vector<RawScriptLine> parse_script_lines(std::istream& csv);

std::vector<Episode> parse_episodes(std::istream& csv);

/// Strips the speaker prefix (through the first colon), lowercases, deletes
/// apostrophes, turns every other non-alphanumeric character into a space and
/// collapses whitespace. Returns std::nullopt when nothing is left.
///
/// Input is treated as UTF-8. Letters outside ASCII are kept and lowercased
/// for Latin-1, Latin Extended-A, Greek and Cyrillic; other code points and
/// invalid byte sequences become separators.
std::optional<std::string> clean_line(std::string_view raw_text);

/// Joins lines with episodes. `rows_read` and `malformed_skipped` only feed the
/// summary. Throws EmptyCorpus when nothing survives.
Corpus build_corpus(const std::vector<RawScriptLine>& lines, const std::vector<Episode>& episodes,
                    std::size_t rows_read = 0, std::size_t malformed_skipped = 0);

}  // namespace diachron
