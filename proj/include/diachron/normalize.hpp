#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace diachron {

/// Ordered tokens with optional per-token source line ids. When `line_ids` is
/// non-empty it runs parallel to `tokens`.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<std::int64_t> line_ids;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  bool has_provenance() const noexcept { return !line_ids.empty(); }

  /// Appends all tokens of `text`, tagging each with `line_id`.
  void append(std::string_view text, std::int64_t line_id);

  bool operator==(const TokenStream&) const = default;
};

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::unordered_set<std::string> words);

  /// One word per line, '#' comments and blank lines ignored, ASCII letters
  /// lowercased. A line holding more than one word is a ParseError.
  static StopList parse(std::istream& in, std::string_view source = "<stoplist>");
  static StopList load(const std::filesystem::path& path);

  bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
  std::size_t size() const noexcept { return words_.size(); }
  const std::unordered_set<std::string>& words() const noexcept { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

/// Splits cleaned text on spaces. Empty pieces are skipped.
TokenStream tokenize(std::string_view text);

TokenStream filter_stopwords(const TokenStream& ts, const StopList& stop);

/// Porter (1980) suffix stripping. Tokens of length <= 2 and tokens holding
/// characters outside a-z are returned unchanged.
std::string stem(std::string_view token);

/// Reads a list of single-token lines ('#' comments allowed), keeping order.
/// Shared by stop-word, keyword-list and exclusion files.
std::vector<std::string> read_word_list(std::istream& in, std::string_view source);
std::vector<std::string> read_word_list(const std::filesystem::path& path);

}  // namespace diachron
