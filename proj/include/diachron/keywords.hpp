#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "diachron/corpus.hpp"
#include "diachron/normalize.hpp"

namespace diachron {

class DocumentSet {
 public:
  /// Throws InvalidInput on duplicate doc ids.
  explicit DocumentSet(std::vector<std::pair<std::string, TokenStream>> docs);

  const std::vector<std::pair<std::string, TokenStream>>& docs() const noexcept { return docs_; }
  /// Union of all tokens, ascending.
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  std::size_t size() const noexcept { return docs_.size(); }

 private:
  std::vector<std::pair<std::string, TokenStream>> docs_;
  std::vector<std::string> vocabulary_;
};

struct TfIdfVector {
  std::string doc_id;
  /// Nonzero weights only; absent tokens weigh 0.
  std::map<std::string, double> weights;

  double weight(const std::string& token) const {
    const auto it = weights.find(token);
    return it == weights.end() ? 0.0 : it->second;
  }
};

/// Raw term counts times smoothed idf, ln((1 + D) / (1 + df)) + 1, each vector
/// scaled to unit L2 norm. Throws TooFewDocuments for fewer than two
/// documents and EmptyDocument for a document without tokens.
std::vector<TfIdfVector> tfidf_vectors(const DocumentSet& ds);

/// Pairwise cosine similarity; symmetric with a unit diagonal.
std::vector<std::vector<double>> similarity_matrix(const std::vector<TfIdfVector>& vectors);

/// The k heaviest terms, ties broken by ascending token.
std::vector<std::pair<std::string, double>> extract_top_terms(const TfIdfVector& v, std::size_t k);

struct KeywordSource {
  std::size_t list_index = 0;  // which input list first contributed the token
  std::size_t rank = 0;        // 1-based position in that list
};

struct KeywordSet {
  std::vector<std::string> tokens;
  std::vector<KeywordSource> source;  // parallel to tokens
  std::vector<std::string> exclusions_applied;

  bool contains(const std::string& token) const;
};

/// First-seen union of ranked lists, minus every excluded token. Excluded
/// tokens that occurred in the union are recorded in exclusions_applied.
KeywordSet build_keyword_set(const std::vector<std::vector<std::string>>& lists,
                             const std::unordered_set<std::string>& exclusions);
/// Same, reading exclusions from a word-list file when a path is given.
KeywordSet build_keyword_set(const std::vector<std::vector<std::string>>& lists,
                             const std::optional<std::filesystem::path>& exclusions_file);

struct YearKeywordRate {
  int year = 0;
  double mean_hits_per_line = 0.0;
  std::uint64_t total_hits = 0;
  std::size_t line_count = 0;
};

struct LineHits {
  std::int64_t line_id = 0;
  int year = 0;
  std::uint64_t hits = 0;
};

struct KeywordSeries {
  std::vector<YearKeywordRate> years;  // ascending
  std::vector<LineHits> lines;         // corpus order
};

/// Counts keyword occurrences, with multiplicity, in each line's stop-filtered tokens.
KeywordSeries keyword_rate_series(const Corpus& corpus, const KeywordSet& ks, const StopList& stop);

/// Reads a plain-text file, cleans every physical line, drops stop words and
/// concatenates the tokens.
TokenStream read_text_document(const std::filesystem::path& path, const StopList& stop);

}  // namespace diachron
