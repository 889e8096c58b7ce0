#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diachron/corpus.hpp"
#include "diachron/normalize.hpp"

namespace diachron {

/// Token counts with a deterministic ranking: descending count, ties broken
/// by ascending token.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::unordered_map<std::string, std::uint64_t> counts);

  std::uint64_t count(std::string_view token) const;
  std::uint64_t total() const noexcept { return total_; }
  std::size_t vocabulary_size() const noexcept { return ranking_.size(); }
  bool empty() const noexcept { return total_ == 0; }

  /// (token, count) pairs in rank order; rank r is at index r - 1.
  const std::vector<std::pair<std::string, std::uint64_t>>& ranking() const noexcept { return ranking_; }

  /// 1-based rank, or 0 when the token is absent.
  std::size_t rank(std::string_view token) const;

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> rank_of_;
  std::vector<std::pair<std::string, std::uint64_t>> ranking_;
  std::uint64_t total_ = 0;
};

struct ZipfFit {
  double alpha = 0.0;
  double intercept = 0.0;
  /// (log2 rank, log2 frequency) in rank order.
  std::vector<std::pair<double, double>> points;
  double r_squared = 0.0;
};

struct HeapsFit {
  double k_param = 0.0;
  double beta = 0.0;
  /// (tokens seen n, distinct tokens V(n)).
  std::vector<std::pair<std::size_t, std::size_t>> curve;
};

/// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares over at least two points with distinct x values.
LineFit ordinary_least_squares(const std::vector<std::pair<double, double>>& points);

FrequencyTable frequency_table(const TokenStream& ts);

std::vector<std::pair<std::string, std::uint64_t>> top_k(const FrequencyTable& ft, std::size_t k);

/// Distinct tokens over total tokens. Throws EmptyInput on an empty stream.
double lexical_diversity(const TokenStream& ts);

/// f(w)/N; 0 for absent tokens. Throws EmptyTable on an empty table.
double word_probability(const FrequencyTable& ft, std::string_view token);

/// Stop-filtered tokens of every line in one year bucket.
TokenStream year_tokens(const Corpus& corpus, int year, const StopList& stop);

/// Stop-filtered tokens of the whole corpus, with line provenance.
TokenStream corpus_tokens(const Corpus& corpus, const StopList& stop);

struct YearTopWord {
  std::string token;
  std::uint64_t count = 0;
};

/// Rank-1 token of each year's stop-filtered table; years with no tokens are omitted.
std::map<int, YearTopWord> top_word_per_year(const Corpus& corpus, const StopList& stop);

/// Shannon entropy in bits. Throws EmptyTable on an empty table.
double entropy(const FrequencyTable& ft);

/// Log-log least squares of frequency on rank over ranks with count >= min_freq.
/// Throws DegenerateFit when fewer than two points qualify.
ZipfFit zipf_fit(const FrequencyTable& ft, std::uint64_t min_freq = 3);

/// Vocabulary growth sampled every `sample_every` tokens, fitted as V = K n^beta
/// in log2 space. Throws TooShort unless the stream has 2 * sample_every tokens.
HeapsFit heaps_fit(const TokenStream& ts, std::size_t sample_every = 1000);

}  // namespace diachron
