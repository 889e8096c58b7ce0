#include "diachron/lexstats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "diachron/error.hpp"

namespace diachron {

FrequencyTable::FrequencyTable(std::unordered_map<std::string, std::uint64_t> counts)
    : counts_(std::move(counts)) {
  ranking_.reserve(counts_.size());
  for (const auto& [token, n] : counts_) {
    ranking_.emplace_back(token, n);
    total_ += n;
  }
  std::sort(ranking_.begin(), ranking_.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  rank_of_.reserve(ranking_.size());
  for (std::size_t i = 0; i < ranking_.size(); ++i) rank_of_.emplace(ranking_[i].first, i + 1);
}

std::uint64_t FrequencyTable::count(std::string_view token) const {
  const auto it = counts_.find(std::string(token));
  return it == counts_.end() ? 0 : it->second;
}

std::size_t FrequencyTable::rank(std::string_view token) const {
  const auto it = rank_of_.find(std::string(token));
  return it == rank_of_.end() ? 0 : it->second;
}

LineFit ordinary_least_squares(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DegenerateFit("least squares needs at least two points");
  const double n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx == 0.0) throw DegenerateFit("least squares needs distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  // A constant response is fitted exactly by the horizontal line.
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

FrequencyTable frequency_table(const TokenStream& ts) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const std::string& token : ts.tokens) ++counts[token];
  return FrequencyTable(std::move(counts));
}

std::vector<std::pair<std::string, std::uint64_t>> top_k(const FrequencyTable& ft, std::size_t k) {
  const auto& ranking = ft.ranking();
  const std::size_t n = std::min(k, ranking.size());
  return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(n)};
}

double lexical_diversity(const TokenStream& ts) {
  if (ts.empty()) throw EmptyInput("lexical diversity of an empty stream");
  const std::unordered_set<std::string_view> distinct(ts.tokens.begin(), ts.tokens.end());
  return static_cast<double>(distinct.size()) / static_cast<double>(ts.size());
}

double word_probability(const FrequencyTable& ft, std::string_view token) {
  if (ft.empty()) throw EmptyTable("word probability from an empty table");
  return static_cast<double>(ft.count(token)) / static_cast<double>(ft.total());
}

TokenStream year_tokens(const Corpus& corpus, int year, const StopList& stop) {
  TokenStream ts;
  const auto bucket = corpus.by_year().find(year);
  if (bucket == corpus.by_year().end()) return ts;
  for (const std::size_t index : bucket->second) {
    const CleanLine& line = corpus.lines()[index];
    ts.append(line.text, line.line_id);
  }
  return filter_stopwords(ts, stop);
}

TokenStream corpus_tokens(const Corpus& corpus, const StopList& stop) {
  TokenStream ts;
  for (const CleanLine& line : corpus.lines()) ts.append(line.text, line.line_id);
  return filter_stopwords(ts, stop);
}

std::map<int, YearTopWord> top_word_per_year(const Corpus& corpus, const StopList& stop) {
  std::map<int, YearTopWord> out;
  for (const auto& [year, _] : corpus.by_year()) {
    const FrequencyTable ft = frequency_table(year_tokens(corpus, year, stop));
    if (ft.empty()) continue;
    out.emplace(year, YearTopWord{ft.ranking().front().first, ft.ranking().front().second});
  }
  return out;
}

double entropy(const FrequencyTable& ft) {
  if (ft.empty()) throw EmptyTable("entropy of an empty table");
  const double total = static_cast<double>(ft.total());
  double h = 0.0;
  for (const auto& [_, n] : ft.ranking()) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / total;
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

ZipfFit zipf_fit(const FrequencyTable& ft, std::uint64_t min_freq) {
  ZipfFit fit;
  const auto& ranking = ft.ranking();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i].second < min_freq || ranking[i].second == 0) break;
    fit.points.emplace_back(std::log2(static_cast<double>(i + 1)),
                            std::log2(static_cast<double>(ranking[i].second)));
  }
  if (fit.points.size() < 2) {
    throw DegenerateFit("Zipf fit needs at least two ranks with count >= " + std::to_string(min_freq));
  }
  const LineFit line = ordinary_least_squares(fit.points);
  fit.alpha = std::max(-line.slope, 0.0);
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  return fit;
}

HeapsFit heaps_fit(const TokenStream& ts, std::size_t sample_every) {
  if (sample_every == 0) throw InvalidInput("Heaps sampling stride must be positive");
  if (ts.size() < 2 * sample_every) {
    throw TooShort("Heaps fit needs at least " + std::to_string(2 * sample_every) + " tokens, got " +
                   std::to_string(ts.size()));
  }
  HeapsFit fit;
  std::unordered_set<std::string_view> seen;
  for (std::size_t n = 1; n <= ts.size(); ++n) {
    seen.insert(ts.tokens[n - 1]);
    if (n % sample_every == 0) fit.curve.emplace_back(n, seen.size());
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(fit.curve.size());
  for (const auto& [n, v] : fit.curve) {
    points.emplace_back(std::log2(static_cast<double>(n)), std::log2(static_cast<double>(v)));
  }
  const LineFit line = ordinary_least_squares(points);
  fit.beta = line.slope;
  fit.k_param = std::exp2(line.intercept);
  return fit;
}

}  // namespace diachron
