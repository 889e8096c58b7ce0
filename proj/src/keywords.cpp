#include "diachron/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "diachron/error.hpp"

namespace diachron {

DocumentSet::DocumentSet(std::vector<std::pair<std::string, TokenStream>> docs) : docs_(std::move(docs)) {
  std::set<std::string> ids;
  std::set<std::string> vocabulary;
  for (const auto& [id, ts] : docs_) {
    if (!ids.insert(id).second) throw InvalidInput("duplicate document id '" + id + "'");
    vocabulary.insert(ts.tokens.begin(), ts.tokens.end());
  }
  vocabulary_.assign(vocabulary.begin(), vocabulary.end());
}

std::vector<TfIdfVector> tfidf_vectors(const DocumentSet& ds) {
  if (ds.size() < 2) throw TooFewDocuments("TF-IDF needs at least two documents");
  std::vector<std::unordered_map<std::string, std::uint64_t>> tf(ds.size());
  std::unordered_map<std::string, std::uint64_t> df;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    const auto& [id, ts] = ds.docs()[d];
    if (ts.empty()) throw EmptyDocument("document '" + id + "' has no tokens");
    for (const std::string& token : ts.tokens) ++tf[d][token];
    for (const auto& [token, _] : tf[d]) ++df[token];
  }

  const double num_docs = static_cast<double>(ds.size());
  std::vector<TfIdfVector> out;
  out.reserve(ds.size());
  for (std::size_t d = 0; d < ds.size(); ++d) {
    TfIdfVector v{ds.docs()[d].first, {}};
    double norm2 = 0.0;
    for (const auto& [token, count] : tf[d]) {
      const double idf = std::log((1.0 + num_docs) / (1.0 + static_cast<double>(df[token]))) + 1.0;
      const double w = static_cast<double>(count) * idf;
      v.weights.emplace(token, w);
      norm2 += w * w;
    }
    const double norm = std::sqrt(norm2);
    for (auto& [_, w] : v.weights) w /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<double>> similarity_matrix(const std::vector<TfIdfVector>& vectors) {
  const std::size_t n = vectors.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Iterate the smaller map, look up in the larger.
      const auto& a = vectors[i].weights.size() <= vectors[j].weights.size() ? vectors[i] : vectors[j];
      const auto& b = &a == &vectors[i] ? vectors[j] : vectors[i];
      double dot = 0.0;
      for (const auto& [token, w] : a.weights) {
        if (const auto it = b.weights.find(token); it != b.weights.end()) dot += w * it->second;
      }
      dot = std::clamp(dot, 0.0, 1.0);
      m[i][j] = m[j][i] = dot;
    }
  }
  return m;
}

std::vector<std::pair<std::string, double>> extract_top_terms(const TfIdfVector& v, std::size_t k) {
  std::vector<std::pair<std::string, double>> terms;
  for (const auto& [token, w] : v.weights) {
    if (w > 0.0) terms.emplace_back(token, w);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (terms.size() > k) terms.resize(k);
  return terms;
}

bool KeywordSet::contains(const std::string& token) const {
  return std::find(tokens.begin(), tokens.end(), token) != tokens.end();
}

KeywordSet build_keyword_set(const std::vector<std::vector<std::string>>& lists,
                             const std::unordered_set<std::string>& exclusions) {
  KeywordSet ks;
  std::unordered_set<std::string> seen;
  for (std::size_t l = 0; l < lists.size(); ++l) {
    for (std::size_t r = 0; r < lists[l].size(); ++r) {
      const std::string& token = lists[l][r];
      if (!seen.insert(token).second) continue;
      if (exclusions.contains(token)) {
        ks.exclusions_applied.push_back(token);
      } else {
        ks.tokens.push_back(token);
        ks.source.push_back({l, r + 1});
      }
    }
  }
  return ks;
}

KeywordSet build_keyword_set(const std::vector<std::vector<std::string>>& lists,
                             const std::optional<std::filesystem::path>& exclusions_file) {
  std::unordered_set<std::string> exclusions;
  if (exclusions_file) {
    for (std::string& w : read_word_list(*exclusions_file)) exclusions.insert(std::move(w));
  }
  return build_keyword_set(lists, exclusions);
}

KeywordSeries keyword_rate_series(const Corpus& corpus, const KeywordSet& ks, const StopList& stop) {
  const std::unordered_set<std::string> keywords(ks.tokens.begin(), ks.tokens.end());
  KeywordSeries series;
  const auto& lines = corpus.lines();
  series.lines.reserve(lines.size());
  for (const CleanLine& line : lines) {
    std::uint64_t hits = 0;
    for (const std::string& token : filter_stopwords(tokenize(line.text), stop).tokens) {
      if (keywords.contains(token)) ++hits;
    }
    series.lines.push_back({line.line_id, line.air_year, hits});
  }
  for (const auto& [year, indices] : corpus.by_year()) {
    YearKeywordRate rate{year, 0.0, 0, indices.size()};
    for (const std::size_t i : indices) rate.total_hits += series.lines[i].hits;
    rate.mean_hits_per_line = static_cast<double>(rate.total_hits) / static_cast<double>(indices.size());
    series.years.push_back(rate);
  }
  return series;
}

TokenStream read_text_document(const std::filesystem::path& path, const StopList& stop) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  TokenStream ts;
  std::string line;
  while (std::getline(in, line)) {
    // Plain text has no speaker prefixes; escape colons so the speaker rule is a no-op.
    std::replace(line.begin(), line.end(), ':', ' ');
    if (const auto cleaned = clean_line(line)) {
      const TokenStream words = tokenize(*cleaned);
      ts.tokens.insert(ts.tokens.end(), words.tokens.begin(), words.tokens.end());
    }
  }
  return filter_stopwords(ts, stop);
}

}  // namespace diachron
