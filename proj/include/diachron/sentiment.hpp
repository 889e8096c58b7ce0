#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "diachron/corpus.hpp"
#include "diachron/normalize.hpp"

namespace diachron {

/// Token valences plus negation and intensity modifiers.
///
/// File format (UTF-8, '#' comments):
///
///     good<TAB>1.9          valence section, values in [-4, 4]
///     [negators]
///     not                   one token per line
///     [boosters]
///     very<TAB>0.293        increments in [-1, 1]
///
/// Later rows for the same token replace earlier ones.
struct ValenceLexicon {
  std::unordered_map<std::string, double> valences;
  std::unordered_set<std::string> negators;
  std::unordered_map<std::string, double> boosters;

  static ValenceLexicon parse(std::istream& in, std::string_view source = "<lexicon>");
  static ValenceLexicon load(const std::filesystem::path& path);
};

struct SentimentScore {
  double compound = 0.0;
  double pos = 0.0;
  double neu = 1.0;
  double neg = 0.0;
};

inline constexpr double kNegationScalar = -0.74;
inline constexpr double kCompoundNormalizer = 15.0;
inline constexpr std::size_t kNegationWindow = 3;

/// Scores one line of cleaned tokens.
///
/// A token carrying a valence v is first intensified when the preceding token
/// is a booster b (v + sign(v) * b), then scaled by -0.74 when any of the three
/// preceding tokens is a negator. Negator and booster tokens carry no valence
/// themselves. The adjusted sum S maps to compound = S / sqrt(S^2 + 15).
SentimentScore score_line(const TokenStream& ts, const ValenceLexicon& lex);

struct YearSentiment {
  int year = 0;
  double mean_compound = 0.0;
  std::size_t line_count = 0;
};

struct ScoredLine {
  std::int64_t line_id = 0;
  std::string text;
  double score = 0.0;
};

struct SentimentSeries {
  std::vector<YearSentiment> years;  // ascending year
  ScoredLine min;                    // first line reaching the lowest compound
  ScoredLine max;                    // first line reaching the highest compound
  double overall_mean = 0.0;
};

/// Scores every corpus line on its unfiltered tokens and averages per year.
SentimentSeries yearly_sentiment(const Corpus& corpus, const ValenceLexicon& lex);

}  // namespace diachron
