#include "diachron/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "diachron/error.hpp"

namespace diachron {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::string_view source, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError(std::string(source), line, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

ValenceLexicon ValenceLexicon::parse(std::istream& in, std::string_view source) {
  enum class Section { kValences, kNegators, kBoosters };
  ValenceLexicon lex;
  Section section = Section::kValences;
  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[negators]") {
      section = Section::kNegators;
      continue;
    }
    if (line == "[boosters]") {
      section = Section::kBoosters;
      continue;
    }
    if (line.front() == '[') throw ParseError(std::string(source), line_number, "unknown section");

    const auto tab = line.find('\t');
    if (section == Section::kNegators) {
      if (tab != std::string_view::npos || line.find(' ') != std::string_view::npos) {
        throw ParseError(std::string(source), line_number, "negator rows hold a single token");
      }
      lex.negators.emplace(line);
      continue;
    }
    if (tab == std::string_view::npos) throw ParseError(std::string(source), line_number, "expected token<TAB>value");
    const std::string_view token = trim(line.substr(0, tab));
    std::string_view value_text = trim(line.substr(tab + 1));
    // Extra tab-separated columns (e.g. rating spread) are ignored.
    if (const auto more = value_text.find('\t'); more != std::string_view::npos) value_text = trim(value_text.substr(0, more));
    if (token.empty()) throw ParseError(std::string(source), line_number, "empty token");
    const double value = parse_number(value_text, source, line_number);
    if (section == Section::kValences) {
      if (value < -4.0 || value > 4.0) throw ParseError(std::string(source), line_number, "valence outside [-4, 4]");
      lex.valences.insert_or_assign(std::string(token), value);
    } else {
      if (value < -1.0 || value > 1.0) throw ParseError(std::string(source), line_number, "booster outside [-1, 1]");
      lex.boosters.insert_or_assign(std::string(token), value);
    }
  }
  return lex;
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return parse(in, path.string());
}

SentimentScore score_line(const TokenStream& ts, const ValenceLexicon& lex) {
  SentimentScore score;
  if (ts.empty()) return score;

  const auto& tokens = ts.tokens;
  double sum = 0.0;
  std::size_t positive = 0, negative = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (lex.negators.contains(tokens[i]) || lex.boosters.contains(tokens[i])) continue;
    const auto found = lex.valences.find(tokens[i]);
    if (found == lex.valences.end()) continue;

    double v = found->second;
    if (i > 0) {
      if (const auto booster = lex.boosters.find(tokens[i - 1]); booster != lex.boosters.end()) {
        v += sign(v) * booster->second;
      }
    }
    for (std::size_t back = 1; back <= kNegationWindow && back <= i; ++back) {
      if (lex.negators.contains(tokens[i - back])) {
        v *= kNegationScalar;
        break;
      }
    }
    sum += v;
    if (v > 0.0) ++positive;
    if (v < 0.0) ++negative;
  }

  score.compound = std::clamp(sum / std::sqrt(sum * sum + kCompoundNormalizer), -1.0, 1.0);
  const double n = static_cast<double>(tokens.size());
  score.pos = static_cast<double>(positive) / n;
  score.neg = static_cast<double>(negative) / n;
  score.neu = static_cast<double>(tokens.size() - positive - negative) / n;
  return score;
}

SentimentSeries yearly_sentiment(const Corpus& corpus, const ValenceLexicon& lex) {
  SentimentSeries series;
  const auto& lines = corpus.lines();
  std::vector<double> compound(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) compound[i] = score_line(tokenize(lines[i].text), lex).compound;

  double overall = 0.0;
  std::size_t min_index = 0, max_index = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    overall += compound[i];
    if (compound[i] < compound[min_index]) min_index = i;
    if (compound[i] > compound[max_index]) max_index = i;
  }
  for (const auto& [year, indices] : corpus.by_year()) {
    double sum = 0.0;
    for (const std::size_t i : indices) sum += compound[i];
    series.years.push_back({year, sum / static_cast<double>(indices.size()), indices.size()});
  }
  if (!lines.empty()) {
    series.overall_mean = overall / static_cast<double>(lines.size());
    series.min = {lines[min_index].line_id, lines[min_index].text, compound[min_index]};
    series.max = {lines[max_index].line_id, lines[max_index].text, compound[max_index]};
  }
  return series;
}

}  // namespace diachron
