// Porter suffix-stripping stemmer, original 1980 rule set.

#include <array>
#include <string>
#include <string_view>

#include "diachron/normalize.hpp"

namespace diachron {
namespace {

class Word {
 public:
  explicit Word(std::string_view w) : b_(w) {}

  std::string release() { return std::move(b_); }

  bool ends_with(std::string_view suffix) const { return std::string_view(b_).ends_with(suffix); }

  // Measure m of the first `len` letters: the number of VC sequences in [C](VC)^m[V].
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  // *d: stem of length `len` ends with a double consonant.
  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends cvc, where the final c is not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3 || !consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    const char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  char at(std::size_t i) const { return b_[i]; }
  std::size_t size() const { return b_.size(); }

  void replace_suffix(std::size_t suffix_len, std::string_view with) {
    b_.resize(b_.size() - suffix_len);
    b_ += with;
  }
  void chop(std::size_t n) { b_.resize(b_.size() - n); }
  void append(char c) { b_.push_back(c); }

 private:
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  std::string b_;
};

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the first rule whose suffix matches, if the stem measure exceeds
// `min_measure`. Rules are ordered so a longer suffix precedes any suffix it contains.
template <std::size_t N>
void apply_first(Word& w, const std::array<Rule, N>& rules, int min_measure) {
  for (const Rule& rule : rules) {
    if (!w.ends_with(rule.suffix)) continue;
    const std::size_t stem_len = w.size() - rule.suffix.size();
    if (w.measure(stem_len) > min_measure) w.replace_suffix(rule.suffix.size(), rule.replacement);
    return;
  }
}

void step1a(Word& w) {
  if (w.ends_with("sses")) {
    w.chop(2);
  } else if (w.ends_with("ies")) {
    w.chop(2);
  } else if (w.ends_with("ss")) {
    // unchanged
  } else if (w.ends_with("s")) {
    w.chop(1);
  }
}

void step1b(Word& w) {
  if (w.ends_with("eed")) {
    if (w.measure(w.size() - 3) > 0) w.chop(1);
    return;
  }
  std::size_t cut = 0;
  if (w.ends_with("ed") && w.has_vowel(w.size() - 2)) {
    cut = 2;
  } else if (w.ends_with("ing") && w.has_vowel(w.size() - 3)) {
    cut = 3;
  } else {
    return;
  }
  w.chop(cut);
  if (w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz")) {
    w.append('e');
  } else if (w.double_consonant(w.size())) {
    const char last = w.at(w.size() - 1);
    if (last != 'l' && last != 's' && last != 'z') w.chop(1);
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.append('e');
  }
}

void step1c(Word& w) {
  if (w.ends_with("y") && w.has_vowel(w.size() - 1)) w.replace_suffix(1, "i");
}

void step2(Word& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
  }};
  apply_first(w, rules, 0);
}

void step3(Word& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"},
      {"ative", ""},
      {"alize", "al"},
      {"iciti", "ic"},
      {"ical", "ic"},
      {"ful", ""},
      {"ness", ""},
  }};
  apply_first(w, rules, 0);
}

void step4(Word& w) {
  static constexpr std::array<std::string_view, 19> suffixes{
      "al",   "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
      "ent",  "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
  for (const std::string_view suffix : suffixes) {
    if (!w.ends_with(suffix)) continue;
    const std::size_t stem_len = w.size() - suffix.size();
    if (w.measure(stem_len) <= 1) return;
    if (suffix == "ion") {
      const char before = stem_len > 0 ? w.at(stem_len - 1) : '\0';
      if (before != 's' && before != 't') return;
    }
    w.chop(suffix.size());
    return;
  }
}

void step5(Word& w) {
  if (w.ends_with("e")) {
    const std::size_t stem_len = w.size() - 1;
    const int m = w.measure(stem_len);
    if (m > 1 || (m == 1 && !w.cvc(stem_len))) w.chop(1);
  }
  if (w.size() >= 2 && w.at(w.size() - 1) == 'l' && w.double_consonant(w.size()) &&
      w.measure(w.size()) > 1) {
    w.chop(1);
  }
}

}  // namespace

std::string stem(std::string_view token) {
  if (token.size() <= 2) return std::string(token);
  for (const char c : token) {
    if (c < 'a' || c > 'z') return std::string(token);
  }
  Word w(token);
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5(w);
  return w.release();
}

}  // namespace diachron
