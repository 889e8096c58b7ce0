#include "diachron/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "diachron/error.hpp"

namespace diachron {
namespace {

constexpr const char* kScriptHeader = "id,episode_id,speaking_line,raw_text\n";
constexpr const char* kEpisodeHeader = "id,original_air_date,title\n";

std::vector<RawScriptLine> script(const std::string& body) {
  std::istringstream in(std::string(kScriptHeader) + body);
  return parse_script_lines(in);
}

std::vector<Episode> episodes(const std::string& body) {
  std::istringstream in(std::string(kEpisodeHeader) + body);
  return parse_episodes(in);
}

// True when `text` obeys the cleaned-line alphabet: [a-z0-9 ] or non-ASCII
// bytes, single spaces, no leading or trailing space.
bool valid_clean_text(const std::string& text) {
  if (text.empty() || text.front() == ' ' || text.back() == ' ') return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c >= 0x80) continue;
    if (c == ' ') {
      if (text[i + 1] == ' ') return false;
      continue;
    }
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

TEST(ParseScriptLines, SpeakingRowWithQuotedText) {
  const auto lines = script("9,1,true,\"Homer Simpson: Hey!\"\n");
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], (RawScriptLine{9, 1, true, "Homer Simpson: Hey!"}));
}

TEST(ParseScriptLines, NonSpeakingRowsDropped) {
  EXPECT_TRUE(script("9,1,false,\"(Street: EXT)\"\n").empty());
  EXPECT_EQ(script("9,1,TRUE,hi\n").size(), 1u);
}

TEST(ParseScriptLines, HeaderOnly) { EXPECT_TRUE(script("").empty()); }

TEST(ParseScriptLines, ExtraColumnsAndEmbeddedNewlines) {
  std::istringstream in(
      "id,episode_id,number,raw_text,timestamp_in_ms,speaking_line\n"
      "1,32,209,\"Miss Hoover: No, actually,\nit was a little of both.\",848000,true\n");
  const auto lines = parse_script_lines(in);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].raw_text, "Miss Hoover: No, actually,\nit was a little of both.");
}

TEST(ParseScriptLines, MissingColumn) {
  std::istringstream in("id,episode_id,speaking_line\n1,1,true\n");
  try {
    parse_script_lines(in);
    FAIL();
  } catch (const MissingColumn& e) {
    EXPECT_EQ(e.column(), "raw_text");
  }
}

TEST(ParseScriptLines, MalformedRows) {
  try {
    script("1,1,true,a\n2,1,true\n");
    FAIL();
  } catch (const MalformedRow& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  EXPECT_THROW(script("x,1,true,a\n"), MalformedRow);
  EXPECT_THROW(script("1,1,true,a\n1,1,true,b\n"), MalformedRow);
}

TEST(ParseScriptLines, LenientModeCountsSkippedRows) {
  std::istringstream in(std::string(kScriptHeader) + "1,1,true,a\n2,1\nz,1,true,b\n3,1,false,c\n");
  const ScriptLines out = read_script_lines(in, ParseOptions{true});
  EXPECT_EQ(out.lines.size(), 1u);
  EXPECT_EQ(out.rows_read, 4u);
  EXPECT_EQ(out.malformed_skipped, 2u);
}

TEST(ParseEpisodes, YearFromDatePrefix) {
  const auto eps = episodes("10,1990-03-25,Some Title\n11,2001-11-07,\"Title, with comma\"\n");
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_EQ(eps[0].episode_id, 10);
  EXPECT_EQ(eps[0].air_year, 1990);
  EXPECT_EQ(eps[1].air_year, 2001);
  EXPECT_EQ(eps[1].title, "Title, with comma");
}

TEST(ParseEpisodes, BadDates) {
  EXPECT_THROW(episodes("10,notadate,T\n"), BadDate);
  EXPECT_THROW(episodes("10,199,T\n"), BadDate);
  EXPECT_THROW(episodes("10,1850-01-01,T\n"), BadDate);
}

TEST(ParseEpisodes, MissingColumn) {
  std::istringstream in("id,title\n1,a\n");
  EXPECT_THROW(parse_episodes(in), MissingColumn);
}

TEST(CleanLine, SpeakerPrefixPunctuationAndContractions) {
  EXPECT_EQ(clean_line("Homer Simpson: (ANNOYED GRUNT) Where's my donut?!"), "annoyed grunt wheres my donut");
  EXPECT_EQ(clean_line("Marge Simpson:   "), std::nullopt);
  EXPECT_EQ(clean_line("no colon HERE."), "no colon here");
}

TEST(CleanLine, OnlyFirstColonIsASpeakerPrefix) {
  EXPECT_EQ(clean_line("Lisa: Time: 9:30"), "time 9 30");
}

TEST(CleanLine, DigitsAndCurlyApostrophes) {
  EXPECT_EQ(clean_line("Bart: 911 isn\xE2\x80\x99t funny"), "911 isnt funny");
}

TEST(CleanLine, NonAsciiLettersLowercasedAndKept) {
  EXPECT_EQ(clean_line("Apu: \xC3\x89T\xC3\x89 \xD0\x9C\xD0\x98\xD0\xA0"), "\xC3\xA9t\xC3\xA9 \xD0\xBC\xD0\xB8\xD1\x80");
  // Invalid UTF-8 and symbols become separators.
  EXPECT_EQ(clean_line("a\xFF" "b \xE2\x82\xAC c"), "a b c");
}

TEST(CleanLine, IdempotentAndAlphabetOverRandomBytes) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string specials = "::' \"!?AZaz09\t\n";
  for (int trial = 0; trial < 5000; ++trial) {
    std::string raw;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      raw.push_back(trial % 2 ? static_cast<char>(byte(rng)) : specials[static_cast<std::size_t>(byte(rng)) % specials.size()]);
    }
    const auto once = clean_line(raw);
    if (!once) continue;
    EXPECT_TRUE(valid_clean_text(*once)) << "input bytes produced '" << *once << "'";
    EXPECT_EQ(clean_line(*once), once);
  }
}

TEST(BuildCorpus, SingleJoin) {
  const Corpus c = build_corpus({{1, 10, true, "Homer: hi"}}, {{10, 1990, "t"}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.by_year().at(1990), std::vector<std::size_t>{0});
  EXPECT_EQ(c.lines()[0].text, "hi");
}

TEST(BuildCorpus, UnmatchedEpisodeDroppedAndCounted) {
  const Corpus c = build_corpus({{1, 10, true, "hi"}, {2, 99, true, "there"}}, {{10, 1990, "t"}});
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.summary().dropped_unmatched, 1u);
}

TEST(BuildCorpus, EmptyCorpus) {
  EXPECT_THROW(build_corpus({{1, 10, true, "Marge:  "}}, {{10, 1990, "t"}}), EmptyCorpus);
  EXPECT_THROW(build_corpus({}, {}), EmptyCorpus);
}

TEST(BuildCorpus, JoinCompletenessAndDisjointYearCover) {
  std::vector<RawScriptLine> lines;
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ep(0, 12);
  std::uniform_int_distribution<int> kind(0, 4);
  for (int i = 0; i < 400; ++i) {
    const int k = kind(rng);
    lines.push_back({i, ep(rng), k != 0, k == 1 ? "Moe: ..." : "Moe: line " + std::to_string(i)});
  }
  std::vector<Episode> eps;
  for (int e = 0; e < 10; ++e) eps.push_back({e, 1989 + e % 4, "t"});

  const Corpus c = build_corpus(lines, eps);
  std::size_t speaking_nonempty = 0;
  for (const auto& l : lines) speaking_nonempty += l.speaking && clean_line(l.raw_text).has_value();
  EXPECT_EQ(c.size() + c.summary().dropped_unmatched, speaking_nonempty);

  std::set<std::size_t> seen;
  for (const auto& [year, indices] : c.by_year()) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      EXPECT_TRUE(seen.insert(indices[i]).second);
      EXPECT_EQ(c.lines()[indices[i]].air_year, year);
      if (i) EXPECT_LT(c.lines()[indices[i - 1]].line_id, c.lines()[indices[i]].line_id);
    }
  }
  EXPECT_EQ(seen.size(), c.size());
}

}  // namespace
}  // namespace diachron
