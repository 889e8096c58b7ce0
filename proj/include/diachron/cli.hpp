#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diachron/report.hpp"
#include "diachron/topics.hpp"

namespace diachron::cli {

enum class Granularity { kEpisode, kLine };

struct RunConfig {
  std::filesystem::path script_csv;
  std::filesystem::path episodes_csv;
  std::filesystem::path stoplist;
  std::filesystem::path lexicon;
  std::filesystem::path reference_text;
  std::vector<std::filesystem::path> topic_texts;
  std::vector<std::filesystem::path> keyword_lists;
  std::filesystem::path exclusions;
  std::filesystem::path out_dir;

  std::size_t top_k = 25;
  std::uint64_t min_freq = 3;
  std::size_t sample_every = 1000;
  std::size_t keyword_top_k = 50;
  std::size_t coherence_top_n = 10;
  std::vector<int> topic_counts{5, 10, 15, 20};
  std::optional<double> plateau_epsilon;
  LdaConfig lda;

  bool include_stopwords_in_stats = false;
  bool skip_malformed = false;
  Granularity lda_granularity = Granularity::kEpisode;
  report::Format format = report::Format::kCsv;
};

/// Directory holding the bundled stop list, lexicon and keyword lists.
std::filesystem::path default_data_dir();

/// Parses argv, runs the requested stage(s), writes outputs and run_manifest.json.
/// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diachron::cli
