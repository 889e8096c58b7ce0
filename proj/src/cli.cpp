#include "diachron/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "CLI11.hpp"
#include "diachron/chart.hpp"
#include "diachron/corpus.hpp"
#include "diachron/error.hpp"
#include "diachron/keywords.hpp"
#include "diachron/lexstats.hpp"
#include "diachron/normalize.hpp"
#include "diachron/sentiment.hpp"

#ifndef DIACHRON_DATA_DIR
#define DIACHRON_DATA_DIR "data"
#endif

namespace diachron::cli {
namespace fs = std::filesystem;
using report::Json;
using report::Table;

fs::path default_data_dir() { return DIACHRON_DATA_DIR; }

namespace {

constexpr int kMarkerYear = 2001;
constexpr std::size_t kTopicExportWords = 20;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lazily loaded shared inputs plus the record of everything read and written.
class Context {
 public:
  Context(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  const RunConfig& cfg() const { return cfg_; }
  std::ostream& out() { return out_; }

  const Corpus& corpus() {
    if (!corpus_) {
      std::ifstream script(cfg_.script_csv, std::ios::binary);
      if (!script) throw IoError(cfg_.script_csv.string(), "cannot open for reading");
      std::ifstream episodes(cfg_.episodes_csv, std::ios::binary);
      if (!episodes) throw IoError(cfg_.episodes_csv.string(), "cannot open for reading");
      ScriptLines lines = read_script_lines(script, ParseOptions{cfg_.skip_malformed});
      const std::vector<Episode> eps = parse_episodes(episodes);
      corpus_.emplace(build_corpus(lines.lines, eps, lines.rows_read, lines.malformed_skipped));
      note_input(cfg_.script_csv);
      note_input(cfg_.episodes_csv);
    }
    return *corpus_;
  }

  const StopList& stoplist() {
    if (!stoplist_) {
      stoplist_.emplace(StopList::load(cfg_.stoplist));
      note_input(cfg_.stoplist);
    }
    return *stoplist_;
  }

  const ValenceLexicon& lexicon() {
    if (!lexicon_) {
      lexicon_.emplace(ValenceLexicon::load(cfg_.lexicon));
      note_input(cfg_.lexicon);
    }
    return *lexicon_;
  }

  /// Tokens used by stats, zipf and heaps.
  const TokenStream& stats_tokens() {
    if (!stats_tokens_) {
      stats_tokens_.emplace(corpus_tokens(corpus(), cfg_.include_stopwords_in_stats ? StopList{} : stoplist()));
    }
    return *stats_tokens_;
  }

  void note_input(const fs::path& path) { inputs_.insert(path.lexically_normal().string()); }

  void wrote(const fs::path& path) { outputs_.insert(path.filename().string()); }
  void wrote(const std::vector<fs::path>& paths) {
    for (const auto& p : paths) wrote(p);
  }

  void write_json(const std::string& name, const Json& doc) {
    const fs::path path = cfg_.out_dir / name;
    report::write_json(path, doc);
    wrote(path);
  }
  void write_tables(const std::vector<Table>& tables) {
    wrote(report::emit_tables(tables, cfg_.format, cfg_.out_dir));
  }
  void write_chart(const std::string& name, const report::ChartSpec& spec) {
    wrote(report::emit_chart(spec, cfg_.out_dir / name));
  }

  const std::set<std::string>& inputs() const { return inputs_; }
  const std::set<std::string>& outputs() const { return outputs_; }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::optional<Corpus> corpus_;
  std::optional<StopList> stoplist_;
  std::optional<ValenceLexicon> lexicon_;
  std::optional<TokenStream> stats_tokens_;
  std::set<std::string> inputs_;
  std::set<std::string> outputs_;
};

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }
std::int64_t as_int(std::uint64_t v, int) { return static_cast<std::int64_t>(v); }

void stage_ingest(Context& ctx) {
  const Corpus& corpus = ctx.corpus();
  const IngestSummary& s = corpus.summary();
  Json summary;
  summary["lines_read"] = s.lines_read;
  summary["speaking_lines"] = s.speaking_lines;
  summary["cleaned_lines"] = s.cleaned_lines;
  summary["dropped_unmatched"] = s.dropped_unmatched;
  summary["dropped_empty"] = s.dropped_empty;
  summary["years"] = s.years;
  summary["malformed_skipped"] = s.malformed_skipped;
  ctx.write_json("ingest_summary.json", summary);

  Table lines{"clean_lines", {"line_id", "episode_id", "year", "text"}, {}};
  for (const CleanLine& line : corpus.lines()) {
    lines.rows.push_back({line.line_id, line.episode_id, std::int64_t{line.air_year}, line.text});
  }
  ctx.write_tables({lines});
  ctx.out() << "ingest: " << s.cleaned_lines << " clean lines from " << s.lines_read << " rows across "
            << s.years.size() << " years (" << s.dropped_unmatched << " unmatched, " << s.dropped_empty
            << " empty)\n";
}

void stage_stats(Context& ctx) {
  const TokenStream& tokens = ctx.stats_tokens();
  if (tokens.empty()) throw EmptyInput("no tokens left after stop-word filtering");
  const FrequencyTable ft = frequency_table(tokens);

  Table freq{"frequency", {"rank", "token", "count", "probability"}, {}};
  const auto& ranking = ft.ranking();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    freq.rows.push_back({as_int(i + 1), ranking[i].first, as_int(ranking[i].second, 0),
                         word_probability(ft, ranking[i].first)});
  }
  Table top{"top_words", {"rank", "token", "count"}, {}};
  const auto best = top_k(ft, ctx.cfg().top_k);
  for (std::size_t i = 0; i < best.size(); ++i) top.rows.push_back({as_int(i + 1), best[i].first, as_int(best[i].second, 0)});
  Table per_year{"top_word_per_year", {"year", "token", "count"}, {}};
  for (const auto& [year, word] : top_word_per_year(ctx.corpus(), ctx.stoplist())) {
    per_year.rows.push_back({std::int64_t{year}, word.token, as_int(word.count, 0)});
  }
  ctx.write_tables({freq, top, per_year});

  const double diversity = lexical_diversity(tokens);
  const double bits = entropy(ft);
  Json stats;
  stats["tokens"] = tokens.size();
  stats["types"] = ft.vocabulary_size();
  stats["lexical_diversity"] = diversity;
  stats["entropy_bits"] = bits;
  stats["stopwords_included"] = ctx.cfg().include_stopwords_in_stats;
  ctx.write_json("stats.json", stats);
  ctx.write_json("entropy.json", Json{{"entropy_bits", bits}});
  ctx.out() << "stats: " << tokens.size() << " tokens, " << ft.vocabulary_size()
            << " types, lexical diversity " << report::format_number(diversity) << ", entropy "
            << report::format_number(bits) << " bits\n";
}

void stage_zipf(Context& ctx) {
  const FrequencyTable ft = frequency_table(ctx.stats_tokens());
  const ZipfFit fit = zipf_fit(ft, ctx.cfg().min_freq);
  Table points{"zipf_points", {"log2_rank", "log2_frequency"}, {}};
  report::ChartSpec chart{"Zipf rank-frequency", "log2 rank", "log2 frequency", {}, {}};
  for (const auto& [x, y] : fit.points) {
    points.rows.push_back({x, y});
    chart.series.emplace_back(x, y);
  }
  ctx.write_tables({points});
  ctx.write_json("zipf.json", Json{{"alpha", fit.alpha},
                                   {"r_squared", fit.r_squared},
                                   {"intercept", fit.intercept},
                                   {"min_freq", ctx.cfg().min_freq},
                                   {"points", fit.points.size()}});
  ctx.write_chart("zipf.svg", chart);
  ctx.out() << "zipf: alpha " << report::format_number(fit.alpha) << " (r^2 "
            << report::format_number(fit.r_squared) << ") over " << fit.points.size() << " ranks\n";
}

void stage_heaps(Context& ctx) {
  const HeapsFit fit = heaps_fit(ctx.stats_tokens(), ctx.cfg().sample_every);
  Table curve{"heaps", {"n", "V"}, {}};
  report::ChartSpec chart{"Heaps vocabulary growth", "tokens (n)", "distinct tokens V(n)", {}, {}};
  for (const auto& [n, v] : fit.curve) {
    curve.rows.push_back({as_int(n), as_int(v)});
    chart.series.emplace_back(static_cast<double>(n), static_cast<double>(v));
  }
  ctx.write_tables({curve});
  ctx.write_json("heaps.json", Json{{"K", fit.k_param}, {"beta", fit.beta}, {"sample_every", ctx.cfg().sample_every}});
  ctx.write_chart("heaps.svg", chart);
  ctx.out() << "heaps: K " << report::format_number(fit.k_param) << ", beta " << report::format_number(fit.beta)
            << " over " << fit.curve.size() << " samples\n";
}

Json scored_line_json(const ScoredLine& line) {
  return Json{{"line_id", line.line_id}, {"text", line.text}, {"score", line.score}};
}

void stage_sentiment(Context& ctx) {
  const SentimentSeries series = yearly_sentiment(ctx.corpus(), ctx.lexicon());
  Table by_year{"sentiment_by_year", {"year", "mean_compound", "line_count"}, {}};
  report::ChartSpec chart{"Mean sentiment per year", "year", "mean compound score", {}, {kMarkerYear}};
  for (const YearSentiment& y : series.years) {
    by_year.rows.push_back({std::int64_t{y.year}, y.mean_compound, as_int(y.line_count)});
    chart.series.emplace_back(y.year, y.mean_compound);
  }
  ctx.write_tables({by_year});
  ctx.write_json("sentiment_extremes.json", Json{{"min", scored_line_json(series.min)},
                                                 {"max", scored_line_json(series.max)},
                                                 {"overall_mean", series.overall_mean}});
  ctx.write_chart("sentiment.svg", chart);
  ctx.out() << "sentiment: overall mean " << report::format_number(series.overall_mean) << " over "
            << series.years.size() << " years\n";
}

std::vector<std::string> unique_ids(const std::vector<fs::path>& paths) {
  std::vector<std::string> ids;
  std::set<std::string> used;
  for (const auto& p : paths) {
    std::string id = p.stem().string();
    for (int n = 2; used.contains(id); ++n) id = p.stem().string() + "_" + std::to_string(n);
    used.insert(id);
    ids.push_back(std::move(id));
  }
  return ids;
}

void stage_keywords(Context& ctx) {
  const RunConfig& cfg = ctx.cfg();
  std::vector<std::vector<std::string>> lists;
  std::vector<std::string> list_names;

  if (!cfg.topic_texts.empty()) {
    std::vector<fs::path> paths = cfg.topic_texts;
    paths.push_back(cfg.reference_text);
    const std::vector<std::string> ids = unique_ids(paths);
    std::vector<TokenStream> docs;
    for (const auto& p : paths) {
      docs.push_back(read_text_document(p, ctx.stoplist()));
      ctx.note_input(p);
    }

    // Each pair gets its own two-document TF-IDF model, as when every topic
    // text is compared against the reference on its own.
    const std::size_t n = paths.size();
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto vectors = tfidf_vectors(DocumentSet({{ids[i], docs[i]}, {ids[j], docs[j]}}));
        sim[i][j] = sim[j][i] = similarity_matrix(vectors)[0][1];
      }
    }
    Table similarity{"similarity", {"doc_id"}, {}};
    for (const auto& id : ids) similarity.columns.push_back(id);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<report::Cell> row{ids[i]};
      for (std::size_t j = 0; j < n; ++j) row.emplace_back(sim[i][j]);
      similarity.rows.push_back(std::move(row));
    }

    Table top_terms{"top_terms", {"doc_id", "rank", "token", "weight"}, {}};
    const std::size_t ref = n - 1;
    for (std::size_t i = 0; i < ref; ++i) {
      const auto vectors = tfidf_vectors(DocumentSet({{ids[i], docs[i]}, {ids[ref], docs[ref]}}));
      const auto terms = extract_top_terms(vectors[0], cfg.keyword_top_k);
      std::vector<std::string> list;
      for (std::size_t r = 0; r < terms.size(); ++r) {
        top_terms.rows.push_back({ids[i], as_int(r + 1), terms[r].first, terms[r].second});
        list.push_back(terms[r].first);
      }
      lists.push_back(std::move(list));
      list_names.push_back(ids[i]);
    }
    ctx.write_tables({similarity, top_terms});
    ctx.out() << "keywords: " << ref << " topic text(s) compared against " << ids[ref] << "\n";
  } else {
    std::vector<fs::path> paths = cfg.keyword_lists;
    if (paths.empty()) {
      paths = {default_data_dir() / "keywords" / "speech_top50.txt", default_data_dir() / "keywords" / "report_top50.txt"};
    }
    for (const auto& p : paths) {
      lists.push_back(read_word_list(p));
      list_names.push_back(p.filename().string());
      ctx.note_input(p);
    }
  }

  std::optional<fs::path> exclusions;
  if (!cfg.exclusions.empty()) {
    exclusions = cfg.exclusions;
    ctx.note_input(cfg.exclusions);
  }
  const KeywordSet ks = build_keyword_set(lists, exclusions);

  Json provenance = Json::array();
  for (std::size_t i = 0; i < ks.tokens.size(); ++i) {
    provenance.push_back(Json{{"token", ks.tokens[i]},
                              {"list", list_names[ks.source[i].list_index]},
                              {"rank", ks.source[i].rank}});
  }
  ctx.write_json("keywords.json", Json{{"tokens", ks.tokens},
                                       {"provenance", provenance},
                                       {"exclusions_applied", ks.exclusions_applied},
                                       {"lists", list_names}});

  const KeywordSeries series = keyword_rate_series(ctx.corpus(), ks, ctx.stoplist());
  Table by_year{"keyword_series", {"year", "mean_hits_per_line", "total_hits", "line_count"}, {}};
  report::ChartSpec chart{"Keyword hits per line", "year", "mean hits per line", {}, {kMarkerYear}};
  std::uint64_t total = 0;
  for (const YearKeywordRate& y : series.years) {
    by_year.rows.push_back({std::int64_t{y.year}, y.mean_hits_per_line, as_int(y.total_hits, 0), as_int(y.line_count)});
    chart.series.emplace_back(y.year, y.mean_hits_per_line);
    total += y.total_hits;
  }
  Table line_hits{"line_hits", {"line_id", "year", "hits"}, {}};
  for (const LineHits& h : series.lines) line_hits.rows.push_back({h.line_id, std::int64_t{h.year}, as_int(h.hits, 0)});
  ctx.write_tables({by_year, line_hits});
  ctx.write_chart("keyword_series.svg", chart);
  ctx.out() << "keywords: " << ks.tokens.size() << " keywords (" << ks.exclusions_applied.size()
            << " excluded), " << total << " hits over " << series.lines.size() << " lines\n";
}

void stage_topics(Context& ctx) {
  const RunConfig& cfg = ctx.cfg();
  const Corpus& corpus = ctx.corpus();
  const StopList& stop = ctx.stoplist();

  std::vector<std::string> doc_ids;
  std::vector<TokenStream> docs;
  std::unordered_map<std::int64_t, std::size_t> doc_of_episode;
  for (const CleanLine& line : corpus.lines()) {
    TokenStream tokens = filter_stopwords(tokenize(line.text), stop);
    for (std::string& t : tokens.tokens) t = stem(t);
    std::size_t index;
    if (cfg.lda_granularity == Granularity::kLine) {
      index = docs.size();
      doc_ids.push_back(std::to_string(line.line_id));
      docs.emplace_back();
    } else {
      const auto [it, added] = doc_of_episode.try_emplace(line.episode_id, docs.size());
      if (added) {
        doc_ids.push_back(std::to_string(line.episode_id));
        docs.emplace_back();
      }
      index = it->second;
    }
    auto& target = docs[index].tokens;
    target.insert(target.end(), tokens.tokens.begin(), tokens.tokens.end());
  }

  const Vocabulary vocab = build_vocabulary(docs, cfg.lda.min_df, cfg.lda.max_df_fraction);
  std::vector<std::string> kept_ids;
  std::vector<TokenStream> kept_docs;
  const auto encoded = encode_documents(docs, vocab);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (encoded[d].empty()) continue;
    kept_ids.push_back(doc_ids[d]);
    kept_docs.push_back(std::move(docs[d]));
  }
  if (kept_docs.empty()) throw EmptyVocabulary("no document keeps an in-vocabulary token");

  const CoherenceSweep sweep =
      coherence_sweep(kept_docs, vocab, cfg.lda, cfg.topic_counts, cfg.coherence_top_n, cfg.plateau_epsilon);
  const TopicModel& model = sweep.selected_model;

  Json topics = Json::array();
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    Json words = Json::array();
    for (const auto& [token, p] : top_words(model, k, kTopicExportWords)) {
      words.push_back(Json{{"token", token}, {"probability", p}});
    }
    topics.push_back(Json{{"topic", k}, {"words", words}});
  }
  ctx.write_json("topics.json", Json{{"selected_k", sweep.selected_k},
                                     {"documents", kept_docs.size()},
                                     {"vocabulary", vocab.size()},
                                     {"topics", topics}});

  Table coherence{"coherence", {"K", "score"}, {}};
  std::map<int, double> by_k;
  for (const auto& [k, score] : sweep.scores) {
    coherence.rows.push_back({std::int64_t{k}, score});
    by_k.emplace(k, score);
  }
  Table doc_topics{"doc_topics", {"doc_id", "top_topic", "weight"}, {}};
  for (std::size_t d = 0; d < model.theta.size(); ++d) {
    const auto& row = model.theta[d];
    const std::size_t best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    doc_topics.rows.push_back({kept_ids[d], as_int(best), row[best]});
  }
  ctx.write_tables({coherence, doc_topics});
  report::ChartSpec chart{"Topic coherence (UMass)", "number of topics", "mean coherence", {}, {}};
  for (const auto& [k, score] : by_k) chart.series.emplace_back(k, score);
  ctx.write_chart("coherence.svg", chart);
  ctx.out() << "topics: selected K=" << sweep.selected_k << " from " << sweep.scores.size() << " fits over "
            << kept_docs.size() << " documents, vocabulary " << vocab.size() << "\n";
}

Json config_json(const RunConfig& cfg, const std::string& command) {
  const auto paths = [](const std::vector<fs::path>& ps) {
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(p.string());
    return arr;
  };
  Json lda;
  lda["iterations"] = cfg.lda.iterations;
  if (cfg.lda.alpha) {
    lda["alpha"] = *cfg.lda.alpha;
  } else {
    lda["alpha"] = "50/K";
  }
  lda["beta"] = cfg.lda.beta;
  lda["min_df"] = cfg.lda.min_df;
  lda["max_df_fraction"] = cfg.lda.max_df_fraction;
  lda["topic_counts"] = cfg.topic_counts;
  lda["coherence_top_n"] = cfg.coherence_top_n;
  lda["granularity"] = cfg.lda_granularity == Granularity::kLine ? "line" : "episode";
  if (cfg.plateau_epsilon) {
    lda["plateau_epsilon"] = *cfg.plateau_epsilon;
  } else {
    lda["plateau_epsilon"] = "0.02*|max|";
  }

  Json c;
  c["command"] = command;
  c["script_csv"] = cfg.script_csv.string();
  c["episodes_csv"] = cfg.episodes_csv.string();
  c["stoplist"] = cfg.stoplist.string();
  c["lexicon"] = cfg.lexicon.string();
  c["reference_text"] = cfg.reference_text.string();
  c["topic_texts"] = paths(cfg.topic_texts);
  c["keyword_lists"] = paths(cfg.keyword_lists);
  c["exclusions"] = cfg.exclusions.string();
  c["out_dir"] = cfg.out_dir.string();
  c["format"] = cfg.format == report::Format::kCsv ? "csv" : "json";
  c["top_k"] = cfg.top_k;
  c["min_freq"] = cfg.min_freq;
  c["sample_every"] = cfg.sample_every;
  c["keyword_top_k"] = cfg.keyword_top_k;
  c["include_stopwords_in_stats"] = cfg.include_stopwords_in_stats;
  c["skip_malformed"] = cfg.skip_malformed;
  c["lda"] = lda;
  return c;
}

void write_manifest(Context& ctx, const std::string& command) {
  Json inputs = Json::array();
  for (const std::string& path : ctx.inputs()) {
    inputs.push_back(Json{{"path", path}, {"sha256", report::sha256_file(path)}});
  }
  Json outputs = Json::array();
  for (const std::string& name : ctx.outputs()) outputs.push_back(name);
  Json manifest;
  manifest["version"] = 1;
  manifest["config"] = config_json(ctx.cfg(), command);
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["seed"] = ctx.cfg().lda.seed;
  report::write_json(ctx.cfg().out_dir / "run_manifest.json", manifest);
}

void require_file(const fs::path& path, const std::string& flag) {
  if (path.empty()) throw UsageError(flag + " is required for this command");
  if (!fs::is_regular_file(path)) throw UsageError(flag + ": file not found: " + path.string());
}

using Stage = std::function<void(Context&)>;

const std::vector<std::pair<std::string, Stage>>& stages() {
  static const std::vector<std::pair<std::string, Stage>> all{
      {"ingest", stage_ingest},       {"stats", stage_stats},       {"zipf", stage_zipf},
      {"heaps", stage_heaps},         {"sentiment", stage_sentiment}, {"keywords", stage_keywords},
      {"topics", stage_topics},
  };
  return all;
}

void validate_paths(const RunConfig& cfg, const std::vector<std::string>& names) {
  const auto uses = [&](const char* name) { return std::find(names.begin(), names.end(), name) != names.end(); };
  require_file(cfg.script_csv, "--script");
  require_file(cfg.episodes_csv, "--episodes");
  if (uses("stats") || uses("zipf") || uses("heaps") || uses("keywords") || uses("topics")) {
    require_file(cfg.stoplist, "--stoplist");
  }
  if (uses("sentiment")) require_file(cfg.lexicon, "--lexicon");
  if (uses("keywords")) {
    for (const auto& p : cfg.topic_texts) require_file(p, "--topic-text");
    if (!cfg.topic_texts.empty()) require_file(cfg.reference_text, "--reference");
    for (const auto& p : cfg.keyword_lists) require_file(p, "--keyword-list");
    if (!cfg.exclusions.empty()) require_file(cfg.exclusions, "--exclusions");
  }
  if (!cfg.topic_texts.empty() && !cfg.keyword_lists.empty()) {
    throw UsageError("--topic-text and --keyword-list are mutually exclusive");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  const fs::path data = default_data_dir();
  cfg.stoplist = data / "stopwords_en.txt";
  cfg.lexicon = data / "lexicon.tsv";
  cfg.exclusions = data / "keywords" / "exclusions.txt";

  CLI::App app{"Diachronic corpus analytics for year-partitioned dialogue scripts.", "diachron"};
  app.set_config("--config", "", "INI file of key = value defaults; command-line flags override it");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string out_dir;
  std::string granularity = "episode";
  std::string format = "csv";
  std::optional<double> alpha;
  app.add_option("--script", cfg.script_csv, "Script-lines CSV (id, episode_id, speaking_line, raw_text)");
  app.add_option("--episodes", cfg.episodes_csv, "Episodes CSV (id, original_air_date, title)");
  app.add_option("--stoplist", cfg.stoplist, "Stop-word file")->capture_default_str();
  app.add_option("--lexicon", cfg.lexicon, "Sentiment valence lexicon")->capture_default_str();
  app.add_option("--reference", cfg.reference_text, "Reference plain-text corpus for TF-IDF");
  app.add_option("--topic-text", cfg.topic_texts, "Topic plain-text document (repeatable)");
  app.add_option("--keyword-list", cfg.keyword_lists, "Precomputed ranked keyword list (repeatable)");
  app.add_option("--exclusions", cfg.exclusions, "Keyword exclusion list; empty string disables")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (fallback: $DIACHRON_OUT, then ./out)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--top-k", cfg.top_k, "Number of top words reported")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--min-freq", cfg.min_freq, "Zipf fit frequency cutoff")->capture_default_str();
  app.add_option("--sample-every", cfg.sample_every, "Heaps curve sampling stride")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--keyword-top-k", cfg.keyword_top_k, "Top TF-IDF terms kept per topic text")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--include-stopwords", cfg.include_stopwords_in_stats, "Keep stop words for stats, zipf and heaps");
  app.add_flag("--skip-malformed", cfg.skip_malformed, "Skip malformed script rows instead of failing");
  app.add_option("--lda-granularity", granularity, "LDA document unit")
      ->check(CLI::IsMember({"episode", "line"}))
      ->capture_default_str();
  app.add_option("--topics-k", cfg.topic_counts, "Topic counts to sweep")->delimiter(',')->capture_default_str();
  app.add_option("--lda-iterations", cfg.lda.iterations, "Gibbs sweeps per fit")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--lda-alpha", alpha, "Document-topic prior (default 50/K)");
  app.add_option("--lda-beta", cfg.lda.beta, "Topic-word prior")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--min-df", cfg.lda.min_df, "Minimum document frequency for LDA vocabulary")->capture_default_str();
  app.add_option("--max-df", cfg.lda.max_df_fraction, "Maximum document-frequency fraction for LDA vocabulary")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--coherence-top-n", cfg.coherence_top_n, "Top words per topic for coherence")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  app.add_option("--plateau-epsilon", cfg.plateau_epsilon, "Plateau tolerance (default 0.02*|best score|)");
  app.add_option("--seed", cfg.lda.seed, "Random seed")->capture_default_str();

  std::vector<std::string> names;
  for (const auto& [name, _] : stages()) app.add_subcommand(name, "Run the " + name + " stage");
  app.add_subcommand("all", "Run every stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "all") {
    for (const auto& [name, _] : stages()) names.push_back(name);
  } else {
    names.push_back(command);
  }
  cfg.lda.alpha = alpha;
  cfg.lda_granularity = granularity == "line" ? Granularity::kLine : Granularity::kEpisode;
  cfg.format = format == "json" ? report::Format::kJson : report::Format::kCsv;
  if (!out_dir.empty()) {
    cfg.out_dir = out_dir;
  } else if (const char* env = std::getenv("DIACHRON_OUT"); env && *env) {
    cfg.out_dir = env;
  } else {
    cfg.out_dir = "out";
  }

  try {
    if (cfg.topic_counts.empty()) throw UsageError("--topics-k needs at least one value");
    for (const int k : cfg.topic_counts) {
      if (k < 1) throw UsageError("--topics-k values must be >= 1");
    }
    validate_paths(cfg, names);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec || !fs::is_directory(cfg.out_dir)) throw IoError(cfg.out_dir.string(), "cannot create output directory");
    Context ctx(cfg, out);
    for (const auto& [name, stage] : stages()) {
      if (std::find(names.begin(), names.end(), name) != names.end()) stage(ctx);
    }
    write_manifest(ctx, command);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace diachron::cli
