#include "diachron/topics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <unordered_set>

#include "diachron/error.hpp"

namespace diachron {
namespace {

// Portable uniform draws on top of the standard-specified mt19937_64 sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int below(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

 private:
  std::mt19937_64 engine_;
};

void validate(const LdaConfig& cfg) {
  if (cfg.num_topics < 1) throw InvalidInput("num_topics must be >= 1");
  if (!(cfg.effective_alpha() > 0.0)) throw InvalidInput("alpha must be > 0");
  if (!(cfg.beta > 0.0)) throw InvalidInput("beta must be > 0");
  if (cfg.iterations < 1) throw InvalidInput("iterations must be >= 1");
}

double word_log_likelihood(const std::vector<int>& topic_word, const std::vector<int>& topic_total, std::size_t vocab_size,
                           int k_topics, double beta) {
  const double lg_beta = std::lgamma(beta);
  const double lg_vbeta = std::lgamma(static_cast<double>(vocab_size) * beta);
  double ll = 0.0;
  for (int k = 0; k < k_topics; ++k) {
    ll += lg_vbeta - std::lgamma(topic_total[static_cast<std::size_t>(k)] + static_cast<double>(vocab_size) * beta);
  }
  for (std::size_t i = 0; i < topic_word.size(); ++i) {
    if (topic_word[i] > 0) ll += std::lgamma(topic_word[i] + beta) - lg_beta;
  }
  return ll;
}

// Sorted unique word ids per document.
std::vector<std::vector<int>> document_sets(const std::vector<std::vector<int>>& docs) {
  std::vector<std::vector<int>> sets;
  sets.reserve(docs.size());
  for (const auto& doc : docs) {
    std::vector<int> s(doc);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sets.push_back(std::move(s));
  }
  return sets;
}

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

// Coherence of ranked word ids; `postings[w]` lists the documents containing w.
double umass_from_postings(const std::vector<const std::vector<std::size_t>*>& ranked) {
  double c = 0.0;
  for (std::size_t j = 1; j < ranked.size(); ++j) {
    const double dj = static_cast<double>(ranked[j]->size());
    if (dj == 0.0) continue;
    for (std::size_t i = 0; i < j; ++i) {
      const double co = static_cast<double>(intersection_size(*ranked[i], *ranked[j]));
      c += std::log((co + 1.0) / dj);
    }
  }
  return c;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> doc_freq)
    : token_of_(std::move(tokens)), doc_freq_(std::move(doc_freq)) {
  id_of_.reserve(token_of_.size());
  for (std::size_t i = 0; i < token_of_.size(); ++i) id_of_.emplace(token_of_[i], static_cast<int>(i));
}

int Vocabulary::id_of(const std::string& token) const {
  const auto it = id_of_.find(token);
  return it == id_of_.end() ? -1 : it->second;
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& docs, std::size_t min_df, double max_df_fraction) {
  if (docs.empty()) throw EmptyInput("vocabulary needs at least one document");
  std::unordered_map<std::string, std::size_t> df;
  for (const TokenStream& doc : docs) {
    const std::unordered_set<std::string_view> distinct(doc.tokens.begin(), doc.tokens.end());
    for (const std::string_view token : distinct) ++df[std::string(token)];
  }
  const double max_df = max_df_fraction * static_cast<double>(docs.size());
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [token, n] : df) {
    if (n >= min_df && static_cast<double>(n) <= max_df) kept.emplace_back(token, n);
  }
  if (kept.empty()) throw EmptyVocabulary("no token satisfies the document-frequency bounds");
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> tokens;
  std::vector<std::size_t> freq;
  tokens.reserve(kept.size());
  freq.reserve(kept.size());
  for (auto& [token, n] : kept) {
    tokens.push_back(std::move(token));
    freq.push_back(n);
  }
  return Vocabulary(std::move(tokens), std::move(freq));
}

std::vector<std::vector<int>> encode_documents(const std::vector<TokenStream>& docs, const Vocabulary& vocab) {
  std::vector<std::vector<int>> out;
  out.reserve(docs.size());
  for (const TokenStream& doc : docs) {
    std::vector<int> ids;
    ids.reserve(doc.size());
    for (const std::string& token : doc.tokens) {
      if (const int id = vocab.id_of(token); id >= 0) ids.push_back(id);
    }
    out.push_back(std::move(ids));
  }
  return out;
}

TopicModel fit_lda(const std::vector<TokenStream>& docs, const Vocabulary& vocab, const LdaConfig& cfg) {
  validate(cfg);
  TopicModel model;
  model.vocabulary = vocab.tokens();
  model.words = encode_documents(docs, vocab);
  for (std::size_t d = 0; d < model.words.size(); ++d) {
    if (model.words[d].empty()) throw EmptyDocument("document " + std::to_string(d) + " has no in-vocabulary token");
  }

  const int k_topics = cfg.num_topics;
  const std::size_t K = static_cast<std::size_t>(k_topics);
  const std::size_t V = vocab.size();
  const std::size_t D = model.words.size();
  const double alpha = cfg.effective_alpha();
  const double beta = cfg.beta;
  const double v_beta = static_cast<double>(V) * beta;

  std::vector<int> doc_topic(D * K, 0);    // n_dk
  std::vector<int> topic_word(V * K, 0);   // n_kw, word-major
  std::vector<int> topic_total(K, 0);      // n_k

  Rng rng(cfg.seed);
  model.assignments.resize(D);
  for (std::size_t d = 0; d < D; ++d) {
    model.assignments[d].resize(model.words[d].size());
    for (std::size_t i = 0; i < model.words[d].size(); ++i) {
      const int k = rng.below(k_topics);
      const std::size_t w = static_cast<std::size_t>(model.words[d][i]);
      model.assignments[d][i] = k;
      ++doc_topic[d * K + static_cast<std::size_t>(k)];
      ++topic_word[w * K + static_cast<std::size_t>(k)];
      ++topic_total[static_cast<std::size_t>(k)];
    }
  }

  std::vector<double> cumulative(K);
  model.log_likelihood_trace.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      int* nd = &doc_topic[d * K];
      for (std::size_t i = 0; i < model.words[d].size(); ++i) {
        const std::size_t w = static_cast<std::size_t>(model.words[d][i]);
        int* nw = &topic_word[w * K];
        const std::size_t old = static_cast<std::size_t>(model.assignments[d][i]);
        --nd[old], --nw[old], --topic_total[old];

        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          total += (nd[k] + alpha) * (nw[k] + beta) / (topic_total[k] + v_beta);
          cumulative[k] = total;
        }
        const double u = rng.uniform() * total;
        std::size_t k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        if (k >= K) k = K - 1;

        model.assignments[d][i] = static_cast<int>(k);
        ++nd[k], ++nw[k], ++topic_total[k];
      }
    }
    model.log_likelihood_trace.push_back(word_log_likelihood(topic_word, topic_total, V, k_topics, beta));
  }

  model.phi.assign(K, std::vector<double>(V));
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = topic_total[k] + v_beta;
    for (std::size_t w = 0; w < V; ++w) model.phi[k][w] = (topic_word[w * K + k] + beta) / denom;
  }
  model.theta.assign(D, std::vector<double>(K));
  for (std::size_t d = 0; d < D; ++d) {
    const double denom = static_cast<double>(model.words[d].size()) + static_cast<double>(K) * alpha;
    for (std::size_t k = 0; k < K; ++k) model.theta[d][k] = (doc_topic[d * K + k] + alpha) / denom;
  }
  return model;
}

std::vector<std::pair<std::string, double>> top_words(const TopicModel& model, std::size_t topic, std::size_t n) {
  const auto& row = model.phi.at(topic);
  std::vector<std::size_t> ids(row.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  const std::size_t count = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count), ids.end(),
                    [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(model.vocabulary[ids[i]], row[ids[i]]);
  return out;
}

double umass_topic_coherence(const std::vector<std::string>& ranked_words, const std::vector<TokenStream>& docs) {
  std::vector<std::vector<std::size_t>> postings(ranked_words.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::unordered_set<std::string_view> present(docs[d].tokens.begin(), docs[d].tokens.end());
    for (std::size_t i = 0; i < ranked_words.size(); ++i) {
      if (present.contains(ranked_words[i])) postings[i].push_back(d);
    }
  }
  std::vector<const std::vector<std::size_t>*> ranked;
  for (const auto& p : postings) ranked.push_back(&p);
  return umass_from_postings(ranked);
}

double umass_coherence(const TopicModel& model, const std::vector<TokenStream>& docs, std::size_t top_n) {
  if (top_n < 2) throw InvalidInput("coherence needs top_n >= 2");
  if (model.num_topics() == 0) return 0.0;

  std::unordered_map<std::string, int> id_of;
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) id_of.emplace(model.vocabulary[i], static_cast<int>(i));
  std::vector<std::vector<int>> encoded;
  encoded.reserve(docs.size());
  for (const TokenStream& doc : docs) {
    std::vector<int> ids;
    for (const std::string& token : doc.tokens) {
      if (const auto it = id_of.find(token); it != id_of.end()) ids.push_back(it->second);
    }
    encoded.push_back(std::move(ids));
  }
  std::vector<std::vector<std::size_t>> postings(model.vocabulary.size());
  const auto sets = document_sets(encoded);
  for (std::size_t d = 0; d < sets.size(); ++d) {
    for (const int w : sets[d]) postings[static_cast<std::size_t>(w)].push_back(d);
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    const auto& row = model.phi[k];
    std::vector<std::size_t> ids(row.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    const std::size_t count = std::min(top_n, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count), ids.end(),
                      [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
    std::vector<const std::vector<std::size_t>*> ranked;
    for (std::size_t i = 0; i < count; ++i) ranked.push_back(&postings[ids[i]]);
    sum += umass_from_postings(ranked);
  }
  return sum / static_cast<double>(model.num_topics());
}

int select_plateau(const std::vector<std::pair<int, double>>& scores, std::optional<double> epsilon) {
  if (scores.empty()) throw InvalidInput("plateau selection needs at least one score");
  double best = scores.front().second;
  for (const auto& [_, s] : scores) best = std::max(best, s);
  const double eps = epsilon.value_or(0.02 * std::abs(best));
  int selected = 0;
  bool found = false;
  for (const auto& [k, s] : scores) {
    if (s >= best - eps && (!found || k < selected)) {
      selected = k;
      found = true;
    }
  }
  return selected;
}

CoherenceSweep coherence_sweep(const std::vector<TokenStream>& docs, const Vocabulary& vocab, const LdaConfig& cfg_base,
                               const std::vector<int>& k_values, std::size_t top_n,
                               std::optional<double> plateau_epsilon) {
  if (k_values.empty()) throw InvalidInput("coherence sweep needs at least one K");
  struct Fit {
    double score;
    TopicModel model;
  };
  std::vector<std::future<Fit>> pending;
  pending.reserve(k_values.size());
  for (const int k : k_values) {
    pending.push_back(std::async(std::launch::async, [&, k] {
      LdaConfig cfg = cfg_base;
      cfg.num_topics = k;
      cfg.seed = cfg_base.seed ^ static_cast<std::uint64_t>(k);
      TopicModel model = fit_lda(docs, vocab, cfg);
      const double score = umass_coherence(model, docs, top_n);
      return Fit{score, std::move(model)};
    }));
  }
  std::vector<Fit> fits;
  fits.reserve(pending.size());
  for (auto& f : pending) fits.push_back(f.get());

  CoherenceSweep sweep;
  for (std::size_t i = 0; i < k_values.size(); ++i) sweep.scores.emplace_back(k_values[i], fits[i].score);
  sweep.selected_k = select_plateau(sweep.scores, plateau_epsilon);
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] == sweep.selected_k) {
      sweep.selected_model = std::move(fits[i].model);
      break;
    }
  }
  return sweep;
}

}  // namespace diachron
