#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diachron/normalize.hpp"

namespace diachron {

class Vocabulary {
 public:
  Vocabulary() = default;
  /// `tokens` must be sorted and unique; `doc_freq` runs parallel to it.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> doc_freq);

  std::size_t size() const noexcept { return token_of_.size(); }
  /// -1 for out-of-vocabulary tokens.
  int id_of(const std::string& token) const;
  const std::string& token_of(int id) const { return token_of_[static_cast<std::size_t>(id)]; }
  const std::vector<std::string>& tokens() const noexcept { return token_of_; }
  std::size_t doc_freq(int id) const { return doc_freq_[static_cast<std::size_t>(id)]; }

 private:
  std::unordered_map<std::string, int> id_of_;
  std::vector<std::string> token_of_;
  std::vector<std::size_t> doc_freq_;
};

/// Keeps tokens whose document frequency lies in [min_df, max_df_fraction * D].
/// Throws EmptyInput without documents and EmptyVocabulary when nothing survives.
Vocabulary build_vocabulary(const std::vector<TokenStream>& docs, std::size_t min_df, double max_df_fraction);

struct LdaConfig {
  int num_topics = 10;
  /// Symmetric document-topic prior; 50 / num_topics when unset.
  std::optional<double> alpha;
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 1;
  std::size_t min_df = 5;
  double max_df_fraction = 0.5;

  double effective_alpha() const { return alpha.value_or(50.0 / num_topics); }
};

struct TopicModel {
  std::vector<std::string> vocabulary;         // id -> token
  std::vector<std::vector<double>> phi;         // K x V, rows sum to 1
  std::vector<std::vector<double>> theta;       // D x K, rows sum to 1
  std::vector<std::vector<int>> assignments;    // per document, per in-vocabulary token
  std::vector<std::vector<int>> words;          // per document word ids, parallel to assignments
  std::vector<double> log_likelihood_trace;     // log p(w | z) after each sweep

  std::size_t num_topics() const noexcept { return phi.size(); }
};

/// Maps tokens to vocabulary ids, dropping out-of-vocabulary tokens.
std::vector<std::vector<int>> encode_documents(const std::vector<TokenStream>& docs, const Vocabulary& vocab);

/// Collapsed Gibbs sampling. Topics start uniformly at random from cfg.seed;
/// each sweep resamples every token from
///   p(z = k) ∝ (n_dk + alpha) (n_kw + beta) / (n_k + V beta).
/// phi and theta are posterior means of the final counts. The same inputs and
/// config always give the same model. Throws EmptyDocument naming the first
/// document with no in-vocabulary token.
TopicModel fit_lda(const std::vector<TokenStream>& docs, const Vocabulary& vocab, const LdaConfig& cfg);

/// Highest-probability words of one topic, ties broken by ascending id.
std::vector<std::pair<std::string, double>> top_words(const TopicModel& model, std::size_t topic, std::size_t n);

/// UMass coherence of one ranked word list over a document collection:
/// sum over i < j of ln((D(w_i, w_j) + 1) / D(w_j)). Pairs whose D(w_j) is 0
/// are skipped.
double umass_topic_coherence(const std::vector<std::string>& ranked_words, const std::vector<TokenStream>& docs);

/// Mean UMass coherence of the model's topics, using the top_n words of each.
double umass_coherence(const TopicModel& model, const std::vector<TokenStream>& docs, std::size_t top_n);

/// Smallest K whose score is within `epsilon` of the best score. Without an
/// explicit epsilon, 0.02 * |best| is used. Throws InvalidInput when empty.
int select_plateau(const std::vector<std::pair<int, double>>& scores, std::optional<double> epsilon = std::nullopt);

struct CoherenceSweep {
  std::vector<std::pair<int, double>> scores;  // in k_values order
  int selected_k = 0;
  TopicModel selected_model;
};

/// Fits one model per K (seed = cfg_base.seed XOR K), scores each, and picks
/// the plateau K. Fits run concurrently.
CoherenceSweep coherence_sweep(const std::vector<TokenStream>& docs, const Vocabulary& vocab,
                               const LdaConfig& cfg_base, const std::vector<int>& k_values,
                               std::size_t top_n = 10, std::optional<double> plateau_epsilon = std::nullopt);

}  // namespace diachron
