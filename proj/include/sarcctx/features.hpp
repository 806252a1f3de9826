#pragma once

#include <map>
#include <span>
#include <string>

#include "sarcctx/markers.hpp"
#include "sarcctx/sparse.hpp"
#include "sarcctx/text.hpp"
#include "sarcctx/vocab.hpp"

namespace sarcctx {

// Per-turn sentiment summary used both as baseline features and for the
// incongruity signal between context and reply.
struct SentimentCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t negations = 0;
  bool both_polarities() const { return positive > 0 && negative > 0; }
  // positive / negative / neutral depending on which count dominates
  Polarity dominant() const {
    if (positive > negative) return Polarity::positive;
    if (negative > positive) return Polarity::negative;
    return Polarity::neutral;
  }
};

SentimentCounts count_sentiment(const Turn& turn, const SentimentLexicon& sentiment);

enum class NgramMode { counts, binary };

struct FeaturizerConfig {
  std::size_t n_max = 3;
  std::size_t min_count = 5;  // total-occurrence threshold for BoW n-grams
  std::size_t min_df = 5;     // document-frequency threshold for tf-idf
  NgramMode ngram_mode = NgramMode::counts;
  bool use_tfidf = false;  // tf-idf n-grams instead of raw counts
  bool use_lexicon = true;
  bool use_sentiment = true;
  bool use_markers = true;
  bool context_prior = false;       // include prior-turn features (pt:)
  bool context_succeeding = false;  // include succeeding-turn features (st:)
};

// Discrete/tf-idf feature extraction with a train-time-frozen feature space.
// Turn features carry per-role namespaces (ct:, pt:, st:).
class BaselineFeaturizer {
 public:
  BaselineFeaturizer(FeaturizerConfig config, const LexiconSet* lexicons);

  // Counts n-grams / document frequencies over the training corpus and
  // freezes the feature index. Must be called exactly once.
  void fit(std::span<const ConversationInstance> train);

  SparseVector transform(const ConversationInstance& inst) const;

  const FeatureIndex& index() const { return index_; }
  std::size_t n_turns_fit() const { return n_turns_; }
  // document frequency of an n-gram feature name, 0 if unseen
  std::size_t doc_freq(const std::string& feature_name) const;

  const FeaturizerConfig& config() const { return config_; }

 private:
  void add_turn_features(const Turn& turn, const std::string& ns, SparseVector& out) const;

  FeaturizerConfig config_;
  const LexiconSet* lexicons_;
  FeatureIndex index_;
  std::map<std::string, std::size_t> doc_freq_;  // per retained tf-idf feature
  std::size_t n_turns_ = 0;
  bool fitted_ = false;
};

// The n-grams of one tokenized turn, as namespaced name -> count. Unigrams
// honor the stop-word list; n-gram tokens are joined with a single space.
std::map<std::string, std::size_t> turn_ngrams(const Turn& turn, std::size_t n_max,
                                               const WordList* stopwords,
                                               const std::string& ns);

// counts -> tf * ln(N / df) for every retained feature. Features missing
// from doc_freq raise NumericError (internal consistency: a retained
// feature always has df >= 1).
SparseVector tfidf_transform(const SparseVector& counts, const FeatureIndex& index,
                             const std::map<std::string, std::size_t>& doc_freq,
                             std::size_t n_turns);

// Turn-level sentiment features plus, when with_context, the incongruity
// indicator (current-turn dominant polarity differs from the prior turn).
SparseVector sentiment_features(const ConversationInstance& inst,
                                const SentimentLexicon& sentiment, FeatureIndex& index,
                                bool with_context);

}  // namespace sarcctx
