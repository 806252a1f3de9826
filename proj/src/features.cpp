#include "sarcctx/features.hpp"

#include <cmath>

namespace sarcctx {

namespace {

// Surface negation cues: a closed list plus the n't contraction.
const char* kNegations[] = {"not",     "no",     "never", "nothing", "nobody", "none",
                            "neither", "nor",    "nowhere", "cannot", "without"};

bool is_negation(const std::string& tok) {
  for (const char* n : kNegations) {
    if (tok == n) return true;
  }
  return tok.size() > 3 && tok.compare(tok.size() - 3, 3, "n't") == 0;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const char* ns_of(Role role) {
  switch (role) {
    case Role::prior: return "pt";
    case Role::current: return "ct";
    case Role::succeeding: return "st";
  }
  return "?";
}

void add_marker_features(const MarkerFeatures& m, const std::string& ns,
                         std::map<std::string, double>& out) {
  auto set = [&](const char* name, bool v) {
    if (v) out[ns + ":marker:" + name] = 1.0;
  };
  set("hyperbole", m.hyperbole);
  set("single_exclamation", m.single_exclamation);
  set("multi_exclamation", m.multi_exclamation);
  set("tag_question", m.tag_question);
  set("interjection", m.interjection);
  set("capitalization", m.capitalization);
  set("quotation", m.quotation);
  set("emoticon", m.emoticon_present);
  set("emoticon_positive", m.emoticon_polarity == EmoticonPolarity::positive ||
                               m.emoticon_polarity == EmoticonPolarity::mixed);
  set("emoticon_negative", m.emoticon_polarity == EmoticonPolarity::negative ||
                               m.emoticon_polarity == EmoticonPolarity::mixed);
  set("question_single", m.question.single);
  set("question_multiple", m.question.multiple);
  set("period_single", m.period.single);
  set("period_multiple", m.period.multiple);
  set("semicolon_single", m.semicolon.single);
  set("semicolon_multiple", m.semicolon.multiple);
  set("mixed_punctuation", m.mixed_punctuation);
}

}  // namespace

SentimentCounts count_sentiment(const Turn& turn, const SentimentLexicon& sentiment) {
  SentimentCounts c;
  for (const auto& sent : turn.sentences) {
    for (const auto& tok : sent) {
      std::string lc = lower(tok);
      if (is_negation(lc)) ++c.negations;
      if (auto e = sentiment.lookup(lc)) {
        if (e->polarity == Polarity::positive) ++c.positive;
        if (e->polarity == Polarity::negative) ++c.negative;
      }
    }
  }
  return c;
}

std::map<std::string, std::size_t> turn_ngrams(const Turn& turn, std::size_t n_max,
                                               const WordList* stopwords,
                                               const std::string& ns) {
  std::map<std::string, std::size_t> grams;
  for (const auto& sent : turn.sentences) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (sent.size() < n) continue;
      for (std::size_t i = 0; i + n <= sent.size(); ++i) {
        if (n == 1 && stopwords && stopwords->contains(lower(sent[i]))) continue;
        std::string name = ns + ":" + std::to_string(n) + "g:";
        for (std::size_t k = 0; k < n; ++k) {
          if (k > 0) name += ' ';
          name += lower(sent[i + k]);
        }
        ++grams[name];
      }
    }
  }
  return grams;
}

SparseVector tfidf_transform(const SparseVector& counts, const FeatureIndex& index,
                             const std::map<std::string, std::size_t>& doc_freq,
                             std::size_t n_turns) {
  SparseVector out;
  for (const auto& [id, tf] : counts.entries()) {
    const std::string& name = index.name(id);
    auto it = doc_freq.find(name);
    if (it == doc_freq.end() || it->second == 0) {
      throw NumericError("tfidf_transform: retained feature '" + name +
                         "' has document frequency 0");
    }
    const double idf = std::log(static_cast<double>(n_turns) /
                                static_cast<double>(it->second));
    out.add(id, tf * idf);
  }
  out.finalize();
  return out;
}

SparseVector sentiment_features(const ConversationInstance& inst,
                                const SentimentLexicon& sentiment, FeatureIndex& index,
                                bool with_context) {
  SparseVector out;
  auto put = [&](const std::string& name, double v) {
    if (v == 0.0) return;
    std::int32_t id = index.frozen() ? index.get(name) : index.add_or_get(name);
    if (id >= 0) out.add(id, v);
  };
  auto add_turn = [&](const Turn& t) {
    SentimentCounts c = count_sentiment(t, sentiment);
    std::string ns = ns_of(t.role);
    put(ns + ":sent:pos_count", static_cast<double>(c.positive));
    put(ns + ":sent:neg_count", static_cast<double>(c.negative));
    put(ns + ":sent:negation_count", static_cast<double>(c.negations));
    put(ns + ":sent:both_polarities", c.both_polarities() ? 1.0 : 0.0);
    return c;
  };
  SentimentCounts ct = add_turn(inst.current);
  if (with_context) {
    SentimentCounts pt = add_turn(inst.prior);
    if (inst.succeeding) add_turn(*inst.succeeding);
    put("ctxt:sent:incongruity", ct.dominant() != pt.dominant() ? 1.0 : 0.0);
  }
  out.finalize();
  return out;
}

BaselineFeaturizer::BaselineFeaturizer(FeaturizerConfig config, const LexiconSet* lexicons)
    : config_(config), lexicons_(lexicons) {
  require(lexicons != nullptr, "BaselineFeaturizer: lexicons required");
}

void BaselineFeaturizer::add_turn_features(const Turn& turn, const std::string& ns,
                                           SparseVector& out) const {
  if (config_.use_markers) {
    std::map<std::string, double> feats;
    add_marker_features(detect_markers(turn, *lexicons_), ns, feats);
    for (const auto& [name, v] : feats) {
      std::int32_t id = index_.get(name);
      if (id >= 0) out.add(id, v);
    }
  }
  if (config_.use_lexicon && lexicons_->category.size() > 0) {
    std::set<std::string> cats;
    for (const auto& sent : turn.sentences) {
      for (const auto& tok : sent) {
        auto found = lexicons_->category.lookup(lower(tok));
        cats.insert(found.begin(), found.end());
      }
    }
    for (const auto& cat : cats) {
      std::int32_t id = index_.get(ns + ":cat:" + cat);
      if (id >= 0) out.add(id, 1.0);
    }
  }
}

void BaselineFeaturizer::fit(std::span<const ConversationInstance> train) {
  require(!fitted_, "BaselineFeaturizer: fit() called twice");
  fitted_ = true;

  const WordList* stop = lexicons_->stopwords.size() ? &lexicons_->stopwords : nullptr;
  std::map<std::string, std::size_t> totals;
  std::map<std::string, std::size_t> dfs;

  auto roles_of = [&](const ConversationInstance& inst) {
    std::vector<const Turn*> turns{&inst.current};
    if (config_.context_prior) turns.push_back(&inst.prior);
    if (config_.context_succeeding && inst.succeeding) turns.push_back(&*inst.succeeding);
    return turns;
  };

  for (const ConversationInstance& inst : train) {
    for (const Turn* t : roles_of(inst)) {
      auto grams = turn_ngrams(*t, config_.n_max, stop, ns_of(t->role));
      for (const auto& [name, c] : grams) {
        totals[name] += c;
        dfs[name] += 1;
      }
      ++n_turns_;
    }
  }

  // n-gram features surviving the frequency thresholds, in sorted-name order
  for (const auto& [name, total] : totals) {
    if (config_.use_tfidf) {
      if (dfs[name] >= config_.min_df) {
        index_.add_or_get(name);
        doc_freq_[name] = dfs[name];
      }
    } else if (total >= config_.min_count) {
      index_.add_or_get(name);
    }
  }

  // register the dynamic feature names seen on training data
  for (const ConversationInstance& inst : train) {
    if (config_.use_markers || config_.use_lexicon) {
      for (const Turn* t : roles_of(inst)) {
        std::map<std::string, double> feats;
        if (config_.use_markers) {
          add_marker_features(detect_markers(*t, *lexicons_), ns_of(t->role), feats);
        }
        if (config_.use_lexicon && lexicons_->category.size() > 0) {
          for (const auto& sent : t->sentences) {
            for (const auto& tok : sent) {
              for (const auto& cat : lexicons_->category.lookup(lower(tok))) {
                feats[std::string(ns_of(t->role)) + ":cat:" + cat] = 1.0;
              }
            }
          }
        }
        for (const auto& [name, v] : feats) index_.add_or_get(name);
      }
    }
    if (config_.use_sentiment) {
      sentiment_features(inst, lexicons_->sentiment, index_, config_.context_prior);
    }
  }
  index_.freeze();
}

SparseVector BaselineFeaturizer::transform(const ConversationInstance& inst) const {
  require(fitted_, "BaselineFeaturizer: transform before fit");
  const WordList* stop = lexicons_->stopwords.size() ? &lexicons_->stopwords : nullptr;
  SparseVector out;

  std::vector<const Turn*> turns{&inst.current};
  if (config_.context_prior) turns.push_back(&inst.prior);
  if (config_.context_succeeding && inst.succeeding) turns.push_back(&*inst.succeeding);

  for (const Turn* t : turns) {
    SparseVector grams;
    for (const auto& [name, c] : turn_ngrams(*t, config_.n_max, stop, ns_of(t->role))) {
      std::int32_t id = index_.get(name);
      if (id < 0) continue;
      grams.add(id, config_.ngram_mode == NgramMode::binary && !config_.use_tfidf
                        ? 1.0
                        : static_cast<double>(c));
    }
    grams.finalize();
    if (config_.use_tfidf) {
      grams = tfidf_transform(grams, index_, doc_freq_, n_turns_);
    }
    out.merge(grams);
    add_turn_features(*t, ns_of(t->role), out);
  }
  if (config_.use_sentiment) {
    // index is frozen; lookup-only
    auto& idx = const_cast<FeatureIndex&>(index_);
    out.merge(sentiment_features(inst, lexicons_->sentiment, idx, config_.context_prior));
  }
  out.finalize();
  return out;
}

std::size_t BaselineFeaturizer::doc_freq(const std::string& feature_name) const {
  auto it = doc_freq_.find(feature_name);
  return it == doc_freq_.end() ? 0 : it->second;
}

}  // namespace sarcctx
