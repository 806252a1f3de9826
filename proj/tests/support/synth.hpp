#pragma once

// Test-support generators: random encoded instances for gradient checks and
// synthetic conversation corpora whose label depends on the sentiment
// relation between the prior and the current turn (sarcastic = a positive
// reply to a negative context). Kept independent of the training code it
// exercises.

#include <string>
#include <vector>

#include "sarcctx/dataset.hpp"
#include "sarcctx/rng.hpp"
#include "sarcctx/vocab.hpp"

namespace sarcctx::testsupport {

inline EncodedTurn random_turn(Rng& rng, std::size_t vocab_size, std::size_t max_sents,
                               std::size_t max_words) {
  EncodedTurn t;
  t.max_sents = max_sents;
  t.max_words = max_words;
  t.ids.assign(max_sents * max_words, Vocabulary::kPadId);
  t.n_sents = 1 + rng.uniform_int(max_sents);
  t.sent_len.resize(t.n_sents);
  for (std::size_t s = 0; s < t.n_sents; ++s) {
    t.sent_len[s] = 1 + rng.uniform_int(max_words);
    for (std::size_t w = 0; w < t.sent_len[s]; ++w) {
      // skip the reserved ids: 3 .. vocab_size-1
      t.ids[s * max_words + w] =
          static_cast<std::int32_t>(3 + rng.uniform_int(vocab_size - 3));
    }
  }
  return t;
}

inline EncodedInstance random_instance(Rng& rng, std::size_t vocab_size,
                                       std::size_t max_sents, std::size_t max_words,
                                       bool with_succeeding) {
  EncodedInstance inst;
  inst.id = "synthetic";
  inst.label = rng.bernoulli(0.5) ? Label::S : Label::NS;
  inst.prior = random_turn(rng, vocab_size, max_sents, max_words);
  inst.current = random_turn(rng, vocab_size, max_sents, max_words);
  if (with_succeeding) {
    inst.succeeding = random_turn(rng, vocab_size, max_sents, max_words);
  }
  return inst;
}

// ---- sentiment-incongruity corpora ----

struct CorpusSpec {
  std::size_t n = 2000;
  double sarcastic_fraction = 0.25;  // label = prior negative & current positive
  std::size_t pos_words = 20;
  std::size_t neg_words = 20;
  std::size_t neutral_words = 80;
  std::size_t min_prior_sents = 1;
  std::size_t max_prior_sents = 4;
  std::size_t min_words = 3;
  std::size_t max_words = 6;
  // plant the polarity in exactly one prior sentence (the rest are neutral
  // filler) and remember its index
  bool planted = false;
  std::uint64_t seed = 1;
};

struct SynthCorpus {
  std::vector<RawRecord> records;
  std::vector<std::size_t> planted_index;  // per record, valid when planted
};

inline SynthCorpus make_incongruity_corpus(const CorpusSpec& spec) {
  Rng rng(spec.seed);
  auto word = [](const char* prefix, std::size_t i) {
    return std::string(prefix) + std::to_string(i);
  };
  auto pick = [&rng](std::size_t n, const char* prefix) {
    return std::string(prefix) + std::to_string(rng.uniform_int(n));
  };

  SynthCorpus out;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const bool sarcastic = rng.uniform() < spec.sarcastic_fraction;
    bool prior_negative, current_positive;
    if (sarcastic) {
      prior_negative = true;
      current_positive = true;
    } else {
      // the three congruent-or-reversed cells, uniformly
      switch (rng.uniform_int(3)) {
        case 0: prior_negative = false; current_positive = true; break;
        case 1: prior_negative = false; current_positive = false; break;
        default: prior_negative = true; current_positive = false; break;
      }
    }

    auto sentence = [&](const char* pool, std::size_t pool_n) {
      std::string s;
      const std::size_t len =
          spec.min_words + rng.uniform_int(spec.max_words - spec.min_words + 1);
      for (std::size_t w = 0; w < len; ++w) {
        if (!s.empty()) s += ' ';
        s += pick(pool_n, pool);
      }
      return s + ".";
    };
    auto polar_sentence = [&](bool negative) {
      return negative ? sentence("neg", spec.neg_words) : sentence("pos", spec.pos_words);
    };
    auto neutral_sentence = [&] { return sentence("neut", spec.neutral_words); };

    RawRecord rec;
    rec.id = "synth" + std::to_string(i);
    rec.label = sarcastic ? Label::S : Label::NS;

    const std::size_t n_prior =
        spec.min_prior_sents +
        rng.uniform_int(spec.max_prior_sents - spec.min_prior_sents + 1);
    std::vector<std::string> prior_sents;
    std::size_t planted = 0;
    if (spec.planted) {
      planted = rng.uniform_int(n_prior);
      for (std::size_t s = 0; s < n_prior; ++s) {
        prior_sents.push_back(s == planted ? polar_sentence(prior_negative)
                                           : neutral_sentence());
      }
    } else {
      for (std::size_t s = 0; s < n_prior; ++s) {
        prior_sents.push_back(polar_sentence(prior_negative));
      }
    }
    out.planted_index.push_back(planted);
    rec.prior_sents = prior_sents;

    std::vector<std::string> current_sents;
    const std::size_t n_current = 1 + rng.uniform_int(2);
    for (std::size_t s = 0; s < n_current; ++s) {
      current_sents.push_back(polar_sentence(!current_positive));
    }
    rec.current_sents = current_sents;
    out.records.push_back(std::move(rec));
  }
  (void)word;
  return out;
}

}  // namespace sarcctx::testsupport
