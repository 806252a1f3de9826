#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sarcctx/attention.hpp"
#include "sarcctx/embeddings.hpp"
#include "sarcctx/lstm.hpp"
#include "sarcctx/vocab.hpp"

namespace sarcctx {

// Architectures, one per experiment family:
//   ct                current turn only, final LSTM state
//   ct_concat_context one LSTM over the turns joined at token level
//   multi_lstm        one LSTM per turn, final states concatenated
//   conditional       chained LSTMs, cell state carried across turns
//   attn_sent         sentence-level attention over LSTM annotations
//   attn_word         word-level attention builds the sentence vectors
//   attn_word_sent    word- and sentence-level attention
enum class Arch {
  ct,
  ct_concat_context,
  multi_lstm,
  conditional,
  attn_sent,
  attn_word,
  attn_word_sent,
};

enum class ContextUse { none, pt, st, pt_st };
enum class SentRepr { avg, word_attention };

const char* to_string(Arch a);
const char* to_string(ContextUse c);
Arch parse_arch(const std::string& s);
ContextUse parse_context(const std::string& s);

struct ModelConfig {
  Arch arch = Arch::ct;
  ContextUse context = ContextUse::none;
  std::size_t hidden_dim = 100;
  std::size_t embedding_dim = 100;
  std::size_t attn_dim = 0;  // 0 -> hidden_dim
  double dropout = 0.5;
  double l2 = 1e-4;
  // attn_sent over the token-level concatenation of the turns (single
  // encoder) instead of one attentive encoder per turn
  bool concat_turns = false;
  // keep only the last prior-turn sentence as context
  bool last_pt_only = false;

  bool sentence_attention() const {
    return arch == Arch::attn_sent || arch == Arch::attn_word_sent;
  }
  bool word_attention() const {
    return arch == Arch::attn_word || arch == Arch::attn_word_sent;
  }
  SentRepr sent_repr() const {
    return word_attention() ? SentRepr::word_attention : SentRepr::avg;
  }
  bool concat_input() const { return arch == Arch::ct_concat_context || concat_turns; }
  std::size_t attention_dim() const { return attn_dim == 0 ? hidden_dim : attn_dim; }
  // dimension of the vectors the sentence-level LSTM reads
  std::size_t repr_dim() const {
    return word_attention() ? hidden_dim : embedding_dim;
  }

  // roles the model reads, in classifier concatenation order [pt, ct, st]
  std::vector<Role> roles_read() const;
  // encoder roles (a single Role::current encoder when turns are joined)
  std::vector<Role> encoder_roles() const;
  std::size_t n_turn_vectors() const;

  void validate() const;

  std::map<std::string, std::string> to_map() const;
  static ModelConfig from_map(const std::map<std::string, std::string>& kv);
};

struct TurnEncoderParams {
  LstmParams sent_lstm;
  std::optional<AttentionParams> sent_attn;
  std::optional<LstmParams> word_lstm;
  std::optional<AttentionParams> word_attn;
};

// The full trainable parameter set. Blocks are enumerated in a fixed order
// (encoders by role, then the classifier) for checkpoints, the optimizer and
// gradient checks.
struct ModelParams {
  ModelConfig config;
  std::vector<std::pair<Role, TurnEncoderParams>> encoders;
  Matrix W_out;  // 2 x (n_turn_vectors * hidden)
  Vector b_out;  // 2

  static ModelParams init(const ModelConfig& config, Rng& rng);

  const TurnEncoderParams& encoder(Role role) const;

  template <typename Fn>  // Fn(const std::string&, std::span<double>)
  void for_each_block(Fn&& fn);
  template <typename Fn>
  void for_each_block(Fn&& fn) const;

  std::size_t n_params() const;
  double sum_squares() const;
};

struct TurnEncoderGrads {
  LstmGrads sent_lstm;
  std::optional<AttentionGrads> sent_attn;
  std::optional<LstmGrads> word_lstm;
  std::optional<AttentionGrads> word_attn;
  explicit TurnEncoderGrads(const TurnEncoderParams& p);
};

struct ModelGrads {
  std::vector<std::pair<Role, TurnEncoderGrads>> encoders;
  Matrix dW_out;
  Vector db_out;

  explicit ModelGrads(const ModelParams& params);
  void zero();
  void scale(double s);

  template <typename Fn>
  void for_each_block(Fn&& fn);  // same order as ModelParams::for_each_block
};

// Per-turn attention weights extracted for analysis. Weight blocks cover
// unmasked positions only and sum to 1.
struct AttentionRecord {
  struct TurnAttention {
    Vector sentence_weights;            // empty unless sentence attention
    std::vector<Vector> word_weights;   // per sentence, empty unless word attention
  };
  std::map<Role, TurnAttention> turns;
  bool has_sentence_weights() const;
};

struct ModelInput {
  const EncodedTurn* prior = nullptr;
  const EncodedTurn* current = nullptr;
  const EncodedTurn* succeeding = nullptr;
  const EmbeddingTable* embeddings = nullptr;

  const EncodedTurn* turn(Role role) const;
};

// Owns any turns synthesized for an architecture (token-level concatenation,
// last-sentence context truncation) plus the view the model reads.
struct PreparedInput {
  std::vector<EncodedTurn> storage;
  ModelInput view;
};

PreparedInput prepare_input(const ModelConfig& config, const EncodedInstance& inst,
                            const EmbeddingTable& embeddings);

// Sentences of the given turns joined into one turn, with a single
// boundary-marker token (its own one-token sentence) between consecutive
// turns.
EncodedTurn concat_encoded_turns(const std::vector<const EncodedTurn*>& turns);

struct TurnForwardCache {
  std::vector<LstmSequenceCache> word_lstm;   // per sentence (word attention)
  std::vector<AttentionCache> word_attn;      // per sentence (word attention)
  std::vector<Vector> sent_reprs;
  LstmSequenceCache sent_lstm;
  std::vector<LstmState> sent_states;
  AttentionCache sent_attn;  // valid iff sentence attention
  Vector turn_vec;
  std::size_t n_sents = 0;
};

struct ForwardCache {
  std::vector<std::pair<Role, TurnForwardCache>> turns;  // encoder order
  Vector concat;
  Vector dropout_mask;  // empty when dropout was not applied
  Vector clf_input;
  Vector logits;
  Vector probs;
};

struct ForwardResult {
  Vector probs;  // [P(S), P(NS)]
  AttentionRecord attention;
};

// Forward pass. In train mode dropout is applied to the concatenated
// pre-classifier vector (mask drawn from `rng`, or `dropout_override` when
// given, e.g. to freeze the mask for a gradient check).
ForwardResult model_forward(const ModelParams& params, const ModelInput& input,
                            bool train_mode = false, Rng* rng = nullptr,
                            ForwardCache* cache = nullptr,
                            const Vector* dropout_override = nullptr);

// Weighted negative log-likelihood; gold probabilities below 1e-12 are
// clamped (with a diagnostic warning).
double nll_loss(const Vector& probs, Label gold, double class_weight);

// (l2/2) * sum of squared parameters, all blocks included.
double l2_penalty(const ModelParams& params);

// Backpropagates the weighted NLL through the cached graph, accumulating
// into `grads` (L2 gradients not included; see add_l2_gradients).
void model_backward(const ModelParams& params, const ForwardCache& cache, Label gold,
                    double class_weight, ModelGrads& grads);

void add_l2_gradients(const ModelParams& params, ModelGrads& grads);

// forward + NLL + L2 penalty, accumulating total gradients. Returns the
// per-instance loss (weighted NLL + L2 penalty).
double loss_and_grads(const ModelParams& params, const ModelInput& input, Label gold,
                      double class_weight, bool train_mode, Rng* rng, ModelGrads& grads,
                      AttentionRecord* attention = nullptr);

// ---- template bodies ----

template <typename Fn>
void visit_lstm_blocks(const std::string& prefix, LstmParams& p, Fn&& fn) {
  fn(prefix + ".W_i", p.W_i.flat());
  fn(prefix + ".W_f", p.W_f.flat());
  fn(prefix + ".W_o", p.W_o.flat());
  fn(prefix + ".W_c", p.W_c.flat());
  fn(prefix + ".b_i", std::span<double>(p.b_i));
  fn(prefix + ".b_f", std::span<double>(p.b_f));
  fn(prefix + ".b_o", std::span<double>(p.b_o));
  fn(prefix + ".b_c", std::span<double>(p.b_c));
}

template <typename Fn>
void visit_attention_blocks(const std::string& prefix, AttentionParams& p, Fn&& fn) {
  fn(prefix + ".W", p.W.flat());
  fn(prefix + ".b", std::span<double>(p.b));
  fn(prefix + ".u_ctx", std::span<double>(p.u_ctx));
}

template <typename Fn>
void ModelParams::for_each_block(Fn&& fn) {
  for (auto& [role, enc] : encoders) {
    const std::string base = to_string(role);
    if (enc.word_lstm) visit_lstm_blocks(base + ".word_lstm", *enc.word_lstm, fn);
    if (enc.word_attn) visit_attention_blocks(base + ".word_attn", *enc.word_attn, fn);
    visit_lstm_blocks(base + ".sent_lstm", enc.sent_lstm, fn);
    if (enc.sent_attn) visit_attention_blocks(base + ".sent_attn", *enc.sent_attn, fn);
  }
  fn(std::string("out.W"), W_out.flat());
  fn(std::string("out.b"), std::span<double>(b_out));
}

template <typename Fn>
void ModelParams::for_each_block(Fn&& fn) const {
  const_cast<ModelParams*>(this)->for_each_block(
      [&fn](const std::string& name, std::span<double> data) {
        fn(name, std::span<const double>(data));
      });
}

template <typename Fn>
void ModelGrads::for_each_block(Fn&& fn) {
  auto lstm = [&fn](const std::string& prefix, LstmGrads& g) {
    fn(prefix + ".W_i", g.dW_i.flat());
    fn(prefix + ".W_f", g.dW_f.flat());
    fn(prefix + ".W_o", g.dW_o.flat());
    fn(prefix + ".W_c", g.dW_c.flat());
    fn(prefix + ".b_i", std::span<double>(g.db_i));
    fn(prefix + ".b_f", std::span<double>(g.db_f));
    fn(prefix + ".b_o", std::span<double>(g.db_o));
    fn(prefix + ".b_c", std::span<double>(g.db_c));
  };
  auto attn = [&fn](const std::string& prefix, AttentionGrads& g) {
    fn(prefix + ".W", g.dW.flat());
    fn(prefix + ".b", std::span<double>(g.db));
    fn(prefix + ".u_ctx", std::span<double>(g.du_ctx));
  };
  for (auto& [role, enc] : encoders) {
    const std::string base = to_string(role);
    if (enc.word_lstm) lstm(base + ".word_lstm", *enc.word_lstm);
    if (enc.word_attn) attn(base + ".word_attn", *enc.word_attn);
    lstm(base + ".sent_lstm", enc.sent_lstm);
    if (enc.sent_attn) attn(base + ".sent_attn", *enc.sent_attn);
  }
  fn(std::string("out.W"), dW_out.flat());
  fn(std::string("out.b"), std::span<double>(db_out));
}

}  // namespace sarcctx
