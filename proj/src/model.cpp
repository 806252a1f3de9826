#include "sarcctx/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sarcctx {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Vector state_h_list_concat(const std::vector<Vector>& parts) {
  std::size_t total = 0;
  for (const Vector& p : parts) total += p.size();
  Vector out;
  out.reserve(total);
  for (const Vector& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

const char* to_string(Arch a) {
  switch (a) {
    case Arch::ct: return "ct";
    case Arch::ct_concat_context: return "ct_concat_context";
    case Arch::multi_lstm: return "multi_lstm";
    case Arch::conditional: return "conditional";
    case Arch::attn_sent: return "attn_sent";
    case Arch::attn_word: return "attn_word";
    case Arch::attn_word_sent: return "attn_word_sent";
  }
  return "?";
}

const char* to_string(ContextUse c) {
  switch (c) {
    case ContextUse::none: return "none";
    case ContextUse::pt: return "pt";
    case ContextUse::st: return "st";
    case ContextUse::pt_st: return "pt+st";
  }
  return "?";
}

Arch parse_arch(const std::string& s) {
  for (Arch a : {Arch::ct, Arch::ct_concat_context, Arch::multi_lstm, Arch::conditional,
                 Arch::attn_sent, Arch::attn_word, Arch::attn_word_sent}) {
    if (s == to_string(a)) return a;
  }
  throw ConfigError("unknown architecture '" + s + "'");
}

ContextUse parse_context(const std::string& s) {
  for (ContextUse c :
       {ContextUse::none, ContextUse::pt, ContextUse::st, ContextUse::pt_st}) {
    if (s == to_string(c)) return c;
  }
  if (s == "pt_st") return ContextUse::pt_st;
  throw ConfigError("unknown context '" + s + "' (expected none|pt|st|pt+st)");
}

std::vector<Role> ModelConfig::roles_read() const {
  if (arch == Arch::ct) return {Role::current};
  switch (context) {
    case ContextUse::none: return {Role::current};
    case ContextUse::pt: return {Role::prior, Role::current};
    case ContextUse::st: return {Role::current, Role::succeeding};
    case ContextUse::pt_st: return {Role::prior, Role::current, Role::succeeding};
  }
  return {Role::current};
}

std::vector<Role> ModelConfig::encoder_roles() const {
  if (concat_input()) return {Role::current};
  return roles_read();
}

std::size_t ModelConfig::n_turn_vectors() const {
  if (arch == Arch::conditional || concat_input()) return 1;
  return roles_read().size();
}

void ModelConfig::validate() const {
  if (hidden_dim == 0 || embedding_dim == 0) {
    throw ConfigError("hidden_dim and embedding_dim must be positive");
  }
  if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout must be in [0, 1)");
  if (l2 < 0.0) throw ConfigError("l2 must be non-negative");
  if (arch == Arch::ct && context != ContextUse::none) {
    throw ConfigError("arch 'ct' reads no context; set context=none");
  }
  if (arch == Arch::ct_concat_context && context == ContextUse::none) {
    throw ConfigError("arch 'ct_concat_context' requires context");
  }
  if (arch == Arch::conditional && context == ContextUse::none) {
    throw ConfigError("arch 'conditional' requires context");
  }
  if (concat_turns) {
    if (arch != Arch::attn_sent) {
      throw ConfigError("concat_turns applies to arch 'attn_sent' only");
    }
    if (context == ContextUse::none) {
      throw ConfigError("concat_turns requires context");
    }
  }
  if (last_pt_only && context != ContextUse::pt && context != ContextUse::pt_st) {
    throw ConfigError("last_pt_only requires prior-turn context");
  }
}

std::map<std::string, std::string> ModelConfig::to_map() const {
  return {
      {"arch", to_string(arch)},
      {"context", to_string(context)},
      {"hidden_dim", std::to_string(hidden_dim)},
      {"embedding_dim", std::to_string(embedding_dim)},
      {"attn_dim", std::to_string(attn_dim)},
      {"dropout", fmt_double(dropout)},
      {"l2", fmt_double(l2)},
      {"concat_turns", concat_turns ? "true" : "false"},
      {"last_pt_only", last_pt_only ? "true" : "false"},
  };
}

ModelConfig ModelConfig::from_map(const std::map<std::string, std::string>& kv) {
  ModelConfig c;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* v = get("arch")) c.arch = parse_arch(*v);
  if (auto* v = get("context")) c.context = parse_context(*v);
  if (auto* v = get("hidden_dim")) c.hidden_dim = std::stoul(*v);
  if (auto* v = get("embedding_dim")) c.embedding_dim = std::stoul(*v);
  if (auto* v = get("attn_dim")) c.attn_dim = std::stoul(*v);
  if (auto* v = get("dropout")) c.dropout = std::stod(*v);
  if (auto* v = get("l2")) c.l2 = std::stod(*v);
  if (auto* v = get("concat_turns")) c.concat_turns = (*v == "true" || *v == "1");
  if (auto* v = get("last_pt_only")) c.last_pt_only = (*v == "true" || *v == "1");
  c.validate();
  return c;
}

ModelParams ModelParams::init(const ModelConfig& config, Rng& rng) {
  config.validate();
  ModelParams p;
  p.config = config;
  const std::size_t H = config.hidden_dim;
  for (Role role : config.encoder_roles()) {
    TurnEncoderParams enc;
    if (config.word_attention()) {
      enc.word_lstm.emplace(H, config.embedding_dim);
      enc.word_lstm->init_uniform(rng);
      enc.word_attn.emplace(config.attention_dim(), H);
      enc.word_attn->init_uniform(rng);
    }
    enc.sent_lstm = LstmParams(H, config.repr_dim());
    enc.sent_lstm.init_uniform(rng);
    if (config.sentence_attention()) {
      enc.sent_attn.emplace(config.attention_dim(), H);
      enc.sent_attn->init_uniform(rng);
    }
    p.encoders.emplace_back(role, std::move(enc));
  }
  p.W_out = Matrix(2, config.n_turn_vectors() * H);
  for (double& v : p.W_out.flat()) v = rng.uniform(-0.05, 0.05);
  p.b_out.assign(2, 0.0);
  for (double& v : p.b_out) v = rng.uniform(-0.05, 0.05);
  return p;
}

const TurnEncoderParams& ModelParams::encoder(Role role) const {
  for (const auto& [r, enc] : encoders) {
    if (r == role) return enc;
  }
  throw ConfigError(std::string("model has no encoder for role ") + to_string(role));
}

std::size_t ModelParams::n_params() const {
  std::size_t n = 0;
  for_each_block([&n](const std::string&, std::span<const double> data) { n += data.size(); });
  return n;
}

double ModelParams::sum_squares() const {
  double s = 0.0;
  for_each_block([&s](const std::string&, std::span<const double> data) {
    for (double v : data) s += v * v;
  });
  return s;
}

TurnEncoderGrads::TurnEncoderGrads(const TurnEncoderParams& p) : sent_lstm(p.sent_lstm) {
  if (p.sent_attn) sent_attn.emplace(*p.sent_attn);
  if (p.word_lstm) word_lstm.emplace(*p.word_lstm);
  if (p.word_attn) word_attn.emplace(*p.word_attn);
}

ModelGrads::ModelGrads(const ModelParams& params)
    : dW_out(params.W_out.rows(), params.W_out.cols()),
      db_out(params.b_out.size(), 0.0) {
  for (const auto& [role, enc] : params.encoders) {
    encoders.emplace_back(role, TurnEncoderGrads(enc));
  }
}

void ModelGrads::zero() {
  for_each_block([](const std::string&, std::span<double> data) {
    std::fill(data.begin(), data.end(), 0.0);
  });
}

void ModelGrads::scale(double s) {
  for_each_block([s](const std::string&, std::span<double> data) {
    for (double& v : data) v *= s;
  });
}

bool AttentionRecord::has_sentence_weights() const {
  for (const auto& [role, t] : turns) {
    if (!t.sentence_weights.empty()) return true;
  }
  return false;
}

const EncodedTurn* ModelInput::turn(Role role) const {
  switch (role) {
    case Role::prior: return prior;
    case Role::current: return current;
    case Role::succeeding: return succeeding;
  }
  return nullptr;
}

EncodedTurn concat_encoded_turns(const std::vector<const EncodedTurn*>& turns) {
  require(!turns.empty(), "concat_encoded_turns: no turns");
  std::size_t max_words = 1;
  std::size_t total_sents = turns.size() - 1;  // boundary markers
  for (const EncodedTurn* t : turns) {
    max_words = std::max(max_words, t->max_words);
    total_sents += t->n_sents;
  }
  EncodedTurn out;
  out.max_sents = total_sents;
  out.max_words = max_words;
  out.ids.assign(total_sents * max_words, Vocabulary::kPadId);
  out.n_sents = total_sents;
  out.sent_len.reserve(total_sents);
  std::size_t row = 0;
  for (std::size_t k = 0; k < turns.size(); ++k) {
    if (k > 0) {
      out.ids[row * max_words] = Vocabulary::kTurnId;
      out.sent_len.push_back(1);
      ++row;
    }
    const EncodedTurn& t = *turns[k];
    out.truncated_sents = out.truncated_sents || t.truncated_sents;
    out.truncated_words = out.truncated_words || t.truncated_words;
    for (std::size_t s = 0; s < t.n_sents; ++s) {
      for (std::size_t w = 0; w < t.sent_len[s]; ++w) {
        out.ids[row * max_words + w] = t.id(s, w);
      }
      out.sent_len.push_back(t.sent_len[s]);
      ++row;
    }
  }
  return out;
}

PreparedInput prepare_input(const ModelConfig& config, const EncodedInstance& inst,
                            const EmbeddingTable& embeddings) {
  config.validate();
  PreparedInput out;
  out.storage.reserve(4);
  out.view.embeddings = &embeddings;

  const EncodedTurn* pt = &inst.prior;
  const EncodedTurn* ct = &inst.current;
  const EncodedTurn* st = inst.succeeding ? &*inst.succeeding : nullptr;

  if (config.last_pt_only) {
    out.storage.push_back(pt->last_sentence_only());
    pt = &out.storage.back();
  }

  std::vector<const EncodedTurn*> read;
  for (Role role : config.roles_read()) {
    const EncodedTurn* t = role == Role::prior ? pt : role == Role::current ? ct : st;
    if (!t) {
      throw DataError(std::string("instance '") + inst.id + "' is missing the " +
                      to_string(role) + " turn required by arch " +
                      to_string(config.arch));
    }
    read.push_back(t);
  }

  if (config.concat_input()) {
    out.storage.push_back(concat_encoded_turns(read));
    out.view.current = &out.storage.back();
    return out;
  }
  for (std::size_t i = 0; i < read.size(); ++i) {
    switch (config.roles_read()[i]) {
      case Role::prior: out.view.prior = read[i]; break;
      case Role::current: out.view.current = read[i]; break;
      case Role::succeeding: out.view.succeeding = read[i]; break;
    }
  }
  return out;
}

namespace {

// Encodes one turn up to its turn vector. `init` seeds the sentence-level
// LSTM (conditional encoding passes the previous turn's cell state).
void encode_turn_forward(const ModelConfig& config, const TurnEncoderParams& enc,
                         const EncodedTurn& turn, const EmbeddingTable& emb,
                         const LstmState& init, TurnForwardCache& tc,
                         AttentionRecord::TurnAttention* record) {
  const std::size_t n = turn.n_sents;
  tc.n_sents = n;
  tc.sent_reprs.clear();
  tc.sent_reprs.reserve(n);
  if (config.word_attention()) {
    tc.word_lstm.resize(n);
    tc.word_attn.resize(n);
    if (record) record->word_weights.resize(n);
  }

  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t len = turn.sent_len[s];
    require(len > 0, "encode_turn_forward: empty sentence");
    std::vector<Vector> embs;
    embs.reserve(len);
    for (std::size_t w = 0; w < len; ++w) embs.push_back(emb.row_vec(turn.id(s, w)));
    if (config.word_attention()) {
      LstmState zero(config.hidden_dim);
      auto states = encode_sequence(*enc.word_lstm, embs, zero, nullptr, &tc.word_lstm[s]);
      std::vector<Vector> hs;
      hs.reserve(states.size());
      for (const LstmState& st : states) hs.push_back(st.h);
      AttentionResult res = attention_pool(hs, *enc.word_attn, &tc.word_attn[s]);
      tc.sent_reprs.push_back(std::move(res.pooled));
      if (record) record->word_weights[s] = res.alpha;
    } else {
      tc.sent_reprs.push_back(mean_of(embs));
    }
  }

  tc.sent_states = encode_sequence(enc.sent_lstm, tc.sent_reprs, init, nullptr,
                                   &tc.sent_lstm);
  if (config.sentence_attention()) {
    std::vector<Vector> hs;
    hs.reserve(tc.sent_states.size());
    for (const LstmState& st : tc.sent_states) hs.push_back(st.h);
    AttentionResult res = attention_pool(hs, *enc.sent_attn, &tc.sent_attn);
    tc.turn_vec = std::move(res.pooled);
    if (record) record->sentence_weights = res.alpha;
  } else {
    tc.turn_vec = tc.sent_states.back().h;
  }
}

}  // namespace

ForwardResult model_forward(const ModelParams& params, const ModelInput& input,
                            bool train_mode, Rng* rng, ForwardCache* cache,
                            const Vector* dropout_override) {
  const ModelConfig& config = params.config;
  require(input.embeddings != nullptr, "model_forward: embeddings required");
  require(input.embeddings->dim() == config.embedding_dim,
          "model_forward: embedding dimension mismatch");

  ForwardCache local;
  ForwardCache& fc = cache ? *cache : local;
  fc.turns.clear();

  ForwardResult result;
  const bool conditional = config.arch == Arch::conditional;
  LstmState carry(config.hidden_dim);  // conditional chain state

  for (Role role : config.encoder_roles()) {
    const EncodedTurn* turn = input.turn(role);
    if (!turn) {
      throw DataError(std::string("model_forward: missing ") + to_string(role) + " turn");
    }
    fc.turns.emplace_back(role, TurnForwardCache{});
    TurnForwardCache& tc = fc.turns.back().second;
    AttentionRecord::TurnAttention* rec = nullptr;
    if (config.sentence_attention() || config.word_attention()) {
      rec = &result.attention.turns[role];
    }
    LstmState init(config.hidden_dim);
    if (conditional) init.c = carry.c;  // cell state only; hidden starts at zero

    if (turn->n_sents == 0) {
      // degenerate all-padding context: the encoder is skipped and the
      // chain state passes through unchanged
      if (!conditional) {
        throw DataError(std::string("model_forward: ") + to_string(role) +
                        " turn has no valid sentences");
      }
      tc.n_sents = 0;
      tc.turn_vec.assign(config.hidden_dim, 0.0);
      continue;
    }
    encode_turn_forward(config, params.encoder(role), *turn, *input.embeddings, init,
                        tc, rec);
    if (conditional) carry = tc.sent_states.back();
  }

  // classifier input: [pt, ct, st] turn vectors, or the chain end for
  // conditional / joined-input models
  std::vector<Vector> parts;
  if (config.n_turn_vectors() == 1) {
    parts.push_back(fc.turns.back().second.turn_vec);
  } else {
    for (const auto& [role, tc] : fc.turns) parts.push_back(tc.turn_vec);
  }
  fc.concat = state_h_list_concat(parts);

  fc.dropout_mask.clear();
  fc.clf_input = fc.concat;
  if (train_mode && config.dropout > 0.0) {
    if (dropout_override) {
      require(dropout_override->size() == fc.concat.size(),
              "model_forward: dropout override size");
      fc.dropout_mask = *dropout_override;
    } else {
      require(rng != nullptr, "model_forward: train mode needs an RNG for dropout");
      fc.dropout_mask = dropout_mask(fc.concat.size(), config.dropout, *rng);
    }
    for (std::size_t i = 0; i < fc.clf_input.size(); ++i) {
      fc.clf_input[i] *= fc.dropout_mask[i];
    }
  }

  fc.logits = affine(params.W_out, fc.clf_input, params.b_out);
  fc.probs = softmax(fc.logits);
  result.probs = fc.probs;
  return result;
}

double nll_loss(const Vector& probs, Label gold, double class_weight) {
  require(probs.size() == 2, "nll_loss: expected two class probabilities");
  double p = probs[gold == Label::S ? 0 : 1];
  if (p < 1e-12) {
    std::fprintf(stderr,
                 "[sarcctx] warning: gold-class probability %.3e clamped to 1e-12\n", p);
    p = 1e-12;
  }
  return -class_weight * std::log(p);
}

double l2_penalty(const ModelParams& params) {
  return 0.5 * params.config.l2 * params.sum_squares();
}

void model_backward(const ModelParams& params, const ForwardCache& cache, Label gold,
                    double class_weight, ModelGrads& grads) {
  const ModelConfig& config = params.config;
  const std::size_t H = config.hidden_dim;
  const bool conditional = config.arch == Arch::conditional;

  // d(-w log p_gold) / dlogits = w (p - onehot)
  Vector dlogits = cache.probs;
  dlogits[gold == Label::S ? 0 : 1] -= 1.0;
  for (double& v : dlogits) v *= class_weight;

  Vector dclf(cache.clf_input.size(), 0.0);
  affine_backward(params.W_out, cache.clf_input, dlogits, grads.dW_out, grads.db_out,
                  &dclf);
  if (!cache.dropout_mask.empty()) {
    for (std::size_t i = 0; i < dclf.size(); ++i) dclf[i] *= cache.dropout_mask[i];
  }

  // split the classifier gradient into per-turn-vector pieces
  std::vector<Vector> dv(cache.turns.size(), Vector());
  if (config.n_turn_vectors() == 1) {
    for (std::size_t k = 0; k + 1 < cache.turns.size(); ++k) dv[k].assign(H, 0.0);
    dv.back() = dclf;
  } else {
    for (std::size_t k = 0; k < cache.turns.size(); ++k) {
      dv[k].assign(dclf.begin() + static_cast<std::ptrdiff_t>(k * H),
                   dclf.begin() + static_cast<std::ptrdiff_t>((k + 1) * H));
    }
  }

  Vector dc_chain(H, 0.0);  // dc flowing into the previous turn's final cell
  for (std::size_t k = cache.turns.size(); k-- > 0;) {
    const auto& [role, tc] = cache.turns[k];
    if (tc.n_sents == 0) {
      continue;  // identity pass-through; dc_chain flows on unchanged
    }
    TurnEncoderGrads* eg = nullptr;
    for (auto& [r, g] : grads.encoders) {
      if (r == role) eg = &g;
    }
    require(eg != nullptr, "model_backward: missing gradient slot for role");
    const TurnEncoderParams& enc = params.encoder(role);

    LstmSequenceGradInput upstream;
    upstream.dh_final.assign(H, 0.0);
    upstream.dc_final = dc_chain;
    dc_chain.assign(H, 0.0);

    if (config.sentence_attention()) {
      std::vector<Vector> dh(tc.n_sents, Vector(H, 0.0));
      attention_pool_backward(*enc.sent_attn, tc.sent_attn, dv[k], *eg->sent_attn, dh);
      upstream.dh_states = std::move(dh);
    } else {
      axpy(1.0, dv[k], upstream.dh_final);
    }

    LstmSequenceGradOutput seq =
        encode_sequence_backward(enc.sent_lstm, tc.sent_lstm, upstream, eg->sent_lstm);

    if (config.word_attention()) {
      for (std::size_t s = 0; s < tc.n_sents; ++s) {
        const std::size_t len = tc.word_lstm[s].steps.size();
        std::vector<Vector> dword(len, Vector(H, 0.0));
        attention_pool_backward(*enc.word_attn, tc.word_attn[s], seq.dx[s],
                                *eg->word_attn, dword);
        LstmSequenceGradInput wup;
        wup.dh_states = std::move(dword);
        encode_sequence_backward(*enc.word_lstm, tc.word_lstm[s], wup, *eg->word_lstm);
      }
    }
    // embeddings are fixed, so average-repr input gradients stop here
    if (conditional) dc_chain = std::move(seq.dc_init);
  }
}

void add_l2_gradients(const ModelParams& params, ModelGrads& grads) {
  const double l2 = params.config.l2;
  if (l2 == 0.0) return;
  std::vector<std::span<const double>> blocks;
  params.for_each_block([&blocks](const std::string&, std::span<const double> data) {
    blocks.push_back(data);
  });
  std::size_t idx = 0;
  grads.for_each_block([&](const std::string&, std::span<double> g) {
    std::span<const double> p = blocks[idx++];
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += l2 * p[i];
  });
}

double loss_and_grads(const ModelParams& params, const ModelInput& input, Label gold,
                      double class_weight, bool train_mode, Rng* rng, ModelGrads& grads,
                      AttentionRecord* attention) {
  ForwardCache cache;
  ForwardResult fwd = model_forward(params, input, train_mode, rng, &cache);
  if (attention) *attention = fwd.attention;
  const double loss = nll_loss(fwd.probs, gold, class_weight) + l2_penalty(params);
  model_backward(params, cache, gold, class_weight, grads);
  add_l2_gradients(params, grads);
  return loss;
}

}  // namespace sarcctx
