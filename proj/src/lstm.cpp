#include "sarcctx/lstm.hpp"

#include <cmath>

namespace sarcctx {

LstmParams::LstmParams(std::size_t hidden_dim, std::size_t input_dim)
    : hidden(hidden_dim),
      input(input_dim),
      W_i(hidden_dim, hidden_dim + input_dim),
      W_f(hidden_dim, hidden_dim + input_dim),
      W_o(hidden_dim, hidden_dim + input_dim),
      W_c(hidden_dim, hidden_dim + input_dim),
      b_i(hidden_dim, 0.0),
      b_f(hidden_dim, 0.0),
      b_o(hidden_dim, 0.0),
      b_c(hidden_dim, 0.0) {}

void LstmParams::init_uniform(Rng& rng, double lo, double hi) {
  for (Matrix* W : {&W_i, &W_f, &W_o, &W_c}) {
    for (double& v : W->flat()) v = rng.uniform(lo, hi);
  }
  for (Vector* b : {&b_i, &b_f, &b_o, &b_c}) {
    for (double& v : *b) v = rng.uniform(lo, hi);
  }
}

void LstmParams::zero() {
  for (Matrix* W : {&W_i, &W_f, &W_o, &W_c}) W->fill(0.0);
  for (Vector* b : {&b_i, &b_f, &b_o, &b_c}) std::fill(b->begin(), b->end(), 0.0);
}

std::size_t LstmParams::n_params() const {
  return 4 * (W_i.size() + b_i.size());
}

LstmGrads::LstmGrads(const LstmParams& p)
    : dW_i(p.W_i.rows(), p.W_i.cols()),
      dW_f(p.W_f.rows(), p.W_f.cols()),
      dW_o(p.W_o.rows(), p.W_o.cols()),
      dW_c(p.W_c.rows(), p.W_c.cols()),
      db_i(p.b_i.size(), 0.0),
      db_f(p.b_f.size(), 0.0),
      db_o(p.b_o.size(), 0.0),
      db_c(p.b_c.size(), 0.0) {}

void LstmGrads::zero() {
  for (Matrix* W : {&dW_i, &dW_f, &dW_o, &dW_c}) W->fill(0.0);
  for (Vector* b : {&db_i, &db_f, &db_o, &db_c}) std::fill(b->begin(), b->end(), 0.0);
}

LstmState lstm_step(const LstmParams& params, const LstmState& prev, const Vector& x,
                    LstmStepCache* cache) {
  require(prev.h.size() == params.hidden && prev.c.size() == params.hidden,
          "lstm_step: state dimension mismatch");
  require(x.size() == params.input, "lstm_step: input dimension mismatch");

  Vector hx(params.hidden + params.input);
  std::copy(prev.h.begin(), prev.h.end(), hx.begin());
  std::copy(x.begin(), x.end(), hx.begin() + static_cast<std::ptrdiff_t>(params.hidden));

  Vector i = affine(params.W_i, hx, params.b_i);
  Vector f = affine(params.W_f, hx, params.b_f);
  Vector o = affine(params.W_o, hx, params.b_o);
  Vector cand = affine(params.W_c, hx, params.b_c);
  for (std::size_t k = 0; k < params.hidden; ++k) {
    i[k] = sigmoid(i[k]);
    f[k] = sigmoid(f[k]);
    o[k] = sigmoid(o[k]);
    cand[k] = std::tanh(cand[k]);
  }

  LstmState next(params.hidden);
  Vector tanh_c(params.hidden);
  for (std::size_t k = 0; k < params.hidden; ++k) {
    next.c[k] = f[k] * prev.c[k] + i[k] * cand[k];
    tanh_c[k] = std::tanh(next.c[k]);
    next.h[k] = o[k] * tanh_c[k];
  }
  check_finite(next.h, "lstm_step h");
  check_finite(next.c, "lstm_step c");

  if (cache) {
    cache->hx = std::move(hx);
    cache->i = std::move(i);
    cache->f = std::move(f);
    cache->o = std::move(o);
    cache->cand = std::move(cand);
    cache->c_prev = prev.c;
    cache->c = next.c;
    cache->tanh_c = std::move(tanh_c);
    cache->skipped = false;
  }
  return next;
}

void lstm_step_backward(const LstmParams& params, const LstmStepCache& cache,
                        const Vector& dh, const Vector& dc, LstmGrads& grads,
                        Vector& dh_prev, Vector& dc_prev, Vector* dx) {
  const std::size_t H = params.hidden;
  require(dh.size() == H && dc.size() == H, "lstm_step_backward: grad dims");

  Vector dc_total(H), do_pre(H), di_pre(H), df_pre(H), dcand_pre(H);
  for (std::size_t k = 0; k < H; ++k) {
    // h = o . tanh(c)
    const double d_o = dh[k] * cache.tanh_c[k];
    dc_total[k] = dc[k] + dh[k] * cache.o[k] * tanh_grad_from_value(cache.tanh_c[k]);
    do_pre[k] = d_o * sigmoid_grad_from_value(cache.o[k]);
    // c = f . c_prev + i . cand
    di_pre[k] = dc_total[k] * cache.cand[k] * sigmoid_grad_from_value(cache.i[k]);
    df_pre[k] = dc_total[k] * cache.c_prev[k] * sigmoid_grad_from_value(cache.f[k]);
    dcand_pre[k] = dc_total[k] * cache.i[k] * tanh_grad_from_value(cache.cand[k]);
    dc_prev[k] += dc_total[k] * cache.f[k];
  }

  Vector dhx(H + params.input, 0.0);
  affine_backward(params.W_i, cache.hx, di_pre, grads.dW_i, grads.db_i, &dhx);
  affine_backward(params.W_f, cache.hx, df_pre, grads.dW_f, grads.db_f, &dhx);
  affine_backward(params.W_o, cache.hx, do_pre, grads.dW_o, grads.db_o, &dhx);
  affine_backward(params.W_c, cache.hx, dcand_pre, grads.dW_c, grads.db_c, &dhx);
  for (std::size_t k = 0; k < H; ++k) dh_prev[k] += dhx[k];
  if (dx) {
    require(dx->size() == params.input, "lstm_step_backward: dx dims");
    for (std::size_t k = 0; k < params.input; ++k) (*dx)[k] += dhx[H + k];
  }
}

std::vector<LstmState> encode_sequence(const LstmParams& params,
                                       std::span<const Vector> xs,
                                       const LstmState& init,
                                       const std::vector<bool>* mask,
                                       LstmSequenceCache* cache) {
  require(!xs.empty(), "encode_sequence: empty sequence");
  if (mask) require(mask->size() == xs.size(), "encode_sequence: mask length");
  std::vector<LstmState> states;
  states.reserve(xs.size());
  if (cache) {
    cache->steps.resize(xs.size());
    cache->init = init;
  }
  LstmState state = init;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    if (mask && !(*mask)[t]) {
      if (cache) cache->steps[t].skipped = true;
      states.push_back(state);
      continue;
    }
    state = lstm_step(params, state, xs[t], cache ? &cache->steps[t] : nullptr);
    states.push_back(state);
  }
  return states;
}

LstmSequenceGradOutput encode_sequence_backward(const LstmParams& params,
                                                const LstmSequenceCache& cache,
                                                const LstmSequenceGradInput& upstream,
                                                LstmGrads& grads) {
  const std::size_t T = cache.steps.size();
  const std::size_t H = params.hidden;
  LstmSequenceGradOutput out;
  out.dx.assign(T, Vector(params.input, 0.0));

  Vector dh = upstream.dh_final.empty() ? Vector(H, 0.0) : upstream.dh_final;
  Vector dc = upstream.dc_final.empty() ? Vector(H, 0.0) : upstream.dc_final;
  require(dh.size() == H && dc.size() == H, "encode_sequence_backward: final grads");

  for (std::size_t t = T; t-- > 0;) {
    if (!upstream.dh_states.empty() && !upstream.dh_states[t].empty()) {
      axpy(1.0, upstream.dh_states[t], dh);
    }
    if (cache.steps[t].skipped) continue;  // identity: grads pass through
    Vector dh_prev(H, 0.0), dc_prev(H, 0.0);
    lstm_step_backward(params, cache.steps[t], dh, dc, grads, dh_prev, dc_prev,
                       &out.dx[t]);
    dh = std::move(dh_prev);
    dc = std::move(dc_prev);
  }
  out.dh_init = std::move(dh);
  out.dc_init = std::move(dc);
  return out;
}

}  // namespace sarcctx
