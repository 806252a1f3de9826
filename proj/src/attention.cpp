#include "sarcctx/attention.hpp"

#include <cmath>

namespace sarcctx {

AttentionParams::AttentionParams(std::size_t attn, std::size_t input)
    : attn_dim(attn), input_dim(input), W(attn, input), b(attn, 0.0), u_ctx(attn, 0.0) {}

void AttentionParams::init_uniform(Rng& rng, double lo, double hi) {
  for (double& v : W.flat()) v = rng.uniform(lo, hi);
  for (double& v : b) v = rng.uniform(lo, hi);
  for (double& v : u_ctx) v = rng.uniform(lo, hi);
}

AttentionGrads::AttentionGrads(const AttentionParams& p)
    : dW(p.W.rows(), p.W.cols()), db(p.b.size(), 0.0), du_ctx(p.u_ctx.size(), 0.0) {}

void AttentionGrads::zero() {
  dW.fill(0.0);
  std::fill(db.begin(), db.end(), 0.0);
  std::fill(du_ctx.begin(), du_ctx.end(), 0.0);
}

AttentionResult attention_pool(std::span<const Vector> inputs,
                               const AttentionParams& params, AttentionCache* cache) {
  require(!inputs.empty(), "attention_pool: no unmasked inputs");
  const std::size_t d = inputs.size();
  std::vector<Vector> u(d);
  Vector scores(d);
  for (std::size_t i = 0; i < d; ++i) {
    require(inputs[i].size() == params.input_dim, "attention_pool: input dim mismatch");
    u[i] = affine(params.W, inputs[i], params.b);
    for (double& v : u[i]) v = std::tanh(v);
    scores[i] = dot(u[i], params.u_ctx);
  }
  AttentionResult res;
  res.alpha = softmax(scores);
  res.pooled.assign(params.input_dim, 0.0);
  for (std::size_t i = 0; i < d; ++i) axpy(res.alpha[i], inputs[i], res.pooled);
  if (cache) {
    cache->inputs.assign(inputs.begin(), inputs.end());
    cache->u = std::move(u);
    cache->scores = std::move(scores);
    cache->alpha = res.alpha;
  }
  return res;
}

void attention_pool_backward(const AttentionParams& params, const AttentionCache& cache,
                             const Vector& dv, AttentionGrads& grads,
                             std::vector<Vector>& dh_accum) {
  const std::size_t d = cache.inputs.size();
  require(dh_accum.size() == d, "attention_pool_backward: dh_accum size");

  // v = sum alpha_i h_i
  Vector dalpha(d);
  for (std::size_t i = 0; i < d; ++i) {
    dalpha[i] = dot(dv, cache.inputs[i]);
    axpy(cache.alpha[i], dv, dh_accum[i]);
  }
  Vector dscores = softmax_backward(cache.alpha, dalpha);

  // score_i = u_i . u_ctx, u_i = tanh(W h_i + b)
  for (std::size_t i = 0; i < d; ++i) {
    axpy(dscores[i], cache.u[i], grads.du_ctx);
    Vector du_pre(params.attn_dim);
    for (std::size_t k = 0; k < params.attn_dim; ++k) {
      du_pre[k] =
          dscores[i] * params.u_ctx[k] * tanh_grad_from_value(cache.u[i][k]);
    }
    affine_backward(params.W, cache.inputs[i], du_pre, grads.dW, grads.db,
                    &dh_accum[i]);
  }
}

}  // namespace sarcctx
