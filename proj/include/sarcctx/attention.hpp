#pragma once

#include <span>
#include <vector>

#include "sarcctx/linalg.hpp"
#include "sarcctx/ops.hpp"

namespace sarcctx {

// One-layer MLP scorer with a trained context vector:
//   u_i   = tanh(W h_i + b)
//   alpha = softmax_i(u_i . u_ctx)
//   v     = sum_i alpha_i h_i
struct AttentionParams {
  std::size_t attn_dim = 0;
  std::size_t input_dim = 0;
  Matrix W;      // attn_dim x input_dim
  Vector b;      // attn_dim
  Vector u_ctx;  // attn_dim

  AttentionParams() = default;
  AttentionParams(std::size_t attn, std::size_t input);
  void init_uniform(Rng& rng, double lo = -0.05, double hi = 0.05);
  std::size_t n_params() const { return W.size() + b.size() + u_ctx.size(); }
};

struct AttentionGrads {
  Matrix dW;
  Vector db, du_ctx;
  explicit AttentionGrads(const AttentionParams& p);
  void zero();
};

struct AttentionCache {
  std::vector<Vector> inputs;  // h_i
  std::vector<Vector> u;       // tanh projections
  Vector scores;
  Vector alpha;
};

struct AttentionResult {
  Vector pooled;  // v
  Vector alpha;   // normalized importance weights, sum to 1
};

// Errors on zero inputs. Scores for the cache/backward are u_i . u_ctx.
AttentionResult attention_pool(std::span<const Vector> inputs,
                               const AttentionParams& params,
                               AttentionCache* cache = nullptr);

// Accumulates parameter grads; dh_accum[i] receives the gradient w.r.t. h_i.
void attention_pool_backward(const AttentionParams& params, const AttentionCache& cache,
                             const Vector& dv, AttentionGrads& grads,
                             std::vector<Vector>& dh_accum);

}  // namespace sarcctx
