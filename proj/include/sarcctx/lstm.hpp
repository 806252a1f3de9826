#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sarcctx/linalg.hpp"
#include "sarcctx/ops.hpp"

namespace sarcctx {

// Gate weights over the concatenated [h_{t-1}, x_t] plus biases:
//   i, f, o = sigmoid(W_* [h, x] + b_*),  cand = tanh(W_c [h, x] + b_c)
//   c_t = f . c_{t-1} + i . cand,         h_t = o . tanh(c_t)
struct LstmParams {
  std::size_t hidden = 0;
  std::size_t input = 0;
  Matrix W_i, W_f, W_o, W_c;  // hidden x (hidden + input)
  Vector b_i, b_f, b_o, b_c;

  LstmParams() = default;
  LstmParams(std::size_t hidden_dim, std::size_t input_dim);
  void init_uniform(Rng& rng, double lo = -0.05, double hi = 0.05);
  void zero();
  std::size_t n_params() const;
};

struct LstmState {
  Vector h, c;
  LstmState() = default;
  explicit LstmState(std::size_t hidden) : h(hidden, 0.0), c(hidden, 0.0) {}
};

// Activations of one step, kept for the backward pass.
struct LstmStepCache {
  Vector hx;  // concatenated [h_{t-1}, x_t]
  Vector i, f, o, cand;
  Vector c_prev, c, tanh_c;
  bool skipped = false;  // masked (padding) step: state copied through
};

struct LstmGrads {
  Matrix dW_i, dW_f, dW_o, dW_c;
  Vector db_i, db_f, db_o, db_c;
  explicit LstmGrads(const LstmParams& p);
  void zero();
};

LstmState lstm_step(const LstmParams& params, const LstmState& prev, const Vector& x,
                    LstmStepCache* cache = nullptr);

// Accumulates parameter gradients and returns gradients for the inputs of
// the step. dh/dc are the upstream gradients at (h_t, c_t).
void lstm_step_backward(const LstmParams& params, const LstmStepCache& cache,
                        const Vector& dh, const Vector& dc, LstmGrads& grads,
                        Vector& dh_prev, Vector& dc_prev, Vector* dx);

struct LstmSequenceCache {
  std::vector<LstmStepCache> steps;
  LstmState init;
};

// Left-to-right fold of lstm_step. `mask`, when given, marks valid steps;
// masked steps copy the state through unchanged so the final state equals
// the state at the last real input. Errors on an empty sequence.
std::vector<LstmState> encode_sequence(const LstmParams& params,
                                       std::span<const Vector> xs,
                                       const LstmState& init,
                                       const std::vector<bool>* mask = nullptr,
                                       LstmSequenceCache* cache = nullptr);

// Backward through the whole sequence. `dstates` holds upstream gradients
// for every emitted h_t (zero vectors where unused); dh_final/dc_final are
// extra gradients flowing into the last state (e.g. from a downstream
// conditioned encoder). Returns gradients w.r.t. the inputs and the initial
// state.
struct LstmSequenceGradInput {
  std::vector<Vector> dh_states;  // one per step, may be empty => zeros
  Vector dh_final, dc_final;      // may be empty => zeros
};

struct LstmSequenceGradOutput {
  std::vector<Vector> dx;
  Vector dh_init, dc_init;
};

LstmSequenceGradOutput encode_sequence_backward(const LstmParams& params,
                                                const LstmSequenceCache& cache,
                                                const LstmSequenceGradInput& upstream,
                                                LstmGrads& grads);

}  // namespace sarcctx
