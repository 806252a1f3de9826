#pragma once

#include <cmath>
#include <span>

#include "sarcctx/linalg.hpp"
#include "sarcctx/rng.hpp"

namespace sarcctx {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Derivatives written in terms of the activation value, which is what the
// caches store.
inline double sigmoid_grad_from_value(double y) { return y * (1.0 - y); }
inline double tanh_grad_from_value(double y) { return 1.0 - y * y; }

// y = W x + b
Vector affine(const Matrix& W, const Vector& x, const Vector& b);

// Accumulates dW += dy xᵀ, db += dy, dx += Wᵀ dy.
void affine_backward(const Matrix& W, const Vector& x, const Vector& dy,
                     Matrix& dW, Vector& db, Vector* dx);

// Numerically stable softmax (max subtraction). Errors on empty input.
Vector softmax(const Vector& scores);

// ds = J_softmax(p)ᵀ dp, with p the softmax output.
Vector softmax_backward(const Vector& probs, const Vector& dprobs);

// Inverted dropout: mask entries are 0 (dropped) or 1/(1-p) (kept), so the
// expected activation is preserved and no test-time rescaling is needed.
Vector dropout_mask(std::size_t n, double p, Rng& rng);

// Mean of the given vectors; all must share one length. Errors on empty.
Vector mean_of(std::span<const Vector> xs);

}  // namespace sarcctx
