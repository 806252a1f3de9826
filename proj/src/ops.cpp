#include "sarcctx/ops.hpp"

#include <algorithm>

namespace sarcctx {

Vector affine(const Matrix& W, const Vector& x, const Vector& b) {
  require(W.cols() == x.size(), "affine: cols(W) != len(x)");
  require(W.rows() == b.size(), "affine: rows(W) != len(b)");
  Vector y(b);
  for (std::size_t r = 0; r < W.rows(); ++r) {
    y[r] += dot(W.row(r), x);
  }
  return y;
}

void affine_backward(const Matrix& W, const Vector& x, const Vector& dy,
                     Matrix& dW, Vector& db, Vector* dx) {
  require(W.cols() == x.size(), "affine_backward: cols(W) != len(x)");
  require(W.rows() == dy.size(), "affine_backward: rows(W) != len(dy)");
  require(dW.same_shape(W), "affine_backward: dW shape");
  require(db.size() == dy.size(), "affine_backward: db shape");
  for (std::size_t r = 0; r < W.rows(); ++r) {
    axpy(dy[r], x, dW.row(r));
    db[r] += dy[r];
    if (dx) {
      require(dx->size() == x.size(), "affine_backward: dx shape");
      axpy(dy[r], W.row(r), *dx);
    }
  }
}

Vector softmax(const Vector& scores) {
  require(!scores.empty(), "softmax: empty input");
  check_finite(scores, "softmax input");
  const double m = *std::max_element(scores.begin(), scores.end());
  Vector p(scores.size());
  double z = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(scores[i] - m);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

Vector softmax_backward(const Vector& probs, const Vector& dprobs) {
  require(probs.size() == dprobs.size(), "softmax_backward: length mismatch");
  double inner = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) inner += probs[i] * dprobs[i];
  Vector ds(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) ds[i] = probs[i] * (dprobs[i] - inner);
  return ds;
}

Vector dropout_mask(std::size_t n, double p, Rng& rng) {
  require(p >= 0.0 && p < 1.0, "dropout: rate must be in [0, 1)");
  Vector mask(n);
  const double keep_scale = 1.0 / (1.0 - p);
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = rng.uniform() < p ? 0.0 : keep_scale;
  }
  return mask;
}

Vector mean_of(std::span<const Vector> xs) {
  require(!xs.empty(), "mean_of: empty input");
  Vector m(xs[0].size(), 0.0);
  for (const Vector& x : xs) {
    require(x.size() == m.size(), "mean_of: ragged input");
    axpy(1.0, x, m);
  }
  for (double& v : m) v /= static_cast<double>(xs.size());
  return m;
}

}  // namespace sarcctx
