#include <doctest.h>

#include <cmath>

#include "sarcctx/grad_check.hpp"
#include "sarcctx/ops.hpp"
#include "sarcctx/rng.hpp"

using namespace sarcctx;

TEST_CASE("affine identity and zero-weight cases") {
  Matrix I = Matrix::identity(2);
  Vector x{3.0, -1.0};
  Vector b{0.0, 0.0};
  Vector y = affine(I, x, b);
  CHECK(y[0] == 3.0);
  CHECK(y[1] == -1.0);

  Matrix Z(2, 3);
  Vector bias{1.0, 2.0};
  Vector any{0.3, -0.7, 9.0};
  Vector z = affine(Z, any, bias);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 2.0);
}

TEST_CASE("affine shape mismatch is an error") {
  Matrix W(2, 3);
  Vector x{1.0, 2.0};  // wrong length
  Vector b{0.0, 0.0};
  CHECK_THROWS_AS(affine(W, x, b), ShapeError);
}

TEST_CASE("affine random case matches a scalar loop, values and gradients") {
  Rng rng(123);
  Matrix W(3, 4);
  for (double& v : W.flat()) v = rng.uniform(-1.0, 1.0);
  Vector x(4), b(3), dy(3);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  for (double& v : b) v = rng.uniform(-1.0, 1.0);
  for (double& v : dy) v = rng.uniform(-1.0, 1.0);

  Vector y = affine(W, x, b);
  // independent scalar recomputation
  for (std::size_t r = 0; r < 3; ++r) {
    double want = b[r];
    for (std::size_t c = 0; c < 4; ++c) want += W(r, c) * x[c];
    CHECK(std::fabs(y[r] - want) < 1e-12);
  }

  Matrix dW(3, 4);
  Vector db(3, 0.0), dx(4, 0.0);
  affine_backward(W, x, dy, dW, db, &dx);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(std::fabs(db[r] - dy[r]) < 1e-12);
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::fabs(dW(r, c) - dy[r] * x[c]) < 1e-12);
    }
  }
  for (std::size_t c = 0; c < 4; ++c) {
    double want = 0.0;
    for (std::size_t r = 0; r < 3; ++r) want += W(r, c) * dy[r];
    CHECK(std::fabs(dx[c] - want) < 1e-12);
  }
}

TEST_CASE("softmax basics") {
  Vector u = softmax(Vector{0.0, 0.0});
  CHECK(u[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-12));

  Vector v = softmax(Vector{std::log(2.0), 0.0});
  CHECK(v[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(softmax(Vector{}), ShapeError);
}

TEST_CASE("softmax shift invariance and normalization") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng.uniform_int(6);
    Vector s(n);
    for (double& x : s) x = rng.uniform(-5.0, 5.0);
    const double c = rng.uniform(-100.0, 100.0);
    Vector shifted = s;
    for (double& x : shifted) x += c;
    Vector p = softmax(s), q = softmax(shifted);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(p[i] - q[i]) < 1e-12);
      CHECK(p[i] >= 0.0);
      sum += p[i];
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("rng reproducibility and range") {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    double x = a.uniform(-0.05, 0.05);
    CHECK(x == b.uniform(-0.05, 0.05));
    CHECK(x >= -0.05);
    CHECK(x < 0.05);
  }
  Rng c(100);
  bool differs = false;
  Rng a2(99);
  for (int i = 0; i < 10; ++i) differs = differs || (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

TEST_CASE("inverted dropout: drop rate converges and survivors are rescaled") {
  const double p = 0.3;
  const std::size_t n = 100000;
  Rng rng(2024);
  Vector mask = dropout_mask(n, p, rng);
  std::size_t zeros = 0;
  for (double m : mask) {
    if (m == 0.0) {
      ++zeros;
    } else {
      CHECK(m == doctest::Approx(1.0 / (1.0 - p)).epsilon(1e-12));
    }
  }
  const double rate = static_cast<double>(zeros) / static_cast<double>(n);
  CHECK(std::fabs(rate - p) < 0.02);

  Rng rng2(2024);
  Vector again = dropout_mask(n, p, rng2);
  CHECK(again == mask);  // reproducible from the seed
}

TEST_CASE("grad_check on a quadratic: analytic gradient is w") {
  Vector w{0.7, -1.3, 2.1, 0.05};
  Vector grad = w;  // d/dw of w.w/2
  auto loss = [&w]() {
    double s = 0.0;
    for (double v : w) s += v * v;
    return 0.5 * s;
  };
  GradCheckBlock block{"w", std::span<double>(w), std::span<const double>(grad)};
  std::vector<GradCheckBlock> blocks{block};
  GradCheckReport report = grad_check(loss, blocks, 1e-4);
  CHECK(report.max_rel_err < 1e-10);
  CHECK(report.passed(1e-10));
}

TEST_CASE("grad_check rejects non-finite losses") {
  Vector w{1.0};
  Vector grad{1.0};
  auto loss = [&w]() { return std::log(w[0] - 10.0); };  // NaN at w=1
  std::vector<GradCheckBlock> blocks{{"w", std::span<double>(w), grad}};
  CHECK_THROWS_AS(grad_check(loss, blocks), NumericError);
}

TEST_CASE("mean_of") {
  std::vector<Vector> xs{{1.0, 0.0}, {0.0, 1.0}};
  Vector m = mean_of(xs);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(0.5));
}
