#include "sarcctx/bootstrap.hpp"

#include <cmath>

#include "sarcctx/rng.hpp"

namespace sarcctx {

double paired_bootstrap(std::span<const Label> preds_a, std::span<const Label> preds_b,
                        std::span<const Label> gold, std::size_t iters,
                        std::uint64_t seed) {
  require(preds_a.size() == gold.size() && preds_b.size() == gold.size(),
          "paired_bootstrap: prediction/gold length mismatch");
  require(!gold.empty(), "paired_bootstrap: empty data");
  require(iters > 0, "paired_bootstrap: iters must be positive");

  const double observed =
      macro_f1_of(preds_a, gold) - macro_f1_of(preds_b, gold);
  const std::size_t n = gold.size();

  std::size_t count = 0;
  std::vector<Label> ra(n), rb(n), rg(n);
  for (std::size_t b = 0; b < iters; ++b) {
    Rng rng(derive_seed(seed, b));  // per-resample stream
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(rng.uniform_int(n));
      ra[i] = preds_a[j];
      rb[i] = preds_b[j];
      rg[i] = gold[j];
    }
    const double diff = macro_f1_of(ra, rg) - macro_f1_of(rb, rg);
    if (std::fabs(diff - observed) >= std::fabs(observed)) ++count;
  }
  return static_cast<double>(count + 1) / static_cast<double>(iters + 1);
}

}  // namespace sarcctx
