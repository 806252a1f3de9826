#pragma once

#include <span>

#include "sarcctx/linalg.hpp"
#include "sarcctx/metrics.hpp"

namespace sarcctx {

// Two-sided paired bootstrap test on the macro-F1 difference between two
// systems' predictions over the same gold labels. p = (#{|d*_b - d| >= |d|}
// + 1) / (iters + 1), where d is the observed difference and d*_b the
// difference on the b-th resample. Identical predictions give p = 1.
double paired_bootstrap(std::span<const Label> preds_a, std::span<const Label> preds_b,
                        std::span<const Label> gold, std::size_t iters,
                        std::uint64_t seed);

}  // namespace sarcctx
