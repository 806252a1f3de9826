#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sarcctx/linalg.hpp"

namespace sarcctx {

// One named parameter block under test: the live values the loss reads,
// plus the analytic gradient the caller computed for the unperturbed point.
struct GradCheckBlock {
  std::string name;
  std::span<double> value;
  std::span<const double> grad;
};

struct BlockReport {
  std::string name;
  double max_rel_err = 0.0;
  std::size_t worst_index = 0;
};

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::vector<BlockReport> blocks;
  bool passed(double tol) const { return max_rel_err <= tol; }
};

// Central-difference gradient check. `loss` must be deterministic (dropout
// disabled or its mask frozen) and is re-evaluated with each parameter
// perturbed by ±eps; values are restored afterwards. The relative error of a
// component uses max(|analytic|, |numeric|, floor) as denominator so that
// near-zero gradients are compared at a sane absolute scale.
GradCheckReport grad_check(const std::function<double()>& loss,
                           std::span<GradCheckBlock> blocks, double eps = 1e-5,
                           double denom_floor = 1e-3);

}  // namespace sarcctx
