#include "sarcctx/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace sarcctx {

GradCheckReport grad_check(const std::function<double()>& loss,
                           std::span<GradCheckBlock> blocks, double eps,
                           double denom_floor) {
  require(eps > 0.0, "grad_check: eps must be positive");
  GradCheckReport report;
  for (GradCheckBlock& block : blocks) {
    require(block.value.size() == block.grad.size(),
            "grad_check: value/grad size mismatch in block " + block.name);
    BlockReport br{block.name, 0.0, 0};
    for (std::size_t i = 0; i < block.value.size(); ++i) {
      const double saved = block.value[i];
      block.value[i] = saved + eps;
      const double up = loss();
      block.value[i] = saved - eps;
      const double down = loss();
      block.value[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericError("grad_check: non-finite loss while perturbing " + block.name);
      }
      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = block.grad[i];
      const double denom =
          std::max({std::fabs(analytic), std::fabs(numeric), denom_floor});
      const double rel = std::fabs(analytic - numeric) / denom;
      if (rel > br.max_rel_err) {
        br.max_rel_err = rel;
        br.worst_index = i;
      }
    }
    report.max_rel_err = std::max(report.max_rel_err, br.max_rel_err);
    report.blocks.push_back(std::move(br));
  }
  return report;
}

}  // namespace sarcctx
