#pragma once

#include <array>
#include <span>
#include <string>

#include "sarcctx/linalg.hpp"
#include "sarcctx/text.hpp"

namespace sarcctx {

struct ClassMetrics {
  double precision = 0.0;  // 0 when undefined (zero predicted)
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
};

// Per-class precision/recall/F1 plus the confusion counts.
// confusion[gold][pred] with index 0 = S, 1 = NS.
struct EvalReport {
  ClassMetrics s;
  ClassMetrics ns;
  std::array<std::array<std::size_t, 2>, 2> confusion{{{0, 0}, {0, 0}}};
  std::size_t n = 0;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;

  std::string table() const;    // human-readable
  std::string to_json() const;  // one record per class
};

EvalReport evaluate_predictions(std::span<const Label> predictions,
                                std::span<const Label> gold);

double macro_f1_of(std::span<const Label> predictions, std::span<const Label> gold);

}  // namespace sarcctx
