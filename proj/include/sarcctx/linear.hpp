#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "sarcctx/sparse.hpp"
#include "sarcctx/text.hpp"

namespace sarcctx {

// L2-regularized hinge-loss linear classifier trained by SGD; stands in for
// the usual linear-kernel SVM at this corpus scale.
struct LinearModel {
  Vector weights;  // over the feature index
  double bias = 0.0;
  std::array<double, 2> class_weights{1.0, 1.0};  // [S, NS], as used in training

  std::size_t dim() const { return weights.size(); }
};

struct LinearTrainConfig {
  std::size_t epochs = 50;
  double lr = 0.1;
  double lr_decay = 0.1;  // lr_e = lr / (1 + lr_decay * epoch)
  double l2 = 1e-4;
  std::uint64_t seed = 42;
};

using LabeledSparse = std::pair<SparseVector, Label>;

// w_c = N_total / (K * N_c): inversely proportional to class sizes.
std::array<double, 2> inverse_class_weights(std::span<const LabeledSparse> data);

// Average objective (weighted hinge + l2/2 * ||w||^2) over a dataset.
double linear_objective(const LinearModel& model, std::span<const LabeledSparse> data,
                        double l2);

struct LinearTrainResult {
  LinearModel model;
  std::vector<double> epoch_objective;  // objective after each epoch
};

// Seeded-shuffled SGD over the hinge objective; deterministic given the
// seed. Errors on empty or single-class data.
LinearTrainResult train_linear(std::span<const LabeledSparse> data, std::size_t dim,
                               std::array<double, 2> class_weights,
                               const LinearTrainConfig& config);

// sign(w.x + b): non-negative margin -> S. The margin is returned for
// analysis.
std::pair<Label, double> predict_linear(const LinearModel& model, const SparseVector& x);

// Versioned flat-text serialization: one (feature name, weight) line per
// nonzero weight, so models stay auditable.
void save_linear(const std::string& path, const LinearModel& model,
                 const FeatureIndex& index);
LinearModel load_linear(const std::string& path, const FeatureIndex& index);

}  // namespace sarcctx
