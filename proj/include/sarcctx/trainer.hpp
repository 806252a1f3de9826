#pragma once

#include <array>
#include <span>
#include <vector>

#include "sarcctx/checkpoint.hpp"
#include "sarcctx/metrics.hpp"
#include "sarcctx/model.hpp"

namespace sarcctx {

struct TrainingDiverged : std::runtime_error {
  std::size_t epoch, batch;
  TrainingDiverged(std::size_t e, std::size_t b)
      : std::runtime_error("training diverged (non-finite loss) at epoch " +
                           std::to_string(e) + ", batch " + std::to_string(b)),
        epoch(e),
        batch(b) {}
};

enum class Optimizer { adam, sgd };

struct Hyperparams {
  double dropout = 0.5;
  std::size_t batch_size = 16;
  double l2 = 1e-4;
  std::size_t epochs = 30;
  // The paper never states a learning rate; 1e-3 with Adam moments
  // (0.9/0.999, eps 1e-8) is this artifact's default.
  double lr = 1e-3;
  Optimizer optimizer = Optimizer::adam;
  std::uint64_t seed = 42;
  // weight classes by N/(K*Nc) computed on the training split
  bool class_weighting = true;
};

Optimizer parse_optimizer(const std::string& s);
const char* to_string(Optimizer o);

struct SplitSpec {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
  std::uint64_t seed = 42;
};

struct Splits {
  std::vector<std::size_t> train, dev, test;
};

// Label-stratified partition; class ratios are preserved within one
// instance per split (largest-remainder allocation per class).
Splits stratified_split(std::span<const Label> labels, const SplitSpec& spec);

// w_c = N/(K*Nc) over the training labels; {1, 1} when weighting is off.
std::array<double, 2> neural_class_weights(std::span<const Label> labels, bool enabled);

struct EpochStats {
  double train_loss = 0.0;  // epoch mean of per-instance losses
  EvalReport dev;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;  // argmax dev macro-F1, ties to the earlier epoch
};

struct TrainResult {
  ModelParams best;
  TrainHistory history;
};

std::size_t select_best_epoch(const TrainHistory& history);

// Adam with bias correction; state mirrors the parameter blocks.
class AdamState {
 public:
  explicit AdamState(const ModelParams& params);
  void step(ModelParams& params, ModelGrads& grads, double lr, double beta1 = 0.9,
            double beta2 = 0.999, double eps = 1e-8);

 private:
  std::vector<Vector> m_, v_;
  std::size_t t_ = 0;
};

void sgd_step(ModelParams& params, ModelGrads& grads, double lr);

// Mini-batch training with per-epoch dev evaluation; returns the checkpoint
// with the best dev macro-F1. Deterministic given the seed.
TrainResult train_model(const ModelConfig& config,
                        std::span<const EncodedInstance> train_set,
                        std::span<const EncodedInstance> dev_set,
                        const EmbeddingTable& embeddings, const Hyperparams& hyper);

Label predict_label(const Vector& probs);

struct Prediction {
  Label label;
  double p_s;
  AttentionRecord attention;
};

Prediction predict_instance(const ModelParams& params, const EncodedInstance& inst,
                            const EmbeddingTable& embeddings);

EvalReport evaluate_model(const ModelParams& params,
                          std::span<const EncodedInstance> data,
                          const EmbeddingTable& embeddings);

}  // namespace sarcctx
