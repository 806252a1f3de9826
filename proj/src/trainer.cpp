#include "sarcctx/trainer.hpp"

#include <algorithm>
#include <cmath>

namespace sarcctx {

Optimizer parse_optimizer(const std::string& s) {
  if (s == "adam") return Optimizer::adam;
  if (s == "sgd") return Optimizer::sgd;
  throw ConfigError("unknown optimizer '" + s + "'");
}

const char* to_string(Optimizer o) { return o == Optimizer::adam ? "adam" : "sgd"; }

Splits stratified_split(std::span<const Label> labels, const SplitSpec& spec) {
  require(spec.train > 0 && spec.dev >= 0 && spec.test >= 0, "split: bad fractions");
  require(std::fabs(spec.train + spec.dev + spec.test - 1.0) < 1e-9,
          "split: fractions must sum to 1");
  Rng rng(spec.seed);
  Splits out;
  for (Label cls : {Label::S, Label::NS}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    rng.shuffle(members);
    const std::size_t n = members.size();
    // largest-remainder allocation over the three parts
    const double want[3] = {spec.train * n, spec.dev * n, spec.test * n};
    std::size_t take[3];
    double frac[3];
    std::size_t assigned = 0;
    for (int k = 0; k < 3; ++k) {
      take[k] = static_cast<std::size_t>(want[k]);
      frac[k] = want[k] - static_cast<double>(take[k]);
      assigned += take[k];
    }
    while (assigned < n) {
      int best = 0;
      for (int k = 1; k < 3; ++k) {
        if (frac[k] > frac[best]) best = k;
      }
      ++take[best];
      frac[best] = -1.0;
      ++assigned;
    }
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
      auto* dst = k == 0 ? &out.train : k == 1 ? &out.dev : &out.test;
      for (std::size_t j = 0; j < take[k]; ++j) dst->push_back(members[pos++]);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.dev.begin(), out.dev.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::array<double, 2> neural_class_weights(std::span<const Label> labels, bool enabled) {
  if (!enabled) return {1.0, 1.0};
  std::size_t n_s = 0;
  for (Label l : labels) n_s += l == Label::S ? 1 : 0;
  const std::size_t n_ns = labels.size() - n_s;
  require(n_s > 0 && n_ns > 0, "class weights: both classes must be present");
  const double n = static_cast<double>(labels.size());
  return {n / (2.0 * static_cast<double>(n_s)), n / (2.0 * static_cast<double>(n_ns))};
}

std::size_t select_best_epoch(const TrainHistory& history) {
  require(!history.epochs.empty(), "select_best_epoch: empty history");
  std::size_t best = 0;
  for (std::size_t e = 1; e < history.epochs.size(); ++e) {
    if (history.epochs[e].dev.macro_f1 > history.epochs[best].dev.macro_f1) best = e;
  }
  return best;
}

AdamState::AdamState(const ModelParams& params) {
  params.for_each_block([this](const std::string&, std::span<const double> data) {
    m_.emplace_back(data.size(), 0.0);
    v_.emplace_back(data.size(), 0.0);
  });
}

void AdamState::step(ModelParams& params, ModelGrads& grads, double lr, double beta1,
                     double beta2, double eps) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
  std::vector<std::span<double>> gblocks;
  grads.for_each_block([&gblocks](const std::string&, std::span<double> g) {
    gblocks.push_back(g);
  });
  std::size_t idx = 0;
  params.for_each_block([&](const std::string&, std::span<double> p) {
    std::span<double> g = gblocks[idx];
    Vector& m = m_[idx];
    Vector& v = v_[idx];
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
    ++idx;
  });
}

void sgd_step(ModelParams& params, ModelGrads& grads, double lr) {
  std::vector<std::span<double>> gblocks;
  grads.for_each_block([&gblocks](const std::string&, std::span<double> g) {
    gblocks.push_back(g);
  });
  std::size_t idx = 0;
  params.for_each_block([&](const std::string&, std::span<double> p) {
    std::span<double> g = gblocks[idx++];
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * g[i];
  });
}

Label predict_label(const Vector& probs) {
  return probs[0] >= probs[1] ? Label::S : Label::NS;
}

Prediction predict_instance(const ModelParams& params, const EncodedInstance& inst,
                            const EmbeddingTable& embeddings) {
  PreparedInput in = prepare_input(params.config, inst, embeddings);
  ForwardResult fwd = model_forward(params, in.view);
  return {predict_label(fwd.probs), fwd.probs[0], std::move(fwd.attention)};
}

EvalReport evaluate_model(const ModelParams& params,
                          std::span<const EncodedInstance> data,
                          const EmbeddingTable& embeddings) {
  require(!data.empty(), "evaluate_model: empty data");
  std::vector<Label> pred, gold;
  pred.reserve(data.size());
  gold.reserve(data.size());
  for (const EncodedInstance& inst : data) {
    pred.push_back(predict_instance(params, inst, embeddings).label);
    gold.push_back(inst.label);
  }
  return evaluate_predictions(pred, gold);
}

TrainResult train_model(const ModelConfig& base_config,
                        std::span<const EncodedInstance> train_set,
                        std::span<const EncodedInstance> dev_set,
                        const EmbeddingTable& embeddings, const Hyperparams& hyper) {
  require(!train_set.empty(), "train_model: empty training set");
  require(!dev_set.empty(), "train_model: empty dev set");

  ModelConfig config = base_config;
  config.dropout = hyper.dropout;
  config.l2 = hyper.l2;
  config.validate();

  std::vector<Label> train_labels;
  train_labels.reserve(train_set.size());
  for (const auto& inst : train_set) train_labels.push_back(inst.label);
  const auto class_w = neural_class_weights(train_labels, hyper.class_weighting);

  Rng init_rng(hyper.seed);
  ModelParams params = ModelParams::init(config, init_rng);
  Rng shuffle_rng(derive_seed(hyper.seed, 1));
  Rng dropout_rng(derive_seed(hyper.seed, 2));

  AdamState adam(params);
  ModelGrads grads(params);

  TrainResult result;
  result.best = params;
  double best_f1 = -1.0;

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), start + hyper.batch_size);
      grads.zero();
      double batch_loss = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const EncodedInstance& inst = train_set[order[k]];
        PreparedInput in = prepare_input(config, inst, embeddings);
        const double w = inst.label == Label::S ? class_w[0] : class_w[1];
        batch_loss += loss_and_grads(params, in.view, inst.label, w, true,
                                     &dropout_rng, grads);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      grads.scale(inv);
      batch_loss *= inv;
      if (!std::isfinite(batch_loss)) throw TrainingDiverged(epoch, batch_index);
      epoch_loss += batch_loss * static_cast<double>(end - start);
      if (hyper.optimizer == Optimizer::adam) {
        adam.step(params, grads, hyper.lr);
      } else {
        sgd_step(params, grads, hyper.lr);
      }
      ++batch_index;
    }
    EpochStats stats;
    stats.train_loss = epoch_loss / static_cast<double>(order.size());
    stats.dev = evaluate_model(params, dev_set, embeddings);
    result.history.epochs.push_back(stats);
    if (stats.dev.macro_f1 > best_f1) {
      best_f1 = stats.dev.macro_f1;
      result.best = params;
      result.history.best_epoch = epoch;
    }
  }
  return result;
}

}  // namespace sarcctx
