#include "sarcctx/linear.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sarcctx/rng.hpp"

namespace sarcctx {

namespace {

double label_sign(Label l) { return l == Label::S ? 1.0 : -1.0; }

double class_weight_of(const std::array<double, 2>& w, Label l) {
  return l == Label::S ? w[0] : w[1];
}

}  // namespace

std::array<double, 2> inverse_class_weights(std::span<const LabeledSparse> data) {
  std::size_t n_s = 0, n_ns = 0;
  for (const auto& [x, y] : data) (y == Label::S ? n_s : n_ns) += 1;
  require(n_s > 0 && n_ns > 0, "class weights: both classes must be present");
  const double n = static_cast<double>(data.size());
  return {n / (2.0 * static_cast<double>(n_s)), n / (2.0 * static_cast<double>(n_ns))};
}

double linear_objective(const LinearModel& model, std::span<const LabeledSparse> data,
                        double l2) {
  double loss = 0.0;
  for (const auto& [x, y] : data) {
    const double margin = label_sign(y) * (x.dot_dense(model.weights) + model.bias);
    loss += class_weight_of(model.class_weights, y) * std::max(0.0, 1.0 - margin);
  }
  loss /= static_cast<double>(data.size());
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

LinearTrainResult train_linear(std::span<const LabeledSparse> data, std::size_t dim,
                               std::array<double, 2> class_weights,
                               const LinearTrainConfig& config) {
  require(!data.empty(), "train_linear: empty data");
  bool has_s = false, has_ns = false;
  for (const auto& [x, y] : data) (y == Label::S ? has_s : has_ns) = true;
  require(has_s && has_ns, "train_linear: data must contain both classes");

  LinearTrainResult result;
  result.model.weights.assign(dim, 0.0);
  result.model.class_weights = class_weights;
  LinearModel& model = result.model;

  Rng rng(config.seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    const double lr = config.lr / (1.0 + config.lr_decay * static_cast<double>(epoch));
    for (std::size_t idx : order) {
      const auto& [x, y] = data[idx];
      const double sign = label_sign(y);
      const double margin = sign * (x.dot_dense(model.weights) + model.bias);
      // l2 shrinkage on the weights (bias unregularized)
      const double shrink = 1.0 - lr * config.l2;
      for (double& w : model.weights) w *= shrink;
      if (margin < 1.0) {
        const double step = lr * class_weight_of(class_weights, y) * sign;
        for (const auto& [fid, v] : x.entries()) {
          model.weights[static_cast<std::size_t>(fid)] += step * v;
        }
        model.bias += step;
      }
    }
    result.epoch_objective.push_back(linear_objective(model, data, config.l2));
  }
  return result;
}

std::pair<Label, double> predict_linear(const LinearModel& model, const SparseVector& x) {
  const double margin = x.dot_dense(model.weights) + model.bias;
  return {margin >= 0.0 ? Label::S : Label::NS, margin};
}

void save_linear(const std::string& path, const LinearModel& model,
                 const FeatureIndex& index) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write linear model: " + path);
  out.precision(17);
  out << "sarcctx-linear 1\n";
  out << "bias\t" << model.bias << "\n";
  out << "class_weight_s\t" << model.class_weights[0] << "\n";
  out << "class_weight_ns\t" << model.class_weights[1] << "\n";
  out << "dim\t" << model.dim() << "\n";
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] != 0.0) {
      out << index.name(static_cast<std::int32_t>(i)) << "\t" << model.weights[i] << "\n";
    }
  }
}

LinearModel load_linear(const std::string& path, const FeatureIndex& index) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read linear model: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("sarcctx-linear 1", 0) != 0) {
    throw DataError("bad linear model header in " + path);
  }
  LinearModel model;
  auto next_kv = [&](const char* key) {
    if (!std::getline(in, line)) throw DataError("truncated linear model: " + path);
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != key) {
      throw DataError("expected '" + std::string(key) + "' in " + path);
    }
    return std::stod(line.substr(tab + 1));
  };
  model.bias = next_kv("bias");
  model.class_weights[0] = next_kv("class_weight_s");
  model.class_weights[1] = next_kv("class_weight_ns");
  const std::size_t dim = static_cast<std::size_t>(next_kv("dim"));
  model.weights.assign(dim, 0.0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("bad weight line in " + path);
    std::int32_t id = index.get(line.substr(0, tab));
    if (id < 0) throw DataError("unknown feature '" + line.substr(0, tab) + "' in " + path);
    model.weights[static_cast<std::size_t>(id)] = std::stod(line.substr(tab + 1));
  }
  return model;
}

}  // namespace sarcctx
