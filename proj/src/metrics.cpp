#include "sarcctx/metrics.hpp"

#include <sstream>

#include <json.hpp>

namespace sarcctx {

namespace {

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = (tp + fp) == 0 ? 0.0
                               : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = (tp + fn) == 0 ? 0.0
                            : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace

EvalReport evaluate_predictions(std::span<const Label> predictions,
                                std::span<const Label> gold) {
  require(predictions.size() == gold.size(), "evaluate: length mismatch");
  require(!gold.empty(), "evaluate: empty data");
  EvalReport r;
  r.n = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::size_t g = gold[i] == Label::S ? 0 : 1;
    const std::size_t p = predictions[i] == Label::S ? 0 : 1;
    ++r.confusion[g][p];
  }
  r.s = class_metrics(r.confusion[0][0], r.confusion[1][0], r.confusion[0][1]);
  r.ns = class_metrics(r.confusion[1][1], r.confusion[0][1], r.confusion[1][0]);
  r.accuracy = static_cast<double>(r.confusion[0][0] + r.confusion[1][1]) /
               static_cast<double>(r.n);
  r.macro_precision = 0.5 * (r.s.precision + r.ns.precision);
  r.macro_recall = 0.5 * (r.s.recall + r.ns.recall);
  r.macro_f1 = 0.5 * (r.s.f1 + r.ns.f1);
  return r;
}

double macro_f1_of(std::span<const Label> predictions, std::span<const Label> gold) {
  return evaluate_predictions(predictions, gold).macro_f1;
}

std::string EvalReport::table() const {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed;
  os << "class        P        R       F1\n";
  os << "S      " << 100 * s.precision << "   " << 100 * s.recall << "   " << 100 * s.f1
     << "\n";
  os << "NS     " << 100 * ns.precision << "   " << 100 * ns.recall << "   "
     << 100 * ns.f1 << "\n";
  os << "macro  " << 100 * macro_precision << "   " << 100 * macro_recall << "   "
     << 100 * macro_f1 << "\n";
  os << "accuracy " << 100 * accuracy << "  (n=" << n << ")\n";
  return os.str();
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  auto cls = [](const ClassMetrics& m) {
    nlohmann::ordered_json c;
    c["precision"] = m.precision;
    c["recall"] = m.recall;
    c["f1"] = m.f1;
    c["tp"] = m.tp;
    c["fp"] = m.fp;
    c["fn"] = m.fn;
    return c;
  };
  j["S"] = cls(s);
  j["NS"] = cls(ns);
  j["macro"] = {{"precision", macro_precision},
                {"recall", macro_recall},
                {"f1", macro_f1}};
  j["accuracy"] = accuracy;
  j["n"] = n;
  j["confusion"] = {{"S", {{"S", confusion[0][0]}, {"NS", confusion[0][1]}}},
                    {"NS", {{"S", confusion[1][0]}, {"NS", confusion[1][1]}}}};
  return j.dump(2);
}

}  // namespace sarcctx
