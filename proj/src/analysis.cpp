#include "sarcctx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sarcctx {

using nlohmann::json;

void AnnotationSet::add(AnnotationRecord rec) {
  by_instance_[rec.instance_id].push_back(std::move(rec));
}

const std::vector<AnnotationRecord>* AnnotationSet::find(
    const std::string& instance_id) const {
  auto it = by_instance_.find(instance_id);
  return it == by_instance_.end() ? nullptr : &it->second;
}

AnnotationSet AnnotationSet::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open annotations: " + path);
  AnnotationSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(where + ": invalid JSON (" + e.what() + ")");
    }
    AnnotationRecord rec;
    try {
      rec.instance_id = obj.at("instance_id").get<std::string>();
      rec.annotator_id = obj.at("annotator_id").get<std::string>();
      rec.task = obj.value("task", 1);
      if (obj.contains("current_sentence")) {
        rec.current_sentence = obj.at("current_sentence").get<int>();
      }
      if (obj.contains("trigger_sentences")) {
        rec.trigger_sentences = obj.at("trigger_sentences").get<std::vector<int>>();
      }
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    if (rec.task != 1 && rec.task != 2) throw DataError(where + ": task must be 1 or 2");
    set.add(std::move(rec));
  }
  return set;
}

MaxAttentionResult max_attention_sentence(const AttentionRecord& record, Role role) {
  auto it = record.turns.find(role);
  if (it == record.turns.end() || it->second.sentence_weights.empty()) {
    throw DataError(std::string("no sentence attention recorded for the ") +
                    to_string(role) + " turn");
  }
  const Vector& w = it->second.sentence_weights;
  MaxAttentionResult res;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] > w[res.index]) {
      res.index = i;
      res.tie = false;
    } else if (w[i] == w[res.index]) {
      res.tie = true;
    }
  }
  return res;
}

MajorityResult majority_selection(const std::vector<AnnotationRecord>& annotations,
                                  int task) {
  require(!annotations.empty(), "majority_selection: no annotations");
  std::map<int, std::size_t> votes;
  std::size_t n_annotators = 0;
  for (const AnnotationRecord& rec : annotations) {
    if (rec.task != task) continue;
    ++n_annotators;
    if (task == 2) {
      if (rec.current_sentence) ++votes[*rec.current_sentence];
    } else {
      std::set<int> uniq(rec.trigger_sentences.begin(), rec.trigger_sentences.end());
      for (int s : uniq) ++votes[s];
    }
  }
  require(n_annotators > 0, "majority_selection: no annotations for task");
  MajorityResult res;
  for (const auto& [idx, v] : votes) {
    if (2 * v > n_annotators) {
      res.indices.insert(idx);
      res.has_majority = true;
    }
  }
  if (!res.has_majority) {
    std::size_t top = 0;
    for (const auto& [idx, v] : votes) top = std::max(top, v);
    for (const auto& [idx, v] : votes) {
      if (v == top && top > 0) res.indices.insert(idx);
    }
  }
  return res;
}

OverlapReport attention_annotation_overlap(
    const std::map<std::string, AttentionRecord>& records,
    const AnnotationSet& annotations, int task, Role role) {
  OverlapReport report;
  for (const auto& [id, recs] : annotations.by_instance()) {
    bool has_task = std::any_of(recs.begin(), recs.end(),
                                [task](const AnnotationRecord& r) { return r.task == task; });
    if (!has_task) continue;
    auto rit = records.find(id);
    if (rit == records.end()) {
      throw DataError("no attention record for annotated instance '" + id + "'");
    }
    OverlapDetail detail;
    detail.instance_id = id;
    MaxAttentionResult att = max_attention_sentence(rit->second, role);
    detail.max_attention_index = att.index;
    detail.attention_tie = att.tie;
    MajorityResult maj = majority_selection(recs, task);
    detail.majority = maj.indices;
    detail.no_majority = !maj.has_majority;
    detail.matched = maj.indices.count(static_cast<int>(att.index)) > 0;
    report.details.push_back(std::move(detail));
    ++report.n_instances;
    if (report.details.back().matched) ++report.n_matches;
  }
  report.percentage = report.n_instances == 0
                          ? 0.0
                          : 100.0 * static_cast<double>(report.n_matches) /
                                static_cast<double>(report.n_instances);
  return report;
}

AlphaResult krippendorff_alpha_nominal(const std::vector<std::vector<int>>& units) {
  // coincidence matrix: every ordered pair of picks within a unit
  // contributes 1/(m_u - 1)
  std::map<int, std::map<int, double>> coincidence;
  std::map<int, double> totals;
  double n = 0.0;
  AlphaResult res;
  for (const auto& unit : units) {
    const std::size_t m = unit.size();
    if (m < 2) continue;
    ++res.n_units;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        coincidence[unit[i]][unit[j]] += w;
        totals[unit[i]] += w;
        n += w;
      }
    }
  }
  if (res.n_units == 0) return res;  // undefined
  double observed_disagreement = 0.0;
  for (const auto& [c, row] : coincidence) {
    for (const auto& [k, v] : row) {
      if (c != k) observed_disagreement += v;
    }
  }
  double expected = 0.0;
  for (const auto& [c, nc] : totals) {
    for (const auto& [k, nk] : totals) {
      if (c != k) expected += nc * nk;
    }
  }
  res.defined = true;
  if (expected == 0.0) {
    // a single category everywhere: no chance disagreement possible
    res.alpha = 1.0;
    return res;
  }
  const double d_o = observed_disagreement / n;
  const double d_e = expected / (n * (n - 1.0));
  res.alpha = 1.0 - d_o / d_e;
  return res;
}

std::map<std::string, AlphaResult> alpha_by_sentence_count(
    const AnnotationSet& annotations,
    const std::map<std::string, std::size_t>& sentence_counts) {
  std::map<std::string, std::vector<std::vector<int>>> buckets;
  for (const auto& [id, recs] : annotations.by_instance()) {
    std::vector<int> picks;
    for (const AnnotationRecord& rec : recs) {
      if (rec.task == 2 && rec.current_sentence) picks.push_back(*rec.current_sentence);
    }
    if (picks.empty()) continue;
    std::string bucket = "other";
    if (auto it = sentence_counts.find(id); it != sentence_counts.end()) {
      const std::size_t c = it->second;
      if (c == 3) bucket = "3";
      else if (c == 4) bucket = "4";
      else if (c == 5) bucket = "5";
      else if (c > 5) bucket = ">5";
    }
    buckets[bucket].push_back(picks);
    buckets["all"].push_back(picks);
  }
  std::map<std::string, AlphaResult> out;
  for (const auto& [name, units] : buckets) out[name] = krippendorff_alpha_nominal(units);
  return out;
}

TriggerDistribution trigger_distribution(const AnnotationSet& annotations) {
  TriggerDistribution dist;
  dist.distinct_selection_pct.assign(5, 0.0);
  std::size_t n_instances = 0;
  std::map<std::size_t, std::size_t> size_counts;
  std::size_t n_selections = 0;
  for (const auto& [id, recs] : annotations.by_instance()) {
    std::set<std::set<int>> patterns;
    for (const AnnotationRecord& rec : recs) {
      std::set<int> sel(rec.trigger_sentences.begin(), rec.trigger_sentences.end());
      if (sel.empty()) continue;
      patterns.insert(sel);
      ++size_counts[sel.size()];
      ++n_selections;
    }
    if (patterns.empty()) continue;
    ++n_instances;
    const std::size_t d = std::min<std::size_t>(patterns.size(), 5);
    dist.distinct_selection_pct[d - 1] += 1.0;
  }
  if (n_instances > 0) {
    for (double& v : dist.distinct_selection_pct) {
      v *= 100.0 / static_cast<double>(n_instances);
    }
  }
  for (const auto& [size, c] : size_counts) {
    dist.n_sentences_pct[size] =
        100.0 * static_cast<double>(c) / static_cast<double>(n_selections);
  }
  return dist;
}

std::string heatmap_json(const HeatmapEntry& entry) {
  nlohmann::ordered_json j;
  j["instance_id"] = entry.instance_id;
  j["turn"] = to_string(entry.role);
  if (!entry.sentences.empty()) j["sentences"] = entry.sentences;
  j["weights"] = entry.weights;
  if (!entry.votes.empty()) j["votes"] = entry.votes;
  return j.dump();
}

HeatmapEntry heatmap_from_json(const std::string& line) {
  json obj = json::parse(line);
  HeatmapEntry e;
  e.instance_id = obj.at("instance_id").get<std::string>();
  const std::string role = obj.at("turn").get<std::string>();
  e.role = role == "prior" ? Role::prior
                           : role == "current" ? Role::current : Role::succeeding;
  if (obj.contains("sentences")) {
    e.sentences = obj.at("sentences").get<std::vector<std::string>>();
  }
  e.weights = obj.at("weights").get<Vector>();
  if (obj.contains("votes")) {
    e.votes = obj.at("votes").get<std::vector<std::size_t>>();
  }
  return e;
}

std::string heatmap_bars(const HeatmapEntry& entry, std::size_t width) {
  std::ostringstream os;
  os << entry.instance_id << " (" << to_string(entry.role) << " turn)\n";
  double maxw = 0.0;
  for (double w : entry.weights) maxw = std::max(maxw, w);
  for (std::size_t i = 0; i < entry.weights.size(); ++i) {
    const double w = entry.weights[i];
    const std::size_t bar =
        maxw > 0.0 ? static_cast<std::size_t>(std::lround(w / maxw * width)) : 0;
    os << "  S" << (i + 1) << " ";
    os.precision(3);
    os << std::fixed << w << " |" << std::string(bar, '#');
    if (!entry.votes.empty() && i < entry.votes.size()) {
      os << "  votes=" << entry.votes[i];
    }
    if (!entry.sentences.empty() && i < entry.sentences.size()) {
      std::string text = entry.sentences[i];
      if (text.size() > 60) text = text.substr(0, 57) + "...";
      os << "  " << text;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace sarcctx
