#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sarcctx/model.hpp"

namespace sarcctx {

// One crowd judgment. Task 1: which prior-turn sentences triggered the
// sarcastic reply (a set). Task 2: the single current-turn sentence that
// carries the sarcasm, plus trigger sentences for it.
struct AnnotationRecord {
  std::string instance_id;
  std::string annotator_id;
  int task = 1;
  std::optional<int> current_sentence;
  std::vector<int> trigger_sentences;
};

class AnnotationSet {
 public:
  void add(AnnotationRecord rec);
  static AnnotationSet load_jsonl(const std::string& path);

  const std::map<std::string, std::vector<AnnotationRecord>>& by_instance() const {
    return by_instance_;
  }
  const std::vector<AnnotationRecord>* find(const std::string& instance_id) const;
  std::size_t n_instances() const { return by_instance_.size(); }

 private:
  std::map<std::string, std::vector<AnnotationRecord>> by_instance_;
};

struct MaxAttentionResult {
  std::size_t index = 0;
  bool tie = false;
};

// Argmax over the unmasked sentence weights; ties resolve to the lowest
// index and are flagged. Errors when the record has no weights for the role.
MaxAttentionResult max_attention_sentence(const AttentionRecord& record, Role role);

struct MajorityResult {
  std::set<int> indices;
  bool has_majority = false;  // false: fell back to the most-voted indices
};

// Indices chosen by strictly more than half the annotators; when none
// reaches a majority, the most-voted indices (plural on ties) with the flag
// cleared. Task 2 votes on the single sarcastic-sentence choice, task 1 on
// the trigger sets.
MajorityResult majority_selection(const std::vector<AnnotationRecord>& annotations,
                                  int task);

struct OverlapDetail {
  std::string instance_id;
  std::size_t max_attention_index = 0;
  std::set<int> majority;
  bool matched = false;
  bool attention_tie = false;
  bool no_majority = false;
};

struct OverlapReport {
  std::size_t n_instances = 0;
  std::size_t n_matches = 0;
  double percentage = 0.0;
  std::vector<OverlapDetail> details;
};

// Fraction of instances whose max-attention sentence is in the Turkers'
// majority selection. `role` picks which turn's weights are read (prior for
// task 1 triggers, current for task 2 sarcastic-sentence choice).
OverlapReport attention_annotation_overlap(
    const std::map<std::string, AttentionRecord>& records,
    const AnnotationSet& annotations, int task, Role role);

struct AlphaResult {
  double alpha = 0.0;
  bool defined = false;     // false when no unit has >= 2 annotations
  std::size_t n_units = 0;  // units entering the computation
};

// Krippendorff's alpha, nominal metric, over the coincidence matrix.
// `units` holds the annotators' category picks per unit; units with fewer
// than two picks are excluded.
AlphaResult krippendorff_alpha_nominal(const std::vector<std::vector<int>>& units);

// Alpha per sentence-count bucket ("3", "4", "5", ">5") for the task-2
// sarcastic-sentence picks, using the current turn's sentence count per
// instance. Instances with unknown or <3 sentence counts land in bucket
// "other". Bucket "all" pools every unit.
std::map<std::string, AlphaResult> alpha_by_sentence_count(
    const AnnotationSet& annotations,
    const std::map<std::string, std::size_t>& sentence_counts);

struct TriggerDistribution {
  // index d-1 = % of instances where the annotators made d distinct
  // trigger selections (d = 1..5)
  std::vector<double> distinct_selection_pct;
  // % of selections (instance x annotator) choosing k sentences as triggers
  std::map<std::size_t, double> n_sentences_pct;
};

TriggerDistribution trigger_distribution(const AnnotationSet& annotations);

struct HeatmapEntry {
  std::string instance_id;
  Role role = Role::prior;
  std::vector<std::string> sentences;  // may be empty when text unavailable
  Vector weights;
  std::vector<std::size_t> votes;  // per-sentence annotation votes, optional
};

// Machine-readable JSON line per instance plus a plain-text bar rendering.
std::string heatmap_json(const HeatmapEntry& entry);
std::string heatmap_bars(const HeatmapEntry& entry, std::size_t width = 40);
HeatmapEntry heatmap_from_json(const std::string& line);

}  // namespace sarcctx
