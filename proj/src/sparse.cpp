#include "sarcctx/sparse.hpp"

#include <algorithm>

namespace sarcctx {

void SparseVector::add(std::int32_t id, double value) {
  require(id >= 0, "SparseVector: negative feature id");
  entries_.emplace_back(id, value);
  dirty_ = true;
}

void SparseVector::finalize() {
  if (!dirty_) return;
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::int32_t, double>> merged;
  for (const auto& [id, v] : entries_) {
    if (!merged.empty() && merged.back().first == id) {
      merged.back().second += v;
    } else {
      merged.emplace_back(id, v);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& e) { return e.second == 0.0; }),
               merged.end());
  entries_ = std::move(merged);
  dirty_ = false;
}

double SparseVector::get(std::int32_t id) const {
  for (const auto& [fid, v] : entries_) {
    if (fid == id) return v;
  }
  return 0.0;
}

double SparseVector::dot_dense(const Vector& w) const {
  double s = 0.0;
  for (const auto& [id, v] : entries_) {
    require(static_cast<std::size_t>(id) < w.size(), "SparseVector: id out of range");
    s += v * w[static_cast<std::size_t>(id)];
  }
  return s;
}

void SparseVector::merge(const SparseVector& other) {
  for (const auto& [id, v] : other.entries_) add(id, v);
  finalize();
}

std::int32_t FeatureIndex::add_or_get(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  if (frozen_) return -1;
  std::int32_t id = static_cast<std::int32_t>(names_.size());
  ids_.emplace(name, id);
  names_.push_back(name);
  return id;
}

std::int32_t FeatureIndex::get(const std::string& name) const {
  auto it = ids_.find(name);
  return it == ids_.end() ? -1 : it->second;
}

}  // namespace sarcctx
