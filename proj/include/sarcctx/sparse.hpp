#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sarcctx/linalg.hpp"

namespace sarcctx {

// Sorted (feature_id, value) pairs; zero values are never stored.
class SparseVector {
 public:
  SparseVector() = default;

  void add(std::int32_t id, double value);  // accumulates into existing ids
  void finalize();                          // sort ids, drop zeros

  const std::vector<std::pair<std::int32_t, double>>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  double get(std::int32_t id) const;
  double dot_dense(const Vector& w) const;
  void merge(const SparseVector& other);

  bool operator==(const SparseVector& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::pair<std::int32_t, double>> entries_;
  bool dirty_ = false;
};

// Namespaced feature-name -> id map, frozen after fitting on training data.
// Looking up an unseen name on a frozen index returns -1 (feature dropped).
class FeatureIndex {
 public:
  std::int32_t add_or_get(const std::string& name);
  std::int32_t get(const std::string& name) const;
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::int32_t id) const { return names_.at(id); }

 private:
  std::unordered_map<std::string, std::int32_t> ids_;
  std::vector<std::string> names_;
  bool frozen_ = false;
};

}  // namespace sarcctx
