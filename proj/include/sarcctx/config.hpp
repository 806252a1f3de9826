#pragma once

#include <map>
#include <string>

#include "sarcctx/model.hpp"
#include "sarcctx/trainer.hpp"

namespace sarcctx {

// Flat key=value experiment config ('#' comments). CLI flags override file
// values; the merged map is what lands in the run manifest.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  const std::map<std::string, std::string>& entries() const { return kv_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  ModelConfig model_config() const;
  Hyperparams hyperparams() const;
  EncodeCaps encode_caps() const;
  std::size_t vocab_min_count() const { return get_size("min_count", 1); }

  std::string canonical_text() const;  // sorted key=value lines

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace sarcctx
