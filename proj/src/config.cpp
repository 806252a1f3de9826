#include "sarcctx/config.hpp"

#include <fstream>

namespace sarcctx {

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  KeyValueConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      std::size_t x = s.find_first_not_of(" \t");
      if (x == std::string::npos) return std::string();
      std::size_t y = s.find_last_not_of(" \t");
      return s.substr(x, y - x + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg.kv_[key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad number '" + it->second + "'");
  }
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoul(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + it->second + "'");
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError("config key '" + key + "': bad boolean '" + it->second + "'");
}

ModelConfig KeyValueConfig::model_config() const {
  ModelConfig c;
  c.arch = parse_arch(get_string("arch", "ct"));
  c.context = parse_context(get_string("context", "none"));
  c.hidden_dim = get_size("hidden_dim", 100);
  c.embedding_dim = get_size("embedding_dim", 100);
  c.attn_dim = get_size("attn_dim", 0);
  c.dropout = get_double("dropout", 0.5);
  c.l2 = get_double("l2", 1e-4);
  c.concat_turns = get_bool("concat_turns", false);
  c.last_pt_only = get_bool("last_pt_only", false);
  c.validate();
  return c;
}

Hyperparams KeyValueConfig::hyperparams() const {
  Hyperparams h;
  h.dropout = get_double("dropout", h.dropout);
  h.batch_size = get_size("batch_size", h.batch_size);
  h.l2 = get_double("l2", h.l2);
  h.epochs = get_size("epochs", h.epochs);
  h.lr = get_double("lr", h.lr);
  h.optimizer = parse_optimizer(get_string("optimizer", "adam"));
  h.seed = get_size("seed", h.seed);
  h.class_weighting = get_bool("class_weighting", h.class_weighting);
  return h;
}

EncodeCaps KeyValueConfig::encode_caps() const {
  EncodeCaps caps;
  caps.max_sents = get_size("max_sents", caps.max_sents);
  caps.max_words = get_size("max_words", caps.max_words);
  return caps;
}

std::string KeyValueConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : kv_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace sarcctx
