#pragma once

#include <cstdint>
#include <string>

#include "sarcctx/model.hpp"

namespace sarcctx {

// Versioned binary container: config key-values, vocabulary hash, and the
// named parameter arrays (shape-prefixed, little-endian 64-bit floats).
// Round-trips bitwise.
struct Checkpoint {
  ModelParams params;
  std::uint64_t vocab_hash = 0;
};

void save_checkpoint(const std::string& path, const ModelParams& params,
                     std::uint64_t vocab_hash);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace sarcctx
