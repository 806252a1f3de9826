#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace sarcctx {

std::uint64_t fnv1a_file(const std::string& path);
std::uint64_t fnv1a_bytes(const void* data, std::size_t n);

// Record of one training run: config snapshot, seed, input hashes, artifact
// version, metrics and deterministic work counters. Reruns with equal
// inputs produce byte-identical manifests; wall-clock timings therefore go
// to the diagnostic stream, not here.
struct RunManifest {
  std::string artifact_version;
  std::string command;
  std::uint64_t seed = 0;
  std::string config_text;  // canonical key=value snapshot
  std::map<std::string, std::string> dataset_hashes;
  std::uint64_t vocab_hash = 0;
  std::map<std::string, std::string> outputs;  // metrics and result summary
  struct Work {
    std::uint64_t epochs = 0;
    std::uint64_t batches = 0;
    std::uint64_t instances = 0;
  } work;

  std::string to_json() const;
  void save(const std::string& path) const;
};

}  // namespace sarcctx
