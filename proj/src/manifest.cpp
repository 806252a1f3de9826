#include "sarcctx/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sarcctx/text.hpp"
#include "sarcctx/version.hpp"

namespace sarcctx {

std::uint64_t fnv1a_bytes(const void* data, std::size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot hash missing file: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["artifact_version"] = artifact_version.empty() ? kVersion : artifact_version;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = config_text;
  nlohmann::ordered_json hashes;
  for (const auto& [name, h] : dataset_hashes) hashes[name] = h;
  j["dataset_hashes"] = hashes;
  j["vocab_hash"] = hex64(vocab_hash);
  nlohmann::ordered_json outs;
  for (const auto& [name, v] : outputs) outs[name] = v;
  j["outputs"] = outs;
  j["work"] = {{"epochs", work.epochs},
               {"batches", work.batches},
               {"instances", work.instances}};
  return j.dump(2);
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << to_json() << "\n";
}

}  // namespace sarcctx
