#include "sarcctx/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace sarcctx {

namespace {

constexpr char kMagic[8] = {'S', 'R', 'C', 'C', 'K', 'P', 'T', '1'};

std::uint64_t bswap64(std::uint64_t v) {
  return __builtin_bswap64(v);
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = bswap64(v);
  }
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t get_u64(std::ifstream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if constexpr (std::endian::native == std::endian::big) {
    v = bswap64(v);
  }
  return v;
}

void put_string(std::ofstream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::ifstream& in) {
  const std::uint64_t n = get_u64(in);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

void put_doubles(std::ofstream& out, std::span<const double> xs) {
  static_assert(sizeof(double) == 8);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(xs.data()),
              static_cast<std::streamsize>(xs.size() * 8));
  } else {
    for (double x : xs) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, 8);
      put_u64(out, bits);
    }
  }
}

void get_doubles(std::ifstream& in, std::span<double> xs) {
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(xs.data()),
            static_cast<std::streamsize>(xs.size() * 8));
  } else {
    for (double& x : xs) {
      std::uint64_t bits = get_u64(in);
      std::memcpy(&x, &bits, 8);
    }
  }
}

std::string config_to_text(const ModelConfig& config) {
  std::string text;
  for (const auto& [k, v] : config.to_map()) {
    text += k;
    text += '=';
    text += v;
    text += '\n';
  }
  return text;
}

ModelConfig config_from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw DataError("checkpoint: bad config line " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return ModelConfig::from_map(kv);
}

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params,
                     std::uint64_t vocab_hash) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof(kMagic));
  put_string(out, config_to_text(params.config));
  put_u64(out, vocab_hash);

  std::size_t n_blocks = 0;
  params.for_each_block([&n_blocks](const std::string&, std::span<const double>) {
    ++n_blocks;
  });
  put_u64(out, n_blocks);
  params.for_each_block([&out](const std::string& name, std::span<const double> data) {
    put_string(out, name);
    put_u64(out, data.size());
    put_doubles(out, data);
  });
  if (!out) throw DataError("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a checkpoint file: " + path);
  }
  Checkpoint ckpt;
  const ModelConfig config = config_from_text(get_string(in));
  ckpt.vocab_hash = get_u64(in);

  // rebuild the parameter skeleton, then fill the named blocks
  Rng rng(0);
  ckpt.params = ModelParams::init(config, rng);
  const std::uint64_t n_blocks = get_u64(in);
  std::map<std::string, std::span<double>> slots;
  ckpt.params.for_each_block([&slots](const std::string& name, std::span<double> data) {
    slots.emplace(name, data);
  });
  if (n_blocks != slots.size()) {
    throw DataError("checkpoint block count mismatch in " + path);
  }
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    const std::string name = get_string(in);
    auto it = slots.find(name);
    if (it == slots.end()) throw DataError("checkpoint: unknown block '" + name + "'");
    const std::uint64_t n = get_u64(in);
    if (n != it->second.size()) {
      throw DataError("checkpoint: block '" + name + "' has wrong size");
    }
    get_doubles(in, it->second);
  }
  if (!in) throw DataError("checkpoint truncated: " + path);
  return ckpt;
}

}  // namespace sarcctx
