#pragma once

#include <span>
#include <string>

#include "sarcctx/linalg.hpp"
#include "sarcctx/rng.hpp"
#include "sarcctx/vocab.hpp"

namespace sarcctx {

// One embedding row per vocabulary id. The padding row is all-zero;
// out-of-vocabulary rows are drawn uniform(-0.05, 0.05) from the seeded RNG.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t vocab_size, std::size_t dim)
      : dim_(dim), table_(vocab_size, dim) {}

  // All rows random (except padding); used for synthetic-corpus experiments.
  static EmbeddingTable random(std::size_t vocab_size, std::size_t dim,
                               std::uint64_t seed, double lo = -0.05, double hi = 0.05);

  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return table_.rows(); }
  std::span<const double> row(std::int32_t id) const {
    return table_.row(static_cast<std::size_t>(id));
  }
  std::span<double> mutable_row(std::int32_t id) {
    return table_.row(static_cast<std::size_t>(id));
  }
  Vector row_vec(std::int32_t id) const {
    auto r = row(id);
    return Vector(r.begin(), r.end());
  }

  std::size_t n_oov() const { return n_oov_; }
  std::uint64_t seed() const { return seed_; }

  friend EmbeddingTable load_embeddings(const std::string& path,
                                        const Vocabulary& vocab, std::uint64_t seed);

 private:
  std::size_t dim_ = 0;
  Matrix table_;
  std::size_t n_oov_ = 0;
  std::uint64_t seed_ = 0;
};

// Textual word-vector format: header "count dim", then one "token v1 .. vdim"
// line per word. Tokens absent from the vocabulary are skipped; vocabulary
// tokens absent from the file get seeded-uniform(-0.05, 0.05) rows.
// Malformed lines raise ParseError with the line number.
EmbeddingTable load_embeddings(const std::string& path, const Vocabulary& vocab,
                               std::uint64_t seed);

void save_embeddings(const std::string& path, const EmbeddingTable& table,
                     const Vocabulary& vocab);

}  // namespace sarcctx
