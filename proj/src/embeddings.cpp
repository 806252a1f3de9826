#include "sarcctx/embeddings.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sarcctx/lexicons.hpp"

namespace sarcctx {

EmbeddingTable EmbeddingTable::random(std::size_t vocab_size, std::size_t dim,
                                      std::uint64_t seed, double lo, double hi) {
  EmbeddingTable t(vocab_size, dim);
  t.seed_ = seed;
  Rng rng(seed);
  // row 0 is padding and stays zero
  for (std::size_t r = 1; r < vocab_size; ++r) {
    for (double& v : t.table_.row(r)) v = rng.uniform(lo, hi);
  }
  t.n_oov_ = vocab_size > 0 ? vocab_size - 1 : 0;
  return t;
}

EmbeddingTable load_embeddings(const std::string& path, const Vocabulary& vocab,
                               std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open embedding file: " + path);
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) -> void {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + what);
  };

  ++line_no;
  if (!std::getline(in, line)) fail("missing header");
  std::istringstream header(line);
  std::size_t count = 0, dim = 0;
  if (!(header >> count >> dim) || dim == 0) fail("bad header, expected 'count dim'");

  EmbeddingTable table(vocab.size(), dim);
  table.seed_ = seed;
  std::vector<bool> filled(vocab.size(), false);
  filled[Vocabulary::kPadId] = true;  // stays zero

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos) fail("expected 'token v1 .. vdim'");
    std::string token = line.substr(0, sp);
    std::int32_t id = vocab.contains(token) ? vocab.id(token) : -1;

    // parse exactly dim doubles even for skipped tokens, to validate the file
    const char* p = line.data() + sp;
    const char* end = line.data() + line.size();
    std::size_t got = 0;
    Vector row(dim, 0.0);
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p >= end) break;
      double value = 0.0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc()) fail("bad number in vector");
      if (got < dim) row[got] = value;
      ++got;
      p = next;
    }
    if (got != dim) {
      fail("expected " + std::to_string(dim) + " values, got " + std::to_string(got));
    }
    if (id >= 0 && !filled[static_cast<std::size_t>(id)]) {
      std::copy(row.begin(), row.end(), table.table_.row(static_cast<std::size_t>(id)).begin());
      filled[static_cast<std::size_t>(id)] = true;
    }
  }

  // OOV rows, in id order so the draw is reproducible from the seed
  Rng rng(seed);
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    if (filled[id]) continue;
    for (double& v : table.table_.row(id)) v = rng.uniform(-0.05, 0.05);
    ++table.n_oov_;
  }
  return table;
}

void save_embeddings(const std::string& path, const EmbeddingTable& table,
                     const Vocabulary& vocab) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write embedding file: " + path);
  out.precision(17);
  out << (vocab.size() - 1) << ' ' << table.dim() << "\n";
  for (std::size_t id = 1; id < vocab.size(); ++id) {
    out << vocab.token(static_cast<std::int32_t>(id));
    for (double v : table.row(static_cast<std::int32_t>(id))) out << ' ' << v;
    out << "\n";
  }
}

}  // namespace sarcctx
