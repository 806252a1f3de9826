#include "sarcctx/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace sarcctx {

void Vocabulary::add_token(const std::string& token) {
  token_to_id_.emplace(token, static_cast<std::int32_t>(tokens_.size()));
  tokens_.push_back(token);
}

Vocabulary Vocabulary::build_from_tokens(
    const std::vector<std::vector<std::string>>& docs, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;  // ordered for determinism
  for (const auto& doc : docs) {
    for (const auto& tok : doc) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, c] : counts) {
    if (c >= min_count) kept.emplace_back(tok, c);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.min_count_ = min_count;
  v.add_token(kPadToken);
  v.add_token(kUnkToken);
  v.add_token(kTurnToken);
  for (const auto& [tok, c] : kept) v.add_token(tok);
  return v;
}

Vocabulary Vocabulary::build(std::span<const ConversationInstance> corpus,
                             std::size_t min_count) {
  std::vector<std::vector<std::string>> docs;
  for (const ConversationInstance& inst : corpus) {
    for (const Turn* t : {&inst.prior, &inst.current}) {
      for (const auto& sent : t->sentences) docs.push_back(sent);
    }
    if (inst.succeeding) {
      for (const auto& sent : inst.succeeding->sentences) docs.push_back(sent);
    }
  }
  return build_from_tokens(docs, min_count);
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 0x100000001b3ULL;
    }
  };
  for (const std::string& t : tokens_) {
    mix(t.data(), t.size());
    mix("\n", 1);
  }
  return h;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vocabulary: " + path);
  out << "min_count\t" << min_count_ << "\n";
  for (std::size_t i = 3; i < tokens_.size(); ++i) out << tokens_[i] << "\n";
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read vocabulary: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("vocabulary file empty: " + path);
  Vocabulary v;
  if (line.rfind("min_count\t", 0) != 0) {
    throw DataError("vocabulary file missing min_count header: " + path);
  }
  v.min_count_ = std::stoul(line.substr(10));
  v.add_token(kPadToken);
  v.add_token(kUnkToken);
  v.add_token(kTurnToken);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) v.add_token(line);
  }
  return v;
}

std::vector<std::vector<std::int32_t>> EncodedTurn::unpadded() const {
  std::vector<std::vector<std::int32_t>> out(n_sents);
  for (std::size_t s = 0; s < n_sents; ++s) {
    out[s].assign(ids.begin() + static_cast<std::ptrdiff_t>(s * max_words),
                  ids.begin() + static_cast<std::ptrdiff_t>(s * max_words + sent_len[s]));
  }
  return out;
}

EncodedTurn EncodedTurn::last_sentence_only() const {
  EncodedTurn out;
  out.max_sents = max_sents;
  out.max_words = max_words;
  out.ids.assign(max_sents * max_words, Vocabulary::kPadId);
  if (n_sents == 0) return out;
  const std::size_t last = n_sents - 1;
  std::copy(ids.begin() + static_cast<std::ptrdiff_t>(last * max_words),
            ids.begin() + static_cast<std::ptrdiff_t>((last + 1) * max_words),
            out.ids.begin());
  out.n_sents = 1;
  out.sent_len = {sent_len[last]};
  return out;
}

EncodedTurn encode_turn(const Turn& turn, const Vocabulary& vocab,
                        const EncodeCaps& caps) {
  if (turn.sentences.empty()) throw DataError("encode_turn: empty turn");
  EncodedTurn enc;
  enc.max_sents = caps.max_sents;
  enc.max_words = caps.max_words;
  enc.ids.assign(caps.max_sents * caps.max_words, Vocabulary::kPadId);
  enc.truncated_sents = turn.sentences.size() > caps.max_sents;
  enc.n_sents = std::min(turn.sentences.size(), caps.max_sents);
  enc.sent_len.resize(enc.n_sents);
  for (std::size_t s = 0; s < enc.n_sents; ++s) {
    const auto& sent = turn.sentences[s];
    if (sent.empty()) throw DataError("encode_turn: empty sentence in turn");
    enc.truncated_words = enc.truncated_words || sent.size() > caps.max_words;
    enc.sent_len[s] = std::min(sent.size(), caps.max_words);
    for (std::size_t w = 0; w < enc.sent_len[s]; ++w) {
      enc.ids[s * caps.max_words + w] = vocab.id(sent[w]);
    }
  }
  return enc;
}

EncodedInstance encode_instance(const ConversationInstance& inst, const Vocabulary& vocab,
                                const EncodeCaps& caps) {
  EncodedInstance e;
  e.id = inst.id;
  e.label = inst.label;
  e.prior = encode_turn(inst.prior, vocab, caps);
  e.current = encode_turn(inst.current, vocab, caps);
  if (inst.succeeding) e.succeeding = encode_turn(*inst.succeeding, vocab, caps);
  return e;
}

}  // namespace sarcctx
