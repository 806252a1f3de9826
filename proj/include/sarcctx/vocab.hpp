#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sarcctx/text.hpp"

namespace sarcctx {

// Token ids. 0 is reserved for padding, 1 for unknown, 2 for the turn
// boundary marker used when turns are joined at token level; corpus tokens
// start at 3, assigned by descending corpus frequency then lexicographically.
class Vocabulary {
 public:
  static constexpr std::int32_t kPadId = 0;
  static constexpr std::int32_t kUnkId = 1;
  static constexpr std::int32_t kTurnId = 2;
  static constexpr const char* kPadToken = "<pad>";
  static constexpr const char* kUnkToken = "<unk>";
  static constexpr const char* kTurnToken = "<turn>";

  Vocabulary() = default;

  static Vocabulary build(std::span<const ConversationInstance> corpus,
                          std::size_t min_count);
  static Vocabulary build_from_tokens(const std::vector<std::vector<std::string>>& docs,
                                      std::size_t min_count);

  std::int32_t id(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? kUnkId : it->second;
  }
  bool contains(const std::string& token) const { return token_to_id_.count(token) > 0; }
  const std::string& token(std::int32_t id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  std::size_t min_count() const { return min_count_; }

  // FNV-1a over the id-ordered token list; recorded in checkpoints so a
  // model is never evaluated against a different vocabulary.
  std::uint64_t hash() const;

  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

 private:
  void add_token(const std::string& token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> token_to_id_;
  std::size_t min_count_ = 1;
};

struct EncodeCaps {
  std::size_t max_sents = 10;
  std::size_t max_words = 50;
};

// Padded/truncated sentence-by-word id grid. Valid content always sits in a
// leading prefix: sentences 0..n_sents-1, words 0..sent_len[s]-1; every
// other cell holds the padding id.
struct EncodedTurn {
  std::size_t max_sents = 0;
  std::size_t max_words = 0;
  std::vector<std::int32_t> ids;  // max_sents * max_words, row-major
  std::size_t n_sents = 0;
  std::vector<std::size_t> sent_len;  // size n_sents
  bool truncated_sents = false;
  bool truncated_words = false;

  std::int32_t id(std::size_t s, std::size_t w) const { return ids[s * max_words + w]; }
  bool sent_valid(std::size_t s) const { return s < n_sents; }
  bool word_valid(std::size_t s, std::size_t w) const {
    return s < n_sents && w < sent_len[s];
  }
  // The retained token ids, mask applied.
  std::vector<std::vector<std::int32_t>> unpadded() const;
  // Copy keeping only the last valid sentence (context truncation).
  EncodedTurn last_sentence_only() const;
};

// Keeps the first max_sents sentences and the first max_words tokens per
// sentence; unknown tokens map to the unknown id. Errors on a turn with no
// sentences.
EncodedTurn encode_turn(const Turn& turn, const Vocabulary& vocab,
                        const EncodeCaps& caps = {});

struct EncodedInstance {
  std::string id;
  Label label = Label::NS;
  EncodedTurn prior;
  EncodedTurn current;
  std::optional<EncodedTurn> succeeding;
};

EncodedInstance encode_instance(const ConversationInstance& inst, const Vocabulary& vocab,
                                const EncodeCaps& caps = {});

}  // namespace sarcctx
