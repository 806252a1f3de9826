#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sarcctx/text.hpp"

namespace sarcctx {

// One dataset record as read from disk, before tokenization. Either the raw
// turn strings or the pre-split sentence lists are present per turn.
struct RawRecord {
  std::string id;
  Label label = Label::NS;
  std::optional<std::string> prior;
  std::optional<std::string> current;
  std::optional<std::string> succeeding;
  std::optional<std::vector<std::string>> prior_sents;
  std::optional<std::vector<std::string>> current_sents;
  std::optional<std::vector<std::string>> succeeding_sents;
};

// JSON-lines dataset: one object per line with fields
//   {id, label: "S"|"NS", prior, current, succeeding?}
// or the pre-split variants prior_sents/current_sents/succeeding_sents.
// Raises DataError with the offending line number.
std::vector<RawRecord> read_jsonl_dataset(const std::string& path);

ConversationInstance preprocess(const RawRecord& rec,
                                const EmoticonLexicon* emoticons = nullptr);

std::vector<ConversationInstance> preprocess_dataset(
    const std::vector<RawRecord>& records, const EmoticonLexicon* emoticons = nullptr);

void write_jsonl_dataset(const std::string& path, const std::vector<RawRecord>& records);

}  // namespace sarcctx
