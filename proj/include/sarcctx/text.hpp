#pragma once

#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "sarcctx/lexicons.hpp"

namespace sarcctx {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Role { prior, current, succeeding };
enum class Label { S, NS };

const char* to_string(Role r);
const char* to_string(Label l);
Label parse_label(const std::string& s);

struct Turn {
  Role role = Role::current;
  std::string raw_text;
  // filled by preprocessing; every sentence has at least one token
  std::vector<std::vector<std::string>> sentences;

  std::size_t n_sentences() const { return sentences.size(); }
};

struct ConversationInstance {
  std::string id;
  Turn prior;
  Turn current;
  std::optional<Turn> succeeding;
  Label label = Label::NS;
};

// Splits on runs of '.', '!', '?' followed by whitespace or end of text,
// keeping the terminator with its sentence. Never splits inside a URL token.
// Text without a terminator is a single sentence. Errors on empty or
// whitespace-only input.
std::vector<std::string> split_sentences(const std::string& raw_text);

// Rule tokenizer. Keeps hashtags, @mentions, URLs, emoticons and
// multi-character punctuation runs ("!!!", "?!") as single tokens;
// contractions stay whole ("i'm"). Lowercases everything except all-caps
// alphabetic tokens of length >= 2. `emoticons` may be null, in which case
// only the built-in shape patterns are used for emoticon recognition.
std::vector<std::string> tokenize(const std::string& sentence,
                                  const EmoticonLexicon* emoticons = nullptr);

// split + tokenize, dropping sentences that tokenize to nothing. Errors if
// the whole text yields no tokens.
Turn preprocess_turn(const std::string& raw_text, Role role,
                     const EmoticonLexicon* emoticons = nullptr);

// Variant for pre-split input (e.g. tweet threads where every tweet is one
// sentence).
Turn preprocess_turn(const std::vector<std::string>& sentences, Role role,
                     const EmoticonLexicon* emoticons = nullptr);

}  // namespace sarcctx
