#pragma once

#include "sarcctx/lexicons.hpp"
#include "sarcctx/text.hpp"

namespace sarcctx {

enum class EmoticonPolarity { none, positive, negative, mixed };

// Explicit meta-communicative sarcasm clues detected on a tokenized turn:
// tropes (hyperbole), morpho-syntactic (exclamations, tag questions,
// interjections) and typographic (capitalization, quotation, emoticons,
// punctuation) markers.
struct MarkerFeatures {
  bool hyperbole = false;           // any strong-subjectivity token
  bool single_exclamation = false;  // exactly one '!' in the turn
  bool multi_exclamation = false;   // two or more '!' (excludes single)
  bool tag_question = false;
  bool interjection = false;
  bool capitalization = false;  // preserved all-caps token of length >= 2
  bool quotation = false;       // paired quote characters
  bool emoticon_present = false;
  std::size_t emoticon_count = 0;
  EmoticonPolarity emoticon_polarity = EmoticonPolarity::none;

  // per-mark use: exactly one occurrence vs several, over the whole turn
  struct MarkUse {
    bool single = false;
    bool multiple = false;
  };
  MarkUse question;
  MarkUse period;
  MarkUse semicolon;
  bool mixed_punctuation = false;  // >= 2 distinct marks adjacent, e.g. "?!"
};

// Pure function of (tokens, lexicons). Requires a preprocessed turn (casing
// rule applied). Throws ConfigError if a required lexicon is empty.
MarkerFeatures detect_markers(const Turn& turn, const LexiconSet& lexicons);

}  // namespace sarcctx
