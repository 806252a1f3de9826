#include "sarcctx/markers.hpp"

#include <algorithm>
#include <cctype>

namespace sarcctx {

namespace {

bool is_all_caps(const std::string& tok) {
  if (tok.size() < 2) return false;
  return std::all_of(tok.begin(), tok.end(),
                     [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
}

bool is_punct_run(const std::string& tok) {
  if (tok.empty()) return false;
  return std::all_of(tok.begin(), tok.end(), [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 128 && std::ispunct(u);
  });
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Does the sentence end with the phrase followed by a terminal '?' run?
bool ends_with_tag_question(const std::vector<std::string>& sent,
                            const std::vector<std::string>& phrase) {
  if (sent.empty() || phrase.empty()) return false;
  std::size_t last = sent.size() - 1;
  const std::string& tail = sent[last];
  if (!is_punct_run(tail) || tail.find('?') == std::string::npos) return false;
  if (last < phrase.size()) return false;
  for (std::size_t k = 0; k < phrase.size(); ++k) {
    if (lower(sent[last - phrase.size() + k]) != phrase[k]) return false;
  }
  return true;
}

void note_polarity(EmoticonPolarity& acc, Polarity p) {
  if (p == Polarity::neutral) return;
  EmoticonPolarity mine =
      p == Polarity::positive ? EmoticonPolarity::positive : EmoticonPolarity::negative;
  if (acc == EmoticonPolarity::none) {
    acc = mine;
  } else if (acc != mine) {
    acc = EmoticonPolarity::mixed;
  }
}

}  // namespace

MarkerFeatures detect_markers(const Turn& turn, const LexiconSet& lexicons) {
  if (lexicons.sentiment.size() == 0) {
    throw ConfigError("detect_markers: sentiment lexicon is required");
  }
  if (lexicons.emoticons.size() == 0) {
    throw ConfigError("detect_markers: emoticon lexicon is required");
  }
  if (lexicons.interjections.size() == 0) {
    throw ConfigError("detect_markers: interjection list is required");
  }
  if (lexicons.tag_questions.size() == 0) {
    throw ConfigError("detect_markers: tag-question list is required");
  }

  MarkerFeatures f;
  std::size_t exclamations = 0, questions = 0, periods = 0, semicolons = 0;
  std::size_t straight_quotes = 0;
  bool open_curly = false, close_curly = false;

  for (const auto& sent : turn.sentences) {
    for (const auto& phrase : lexicons.tag_questions.phrases()) {
      if (ends_with_tag_question(sent, phrase)) {
        f.tag_question = true;
        break;
      }
    }
    for (const std::string& tok : sent) {
      if (lexicons.emoticons.is_emoticon(tok)) {
        f.emoticon_present = true;
        ++f.emoticon_count;
        if (auto pol = lexicons.emoticons.polarity(tok)) {
          note_polarity(f.emoticon_polarity, *pol);
        } else if (auto sentiment = lexicons.sentiment.lookup(tok)) {
          note_polarity(f.emoticon_polarity, sentiment->polarity);
        }
        continue;  // emoticon punctuation does not count toward marks
      }
      if (auto sentiment = lexicons.sentiment.lookup(lower(tok))) {
        if (sentiment->strength == Strength::strong) f.hyperbole = true;
      }
      if (lexicons.interjections.contains(lower(tok))) f.interjection = true;
      if (is_all_caps(tok)) f.capitalization = true;
      if (is_punct_run(tok)) {
        std::string distinct;
        for (char c : tok) {
          if (distinct.find(c) == std::string::npos) distinct.push_back(c);
          switch (c) {
            case '!': ++exclamations; break;
            case '?': ++questions; break;
            case '.': ++periods; break;
            case ';': ++semicolons; break;
            case '"': ++straight_quotes; break;
            default: break;
          }
        }
        std::size_t distinct_marks = 0;
        for (char c : distinct) {
          if (c == '!' || c == '?' || c == '.' || c == ';' || c == ',') ++distinct_marks;
        }
        if (tok.size() >= 2 && distinct_marks >= 2) f.mixed_punctuation = true;
      } else {
        for (char c : tok) {
          if (c == '"') ++straight_quotes;
        }
      }
      // UTF-8 curly quotes
      if (tok.find("\xe2\x80\x9c") != std::string::npos) open_curly = true;
      if (tok.find("\xe2\x80\x9d") != std::string::npos) close_curly = true;
    }
  }

  f.single_exclamation = exclamations == 1;
  f.multi_exclamation = exclamations >= 2;
  f.question.single = questions == 1;
  f.question.multiple = questions >= 2;
  f.period.single = periods == 1;
  f.period.multiple = periods >= 2;
  f.semicolon.single = semicolons == 1;
  f.semicolon.multiple = semicolons >= 2;
  f.quotation = straight_quotes >= 2 || (open_curly && close_curly);
  return f;
}

}  // namespace sarcctx
