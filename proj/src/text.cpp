#include "sarcctx/text.hpp"

#include <algorithm>
#include <cctype>

namespace sarcctx {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Punctuation here means any printable ASCII that is neither alnum nor space.
bool is_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) != 0;
}

// Length of a URL starting at `i`, or 0. A URL runs to the next whitespace,
// minus any trailing sentence punctuation.
std::size_t url_length(const std::string& s, std::size_t i) {
  static const char* prefixes[] = {"http://", "https://", "www."};
  std::size_t len = 0;
  for (const char* p : prefixes) {
    std::size_t n = std::char_traits<char>::length(p);
    if (s.compare(i, n, p) == 0) {
      len = n;
      break;
    }
  }
  if (len == 0) return 0;
  std::size_t end = i + len;
  while (end < s.size() && !is_space(s[end])) ++end;
  // leave trailing .!?,;: outside the URL so they can terminate the sentence
  while (end > i + len && is_punct(s[end - 1])) --end;
  return end - i;
}

bool all_caps_alpha(const std::string& tok) {
  if (tok.size() < 2) return false;
  for (char c : tok) {
    if (!std::isupper(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

const char* to_string(Role r) {
  switch (r) {
    case Role::prior: return "prior";
    case Role::current: return "current";
    case Role::succeeding: return "succeeding";
  }
  return "?";
}

const char* to_string(Label l) { return l == Label::S ? "S" : "NS"; }

Label parse_label(const std::string& s) {
  if (s == "S") return Label::S;
  if (s == "NS") return Label::NS;
  throw DataError("unknown label '" + s + "' (expected S or NS)");
}

std::vector<std::string> split_sentences(const std::string& raw_text) {
  bool only_space = std::all_of(raw_text.begin(), raw_text.end(), is_space);
  if (raw_text.empty() || only_space) {
    throw DataError("split_sentences: empty text");
  }
  std::vector<std::string> sentences;
  std::string cur;
  std::size_t i = 0;
  const std::size_t n = raw_text.size();
  auto flush = [&] {
    // trim
    std::size_t b = 0, e = cur.size();
    while (b < e && is_space(cur[b])) ++b;
    while (e > b && is_space(cur[e - 1])) --e;
    if (e > b) sentences.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  while (i < n) {
    std::size_t ul = url_length(raw_text, i);
    if (ul > 0) {
      cur.append(raw_text, i, ul);
      i += ul;
      continue;
    }
    if (is_terminator(raw_text[i])) {
      std::size_t j = i;
      while (j < n && is_terminator(raw_text[j])) ++j;
      cur.append(raw_text, i, j - i);
      i = j;
      if (i >= n || is_space(raw_text[i])) flush();
      continue;
    }
    cur.push_back(raw_text[i]);
    ++i;
  }
  flush();
  if (sentences.empty()) throw DataError("split_sentences: no sentence content");
  return sentences;
}

std::vector<std::string> tokenize(const std::string& sentence,
                                  const EmoticonLexicon* emoticons) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence.size();

  auto try_emoticon = [&](std::size_t pos) -> std::size_t {
    // longest match wins; emoticons in the lists are <= 6 chars
    for (std::size_t len = std::min<std::size_t>(6, n - pos); len >= 2; --len) {
      std::string cand = sentence.substr(pos, len);
      bool known = emoticons && emoticons->is_emoticon(cand);
      if (known || EmoticonLexicon::matches_pattern(cand)) {
        // must not glue into a following word ("12:30" is not "12" + ":3" + "0")
        std::size_t after = pos + len;
        if (after == n || !is_word_char(sentence[after])) return len;
      }
    }
    return 0;
  };

  while (i < n) {
    if (is_space(sentence[i])) {
      ++i;
      continue;
    }
    std::size_t ul = url_length(sentence, i);
    if (ul > 0) {
      tokens.push_back(lower(sentence.substr(i, ul)));
      i += ul;
      continue;
    }
    char c = sentence[i];
    if ((c == '#' || c == '@') && i + 1 < n && is_word_char(sentence[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_word_char(sentence[j])) ++j;
      tokens.push_back(lower(sentence.substr(i, j - i)));
      i = j;
      continue;
    }
    if (std::size_t el = try_emoticon(i); el > 0) {
      tokens.push_back(sentence.substr(i, el));  // emoticons keep their case
      i += el;
      continue;
    }
    if (is_word_char(c)) {
      // word, possibly with internal apostrophes: i'm, didn't
      std::size_t j = i;
      while (j < n) {
        if (is_word_char(sentence[j])) {
          ++j;
        } else if (sentence[j] == '\'' && j + 1 < n && is_word_char(sentence[j + 1]) &&
                   j > i) {
          j += 2;
        } else {
          break;
        }
      }
      std::string tok = sentence.substr(i, j - i);
      tokens.push_back(all_caps_alpha(tok) ? tok : lower(tok));
      i = j;
      continue;
    }
    if (is_punct(c)) {
      // group consecutive punctuation into one token ("!!!", "?!", "...")
      std::size_t j = i;
      while (j < n && is_punct(sentence[j])) {
        // stop if an emoticon starts here
        if (j > i && try_emoticon(j) > 0) break;
        ++j;
      }
      tokens.push_back(sentence.substr(i, j - i));
      i = j;
      continue;
    }
    // non-ASCII byte run: keep as one token, lowercased byte-wise
    std::size_t j = i;
    while (j < n && static_cast<unsigned char>(sentence[j]) >= 128) ++j;
    if (j == i) ++j;
    tokens.push_back(lower(sentence.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

namespace {

Turn finish_turn(std::vector<std::vector<std::string>> sents, Role role,
                 std::string raw) {
  Turn t;
  t.role = role;
  t.raw_text = std::move(raw);
  for (auto& s : sents) {
    if (!s.empty()) t.sentences.push_back(std::move(s));
  }
  if (t.sentences.empty()) {
    throw DataError("turn has no tokens after preprocessing");
  }
  return t;
}

}  // namespace

Turn preprocess_turn(const std::string& raw_text, Role role,
                     const EmoticonLexicon* emoticons) {
  std::vector<std::vector<std::string>> sents;
  for (const std::string& s : split_sentences(raw_text)) {
    sents.push_back(tokenize(s, emoticons));
  }
  return finish_turn(std::move(sents), role, raw_text);
}

Turn preprocess_turn(const std::vector<std::string>& sentences, Role role,
                     const EmoticonLexicon* emoticons) {
  if (sentences.empty()) throw DataError("pre-split turn has no sentences");
  std::vector<std::vector<std::string>> sents;
  std::string raw;
  for (const std::string& s : sentences) {
    sents.push_back(tokenize(s, emoticons));
    if (!raw.empty()) raw += ' ';
    raw += s;
  }
  return finish_turn(std::move(sents), role, raw);
}

}  // namespace sarcctx
