#include "sarcctx/lexicons.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace sarcctx {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

[[noreturn]] void line_error(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file: " + path);
  return in;
}

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::positive: return "positive";
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
  }
  return "?";
}

void CategoryLexicon::add(const std::string& entry, const std::string& category) {
  if (!entry.empty() && entry.back() == '*') {
    stems_[entry.substr(0, entry.size() - 1)].insert(category);
  } else {
    exact_[entry].insert(category);
  }
}

std::set<std::string> CategoryLexicon::lookup(const std::string& token) const {
  std::set<std::string> out;
  if (auto it = exact_.find(token); it != exact_.end()) {
    out.insert(it->second.begin(), it->second.end());
  }
  for (const auto& [stem, cats] : stems_) {
    if (token.size() >= stem.size() && token.compare(0, stem.size(), stem) == 0) {
      out.insert(cats.begin(), cats.end());
    }
  }
  return out;
}

void SentimentLexicon::add(const std::string& token, SentimentEntry entry) {
  auto [it, inserted] = entries_.emplace(token, entry);
  if (!inserted) {
    if (it->second.polarity != entry.polarity) {
      throw ParseError("sentiment lexicon: conflicting polarity for '" + token + "'");
    }
    // duplicate with the same polarity: keep the stronger subjectivity
    if (entry.strength == Strength::strong) it->second.strength = Strength::strong;
  }
}

std::optional<SentimentEntry> SentimentLexicon::lookup(const std::string& token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void EmoticonLexicon::add(const std::string& emoticon, std::optional<Polarity> polarity) {
  auto [it, inserted] = entries_.emplace(emoticon, polarity);
  if (!inserted && !it->second && polarity) it->second = polarity;
}

bool EmoticonLexicon::is_emoticon(const std::string& token) const {
  return entries_.count(token) > 0 || matches_pattern(token);
}

std::optional<Polarity> EmoticonLexicon::polarity(const std::string& token) const {
  auto it = entries_.find(token);
  if (it != entries_.end()) return it->second;
  return std::nullopt;
}

// Matches the usual western emoticon shape: optional reversed forms are
// listed explicitly in the lexicon file; here we cover eyes [:;=8xX],
// optional nose [-o^'], and a mouth.
bool EmoticonLexicon::matches_pattern(const std::string& token) {
  if (token.size() < 2 || token.size() > 4) return false;
  static const std::string eyes = ":;=8xX";
  static const std::string noses = "-o^'";
  static const std::string mouths = ")(/\\|DPpb3*oO$][}{";
  std::size_t i = 0;
  if (eyes.find(token[i]) == std::string::npos) return false;
  ++i;
  if (i < token.size() - 1 && noses.find(token[i]) != std::string::npos) ++i;
  if (i >= token.size()) return false;
  // allow a repeated mouth like :))
  for (; i < token.size(); ++i) {
    if (mouths.find(token[i]) == std::string::npos) return false;
  }
  return true;
}

namespace {

SentimentEntry parse_sentiment_label(const std::string& path, std::size_t line_no,
                                     const std::string& label) {
  SentimentEntry e;
  std::string rest = label;
  if (rest.rfind("strong_", 0) == 0) {
    e.strength = Strength::strong;
    rest = rest.substr(7);
  } else if (rest.rfind("weak_", 0) == 0) {
    e.strength = Strength::weak;
    rest = rest.substr(5);
  }
  if (rest == "positive") {
    e.polarity = Polarity::positive;
  } else if (rest == "negative") {
    e.polarity = Polarity::negative;
  } else if (rest == "neutral") {
    e.polarity = Polarity::neutral;
  } else {
    line_error(path, line_no, "unknown sentiment label '" + label + "'");
  }
  return e;
}

std::optional<Polarity> parse_optional_polarity(const std::string& path,
                                                std::size_t line_no,
                                                const std::string& label) {
  if (label.empty()) return std::nullopt;
  if (label == "positive") return Polarity::positive;
  if (label == "negative") return Polarity::negative;
  if (label == "neutral") return Polarity::neutral;
  line_error(path, line_no, "unknown polarity '" + label + "'");
}

}  // namespace

CategoryLexicon load_category_lexicon(const std::string& path) {
  auto in = open_or_throw(path);
  CategoryLexicon lex;
  lex.name = std::filesystem::path(path).stem().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_comment_or_blank(line)) continue;
    auto parts = split_tabs(line);
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      line_error(path, line_no, "expected token<TAB>category");
    }
    lex.add(parts[0], parts[1]);
  }
  return lex;
}

SentimentLexicon load_sentiment_lexicon(const std::string& path) {
  auto in = open_or_throw(path);
  SentimentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_comment_or_blank(line)) continue;
    auto parts = split_tabs(line);
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      line_error(path, line_no, "expected token<TAB>label");
    }
    lex.add(parts[0], parse_sentiment_label(path, line_no, parts[1]));
  }
  return lex;
}

WordList load_word_list(const std::string& path) {
  auto in = open_or_throw(path);
  WordList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_comment_or_blank(line)) continue;
    if (split_tabs(line).size() != 1) line_error(path, line_no, "expected one token per line");
    list.add(line);
  }
  return list;
}

EmoticonLexicon load_emoticon_lexicon(const std::string& path) {
  auto in = open_or_throw(path);
  EmoticonLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_comment_or_blank(line)) continue;
    auto parts = split_tabs(line);
    if (parts.empty() || parts.size() > 2 || parts[0].empty()) {
      line_error(path, line_no, "expected emoticon[<TAB>polarity]");
    }
    std::optional<Polarity> pol;
    if (parts.size() == 2) pol = parse_optional_polarity(path, line_no, parts[1]);
    lex.add(parts[0], pol);
  }
  return lex;
}

TagQuestionList load_tag_questions(const std::string& path) {
  auto in = open_or_throw(path);
  TagQuestionList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_comment_or_blank(line)) continue;
    // phrases are written naturally ("didn't you?"); strip the trailing mark
    // and store lowercase word tokens
    std::string phrase = line;
    while (!phrase.empty() && (phrase.back() == '?' || phrase.back() == ' ')) phrase.pop_back();
    std::istringstream words(phrase);
    std::vector<std::string> tokens;
    std::string w;
    while (words >> w) {
      for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      tokens.push_back(w);
    }
    if (tokens.empty()) line_error(path, line_no, "empty tag-question phrase");
    list.add_phrase(tokens);
  }
  return list;
}

LexiconSet LexiconSet::load_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  auto p = [&](const char* name) { return (fs::path(dir) / name).string(); };
  LexiconSet set;
  set.sentiment = load_sentiment_lexicon(p("sentiment.tsv"));
  if (fs::exists(p("categories.tsv"))) {
    set.category = load_category_lexicon(p("categories.tsv"));
  }
  set.interjections = load_word_list(p("interjections.txt"));
  set.tag_questions = load_tag_questions(p("tag_questions.txt"));
  set.emoticons = load_emoticon_lexicon(p("emoticons.txt"));
  if (fs::exists(p("stopwords.txt"))) {
    set.stopwords = load_word_list(p("stopwords.txt"));
  }
  return set;
}

}  // namespace sarcctx
