#pragma once

#include <stdexcept>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sarcctx {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Polarity { positive, negative, neutral };
enum class Strength { weak, strong };

const char* to_string(Polarity p);

// Word-category lexicon (LIWC-style). Entries ending in '*' in the source
// file are stems and match by prefix.
class CategoryLexicon {
 public:
  void add(const std::string& entry, const std::string& category);
  // Categories of `token`: exact entries plus any stem entry that prefixes it.
  std::set<std::string> lookup(const std::string& token) const;
  std::size_t size() const { return exact_.size() + stems_.size(); }
  std::string name;

 private:
  std::unordered_map<std::string, std::set<std::string>> exact_;
  // kept sorted by stem for deterministic behavior
  std::map<std::string, std::set<std::string>> stems_;
};

struct SentimentEntry {
  Polarity polarity = Polarity::neutral;
  Strength strength = Strength::weak;
};

class SentimentLexicon {
 public:
  // Duplicate token+label pairs are deduplicated; a token re-added with a
  // different polarity is a parse error (one polarity per token per lexicon).
  void add(const std::string& token, SentimentEntry entry);
  std::optional<SentimentEntry> lookup(const std::string& token) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, SentimentEntry> entries_;
};

class WordList {
 public:
  void add(const std::string& token) { words_.insert(token); }
  bool contains(const std::string& token) const { return words_.count(token) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Emoticon list with an optional polarity column, complemented by a small
// regular-expression-style matcher for the common :-) ;( =D ... shapes.
class EmoticonLexicon {
 public:
  void add(const std::string& emoticon, std::optional<Polarity> polarity);
  bool is_emoticon(const std::string& token) const;
  std::optional<Polarity> polarity(const std::string& token) const;
  std::size_t size() const { return entries_.size(); }

  static bool matches_pattern(const std::string& token);

 private:
  std::unordered_map<std::string, std::optional<Polarity>> entries_;
};

// Tag-question phrases ("didn't you?"), stored tokenized without the
// trailing question mark.
class TagQuestionList {
 public:
  void add_phrase(const std::vector<std::string>& tokens) { phrases_.push_back(tokens); }
  const std::vector<std::vector<std::string>>& phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }

 private:
  std::vector<std::vector<std::string>> phrases_;
};

CategoryLexicon load_category_lexicon(const std::string& path);
SentimentLexicon load_sentiment_lexicon(const std::string& path);
WordList load_word_list(const std::string& path);
EmoticonLexicon load_emoticon_lexicon(const std::string& path);
TagQuestionList load_tag_questions(const std::string& path);

// The resources marker detection and the feature baselines draw from.
// `category` may stay empty (it only feeds optional baseline features);
// detect_markers requires sentiment, interjections, tag questions, emoticons.
struct LexiconSet {
  SentimentLexicon sentiment;
  CategoryLexicon category;
  WordList interjections;
  TagQuestionList tag_questions;
  EmoticonLexicon emoticons;
  WordList stopwords;

  // Loads the standard file names from a directory:
  //   sentiment.tsv, categories.tsv (optional), interjections.txt,
  //   tag_questions.txt, emoticons.txt, stopwords.txt
  static LexiconSet load_dir(const std::string& dir);
};

}  // namespace sarcctx
