#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sarcctx/markers.hpp"
#include "sarcctx/rng.hpp"
#include "sarcctx/text.hpp"

using namespace sarcctx;

namespace {

const LexiconSet& lexicons() {
  static LexiconSet set = LexiconSet::load_dir(std::string(SARCCTX_DATA_DIR) + "/lexicons");
  return set;
}

Turn make_turn(const std::string& text) {
  return preprocess_turn(text, Role::current, &lexicons().emoticons);
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/sarcctx_lex_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("load_lexicon parses entries, stems and polarities") {
  std::string path = temp_file("cat.tsv", "great\tposemo\nrun*\tmotion\ngreat\tposemo\n");
  CategoryLexicon lex = load_category_lexicon(path);
  CHECK(lex.lookup("great").count("posemo") == 1);
  CHECK(lex.lookup("running").count("motion") == 1);  // stem prefix match
  CHECK(lex.lookup("run").count("motion") == 1);
  CHECK(lex.lookup("ran").empty());
  std::remove(path.c_str());
}

TEST_CASE("load_lexicon rejects malformed lines with the line number") {
  std::string path = temp_file("bad.tsv", "fine\tpositive\na\tb\tc\td\n");
  try {
    load_sentiment_lexicon(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("sentiment lexicon keeps one polarity per token") {
  SentimentLexicon lex;
  lex.add("fine", {Polarity::positive, Strength::weak});
  lex.add("fine", {Polarity::positive, Strength::strong});  // dedup, upgrade strength
  CHECK(lex.lookup("fine")->strength == Strength::strong);
  CHECK_THROWS_AS(lex.add("fine", {Polarity::negative, Strength::weak}), ParseError);
}

TEST_CASE("markers: capitalization and multiple exclamations") {
  Turn turn = make_turn("GREAT i'm SO happy; shattered phone on this WONDERFUL day!!!");
  MarkerFeatures f = detect_markers(turn, lexicons());
  CHECK(f.capitalization);
  CHECK(f.multi_exclamation);
  CHECK_FALSE(f.single_exclamation);
  CHECK(f.hyperbole);  // "greatest"-class strong subjectivity: GREAT/WONDERFUL
  CHECK(f.semicolon.single);
}

TEST_CASE("markers: emoticon with positive polarity") {
  Turn turn = make_turn("I love the weather ;)");
  MarkerFeatures f = detect_markers(turn, lexicons());
  CHECK(f.emoticon_present);
  CHECK(f.emoticon_count == 1);
  CHECK(f.emoticon_polarity == EmoticonPolarity::positive);
}

TEST_CASE("markers: tag question") {
  Turn turn = make_turn("nice, didn't you?");
  MarkerFeatures f = detect_markers(turn, lexicons());
  CHECK(f.tag_question);

  Turn no_tag = make_turn("did you see the game?");
  CHECK_FALSE(detect_markers(no_tag, lexicons()).tag_question);
}

TEST_CASE("markers: interjection, quotation, mixed punctuation") {
  MarkerFeatures f = detect_markers(make_turn("whew! we can \"sleep\" at night?!"), lexicons());
  CHECK(f.interjection);       // whew
  CHECK(f.quotation);          // paired straight quotes
  CHECK(f.mixed_punctuation);  // ?!
  CHECK(f.multi_exclamation);  // "!" plus the "!" inside "?!"
  CHECK(f.question.single);

  CHECK_FALSE(detect_markers(make_turn("plain words here"), lexicons()).mixed_punctuation);
}

TEST_CASE("markers require the lexicons") {
  LexiconSet empty;
  CHECK_THROWS_AS(detect_markers(make_turn("hello there"), empty), ConfigError);
}

TEST_CASE("markers match a brute-force re-scan on random toy turns") {
  Rng rng(31);
  const std::vector<std::string> words{"great",  "bad",   "WOW", "fine",  "hello",
                                       "maybe",  "!",     "!!",  "?",     "?!",
                                       ";)",     ":(",    "\"",  "ouch",  "x",
                                       "terrible", ";",   ".",   "...",   "word"};
  for (int trial = 0; trial < 200; ++trial) {
    Turn turn;
    turn.role = Role::current;
    std::size_t n_sents = 1 + rng.uniform_int(3);
    for (std::size_t s = 0; s < n_sents; ++s) {
      std::vector<std::string> sent;
      std::size_t len = 1 + rng.uniform_int(6);
      for (std::size_t w = 0; w < len; ++w) {
        sent.push_back(words[rng.uniform_int(words.size())]);
      }
      turn.sentences.push_back(sent);
    }
    MarkerFeatures f = detect_markers(turn, lexicons());

    // independent scan
    std::size_t excl = 0, quotes = 0;
    bool caps = false, interj = false, hyper = false, emo = false, mixed = false;
    for (const auto& sent : turn.sentences) {
      for (const auto& tok : sent) {
        if (lexicons().emoticons.is_emoticon(tok)) {
          emo = true;
          continue;
        }
        bool all_punct = !tok.empty();
        bool all_caps = tok.size() >= 2;
        for (char c : tok) {
          all_punct = all_punct && std::ispunct(static_cast<unsigned char>(c));
          all_caps = all_caps && std::isupper(static_cast<unsigned char>(c));
        }
        caps = caps || all_caps;
        if (all_punct) {
          for (char c : tok) {
            if (c == '!') ++excl;
            if (c == '"') ++quotes;
          }
          bool has_two = false;
          for (char a : std::string("!?.;,")) {
            for (char b : std::string("!?.;,")) {
              if (a != b && tok.find(a) != std::string::npos &&
                  tok.find(b) != std::string::npos) {
                has_two = true;
              }
            }
          }
          mixed = mixed || (tok.size() >= 2 && has_two);
        } else {
          for (char c : tok) {
            if (c == '"') ++quotes;
          }
        }
        std::string lc = tok;
        for (char& c : lc) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lexicons().interjections.contains(lc)) interj = true;
        if (tok == "great" || tok == "terrible") hyper = true;
      }
    }
    CHECK(f.capitalization == caps);
    CHECK(f.single_exclamation == (excl == 1));
    CHECK(f.multi_exclamation == (excl >= 2));
    CHECK(f.interjection == interj);
    CHECK(f.hyperbole == hyper);
    CHECK(f.emoticon_present == emo);
    CHECK(f.mixed_punctuation == mixed);
    CHECK(f.quotation == (quotes >= 2));
  }
}
