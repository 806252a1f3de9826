#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>

#include "sarcctx/dataset.hpp"
#include "sarcctx/embeddings.hpp"
#include "sarcctx/text.hpp"
#include "sarcctx/vocab.hpp"

using namespace sarcctx;

namespace {

const EmoticonLexicon& test_emoticons() {
  static EmoticonLexicon lex =
      load_emoticon_lexicon(std::string(SARCCTX_DATA_DIR) + "/lexicons/emoticons.txt");
  return lex;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/sarcctx_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("split_sentences on terminator runs") {
  auto s = split_sentences("Are you kidding me?! See for yourself.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "Are you kidding me?!");
  CHECK(s[1] == "See for yourself.");
}

TEST_CASE("split_sentences without terminator yields one sentence") {
  auto s = split_sentences("no punctuation here");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == "no punctuation here");
}

TEST_CASE("split_sentences on the forum example") {
  auto s = split_sentences("whew! we can sleep at night and ignore this.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "whew!");
  CHECK(s[1] == "we can sleep at night and ignore this.");
}

TEST_CASE("split_sentences never splits inside a URL") {
  auto s = split_sentences("see http://x.com/a.b?q=1 for details. ok!");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "see http://x.com/a.b?q=1 for details.");
  auto t = split_sentences("go to www.example.com now");
  REQUIRE(t.size() == 1);
}

TEST_CASE("split_sentences rejects empty input") {
  CHECK_THROWS_AS(split_sentences(""), DataError);
  CHECK_THROWS_AS(split_sentences("   \t "), DataError);
}

TEST_CASE("tokenize keeps the all-caps casing rule") {
  auto toks = tokenize("GREAT i'm SO happy", &test_emoticons());
  REQUIRE(toks.size() == 4);
  CHECK(toks[0] == "GREAT");
  CHECK(toks[1] == "i'm");
  CHECK(toks[2] == "SO");
  CHECK(toks[3] == "happy");
}

TEST_CASE("tokenize keeps emoticons and hashtags whole") {
  auto toks = tokenize("I love the weather ;) #sarcasm", &test_emoticons());
  REQUIRE(toks.size() == 6);
  CHECK(toks[0] == "i");
  CHECK(toks[1] == "love");
  CHECK(toks[2] == "the");
  CHECK(toks[3] == "weather");
  CHECK(toks[4] == ";)");
  CHECK(toks[5] == "#sarcasm");
}

TEST_CASE("tokenize groups punctuation runs") {
  auto toks = tokenize("really???", &test_emoticons());
  REQUIRE(toks.size() == 2);
  CHECK(toks[0] == "really");
  CHECK(toks[1] == "???");

  auto t2 = tokenize("what?! no way!!!", &test_emoticons());
  REQUIRE(t2.size() == 5);
  CHECK(t2[1] == "?!");
  CHECK(t2[4] == "!!!");
}

TEST_CASE("tokenize keeps mentions and urls") {
  auto toks = tokenize("@UserA see https://ex.com/a?b=1 NOW", &test_emoticons());
  REQUIRE(toks.size() == 4);
  CHECK(toks[0] == "@usera");
  CHECK(toks[2] == "https://ex.com/a?b=1");
  CHECK(toks[3] == "NOW");
}

TEST_CASE("all-caps tokens of length >= 2 are never lowercased") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::string word;
    std::size_t len = 2 + rng.uniform_int(8);
    for (std::size_t i = 0; i < len; ++i) {
      word.push_back(static_cast<char>('A' + rng.uniform_int(26)));
    }
    auto toks = tokenize("x " + word + " y", &test_emoticons());
    bool found = false;
    for (const auto& t : toks) found = found || t == word;
    CHECK(found);
  }
}

TEST_CASE("encode_turn caps, masks and flags") {
  std::string text;
  for (int i = 0; i < 12; ++i) text += "word word word. ";
  Turn turn = preprocess_turn(text, Role::current, &test_emoticons());
  CHECK(turn.n_sentences() == 12);

  std::vector<std::vector<std::string>> docs;
  for (const auto& s : turn.sentences) docs.push_back(s);
  Vocabulary vocab = Vocabulary::build_from_tokens(docs, 1);

  EncodedTurn enc = encode_turn(turn, vocab, {});
  CHECK(enc.n_sents == 10);
  CHECK(enc.truncated_sents);
  CHECK_FALSE(enc.truncated_words);

  // deterministic and idempotent
  EncodedTurn enc2 = encode_turn(turn, vocab, {});
  CHECK(enc.ids == enc2.ids);
  CHECK(enc.sent_len == enc2.sent_len);
}

TEST_CASE("encode_turn single short sentence and OOV") {
  Turn turn;
  turn.role = Role::current;
  turn.sentences = {{"alpha", "beta", "gamma"}};
  Vocabulary vocab = Vocabulary::build_from_tokens({{"alpha", "beta"}}, 1);
  EncodedTurn enc = encode_turn(turn, vocab, {});
  CHECK(enc.n_sents == 1);
  CHECK(enc.sent_len[0] == 3);
  CHECK(enc.id(0, 0) == vocab.id("alpha"));
  CHECK(enc.id(0, 2) == Vocabulary::kUnkId);  // gamma unseen
  for (std::size_t w = 3; w < enc.max_words; ++w) {
    CHECK(enc.id(0, w) == Vocabulary::kPadId);
  }

  // decode recovers exactly the retained tokens
  auto rows = enc.unpadded();
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] ==
        std::vector<std::int32_t>{vocab.id("alpha"), vocab.id("beta"), Vocabulary::kUnkId});

  Turn empty;
  CHECK_THROWS_AS(encode_turn(empty, vocab, {}), DataError);
}

TEST_CASE("vocabulary contains exactly the tokens above the threshold") {
  std::vector<std::vector<std::string>> docs{
      {"a", "b", "a", "c"}, {"a", "b", "d"}, {"a", "c"}};
  // brute-force counts: a=4 b=2 c=2 d=1
  Vocabulary v = Vocabulary::build_from_tokens(docs, 2);
  CHECK(v.contains("a"));
  CHECK(v.contains("b"));
  CHECK(v.contains("c"));
  CHECK_FALSE(v.contains("d"));
  CHECK(v.id("d") == Vocabulary::kUnkId);
  // pad, unk, turn marker + 3 corpus tokens
  CHECK(v.size() == 6);

  std::map<std::string, std::size_t> counts;
  for (const auto& doc : docs) {
    for (const auto& t : doc) ++counts[t];
  }
  for (const auto& [tok, c] : counts) {
    CHECK(v.contains(tok) == (c >= 2));
  }
}

TEST_CASE("vocabulary save/load round-trip and hash") {
  Vocabulary v = Vocabulary::build_from_tokens({{"zz", "aa", "zz"}}, 1);
  std::string path = temp_file("vocab.txt", "");
  v.save(path);
  Vocabulary w = Vocabulary::load(path);
  CHECK(v.size() == w.size());
  CHECK(v.hash() == w.hash());
  CHECK(w.id("zz") == v.id("zz"));
  std::remove(path.c_str());
}

TEST_CASE("load_embeddings copies rows and seeds OOV") {
  Vocabulary vocab = Vocabulary::build_from_tokens({{"love", "hate", "rare"}}, 1);
  std::string path = temp_file(
      "emb.txt", "2 4\nlove 0.25 -0.5 0.125 1\nhate 1 2 3 4\n");
  EmbeddingTable t = load_embeddings(path, vocab, 77);
  CHECK(t.dim() == 4);
  auto love = t.row(vocab.id("love"));
  CHECK(love[0] == 0.25);
  CHECK(love[1] == -0.5);
  CHECK(love[2] == 0.125);
  CHECK(love[3] == 1.0);

  // padding row all-zero
  for (double v : t.row(Vocabulary::kPadId)) CHECK(v == 0.0);

  // OOV rows live in (-0.05, 0.05) and are reproducible per seed
  EmbeddingTable t2 = load_embeddings(path, vocab, 77);
  auto rare = t.row(vocab.id("rare"));
  auto rare2 = t2.row(vocab.id("rare"));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rare[i] == rare2[i]);
    CHECK(rare[i] > -0.05);
    CHECK(rare[i] < 0.05);
  }
  CHECK(t.n_oov() == t2.n_oov());

  EmbeddingTable t3 = load_embeddings(path, vocab, 78);
  bool same = true;
  auto rare3 = t3.row(vocab.id("rare"));
  for (std::size_t i = 0; i < 4; ++i) same = same && rare3[i] == rare[i];
  CHECK_FALSE(same);
  std::remove(path.c_str());
}

TEST_CASE("load_embeddings reports malformed lines with their number") {
  Vocabulary vocab = Vocabulary::build_from_tokens({{"x"}}, 1);
  std::string path = temp_file("emb_bad.txt", "1 3\nx 0.5 0.25\n");  // one value short
  try {
    load_embeddings(path, vocab, 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("dataset preprocessing fills turns") {
  RawRecord rec;
  rec.id = "r1";
  rec.label = Label::S;
  rec.prior = "It rained all day. The picnic was cancelled.";
  rec.current = "GREAT weather we planned for!";
  ConversationInstance inst = preprocess(rec, &test_emoticons());
  CHECK(inst.prior.n_sentences() == 2);
  CHECK(inst.current.n_sentences() == 1);
  CHECK(inst.current.sentences[0][0] == "GREAT");

  RawRecord pre;
  pre.id = "r2";
  pre.label = Label::NS;
  pre.prior_sents = std::vector<std::string>{"tweet one", "tweet two ;)"};
  pre.current = "fine";
  ConversationInstance inst2 = preprocess(pre, &test_emoticons());
  CHECK(inst2.prior.n_sentences() == 2);
  CHECK(inst2.prior.sentences[1].back() == ";)");
}
