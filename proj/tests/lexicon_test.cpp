#include <gtest/gtest.h>

#include <random>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"
#include "cnlwiki/lexicon.hpp"
#include "fixtures.hpp"

namespace cnlwiki {
namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST(LexiconTest, AddNounResolvesPluralForm) {
  Lexicon lex;
  lex.add_word(WordEntry::noun("country", "country", "countries"));
  auto kind = lex.lookup("countries");
  ASSERT_TRUE(kind);
  EXPECT_EQ(std::get<LexicalWord>(*kind), (LexicalWord{WordClass::Noun, "country", FormKey::Plural}));
}

TEST(LexiconTest, AddWordErrors) {
  Lexicon lex;
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("country", "country", "")); }), "malformed-forms");
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("every", "every", "everies")); }), "form-collision");
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("Country", "country", "countries")); }),
            "malformed-forms");
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry{"sea", WordClass::Noun, {{FormKey::Singular, "sea"}}}); }),
            "malformed-forms");

  lex.add_word(WordEntry::noun("country", "country", "countries"));
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("country", "land", "lands")); }), "duplicate-lemma");
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("nation", "nation", "countries")); }), "form-collision");
  EXPECT_EQ(error_code([&] { lex.add_word(WordEntry::noun("sheep", "sheep", "sheep")); }), "form-collision");
  // A failed add leaves no trace.
  EXPECT_FALSE(lex.contains("nation"));
  EXPECT_FALSE(lex.lookup("nation"));
}

TEST(LexiconTest, Tokenize) {
  const Lexicon lex = testing::small_lexicon();
  auto tokens = lex.tokenize("every country borders no sea .");
  ASSERT_EQ(tokens.size(), 6u);
  EXPECT_EQ(tokens[0], Token::function_word("every"));
  EXPECT_EQ(tokens[1].kind, TokenKind(LexicalWord{WordClass::Noun, "country", FormKey::Singular}));
  EXPECT_EQ(tokens[2].kind, TokenKind(LexicalWord{WordClass::TransitiveVerb, "borders", FormKey::ThirdSingular}));
  EXPECT_EQ(tokens[3], Token::function_word("no"));
  EXPECT_EQ(tokens[4].kind, TokenKind(LexicalWord{WordClass::Noun, "sea", FormKey::Singular}));
  EXPECT_EQ(tokens[5], Token::function_word("."));

  EXPECT_TRUE(lex.tokenize("").empty());
  // Trailing punctuation attached to the last word is split off.
  EXPECT_EQ(lex.tokenize("Switzerland is a country."), lex.tokenize("switzerland is a country ."));
}

TEST(LexiconTest, TokenizeUnknownWord) {
  const Lexicon lex = testing::small_lexicon();
  try {
    lex.tokenize("every blorf .");
    FAIL() << "expected unknown-word";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown-word");
    EXPECT_EQ(e.position(), std::optional<std::size_t>(1));
    EXPECT_NE(std::string(e.what()).find("blorf"), std::string::npos);
  }
}

TEST(LexiconTest, Lookup) {
  Lexicon lex;
  lex.add_word(WordEntry::proper_name("switzerland", "switzerland"));
  EXPECT_EQ(lex.lookup("at"), std::optional<TokenKind>(FunctionWord{"at"}));
  EXPECT_EQ(lex.lookup("switzerland"),
            std::optional<TokenKind>(LexicalWord{WordClass::ProperName, "switzerland", FormKey::Name}));
  EXPECT_EQ(lex.lookup("7"), std::optional<TokenKind>(NumberWord{7}));
  EXPECT_EQ(lex.lookup("0"), std::optional<TokenKind>(NumberWord{0}));
  EXPECT_EQ(lex.lookup("100"), std::optional<TokenKind>(NumberWord{100}));
  EXPECT_FALSE(lex.lookup("101"));
  EXPECT_FALSE(lex.lookup("07"));
  EXPECT_FALSE(lex.lookup("-1"));
  EXPECT_FALSE(lex.lookup("blorf"));
}

TEST(LexiconTest, EveryFormResolvesToItsEntry) {
  const Lexicon lex = testing::small_lexicon();
  for (const auto& [lemma, entry] : lex.entries()) {
    for (const auto& [key, form] : entry.forms) {
      auto kind = lex.lookup(form);
      ASSERT_TRUE(kind) << form;
      EXPECT_EQ(std::get<LexicalWord>(*kind), (LexicalWord{entry.word_class, lemma, key}));
    }
  }
}

TEST(LexiconTest, AddThenRemoveIsIdentity) {
  const Lexicon before = testing::small_lexicon();
  Lexicon lex = before;
  lex.add_word(WordEntry::verb("contains", "contains", "contain", "contained"));
  lex.remove_word("contains");
  EXPECT_EQ(lex, before);
  EXPECT_FALSE(lex.lookup("contained"));
  EXPECT_EQ(error_code([&] { lex.remove_word("contains"); }), "unknown-word");
}

TEST(LexiconTest, DetokenizeRoundTripsGrammarSentences) {
  const Lexicon lex = testing::small_lexicon();
  std::mt19937 rng(7);
  const auto sentences = enumerate_sentences(lex, 7, {{0, 1, 2}, 1'000'000});
  ASSERT_FALSE(sentences.empty());
  std::uniform_int_distribution<std::size_t> pick(0, sentences.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const auto& s = sentences[pick(rng)];
    EXPECT_EQ(lex.tokenize(detokenize(s)), s);
  }
}

TEST(LexiconTest, VocabularyFileRoundTrip) {
  const Lexicon lex = testing::small_lexicon();
  const std::string text = format_vocabulary(lex);
  EXPECT_NE(text.find("noun\tcountry\tcountry\tcountries\n"), std::string::npos);
  EXPECT_NE(text.find("transitive-verb\tborders\tborders\tborder\tbordered\n"), std::string::npos);
  EXPECT_NE(text.find("proper-name\tswitzerland\tswitzerland\n"), std::string::npos);
  EXPECT_EQ(parse_vocabulary(text), lex);
  EXPECT_EQ(format_vocabulary(parse_vocabulary(text)), text);
  EXPECT_EQ(error_code([] { parse_vocabulary("noun\tcountry\tcountry\n"); }), "load-failure");
  EXPECT_EQ(error_code([] { parse_vocabulary("adjective\tbig\tbig\n"); }), "load-failure");
}

}  // namespace
}  // namespace cnlwiki
