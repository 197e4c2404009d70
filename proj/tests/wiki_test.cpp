#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"
#include "cnlwiki/wiki.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

namespace cnlwiki {
namespace {

namespace fs = std::filesystem;

void fill_lexicon(Wiki& wiki) {
  const Lexicon lex = testing::small_lexicon();
  for (const auto& [lemma, entry] : lex.entries()) wiki.add_word(entry);
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kNotice =
    "# cnlwiki ontology export\n"
    "# Unique name assumption: distinct individual names denote distinct individuals.\n";

TEST(WikiTest, FirstSentenceIsBlue) {
  Wiki wiki;
  fill_lexicon(wiki);
  auto s = wiki.add_statement("switzerland", std::string_view("switzerland is a country ."));
  EXPECT_EQ(s.status, Status::Blue);
  EXPECT_EQ(status_code(s), "ok");
  EXPECT_EQ(s.id, 1);
  EXPECT_EQ(wiki.snapshot()->ontology.size(), 1u);
}

TEST(WikiTest, RedSentencesStayOut) {
  Wiki wiki;
  fill_lexicon(wiki);
  auto s = wiki.add_statement("country", std::string_view("a country can border a sea ."));
  EXPECT_EQ(s.status, Status::NonLogic);
  EXPECT_EQ(status_code(s), "nonowl:modality");
  EXPECT_TRUE(s.axioms.empty());
  EXPECT_TRUE(wiki.snapshot()->ontology.empty());
  EXPECT_EQ(wiki.export_ontology(), kNotice + "# red(modality): a country can border a sea .\n");
}

TEST(WikiTest, ContradictionAndReassert) {
  Wiki wiki;
  fill_lexicon(wiki);
  wiki.add_statement("switzerland", std::string_view("switzerland is a landlocked-country ."));
  wiki.add_statement("baltic-sea", std::string_view("baltic-sea is a sea ."));
  const long fact = wiki.add_statement("switzerland", std::string_view("switzerland borders baltic-sea .")).id;
  const auto before = wiki.export_ontology();
  auto universal = wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
  EXPECT_EQ(universal.status, Status::Conflict);
  EXPECT_EQ(status_code(universal), "conflict");
  EXPECT_EQ(wiki.export_ontology(), before + "# red(conflict): every landlocked-country borders no sea .\n");

  // Unchanged ontology: same verdict.
  EXPECT_EQ(wiki.reassert_statement(universal.id).status, Status::Conflict);
  wiki.remove_statement(fact);
  auto flipped = wiki.reassert_statement(universal.id);
  EXPECT_EQ(flipped.status, Status::Blue);
  EXPECT_EQ(flipped.id, universal.id);
  EXPECT_EQ(code_of([&] { wiki.reassert_statement(universal.id); }), "not-reassertable");
  EXPECT_EQ(code_of([&] { wiki.reassert_statement(999); }), "unknown-statement");
}

TEST(WikiTest, RemoveStatement) {
  Wiki wiki;
  fill_lexicon(wiki);
  wiki.add_statement("switzerland", std::string_view("switzerland is a country ."));
  const auto base = wiki.export_ontology();
  auto anon = wiki.add_statement("country", std::string_view("a country borders switzerland ."));
  EXPECT_NE(wiki.export_ontology().find("_a2"), std::string::npos);
  wiki.remove_statement(anon.id);
  EXPECT_EQ(wiki.export_ontology(), base);

  wiki.add_statement("switzerland", std::string_view("switzerland is a sea ."));
  wiki.add_statement("sea", std::string_view("no sea is a country ."));  // conflicts
  const auto with_conflict = wiki.snapshot()->ontology;
  const long conflict_id = wiki.snapshot()->articles.at("sea").statements.back();
  ASSERT_EQ(wiki.snapshot()->statements.at(conflict_id).status, Status::Conflict);
  wiki.remove_statement(conflict_id);
  EXPECT_EQ(wiki.snapshot()->ontology, with_conflict);
  EXPECT_EQ(code_of([&] { wiki.remove_statement(conflict_id); }), "unknown-statement");
}

TEST(WikiTest, IdsAreNeverReused) {
  Wiki wiki;
  fill_lexicon(wiki);
  auto a = wiki.add_statement("sea", std::string_view("every sea is a sea ."));
  wiki.remove_statement(a.id);
  auto b = wiki.add_comment("sea", "seas are wet");
  EXPECT_GT(b.id, a.id);
  EXPECT_EQ(b.status, Status::Comment);
}

TEST(WikiTest, InputErrors) {
  Wiki wiki;
  fill_lexicon(wiki);
  EXPECT_EQ(code_of([&] { wiki.add_statement("nowhere", std::string_view("switzerland is a country .")); }),
            "unknown-article");
  EXPECT_EQ(code_of([&] { wiki.add_statement("country", std::string_view("is switzerland a country ?")); }),
            "not-declarative");
  EXPECT_EQ(code_of([&] { wiki.add_statement("country", std::string_view("every blorf .")); }), "unknown-word");
  try {
    wiki.add_statement("country", std::string_view("every country borders ."));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "syntax-error");
    ASSERT_TRUE(e.prediction());
    EXPECT_FALSE(e.prediction()->empty());
  }
  EXPECT_EQ(code_of([&] { wiki.add_comment("country", "two\tcolumns"); }), "malformed-comment");
  EXPECT_EQ(code_of([&] { wiki.add_comment("country", ""); }), "malformed-comment");
  EXPECT_EQ(wiki.snapshot()->next_id, 1);
}

TEST(WikiTest, Words) {
  Wiki wiki;
  fill_lexicon(wiki);
  EXPECT_TRUE(wiki.snapshot()->articles.count("landlocked-country"));
  wiki.add_word(WordEntry::noun("island", "island", "islands"));
  EXPECT_TRUE(wiki.snapshot()->articles.at("island").statements.empty());
  wiki.remove_word("island");
  EXPECT_FALSE(wiki.snapshot()->articles.count("island"));
  EXPECT_EQ(wiki.snapshot()->lexicon, testing::small_lexicon());

  wiki.add_statement("country", std::string_view("switzerland is a sea ."));
  EXPECT_EQ(code_of([&] { wiki.remove_word("sea"); }), "word-in-use");
  wiki.add_comment("austria", "a note");
  EXPECT_EQ(code_of([&] { wiki.remove_word("austria"); }), "article-not-empty");
  EXPECT_EQ(code_of([&] { wiki.remove_word("nothing"); }), "unknown-word");
  EXPECT_EQ(code_of([&] { wiki.add_word(WordEntry::noun("sea", "sea", "seas")); }), "duplicate-lemma");
}

TEST(WikiTest, ExportExamples) {
  Wiki wiki;
  EXPECT_EQ(wiki.export_ontology(), kNotice);
  fill_lexicon(wiki);
  wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
  wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
  EXPECT_EQ(wiki.export_ontology(),
            kNotice + "SubClassOf(landlocked-country ObjectComplementOf(ObjectSomeValuesFrom(borders sea)))\n");
  EXPECT_EQ(wiki.export_ontology(), wiki.export_ontology());
}

TEST(WikiTest, Views) {
  Wiki wiki;
  fill_lexicon(wiki);
  Views empty = wiki.snapshot_views();
  EXPECT_TRUE(empty.hierarchy.groups.empty());
  EXPECT_TRUE(empty.hierarchy_sentences.empty());

  wiki.add_statement("landlocked-country", std::string_view("every landlocked-country is a country ."));
  wiki.add_statement("switzerland", std::string_view("switzerland is a sea ."));
  Views v = wiki.snapshot_views();
  EXPECT_EQ(v.hierarchy_sentences, std::vector<std::string>{"every landlocked-country is a country ."});
  auto swiss = wiki.classes_of("switzerland");
  EXPECT_EQ(swiss.classes, std::vector<std::string>{"sea"});
  EXPECT_EQ(swiss.sentences, std::vector<std::string>{"switzerland is a sea ."});
  EXPECT_EQ(v.memberships.size(), 3u);
  EXPECT_EQ(code_of([&] { wiki.classes_of("country"); }), "unknown-word");
}

TEST(WikiTest, Ask) {
  Wiki wiki;
  fill_lexicon(wiki);
  EXPECT_EQ(wiki.ask(std::string_view("is switzerland a sea ?")).answer, Answer::Unknown);
  wiki.add_statement("switzerland", std::string_view("switzerland is a country ."));
  wiki.add_statement("austria", std::string_view("austria is a country ."));
  wiki.add_statement("austria", std::string_view("austria borders switzerland ."));
  wiki.add_statement("sea", std::string_view("no sea is a country ."));
  EXPECT_EQ(wiki.ask(std::string_view("is switzerland a country ?")).answer, Answer::Yes);
  EXPECT_EQ(wiki.ask(std::string_view("is switzerland a sea ?")).answer, Answer::No);

  auto wh = wiki.ask(std::string_view("which countries border switzerland ?"));
  EXPECT_EQ(wh.kind, AskResult::Kind::Individuals);
  EXPECT_EQ(wh.individuals, std::vector<std::string>{"austria"});
  EXPECT_EQ(wh.sentences, (std::vector<std::string>{"austria is a country .", "austria borders switzerland ."}));

  EXPECT_EQ(wiki.ask(std::string_view("which countries can border a sea ?")).kind, AskResult::Kind::Red);
  EXPECT_EQ(code_of([&] { wiki.ask(std::string_view("switzerland is a country .")); }), "not-a-question");
}

TEST(WikiTest, PersistenceRoundTrip) {
  testing::TempDir dir;
  {
    Wiki wiki(dir.path());
    fill_lexicon(wiki);
    wiki.add_statement("switzerland", std::string_view("switzerland is a landlocked-country ."));
    wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
    wiki.add_statement("country", std::string_view("a country can border a sea ."));
    wiki.add_statement("baltic-sea", std::string_view("baltic-sea is a sea ."));
    wiki.add_statement("switzerland", std::string_view("switzerland borders baltic-sea ."));
    wiki.add_comment("switzerland", "Switzerland lies in the Alps.");
    auto removed = wiki.add_statement("country", std::string_view("a country borders austria ."));
    wiki.remove_statement(removed.id);
  }
  const WikiState loaded = load_state(dir.path());
  Wiki reopened(dir.path());
  EXPECT_EQ(*reopened.snapshot(), loaded);
  EXPECT_EQ(loaded.next_id, 8);
  EXPECT_EQ(loaded.statements.size(), 6u);
  EXPECT_EQ(loaded.statements.at(5).status, Status::Conflict);
  EXPECT_EQ(read(dir.path() / "articles" / "switzerland.article"),
            "1\tok\tswitzerland is a landlocked-country .\n"
            "5\tconflict\tswitzerland borders baltic-sea .\n"
            "6\tcomment\tSwitzerland lies in the Alps.\n");

  testing::TempDir copy;
  save_state(loaded, copy.path());
  for (const auto& e : fs::recursive_directory_iterator(dir.path())) {
    if (!e.is_regular_file()) continue;
    EXPECT_EQ(read(e.path()), read(copy.path() / fs::relative(e.path(), dir.path()))) << e.path();
  }
  EXPECT_EQ(load_state(copy.path()), loaded);
}

TEST(WikiTest, LoadFailures) {
  auto write = [](const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
  };
  const std::string vocab = format_vocabulary(testing::small_lexicon());
  auto expect_failure = [&](const std::string& article, const std::string& lines) {
    testing::TempDir dir;
    write(dir.path() / "vocabulary.tsv", vocab);
    write(dir.path() / "articles" / (article + ".article"), lines);
    EXPECT_EQ(code_of([&] { load_state(dir.path()); }), "load-failure") << lines;
  };
  expect_failure("country", "1\tmaybe\tswitzerland is a country .\n");
  expect_failure("country", "1\tok\ta country can border a sea .\n");
  expect_failure("country", "1\tnonowl:modality\tswitzerland is a country .\n");
  expect_failure("country", "1\tok\tswitzerland  is a country .\n");
  expect_failure("country", "1\tok\tis switzerland a country ?\n");
  expect_failure("country", "1\tok\tswitzerland is a country .\n1\tok\tswitzerland is a sea .\n");
  expect_failure("blorf", "");
  expect_failure("switzerland",
                 "1\tok\tswitzerland is a landlocked-country .\n2\tok\tbaltic-sea is a sea .\n"
                 "3\tok\tswitzerland borders baltic-sea .\n4\tok\tevery landlocked-country borders no sea .\n");

  testing::TempDir empty;
  EXPECT_EQ(load_state(empty.path()), WikiState{});
}

// Random add/remove/reassert sequences keep the gate invariant and the
// status/ontology coherence.
TEST(WikiTest, GateInvariantUnderRandomEdits) {
  const Lexicon lex = testing::small_lexicon();
  std::vector<TokenSequence> sentences;
  for_each_sentence(lex, 6, {{0, 1, 2}, 1'000'000}, [&](const TokenSequence& s) {
    if (s.back().surface == ".") sentences.push_back(s);
  });
  Wiki wiki;
  fill_lexicon(wiki);
  std::mt19937 rng(42);
  for (int step = 0; step < 200; ++step) {
    const auto state = wiki.snapshot();
    const int op = std::uniform_int_distribution<int>(0, 9)(rng);
    if (op < 6 || state->statements.empty()) {
      const auto& s = sentences[std::uniform_int_distribution<std::size_t>(0, sentences.size() - 1)(rng)];
      wiki.add_statement("country", s);
    } else {
      auto it = state->statements.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, state->statements.size() - 1)(rng));
      if (op < 8) {
        wiki.remove_statement(it->first);
      } else if (it->second.status == Status::Conflict) {
        wiki.reassert_statement(it->first);
      }
    }
    const auto after = wiki.snapshot();
    ASSERT_TRUE(is_consistent(after->ontology)) << step;
    ASSERT_EQ(after->ontology, committed_ontology(*after)) << step;
  }
}

TEST(WikiTest, RemoveUndoesAdd) {
  Wiki wiki;
  fill_lexicon(wiki);
  wiki.add_statement("switzerland", std::string_view("switzerland is a country ."));
  const Ontology before = wiki.snapshot()->ontology;
  auto s = wiki.add_statement("sea", std::string_view("every sea borders at most 2 countries ."));
  ASSERT_EQ(s.status, Status::Blue);
  wiki.remove_statement(s.id);
  EXPECT_EQ(wiki.snapshot()->ontology, before);
}

TEST(WikiTest, ReadersSeeConsistentSnapshots) {
  Wiki wiki;
  fill_lexicon(wiki);
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      const auto s = wiki.snapshot();
      if (s->ontology != committed_ontology(*s)) ++bad;
    }
  });
  for (int k = 0; k < 30; ++k) {
    auto st = wiki.add_statement("country", std::string_view("switzerland is a country ."));
    if (k % 2) wiki.remove_statement(st.id);
  }
  done = true;
  reader.join();
  EXPECT_EQ(bad, 0);
}

}  // namespace
}  // namespace cnlwiki
