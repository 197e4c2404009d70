// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "../grammar_oracle.hpp"
#include "../random_ontology.hpp"
#include "../temp_dir.hpp"
#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"
#include "cnlwiki/reasoner.hpp"
#include "cnlwiki/translator.hpp"
#include "cnlwiki/wiki.hpp"

using namespace cnlwiki;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> axiom_lines(const Blue& b) {
  std::vector<std::string> out;
  for (const auto& a : b.axioms) out.push_back(to_functional(a));
  return out;
}

std::vector<std::string> blue_lines(const Lexicon& lex, std::string_view text) {
  const auto r = translate(parse(lex.tokenize(text)), 1);
  if (const auto* b = std::get_if<Blue>(&r)) return axiom_lines(*b);
  return {"<red>"};
}

void fill_lexicon(Wiki& wiki, const Lexicon& lex) {
  for (const auto& [lemma, entry] : lex.entries()) wiki.add_word(entry);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Relative path -> contents for every regular file below `dir`.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

// Certain answers by exhaustive search: `c(p)` is entailed when no model of
// the ontology plus the negated assertion exists up to `domain` elements.
OracleLimits wide_oracle(int domain) { return OracleLimits{domain, 2'000'000}; }

bool oracle_entails(const Ontology& o, const ClassExpr& c, const std::string& p, int domain) {
  return !oracle_find_model(o.with(Axiom::class_assertion(ClassExpr::negation(c), p)), domain, wide_oracle(domain));
}

// ---------------------------------------------------------------------------

Outcome prediction_exactness() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const Lexicon lex = testing::small_lexicon();
  const std::vector<int> numbers{1, 2, 3};
  const std::size_t max_len = 10;
  const auto universe = testing::token_universe(lex, numbers);
  const testing::DerivationOracle oracle(max_len);

  // Token-level sentence count implied by the oracle's terminal strings.
  std::map<std::uint16_t, std::size_t> fillers;
  for (const auto& t : universe) ++fillers[testing::terminal_of(t)];
  std::size_t expected_sentences = 0;
  for (const auto& [terminals, derivations] : oracle.sentences()) {
    std::size_t n = 1;
    for (auto t : terminals) n *= fillers[t];
    expected_sentences += n;
  }

  std::set<std::string> seen_prefixes;
  std::size_t sentences = 0;
  std::size_t mismatches = 0;
  for_each_sentence(lex, max_len, {numbers, 5'000'000}, [&](const TokenSequence& s) {
    ++sentences;
    ChartParser chart;
    for (std::size_t k = 0; k <= s.size(); ++k) {
      TokenSequence prefix(s.begin(), s.begin() + k);
      if (seen_prefixes.insert(detokenize(prefix)).second) {
        std::set<std::string> expected;
        auto terminals = testing::terminals_of(prefix);
        for (const auto& t : universe) {
          terminals.push_back(testing::terminal_of(t));
          if (oracle.viable(terminals)) expected.insert(t.surface);
          terminals.pop_back();
        }
        if (testing::expand_prediction(predict_next(prefix), universe) != expected) {
          ++mismatches;
          out.fail("prediction differs after \"" + detokenize(prefix) + "\"");
        }
      }
      if (k < s.size() && !chart.push(s[k])) out.fail("chart died on " + detokenize(s));
    }
    if (!chart.accepted() || chart.count_parses() != 1) out.fail("not exactly one parse: " + detokenize(s));
    if (oracle.derivations(testing::terminals_of(s)) != 1) out.fail("oracle ambiguity: " + detokenize(s));
  });
  out.expect(sentences == expected_sentences, "enumerated " + std::to_string(sentences) + " sentences, oracle implies " +
                                                  std::to_string(expected_sentences));
  const double t = seconds_since(start);
  out.expect(t < 120, "runtime above 2 minutes");
  out.detail = std::to_string(sentences) + " sentences, " + std::to_string(seen_prefixes.size()) + " prefixes, " +
               std::to_string(mismatches) + " mismatches, " + std::to_string(static_cast<int>(t)) + " s";
  return out;
}

Outcome sentence_pipeline() {
  Outcome out;
  const Lexicon lex = testing::small_lexicon();
  const std::string landlocked = "SubClassOf(landlocked-country ObjectComplementOf(ObjectSomeValuesFrom(borders sea)))";
  out.expect(blue_lines(lex, "every landlocked-country borders no sea .") == std::vector<std::string>{landlocked},
             "landlocked sentence translation");
  out.expect(blue_lines(lex, "every country borders at most 3 countries .") ==
                 std::vector<std::string>{"SubClassOf(country ObjectMaxCardinality(3 borders country))"},
             "at most 3 translation");
  out.expect(blue_lines(lex, "every country borders exactly 5 countries .") ==
                 std::vector<std::string>{"SubClassOf(country ObjectIntersectionOf(ObjectMinCardinality(5 borders "
                                          "country) ObjectMaxCardinality(5 borders country)))"},
             "exactly 5 translation");

  Wiki wiki;
  fill_lexicon(wiki, lex);
  const auto s = wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
  out.expect(s.status == Status::Blue, "landlocked sentence not committed");
  const std::string exported = wiki.export_ontology();
  const std::string expected =
      "# cnlwiki ontology export\n"
      "# Unique name assumption: distinct individual names denote distinct individuals.\n" +
      landlocked + "\n";
  out.expect(exported == expected, "export is not bit-exact");
  out.detail = "3 translations, 1 export";
  return out;
}

// Checks (a) "oracle model => tableau consistent" and (b) "tableau
// inconsistent => no oracle model" are contrapositives and share a counter.
Outcome reasoner_agreement() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  testing::RandomOntology gen(1000);
  const int cases = 2000;
  int inconsistent = 0, witnesses = 0, disagreements = 0, bad_witnesses = 0;
  for (int k = 0; k < cases; ++k) {
    // Half the cases use the full six axioms, where inconsistency is common.
    const Ontology o = k % 2 ? gen.next(6) : gen.next();
    const auto verdict = check_consistency(o);
    const auto model = oracle_find_model(o, 4);
    if (model && !check_model(*model, o)) out.fail("oracle model fails check_model, case " + std::to_string(k));
    if (model && !verdict.consistent) {
      ++disagreements;
      out.fail("oracle model but tableau inconsistent, case " + std::to_string(k));
    }
    if (verdict.witness) {
      ++witnesses;
      if (!check_model(*verdict.witness, o)) {
        ++bad_witnesses;
        out.fail("witness fails check_model, case " + std::to_string(k));
      }
    }
    inconsistent += !verdict.consistent;
  }
  const double t = seconds_since(start);
  out.expect(inconsistent >= 50, "too few inconsistent cases to exercise (b)");
  out.expect(t < 600, "runtime above 10 minutes");
  out.detail = std::to_string(cases) + " ontologies (" + std::to_string(inconsistent) + " inconsistent, " +
               std::to_string(witnesses) + " witnesses), violations a/b " + std::to_string(disagreements) + ", c " +
               std::to_string(bad_witnesses) + ", " + std::to_string(static_cast<int>(t)) + " s";
  return out;
}

Outcome gate_fuzz() {
  Outcome out;
  const Lexicon lex = testing::small_lexicon();
  std::vector<TokenSequence> sentences;
  for_each_sentence(lex, 7, {{0, 1, 2}, 2'000'000}, [&](const TokenSequence& s) {
    if (s.back().surface == ".") sentences.push_back(s);
  });
  Wiki wiki;
  fill_lexicon(wiki, lex);
  std::mt19937 rng(500);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  int adds = 0, removes = 0, reasserts = 0, spot_checks = 0, conflicts = 0;
  for (int step = 1; step <= 500; ++step) {
    const auto state = wiki.snapshot();
    const int op = static_cast<int>(pick(10));
    if (op < 5 || state->statements.empty()) {
      const auto s = wiki.add_statement("country", sentences[pick(sentences.size())]);
      ++adds;
      conflicts += s.status == Status::Conflict;
    } else {
      auto it = state->statements.begin();
      std::advance(it, pick(state->statements.size()));
      if (op < 8) {
        wiki.remove_statement(it->first);
        ++removes;
      } else {
        // Reassert the first conflict if there is one.
        for (const auto& [id, s] : state->statements) {
          if (s.status == Status::Conflict) {
            wiki.reassert_statement(id);
            ++reasserts;
            break;
          }
        }
      }
    }
    const auto after = wiki.snapshot();
    if (!is_consistent(after->ontology)) out.fail("is_consistent false after step " + std::to_string(step));
    if (after->ontology != committed_ontology(*after)) out.fail("ontology out of sync at step " + std::to_string(step));
    if (step % 50 == 0) {
      ++spot_checks;
      const int named = static_cast<int>(after->ontology.signature().individuals.size());
      const int domain = std::max(named + 2, 4);
      const auto model = oracle_find_model(after->ontology, domain, wide_oracle(domain));
      if (!model || !check_model(*model, after->ontology)) {
        out.fail("oracle found no model at step " + std::to_string(step) + " (domain " + std::to_string(domain) + ")");
      }
    }
  }
  out.detail = std::to_string(adds) + " adds (" + std::to_string(conflicts) + " conflicts), " +
               std::to_string(removes) + " removes, " + std::to_string(reasserts) + " reasserts, " +
               std::to_string(spot_checks) + " oracle spot checks";
  return out;
}

Outcome contradiction_scenario() {
  Outcome out;
  Wiki wiki;
  fill_lexicon(wiki, testing::small_lexicon());
  const auto a = wiki.add_statement("switzerland", std::string_view("switzerland is a landlocked-country ."));
  const auto b = wiki.add_statement("baltic-sea", std::string_view("baltic-sea is a sea ."));
  const auto c = wiki.add_statement("switzerland", std::string_view("switzerland borders baltic-sea ."));
  out.expect(a.status == Status::Blue && b.status == Status::Blue && c.status == Status::Blue, "facts not committed");
  const auto d = wiki.add_statement("landlocked-country", std::string_view("every landlocked-country borders no sea ."));
  out.expect(d.status == Status::Conflict, "universal sentence not red-conflict");
  out.expect(status_code(d) == "conflict", "status code of the universal");
  out.expect(wiki.snapshot()->ontology.size() == 3, "conflict leaked into the ontology");

  const auto early = wiki.reassert_statement(d.id);
  out.expect(early.status == Status::Conflict, "reassert before the change did not stay red");
  wiki.remove_statement(c.id);
  const auto again = wiki.reassert_statement(d.id);
  out.expect(again.status == Status::Blue, "reassert after removal did not commit");
  out.expect(again.id == d.id, "reassert changed the statement id");
  out.expect(is_consistent(wiki.snapshot()->ontology), "ontology inconsistent after reassert");
  out.detail = "statement " + std::to_string(d.id) + ": conflict -> ok";
  return out;
}

Outcome inference_views() {
  Outcome out;
  Lexicon lex;
  lex.add_word(WordEntry::noun("alpha", "alpha", "alphas"));
  lex.add_word(WordEntry::noun("beta", "beta", "betas"));
  lex.add_word(WordEntry::noun("gamma", "gamma", "gammas"));
  lex.add_word(WordEntry::proper_name("anna", "anna"));
  Wiki wiki;
  fill_lexicon(wiki, lex);
  wiki.add_statement("alpha", std::string_view("every alpha is a beta ."));
  wiki.add_statement("beta", std::string_view("every beta is a gamma ."));
  wiki.add_statement("anna", std::string_view("anna is an alpha ."));

  const Views v = wiki.snapshot_views();
  const std::set<std::string> sentences(v.hierarchy_sentences.begin(), v.hierarchy_sentences.end());
  out.expect(sentences.count("every alpha is a beta ."), "missing alpha-beta edge");
  out.expect(sentences.count("every beta is a gamma ."), "missing beta-gamma edge");
  out.expect(!sentences.count("every alpha is a gamma ."), "transitive edge not suppressed");
  out.expect(v.hierarchy.edges.size() == 2, "expected exactly two direct edges");

  const auto anna = wiki.classes_of("anna");
  const std::set<std::string> classes(anna.classes.begin(), anna.classes.end());
  out.expect(classes == std::set<std::string>{"alpha", "beta", "gamma"}, "memberships of anna");
  const std::set<std::string> member_sentences(anna.sentences.begin(), anna.sentences.end());
  out.expect(member_sentences.count("anna is a gamma ."), "membership sentence for gamma");
  out.detail = std::to_string(v.hierarchy_sentences.size()) + " hierarchy sentences, anna in " +
               std::to_string(anna.classes.size()) + " classes";
  return out;
}

Outcome question_answering() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const Wiki wiki(fs::path(CNLWIKI_DATA_DIR) / "geography");
  const auto state = wiki.snapshot();
  const Ontology& o = state->ontology;
  std::vector<std::string> names;
  for (const auto& [lemma, entry] : state->lexicon.entries()) {
    if (entry.word_class == WordClass::ProperName) names.push_back(lemma);
  }
  const int domain = static_cast<int>(o.signature().individuals.size()) + 2;

  const std::vector<std::string> wh{
      "which countries border switzerland ?",
      "which landlocked-countries border switzerland ?",
      "which coastal-countries border switzerland ?",
      "which countries border a sea ?",
      "which countries border no sea ?",
      "which countries are landlocked-countries ?",
      "which countries border a water-body ?",
      "which countries border exactly 2 countries ?",
      "which countries border at least 2 countries ?",
      "which countries do not border italy ?",
      "which coastal-countries border mediterranean-sea ?",
      "which countries are not coastal-countries ?",
  };
  const std::vector<std::string> yn{
      "is switzerland a landlocked-country ?", "is switzerland a coastal-country ?", "is germany a coastal-country ?",
      "is france a coastal-country ?",         "is germany a landlocked-country ?", "is baltic-sea a water-body ?",
      "is baltic-sea a country ?",             "is austria a sea ?",                "is liechtenstein a country ?",
      "is germany a water-body ?",             "is france a landlocked-country ?",  "is north-sea a coastal-country ?",
  };

  int queries = 0;
  for (const auto& q : wh) {
    ++queries;
    const AskResult r = wiki.ask(std::string_view(q));
    const auto tr = translate_question(parse(state->lexicon.tokenize(q)));
    const auto* rq = std::get_if<RetrievalQuery>(&tr);
    if (r.kind != AskResult::Kind::Individuals || !rq) {
      out.fail("not a retrieval: " + q);
      continue;
    }
    std::vector<std::string> expected;
    for (const auto& p : names) {
      if (oracle_entails(o, rq->query, p, domain)) expected.push_back(p);
    }
    const std::set<std::string> got(r.individuals.begin(), r.individuals.end());
    if (got != std::set<std::string>(expected.begin(), expected.end())) out.fail("answers differ: " + q);
  }
  for (const auto& q : yn) {
    ++queries;
    const AskResult r = wiki.ask(std::string_view(q));
    const auto tr = translate_question(parse(state->lexicon.tokenize(q)));
    const auto* eq = std::get_if<EntailmentQuery>(&tr);
    if (r.kind != AskResult::Kind::Verdict || !eq) {
      out.fail("not an entailment query: " + q);
      continue;
    }
    Answer expected = Answer::Unknown;
    if (oracle_entails(o, eq->cls, eq->individual, domain)) {
      expected = Answer::Yes;
    } else if (oracle_entails(o, ClassExpr::negation(eq->cls), eq->individual, domain)) {
      expected = Answer::No;
    }
    if (r.answer != expected) {
      out.fail("verdict differs: " + q + " got " + std::string(to_string(r.answer)) + ", oracle " +
               std::string(to_string(expected)));
    }
  }
  out.expect(queries >= 20, "fewer than 20 queries");
  out.detail = std::to_string(queries) + " queries, oracle domain " + std::to_string(domain) + ", " +
               std::to_string(static_cast<int>(seconds_since(start))) + " s";
  return out;
}

Outcome persistence_round_trip() {
  Outcome out;
  testing::TempDir work;
  const fs::path dir = work.path() / "wiki";
  fs::copy(fs::path(CNLWIKI_DATA_DIR) / "geography", dir, fs::copy_options::recursive);

  std::string first_export;
  {
    Wiki wiki(dir);
    wiki.add_statement("austria", std::string_view("austria borders germany ."));
    wiki.add_comment("france", "France is in western Europe.");
    const auto extra = wiki.add_statement("italy", std::string_view("italy borders france ."));
    wiki.remove_statement(extra.id);
    first_export = wiki.export_ontology();
    out.expect(wiki.export_ontology() == first_export, "repeated export differs");
  }
  const auto files = tree(dir);
  const WikiState loaded = load_state(dir);
  out.expect(export_text(loaded) == first_export, "export differs after reload");

  const fs::path copy = work.path() / "copy";
  save_state(loaded, copy);
  out.expect(tree(copy) == files, "save(load(dir)) is not byte-identical");
  out.expect(load_state(copy) == loaded, "load(save(state)) differs");

  const Wiki reopened(copy);
  out.expect(reopened.export_ontology() == first_export, "export differs after second reload");
  out.expect(reopened.export_ontology() == reopened.export_ontology(), "repeated export differs after reload");
  out.detail = std::to_string(files.size()) + " files, " + std::to_string(first_export.size()) + " export bytes";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"prediction exactness", prediction_exactness},
      {"landlocked and number-restriction sentences", sentence_pipeline},
      {"reasoner/oracle agreement", reasoner_agreement},
      {"gate invariant under fuzzing", gate_fuzz},
      {"contradiction and reassert", contradiction_scenario},
      {"inference views", inference_views},
      {"question answering", question_answering},
      {"persistence and export round trips", persistence_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o.fail(std::string("error ") + e.code() + ": " + e.what());
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
