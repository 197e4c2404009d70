#include "cnlwiki/grammar.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "cnlwiki/overloaded.hpp"

namespace cnlwiki {

Symbol Symbol::word(std::string_view w) {
  const auto& words = function_words();
  auto it = std::find(words.begin(), words.end(), w);
  if (it == words.end()) throw std::logic_error("not a function word: " + std::string(w));
  return {Kind::Word, static_cast<std::uint8_t>(it - words.begin())};
}

namespace {

using NT = Nonterminal;
using TC = TerminalClass;
using Tag = ProductionTag;

Symbol n(NT x) { return Symbol::nt(x); }
Symbol w(std::string_view x) { return Symbol::word(x); }
Symbol c(TC x) { return Symbol::cls(x); }

std::vector<Production> build_productions() {
  std::vector<Production> p;
  auto rule = [&p](NT lhs, std::vector<Symbol> rhs, Tag tag) {
    p.push_back(Production{lhs, std::move(rhs), tag});
  };

  rule(NT::Sentence, {n(NT::Declarative)}, Tag::Pass);
  rule(NT::Sentence, {n(NT::Question)}, Tag::Pass);
  rule(NT::Declarative, {n(NT::Subject), n(NT::VerbPhraseSg), w(".")}, Tag::Declarative);

  rule(NT::Subject, {w("every"), n(NT::NounPhraseSg)}, Tag::SubjectEvery);
  rule(NT::Subject, {w("no"), n(NT::NounPhraseSg)}, Tag::SubjectNo);
  rule(NT::Subject, {n(NT::Article), n(NT::NounPhraseSg)}, Tag::SubjectSome);
  rule(NT::Subject, {c(TC::ProperName)}, Tag::SubjectName);

  rule(NT::NounPhraseSg, {c(TC::NounSingular)}, Tag::Noun);
  rule(NT::NounPhraseSg, {c(TC::NounSingular), w("that"), n(NT::VerbPhraseSg)}, Tag::NounRelative);
  rule(NT::NounPhrasePl, {c(TC::NounPlural)}, Tag::Noun);
  rule(NT::NounPhrasePl, {c(TC::NounPlural), w("that"), n(NT::VerbPhrasePl)}, Tag::NounRelative);

  rule(NT::VerbPhraseSg, {w("is"), n(NT::Article), n(NT::NounPhraseSg)}, Tag::IsA);
  rule(NT::VerbPhraseSg, {w("is"), w("not"), n(NT::Article), n(NT::NounPhraseSg)}, Tag::IsNotA);
  rule(NT::VerbPhraseSg, {c(TC::VerbThirdSingular), n(NT::Object)}, Tag::Verb);
  rule(NT::VerbPhraseSg, {w("does"), w("not"), c(TC::VerbPlural), n(NT::Object)}, Tag::NegatedVerb);
  rule(NT::VerbPhraseSg, {w("is"), c(TC::VerbPastParticiple), w("by"), c(TC::ProperName)}, Tag::Passive);
  rule(NT::VerbPhraseSg, {n(NT::Modal), c(TC::VerbPlural), n(NT::Object)}, Tag::ModalVerb);

  rule(NT::VerbPhrasePl, {w("are"), n(NT::NounPhrasePl)}, Tag::IsA);
  rule(NT::VerbPhrasePl, {w("are"), w("not"), n(NT::NounPhrasePl)}, Tag::IsNotA);
  rule(NT::VerbPhrasePl, {c(TC::VerbPlural), n(NT::Object)}, Tag::Verb);
  rule(NT::VerbPhrasePl, {w("do"), w("not"), c(TC::VerbPlural), n(NT::Object)}, Tag::NegatedVerb);
  rule(NT::VerbPhrasePl, {w("are"), c(TC::VerbPastParticiple), w("by"), c(TC::ProperName)}, Tag::Passive);
  rule(NT::VerbPhrasePl, {n(NT::Modal), c(TC::VerbPlural), n(NT::Object)}, Tag::ModalVerb);

  rule(NT::Article, {w("a")}, Tag::Article);
  rule(NT::Article, {w("an")}, Tag::Article);
  rule(NT::Modal, {w("can")}, Tag::ModalCan);
  rule(NT::Modal, {w("must")}, Tag::ModalMust);

  rule(NT::Object, {n(NT::Article), n(NT::NounPhraseSg)}, Tag::ObjectExists);
  rule(NT::Object, {w("no"), n(NT::NounPhraseSg)}, Tag::ObjectNone);
  rule(NT::Object, {c(TC::ProperName)}, Tag::ObjectName);
  rule(NT::Object, {w("at"), w("most"), n(NT::CountAny)}, Tag::ObjectAtMost);
  rule(NT::Object, {w("at"), w("least"), n(NT::CountAny)}, Tag::ObjectAtLeast);
  rule(NT::Object, {w("exactly"), n(NT::CountAny)}, Tag::ObjectExactly);
  rule(NT::Object, {w("more"), w("than"), n(NT::CountAny)}, Tag::ObjectMoreThan);
  rule(NT::Object, {w("less"), w("than"), n(NT::CountPositive)}, Tag::ObjectLessThan);

  rule(NT::CountAny, {c(TC::NumberZero), n(NT::NounPhrasePl)}, Tag::Count);
  rule(NT::CountAny, {c(TC::NumberOne), n(NT::NounPhraseSg)}, Tag::Count);
  rule(NT::CountAny, {c(TC::NumberMany), n(NT::NounPhrasePl)}, Tag::Count);
  rule(NT::CountPositive, {c(TC::NumberOne), n(NT::NounPhraseSg)}, Tag::Count);
  rule(NT::CountPositive, {c(TC::NumberMany), n(NT::NounPhrasePl)}, Tag::Count);

  rule(NT::Question, {w("which"), n(NT::NounPhrasePl), n(NT::VerbPhrasePl), w("?")}, Tag::WhQuestion);
  rule(NT::Question, {w("is"), c(TC::ProperName), n(NT::Article), n(NT::NounPhraseSg), w("?")},
       Tag::YnQuestion);
  return p;
}

}  // namespace

Grammar::Grammar()
    : productions_(build_productions()),
      by_lhs_(kNonterminalCount),
      min_length_(kNonterminalCount, INT_MAX) {
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    by_lhs_[static_cast<int>(productions_[i].lhs)].push_back(static_cast<int>(i));
  }
  // Fixpoint over shortest derivations.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& prod : productions_) {
      long total = 0;
      for (const auto& s : prod.rhs) {
        total += s.is_terminal() ? 1 : min_length_[s.id];
        if (total >= INT_MAX) break;
      }
      int& current = min_length_[static_cast<int>(prod.lhs)];
      if (total < current) {
        current = static_cast<int>(total);
        changed = true;
      }
    }
  }
}

const Grammar& Grammar::instance() {
  static const Grammar grammar;
  return grammar;
}

bool Grammar::is_reduced() const {
  std::vector<bool> reachable(kNonterminalCount, false);
  std::vector<int> stack{static_cast<int>(start())};
  reachable[stack.back()] = true;
  while (!stack.empty()) {
    int current = stack.back();
    stack.pop_back();
    for (int pi : by_lhs_[current]) {
      for (const auto& s : productions_[pi].rhs) {
        if (!s.is_terminal() && !reachable[s.id]) {
          reachable[s.id] = true;
          stack.push_back(s.id);
        }
      }
    }
  }
  for (int i = 0; i < kNonterminalCount; ++i) {
    if (!reachable[i] || min_length_[i] == INT_MAX) return false;
  }
  return true;
}

bool matches(const Symbol& terminal, const Token& token) {
  switch (terminal.kind) {
    case Symbol::Kind::Nonterminal:
      return false;
    case Symbol::Kind::Word: {
      const auto* fw = std::get_if<FunctionWord>(&token.kind);
      return fw && fw->word == function_words()[terminal.id];
    }
    case Symbol::Kind::Class:
      return std::visit(
          Overloaded{
              [](const FunctionWord&) { return false; },
              [&](const NumberWord& nw) {
                switch (terminal.terminal_class()) {
                  case TC::NumberZero: return nw.value == 0;
                  case TC::NumberOne: return nw.value == 1;
                  case TC::NumberMany: return nw.value >= 2;
                  default: return false;
                }
              },
              [&](const LexicalWord& lw) {
                switch (terminal.terminal_class()) {
                  case TC::NounSingular: return lw.form == FormKey::Singular;
                  case TC::NounPlural: return lw.form == FormKey::Plural;
                  case TC::ProperName: return lw.form == FormKey::Name;
                  case TC::VerbThirdSingular: return lw.form == FormKey::ThirdSingular;
                  case TC::VerbPlural: return lw.form == FormKey::VerbPlural;
                  case TC::VerbPastParticiple: return lw.form == FormKey::PastParticiple;
                  default: return false;
                }
              },
          },
          token.kind);
  }
  return false;
}

std::string debug_string(const Symbol& s) {
  static const char* const nonterminals[] = {
      "Sentence", "Declarative", "Question", "Subject", "CNsg", "CNpl", "VP3sg",
      "VPpl",     "Article",     "Modal",    "Object",  "CountAny", "CountPositive"};
  static const char* const classes[] = {"NOUN-SG", "NOUN-PL", "PN",  "TV-3SG", "TV-PL",
                                        "TV-PP",   "NUM0",    "NUM1", "NUM2+"};
  switch (s.kind) {
    case Symbol::Kind::Nonterminal: return nonterminals[s.id];
    case Symbol::Kind::Word: return "\"" + function_words()[s.id] + "\"";
    case Symbol::Kind::Class: return classes[s.id];
  }
  return "?";
}

}  // namespace cnlwiki
