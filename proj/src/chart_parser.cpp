#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"

namespace cnlwiki {

ChartParser::ChartParser(const Grammar& grammar) : grammar_(&grammar), sets_(1) {
  for (int p : grammar_->productions_of(grammar_->start())) {
    add(sets_[0], Item{static_cast<std::uint16_t>(p), 0, 0});
  }
  close(0);
}

void ChartParser::add(ItemSet& set, Item item) const {
  if (std::find(set.begin(), set.end(), item) == set.end()) set.push_back(item);
}

void ChartParser::close(std::size_t index) {
  const auto& prods = grammar_->productions();
  // `set` may grow while we walk it; index rather than iterate.
  for (std::size_t k = 0; k < sets_[index].size(); ++k) {
    Item item = sets_[index][k];
    const Production& prod = prods[item.production];
    if (item.dot < prod.rhs.size()) {
      const Symbol& next = prod.rhs[item.dot];
      if (next.is_terminal()) continue;
      for (int p : grammar_->productions_of(next.nonterminal())) {
        add(sets_[index], Item{static_cast<std::uint16_t>(p), 0, static_cast<std::uint16_t>(index)});
      }
    } else {
      const ItemSet& origin = sets_[item.origin];
      for (const Item& waiting : origin) {
        const Production& wp = prods[waiting.production];
        if (waiting.dot < wp.rhs.size() && !wp.rhs[waiting.dot].is_terminal() &&
            wp.rhs[waiting.dot].nonterminal() == prod.lhs) {
          add(sets_[index], Item{waiting.production, static_cast<std::uint8_t>(waiting.dot + 1),
                                 waiting.origin});
        }
      }
    }
  }
}

bool ChartParser::push(const Token& token) {
  ItemSet next;
  const auto& prods = grammar_->productions();
  for (const Item& item : sets_.back()) {
    const Production& prod = prods[item.production];
    if (item.dot < prod.rhs.size() && prod.rhs[item.dot].is_terminal() &&
        matches(prod.rhs[item.dot], token)) {
      add(next, Item{item.production, static_cast<std::uint8_t>(item.dot + 1), item.origin});
    }
  }
  tokens_.push_back(token);
  sets_.push_back(std::move(next));
  close(sets_.size() - 1);
  return !dead();
}

bool ChartParser::accepted() const {
  const auto& prods = grammar_->productions();
  return std::any_of(sets_.back().begin(), sets_.back().end(), [&](const Item& item) {
    const Production& prod = prods[item.production];
    return item.origin == 0 && prod.lhs == grammar_->start() && item.dot == prod.rhs.size();
  });
}

Prediction ChartParser::prediction() const {
  Prediction out;
  bool zero = false, one = false, many = false;
  const auto& prods = grammar_->productions();
  for (const Item& item : sets_.back()) {
    const Production& prod = prods[item.production];
    if (item.dot >= prod.rhs.size()) continue;
    const Symbol& next = prod.rhs[item.dot];
    switch (next.kind) {
      case Symbol::Kind::Nonterminal:
        break;
      case Symbol::Kind::Word:
        out.function_words.insert(function_words()[next.id]);
        break;
      case Symbol::Kind::Class:
        switch (next.terminal_class()) {
          case TerminalClass::NounSingular: out.categories.insert(Category::NounSingular); break;
          case TerminalClass::NounPlural: out.categories.insert(Category::NounPlural); break;
          case TerminalClass::ProperName: out.categories.insert(Category::ProperName); break;
          case TerminalClass::VerbThirdSingular: out.categories.insert(Category::VerbThirdSingular); break;
          case TerminalClass::VerbPlural: out.categories.insert(Category::VerbPlural); break;
          case TerminalClass::VerbPastParticiple: out.categories.insert(Category::VerbPastParticiple); break;
          case TerminalClass::NumberZero: zero = true; break;
          case TerminalClass::NumberOne: one = true; break;
          case TerminalClass::NumberMany: many = true; break;
        }
        break;
    }
  }
  if (zero || one || many) {
    out.categories.insert(Category::Number);
    out.number_min = zero ? 0 : one ? 1 : 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivation counting and tree extraction over the completed chart.

struct ParseNode {
  int production;
  // Token index for terminals, node for nonterminals.
  std::vector<std::variant<std::size_t, ParseNode>> children;
};

class ParseForest {
 public:
  ParseForest(const ChartParser& chart, std::uint64_t cap) : chart_(chart), cap_(cap) {
    const auto& prods = chart_.grammar_->productions();
    completed_.resize(chart_.sets_.size());
    for (std::size_t j = 0; j < chart_.sets_.size(); ++j) {
      for (const auto& item : chart_.sets_[j]) {
        const Production& prod = prods[item.production];
        if (item.dot == prod.rhs.size()) {
          completed_[j][key(prod.lhs, item.origin)].push_back(item.production);
        }
      }
    }
  }

  std::uint64_t count_symbol(const Symbol& s, std::size_t i, std::size_t j) {
    if (s.is_terminal()) return (j == i + 1 && matches(s, chart_.tokens_[i])) ? 1 : 0;
    std::uint64_t total = 0;
    for (int p : completing(s.nonterminal(), i, j)) total = add(total, count_prefix(p, rhs_size(p), i, j));
    return total;
  }

  std::uint64_t count_prefix(int prod, std::size_t k, std::size_t i, std::size_t j) {
    if (k == 0) return i == j ? 1 : 0;
    if (j <= i) return 0;  // every symbol spans at least one token
    std::uint64_t memo_key = (static_cast<std::uint64_t>(prod) << 48) |
                             (static_cast<std::uint64_t>(k) << 40) |
                             (static_cast<std::uint64_t>(i) << 20) | j;
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    const Symbol& last = chart_.grammar_->productions()[prod].rhs[k - 1];
    std::uint64_t total = 0;
    for (std::size_t m = i + k - 1; m < j; ++m) {
      std::uint64_t left = count_prefix(prod, k - 1, i, m);
      if (left == 0) continue;
      std::uint64_t right = count_symbol(last, m, j);
      if (right == 0) continue;
      total = add(total, mul(left, right));
    }
    memo_.emplace(memo_key, total);
    return total;
  }

  ParseNode build(int prod, std::size_t i, std::size_t j) {
    const auto& rhs = chart_.grammar_->productions()[prod].rhs;
    ParseNode node{prod, {}};
    node.children.resize(rhs.size(), std::size_t{0});
    std::size_t end = j;
    for (std::size_t k = rhs.size(); k > 0; --k) {
      const Symbol& s = rhs[k - 1];
      bool found = false;
      for (std::size_t m = i + k - 1; m < end && !found; ++m) {
        if (count_prefix(prod, k - 1, i, m) == 0 || count_symbol(s, m, end) == 0) continue;
        if (s.is_terminal()) {
          node.children[k - 1] = m;
        } else {
          for (int p : completing(s.nonterminal(), m, end)) {
            if (count_prefix(p, rhs_size(p), m, end) > 0) {
              node.children[k - 1] = build(p, m, end);
              break;
            }
          }
        }
        end = m;
        found = true;
      }
      if (!found) throw std::logic_error("parse forest is inconsistent");
    }
    return node;
  }

  const std::vector<int>& completing(Nonterminal nt, std::size_t origin, std::size_t j) const {
    static const std::vector<int> none;
    auto it = completed_[j].find(key(nt, origin));
    return it == completed_[j].end() ? none : it->second;
  }

 private:
  static std::uint32_t key(Nonterminal nt, std::size_t origin) {
    return (static_cast<std::uint32_t>(nt) << 16) | static_cast<std::uint32_t>(origin);
  }
  std::size_t rhs_size(int prod) const { return chart_.grammar_->productions()[prod].rhs.size(); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return std::min(cap_, a + b); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a != 0 && b > cap_ / a) return cap_;
    return std::min(cap_, a * b);
  }

  const ChartParser& chart_;
  std::uint64_t cap_;
  std::vector<std::unordered_map<std::uint32_t, std::vector<int>>> completed_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

std::uint64_t ChartParser::count_parses(std::uint64_t cap) const {
  ParseForest forest(*this, cap);
  return forest.count_symbol(Symbol::nt(grammar_->start()), 0, tokens_.size());
}

// ---------------------------------------------------------------------------
// AST construction

namespace {

class AstBuilder {
 public:
  AstBuilder(const Grammar& grammar, const TokenSequence& tokens) : grammar_(grammar), tokens_(tokens) {}

  SentenceAst sentence(const ParseNode& node) {
    const ParseNode& inner = child(node, 0);  // Sentence -> Declarative | Question
    switch (tag(inner)) {
      case ProductionTag::Declarative:
        return Declarative{subject(child(inner, 0)), vp(child(inner, 1))};
      case ProductionTag::WhQuestion:
        return WhQuestion{class_term(child(inner, 1)), vp(child(inner, 2))};
      case ProductionTag::YnQuestion:
        return YnQuestion{lemma(inner, 1), class_term(child(inner, 3))};
      default:
        throw std::logic_error("unexpected sentence production");
    }
  }

 private:
  ProductionTag tag(const ParseNode& node) const { return grammar_.productions()[node.production].tag; }

  static const ParseNode& child(const ParseNode& node, std::size_t k) {
    return std::get<ParseNode>(node.children[k]);
  }
  const Token& token(const ParseNode& node, std::size_t k) const {
    return tokens_[std::get<std::size_t>(node.children[k])];
  }
  std::string lemma(const ParseNode& node, std::size_t k) const {
    return std::get<LexicalWord>(token(node, k).kind).lemma;
  }

  std::variant<QuantifiedSubject, IndividualSubject> subject(const ParseNode& node) {
    switch (tag(node)) {
      case ProductionTag::SubjectEvery: return QuantifiedSubject{Quantifier::Every, class_term(child(node, 1))};
      case ProductionTag::SubjectNo: return QuantifiedSubject{Quantifier::No, class_term(child(node, 1))};
      case ProductionTag::SubjectSome: return QuantifiedSubject{Quantifier::Some, class_term(child(node, 1))};
      case ProductionTag::SubjectName: return IndividualSubject{lemma(node, 0)};
      default: throw std::logic_error("unexpected subject production");
    }
  }

  ClassTerm class_term(const ParseNode& node) {
    ClassTerm term{lemma(node, 0), std::nullopt};
    if (tag(node) == ProductionTag::NounRelative) term.relative = Box<VpAst>(vp(child(node, 2)));
    return term;
  }

  // The class term of "is a X" / "are X" sits after the article when present.
  ClassTerm predicate_term(const ParseNode& node, std::size_t from) {
    for (std::size_t k = from; k < node.children.size(); ++k) {
      if (const auto* sub = std::get_if<ParseNode>(&node.children[k])) {
        const Nonterminal lhs = grammar_.productions()[sub->production].lhs;
        if (lhs == Nonterminal::NounPhraseSg || lhs == Nonterminal::NounPhrasePl) return class_term(*sub);
      }
    }
    throw std::logic_error("missing class term");
  }

  VpAst vp(const ParseNode& node) {
    switch (tag(node)) {
      case ProductionTag::IsA: return VpAst{IsAVp{false, predicate_term(node, 1)}};
      case ProductionTag::IsNotA: return VpAst{IsAVp{true, predicate_term(node, 2)}};
      case ProductionTag::Verb: return VpAst{VerbVp{false, lemma(node, 0), object(child(node, 1))}};
      case ProductionTag::NegatedVerb: return VpAst{VerbVp{true, lemma(node, 2), object(child(node, 3))}};
      case ProductionTag::Passive: return VpAst{PassiveVp{lemma(node, 1), lemma(node, 3)}};
      case ProductionTag::ModalVerb: {
        Modality m = tag(child(node, 0)) == ProductionTag::ModalCan ? Modality::Can : Modality::Must;
        return VpAst{ModalVp{m, lemma(node, 1), object(child(node, 2))}};
      }
      default: throw std::logic_error("unexpected verb phrase production");
    }
  }

  CountObject count(CountKind kind, const ParseNode& node) {
    int n = std::get<NumberWord>(token(node, 0).kind).value;
    return CountObject{kind, n, class_term(child(node, 1))};
  }

  ObjectAst object(const ParseNode& node) {
    switch (tag(node)) {
      case ProductionTag::ObjectExists: return ExistsObject{class_term(child(node, 1))};
      case ProductionTag::ObjectNone: return NoneObject{class_term(child(node, 1))};
      case ProductionTag::ObjectName: return IndividualObject{lemma(node, 0)};
      case ProductionTag::ObjectAtMost: return count(CountKind::AtMost, child(node, 2));
      case ProductionTag::ObjectAtLeast: return count(CountKind::AtLeast, child(node, 2));
      case ProductionTag::ObjectExactly: return count(CountKind::Exactly, child(node, 1));
      case ProductionTag::ObjectMoreThan: return count(CountKind::MoreThan, child(node, 2));
      case ProductionTag::ObjectLessThan: return count(CountKind::LessThan, child(node, 2));
      default: throw std::logic_error("unexpected object production");
    }
  }

  const Grammar& grammar_;
  const TokenSequence& tokens_;
};

}  // namespace

SentenceAst ChartParser::build_ast() const {
  if (!accepted()) throw std::logic_error("build_ast on a rejected input");
  ParseForest forest(*this, 2);
  const std::size_t n = tokens_.size();
  for (int p : forest.completing(grammar_->start(), 0, n)) {
    if (forest.count_prefix(p, grammar_->productions()[p].rhs.size(), 0, n) > 0) {
      return AstBuilder(*grammar_, tokens_).sentence(forest.build(p, 0, n));
    }
  }
  throw std::logic_error("accepted input without a derivation");
}

SentenceAst parse(const TokenSequence& tokens) {
  ChartParser chart;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Prediction before = chart.prediction();
    if (!chart.push(tokens[i])) {
      throw Error("syntax-error", "'" + tokens[i].surface + "' is not possible here", i,
                  std::move(before));
    }
  }
  if (!chart.accepted()) {
    throw Error("syntax-error", "the sentence is incomplete", tokens.size(), chart.prediction());
  }
  return chart.build_ast();
}

Prediction predict_next(const TokenSequence& prefix) {
  ChartParser chart;
  for (const auto& t : prefix) {
    if (!chart.push(t)) return {};
  }
  return chart.prediction();
}

}  // namespace cnlwiki
