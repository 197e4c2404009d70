#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cnlwiki/ast.hpp"
#include "cnlwiki/lexicon.hpp"
#include "cnlwiki/prediction.hpp"

namespace cnlwiki {

// ---------------------------------------------------------------------------
// Grammar table

enum class Nonterminal : std::uint8_t {
  Sentence,
  Declarative,
  Question,
  Subject,
  NounPhraseSg,  // CNsg
  NounPhrasePl,  // CNpl
  VerbPhraseSg,  // VP(3sg)
  VerbPhrasePl,  // VP(pl)
  Article,
  Modal,
  Object,
  CountAny,       // number + noun, any number
  CountPositive,  // number + noun, number >= 1
};
constexpr int kNonterminalCount = 13;

/// Terminal classes a concrete token falls into. Numbers split three ways so
/// that "1 country" / "2 countries" agreement is context free.
enum class TerminalClass : std::uint8_t {
  NounSingular,
  NounPlural,
  ProperName,
  VerbThirdSingular,
  VerbPlural,
  VerbPastParticiple,
  NumberZero,
  NumberOne,
  NumberMany,
};

struct Symbol {
  enum class Kind : std::uint8_t { Nonterminal, Word, Class } kind;
  std::uint8_t id;  // Nonterminal, index into function_words(), or TerminalClass

  static Symbol nt(Nonterminal n) { return {Kind::Nonterminal, static_cast<std::uint8_t>(n)}; }
  static Symbol word(std::string_view w);
  static Symbol cls(TerminalClass c) { return {Kind::Class, static_cast<std::uint8_t>(c)}; }

  bool is_terminal() const { return kind != Kind::Nonterminal; }
  Nonterminal nonterminal() const { return static_cast<Nonterminal>(id); }
  TerminalClass terminal_class() const { return static_cast<TerminalClass>(id); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// What a production builds; the AST builder dispatches on it.
enum class ProductionTag : std::uint8_t {
  Pass,  // single-child wrapper
  Declarative,
  SubjectEvery,
  SubjectNo,
  SubjectSome,
  SubjectName,
  Noun,
  NounRelative,
  IsA,
  IsNotA,
  Verb,
  NegatedVerb,
  Passive,
  ModalVerb,
  Article,
  ModalCan,
  ModalMust,
  ObjectExists,
  ObjectNone,
  ObjectName,
  ObjectAtMost,
  ObjectAtLeast,
  ObjectExactly,
  ObjectMoreThan,
  ObjectLessThan,
  Count,
  WhQuestion,
  YnQuestion,
};

struct Production {
  Nonterminal lhs;
  std::vector<Symbol> rhs;
  ProductionTag tag;
};

/// The fixed controlled-English grammar. No epsilon rules, no left recursion.
class Grammar {
 public:
  static const Grammar& instance();

  const std::vector<Production>& productions() const { return productions_; }
  const std::vector<int>& productions_of(Nonterminal n) const {
    return by_lhs_[static_cast<int>(n)];
  }
  Nonterminal start() const { return Nonterminal::Sentence; }

  /// Shortest terminal string a nonterminal derives.
  int min_length(Nonterminal n) const { return min_length_[static_cast<int>(n)]; }

  /// Every nonterminal reachable from the start and productive.
  bool is_reduced() const;

 private:
  Grammar();
  std::vector<Production> productions_;
  std::vector<std::vector<int>> by_lhs_;
  std::vector<int> min_length_;
};

/// Whether a concrete token is an instance of a terminal symbol.
bool matches(const Symbol& terminal, const Token& token);
std::string debug_string(const Symbol& s);

// ---------------------------------------------------------------------------
// Chart parsing

/// Incremental Earley recognizer. Each pushed token adds one item set; the
/// scanner-ready items of the last set are exactly the possible next tokens.
class ChartParser {
 public:
  explicit ChartParser(const Grammar& grammar = Grammar::instance());

  /// Returns false (and leaves the chart dead) if no item survives the token.
  bool push(const Token& token);

  bool dead() const { return sets_.back().empty(); }
  bool accepted() const;
  std::size_t size() const { return tokens_.size(); }
  Prediction prediction() const;

  /// Number of distinct derivations of the full input, saturating at `cap`.
  std::uint64_t count_parses(std::uint64_t cap = 1000) const;

  /// The AST of the full input. Requires accepted().
  SentenceAst build_ast() const;

 private:
  struct Item {
    std::uint16_t production;
    std::uint8_t dot;
    std::uint16_t origin;
    friend bool operator==(const Item&, const Item&) = default;
  };
  using ItemSet = std::vector<Item>;

  void add(ItemSet& set, Item item) const;
  void close(std::size_t index);

  friend class ParseForest;

  const Grammar* grammar_;
  std::vector<ItemSet> sets_;
  TokenSequence tokens_;
};

/// Parses a full sentence or question into its unique AST.
/// Errors: syntax-error with the earliest failing token position and the
/// Prediction at that position.
SentenceAst parse(const TokenSequence& tokens);

/// The exact set of tokens that can follow `prefix`. Empty for dead prefixes
/// and complete sentences.
Prediction predict_next(const TokenSequence& prefix);

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerateOptions {
  std::vector<int> numbers{1, 2, 3};
  std::size_t limit = 5'000'000;
};

constexpr std::size_t kMaxEnumerateLength = 14;

/// Visits every accepted token sequence of length <= max_len, each once, with
/// category slots filled from `lexicon` and numbers from options.numbers.
/// Returns the count. Errors: limit-exceeded (max_len > 14 or count > limit).
std::size_t for_each_sentence(const Lexicon& lexicon, std::size_t max_len,
                              const EnumerateOptions& options,
                              const std::function<void(const TokenSequence&)>& visit);

std::vector<TokenSequence> enumerate_sentences(const Lexicon& lexicon, std::size_t max_len,
                                               const EnumerateOptions& options = {});

}  // namespace cnlwiki
