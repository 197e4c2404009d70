#pragma once

// Brute-force reference for prediction and ambiguity checks. Works purely by
// leftmost top-down derivation over the production table; it shares nothing
// with the chart parser.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnlwiki/grammar.hpp"
#include "cnlwiki/lexicon.hpp"

namespace cnlwiki::testing {

using TerminalString = std::vector<std::uint16_t>;

inline std::uint16_t terminal_code(const Symbol& s) {
  return static_cast<std::uint16_t>((static_cast<int>(s.kind) << 8) | s.id);
}

/// The unique terminal symbol a token instantiates.
inline std::uint16_t terminal_of(const Token& token) {
  for (std::uint8_t i = 0; i < function_words().size(); ++i) {
    Symbol s{Symbol::Kind::Word, i};
    if (matches(s, token)) return terminal_code(s);
  }
  for (std::uint8_t i = 0; i <= static_cast<std::uint8_t>(TerminalClass::NumberMany); ++i) {
    Symbol s{Symbol::Kind::Class, i};
    if (matches(s, token)) return terminal_code(s);
  }
  throw std::logic_error("token matches no terminal: " + token.surface);
}

inline TerminalString terminals_of(const TokenSequence& tokens) {
  TerminalString out;
  for (const auto& t : tokens) out.push_back(terminal_of(t));
  return out;
}

/// All viable prefixes (terminal level) up to `max_len`, and for complete
/// sentences up to `max_len` the number of distinct leftmost derivations.
class DerivationOracle {
 public:
  explicit DerivationOracle(std::size_t max_len, const Grammar& g = Grammar::instance())
      : grammar_(g), max_len_(max_len) {
    std::vector<Symbol> pending{Symbol::nt(g.start())};
    TerminalString out;
    walk(pending, out);
  }

  bool viable(const TerminalString& prefix) const { return prefixes_.count(prefix) > 0; }
  std::size_t derivations(const TerminalString& sentence) const {
    auto it = sentences_.find(sentence);
    return it == sentences_.end() ? 0 : it->second;
  }
  std::size_t prefix_count() const { return prefixes_.size(); }
  const std::map<TerminalString, std::size_t>& sentences() const { return sentences_; }

 private:
  void walk(std::vector<Symbol>& pending, TerminalString& out) {
    if (pending.empty()) {
      ++sentences_[out];
      return;
    }
    Symbol next = pending.back();
    pending.pop_back();
    if (next.is_terminal()) {
      out.push_back(terminal_code(next));
      prefixes_.insert(out);
      if (out.size() < max_len_ || pending.empty()) walk(pending, out);
      out.pop_back();
    } else {
      for (int p : grammar_.productions_of(next.nonterminal())) {
        const auto& rhs = grammar_.productions()[p].rhs;
        for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) pending.push_back(*it);
        walk(pending, out);
        pending.resize(pending.size() - rhs.size());
      }
    }
    pending.push_back(next);
  }

  const Grammar& grammar_;
  std::size_t max_len_;
  std::set<TerminalString> prefixes_;
  std::map<TerminalString, std::size_t> sentences_;
};

/// Concrete tokens a prediction admits, drawn from `universe`.
inline std::set<std::string> expand_prediction(const Prediction& p, const std::vector<Token>& universe) {
  std::set<std::string> out;
  for (const auto& t : universe) {
    if (const auto* fw = std::get_if<FunctionWord>(&t.kind)) {
      if (p.function_words.count(fw->word)) out.insert(t.surface);
    } else if (const auto* nw = std::get_if<NumberWord>(&t.kind)) {
      if (p.categories.count(Category::Number) && nw->value >= p.number_min) out.insert(t.surface);
    } else {
      const auto& lw = std::get<LexicalWord>(t.kind);
      if (p.categories.count(category_of(lw.form))) out.insert(t.surface);
    }
  }
  return out;
}

/// Every token of the vocabulary, every function word, and the given numbers.
inline std::vector<Token> token_universe(const Lexicon& lex, const std::vector<int>& numbers) {
  std::vector<Token> out;
  for (const auto& w : function_words()) out.push_back(Token::function_word(w));
  for (int n : numbers) out.push_back(Token::number(n));
  for (const auto& [lemma, entry] : lex.entries()) {
    for (const auto& [key, form] : entry.forms) out.push_back(Token{form, LexicalWord{entry.word_class, lemma, key}});
  }
  return out;
}

}  // namespace cnlwiki::testing
