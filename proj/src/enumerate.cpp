#include <set>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"

namespace cnlwiki {

namespace {

using ClassString = std::vector<std::uint16_t>;

std::uint16_t encode(const Symbol& s) {
  return static_cast<std::uint16_t>((static_cast<int>(s.kind) << 8) | s.id);
}
Symbol decode(std::uint16_t v) { return Symbol{static_cast<Symbol::Kind>(v >> 8), static_cast<std::uint8_t>(v & 0xff)}; }

// Leftmost top-down expansion. `pending` holds unexpanded symbols with the
// next one at the back; `pending_min` is the shortest yield of all of them.
class Generator {
 public:
  Generator(const Grammar& g, std::size_t max_len) : grammar_(g), max_len_(max_len) {}

  std::set<ClassString> run() {
    std::vector<Symbol> pending{Symbol::nt(grammar_.start())};
    ClassString out;
    expand(pending, grammar_.min_length(grammar_.start()), out);
    return std::move(results_);
  }

 private:
  void expand(std::vector<Symbol>& pending, std::size_t pending_min, ClassString& out) {
    if (out.size() + pending_min > max_len_) return;
    if (pending.empty()) {
      results_.insert(out);
      return;
    }
    Symbol next = pending.back();
    pending.pop_back();
    if (next.is_terminal()) {
      out.push_back(encode(next));
      expand(pending, pending_min - 1, out);
      out.pop_back();
    } else {
      const std::size_t own = grammar_.min_length(next.nonterminal());
      for (int p : grammar_.productions_of(next.nonterminal())) {
        const auto& rhs = grammar_.productions()[p].rhs;
        std::size_t rhs_min = 0;
        for (const auto& s : rhs) rhs_min += s.is_terminal() ? 1 : grammar_.min_length(s.nonterminal());
        for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) pending.push_back(*it);
        expand(pending, pending_min - own + rhs_min, out);
        pending.resize(pending.size() - rhs.size());
      }
    }
    pending.push_back(next);
  }

  const Grammar& grammar_;
  std::size_t max_len_;
  std::set<ClassString> results_;
};

std::vector<Token> fillers(const Symbol& s, const Lexicon& lexicon, const std::vector<int>& numbers) {
  if (s.kind == Symbol::Kind::Word) return {Token::function_word(function_words()[s.id])};
  std::vector<Token> out;
  switch (s.terminal_class()) {
    case TerminalClass::NumberZero:
    case TerminalClass::NumberOne:
    case TerminalClass::NumberMany:
      for (int n : numbers) {
        Token t = Token::number(n);
        if (matches(s, t)) out.push_back(std::move(t));
      }
      return out;
    case TerminalClass::NounSingular: return lexicon.expand(Category::NounSingular);
    case TerminalClass::NounPlural: return lexicon.expand(Category::NounPlural);
    case TerminalClass::ProperName: return lexicon.expand(Category::ProperName);
    case TerminalClass::VerbThirdSingular: return lexicon.expand(Category::VerbThirdSingular);
    case TerminalClass::VerbPlural: return lexicon.expand(Category::VerbPlural);
    case TerminalClass::VerbPastParticiple: return lexicon.expand(Category::VerbPastParticiple);
  }
  return out;
}

void instantiate(const std::vector<std::vector<Token>>& slots, std::size_t pos, TokenSequence& current,
                 const std::function<void(const TokenSequence&)>& visit) {
  if (pos == slots.size()) {
    visit(current);
    return;
  }
  for (const auto& t : slots[pos]) {
    current.push_back(t);
    instantiate(slots, pos + 1, current, visit);
    current.pop_back();
  }
}

}  // namespace

std::size_t for_each_sentence(const Lexicon& lexicon, std::size_t max_len, const EnumerateOptions& options,
                              const std::function<void(const TokenSequence&)>& visit) {
  if (max_len > kMaxEnumerateLength) {
    throw Error("limit-exceeded", "enumeration is limited to sentences of at most " +
                                      std::to_string(kMaxEnumerateLength) + " tokens");
  }
  const auto shapes = Generator(Grammar::instance(), max_len).run();

  std::vector<std::vector<std::vector<Token>>> slot_sets;
  std::size_t total = 0;
  for (const auto& shape : shapes) {
    std::vector<std::vector<Token>> slots;
    std::size_t count = 1;
    for (auto v : shape) {
      slots.push_back(fillers(decode(v), lexicon, options.numbers));
      count *= slots.back().size();
      if (count == 0) break;
    }
    if (count == 0) continue;
    total += count;
    if (total > options.limit) {
      throw Error("limit-exceeded", "more than " + std::to_string(options.limit) + " sentences");
    }
    slot_sets.push_back(std::move(slots));
  }
  TokenSequence current;
  for (const auto& slots : slot_sets) instantiate(slots, 0, current, visit);
  return total;
}

std::vector<TokenSequence> enumerate_sentences(const Lexicon& lexicon, std::size_t max_len,
                                               const EnumerateOptions& options) {
  std::vector<TokenSequence> out;
  for_each_sentence(lexicon, max_len, options, [&out](const TokenSequence& s) { out.push_back(s); });
  return out;
}

}  // namespace cnlwiki
