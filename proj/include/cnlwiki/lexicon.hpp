#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cnlwiki/prediction.hpp"

namespace cnlwiki {

enum class WordClass { ProperName, Noun, TransitiveVerb };

/// Which surface form of a word a token is.
enum class FormKey { Name, Singular, Plural, ThirdSingular, VerbPlural, PastParticiple };

std::string_view to_string(WordClass c);
std::optional<WordClass> word_class_from_string(std::string_view s);
std::string_view to_string(FormKey k);

/// The form keys a word class requires, in file order.
const std::vector<FormKey>& required_forms(WordClass c);

/// The category a lexical form belongs to for prediction purposes.
Category category_of(FormKey k);

struct WordEntry {
  std::string lemma;
  WordClass word_class = WordClass::Noun;
  std::map<FormKey, std::string> forms;

  const std::string& form(FormKey k) const { return forms.at(k); }

  static WordEntry proper_name(std::string lemma, std::string name);
  static WordEntry noun(std::string lemma, std::string singular, std::string plural);
  static WordEntry verb(std::string lemma, std::string third_singular, std::string plural,
                        std::string past_participle);

  friend bool operator==(const WordEntry&, const WordEntry&) = default;
};

struct FunctionWord {
  std::string word;
  friend bool operator==(const FunctionWord&, const FunctionWord&) = default;
};

struct NumberWord {
  int value = 0;
  friend bool operator==(const NumberWord&, const NumberWord&) = default;
};

struct LexicalWord {
  WordClass word_class;
  std::string lemma;
  FormKey form;
  friend bool operator==(const LexicalWord&, const LexicalWord&) = default;
};

using TokenKind = std::variant<FunctionWord, NumberWord, LexicalWord>;

struct Token {
  std::string surface;
  TokenKind kind;

  static Token function_word(std::string w);
  static Token number(int n);

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenSequence = std::vector<Token>;

/// The reserved function words of the grammar, including "." and "?".
const std::vector<std::string>& function_words();
bool is_function_word(std::string_view w);

constexpr int kMaxNumber = 100;

/// Joins surfaces with single spaces.
std::string detokenize(const TokenSequence& tokens);

/// The user-extensible vocabulary. Reads are const and safe to share across
/// threads; mutation happens through the wiki's single writer.
class Lexicon {
 public:
  /// Errors: duplicate-lemma, form-collision, malformed-forms.
  void add_word(WordEntry entry);
  /// Errors: unknown-word.
  void remove_word(std::string_view lemma);

  const WordEntry* find(std::string_view lemma) const;
  bool contains(std::string_view lemma) const { return find(lemma) != nullptr; }

  std::optional<TokenKind> lookup(std::string_view surface) const;

  /// Errors: unknown-word (offending unit and its index).
  TokenSequence tokenize(std::string_view text) const;

  /// All entries, ordered by lemma.
  const std::map<std::string, WordEntry, std::less<>>& entries() const { return entries_; }

  /// Words that can fill a category slot, as tokens, ordered by surface.
  std::vector<Token> expand(Category c) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::map<std::string, WordEntry, std::less<>> entries_;
  std::map<std::string, LexicalWord, std::less<>> forms_;
};

bool is_valid_lemma(std::string_view s);

/// vocabulary.tsv: one tab-separated entry per line, no header.
/// Errors: load-failure (with line number), plus add_word's errors.
Lexicon parse_vocabulary(std::string_view text);
std::string format_vocabulary(const Lexicon& lexicon);

}  // namespace cnlwiki
