#pragma once

#include <string>
#include <string_view>

#include "cnlwiki/lexicon.hpp"

namespace cnlwiki::testing {

/// Three proper names, three nouns, two transitive verbs.
inline Lexicon small_lexicon() {
  Lexicon lex;
  lex.add_word(WordEntry::proper_name("switzerland", "switzerland"));
  lex.add_word(WordEntry::proper_name("austria", "austria"));
  lex.add_word(WordEntry::proper_name("baltic-sea", "baltic-sea"));
  lex.add_word(WordEntry::noun("country", "country", "countries"));
  lex.add_word(WordEntry::noun("sea", "sea", "seas"));
  lex.add_word(WordEntry::noun("landlocked-country", "landlocked-country", "landlocked-countries"));
  lex.add_word(WordEntry::verb("borders", "borders", "border", "bordered"));
  lex.add_word(WordEntry::verb("touches", "touches", "touch", "touched"));
  return lex;
}

inline TokenSequence tok(const Lexicon& lex, std::string_view text) { return lex.tokenize(text); }

}  // namespace cnlwiki::testing
