#include "cnlwiki/lexicon.hpp"

#include <algorithm>
#include <cctype>

#include "cnlwiki/error.hpp"

namespace cnlwiki {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::NounSingular: return "noun-singular";
    case Category::NounPlural: return "noun-plural";
    case Category::ProperName: return "proper-name";
    case Category::VerbThirdSingular: return "tv-third-singular";
    case Category::VerbPlural: return "tv-plural";
    case Category::VerbPastParticiple: return "tv-past-participle";
    case Category::Number: return "number";
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
  for (auto c : {Category::NounSingular, Category::NounPlural, Category::ProperName,
                 Category::VerbThirdSingular, Category::VerbPlural,
                 Category::VerbPastParticiple, Category::Number}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(WordClass c) {
  switch (c) {
    case WordClass::ProperName: return "proper-name";
    case WordClass::Noun: return "noun";
    case WordClass::TransitiveVerb: return "transitive-verb";
  }
  return "?";
}

std::optional<WordClass> word_class_from_string(std::string_view s) {
  for (auto c : {WordClass::ProperName, WordClass::Noun, WordClass::TransitiveVerb}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(FormKey k) {
  switch (k) {
    case FormKey::Name: return "name";
    case FormKey::Singular: return "singular";
    case FormKey::Plural: return "plural";
    case FormKey::ThirdSingular: return "third-singular";
    case FormKey::VerbPlural: return "plural";
    case FormKey::PastParticiple: return "past-participle";
  }
  return "?";
}

const std::vector<FormKey>& required_forms(WordClass c) {
  static const std::vector<FormKey> pn{FormKey::Name};
  static const std::vector<FormKey> noun{FormKey::Singular, FormKey::Plural};
  static const std::vector<FormKey> tv{FormKey::ThirdSingular, FormKey::VerbPlural,
                                       FormKey::PastParticiple};
  switch (c) {
    case WordClass::ProperName: return pn;
    case WordClass::Noun: return noun;
    case WordClass::TransitiveVerb: return tv;
  }
  return pn;
}

Category category_of(FormKey k) {
  switch (k) {
    case FormKey::Name: return Category::ProperName;
    case FormKey::Singular: return Category::NounSingular;
    case FormKey::Plural: return Category::NounPlural;
    case FormKey::ThirdSingular: return Category::VerbThirdSingular;
    case FormKey::VerbPlural: return Category::VerbPlural;
    case FormKey::PastParticiple: return Category::VerbPastParticiple;
  }
  return Category::Number;
}

WordEntry WordEntry::proper_name(std::string lemma, std::string name) {
  return {std::move(lemma), WordClass::ProperName, {{FormKey::Name, std::move(name)}}};
}

WordEntry WordEntry::noun(std::string lemma, std::string singular, std::string plural) {
  return {std::move(lemma),
          WordClass::Noun,
          {{FormKey::Singular, std::move(singular)}, {FormKey::Plural, std::move(plural)}}};
}

WordEntry WordEntry::verb(std::string lemma, std::string third_singular, std::string plural,
                          std::string past_participle) {
  return {std::move(lemma),
          WordClass::TransitiveVerb,
          {{FormKey::ThirdSingular, std::move(third_singular)},
           {FormKey::VerbPlural, std::move(plural)},
           {FormKey::PastParticiple, std::move(past_participle)}}};
}

Token Token::function_word(std::string w) {
  Token t{w, FunctionWord{w}};
  return t;
}

Token Token::number(int n) { return Token{std::to_string(n), NumberWord{n}}; }

const std::vector<std::string>& function_words() {
  static const std::vector<std::string> words{
      "every", "no",    "a",    "an",   "is",    "are",     "not",  "does",
      "do",    "that",  "by",   "at",   "most",  "least",   "exactly", "more",
      "less",  "than",  "which", "can", "must",  ".",       "?"};
  return words;
}

bool is_function_word(std::string_view w) {
  const auto& fw = function_words();
  return std::find(fw.begin(), fw.end(), w) != fw.end();
}

std::string detokenize(const TokenSequence& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

bool is_valid_lemma(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::islower(c) || std::isdigit(c) || ch == '-';
  });
}

namespace {

std::optional<int> parse_number(std::string_view s) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  if (!std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  if (s.size() > 1 && s.front() == '0') return std::nullopt;
  int v = std::stoi(std::string(s));
  if (v > kMaxNumber) return std::nullopt;
  return v;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

void Lexicon::add_word(WordEntry entry) {
  if (!is_valid_lemma(entry.lemma)) {
    throw Error("malformed-forms", "invalid lemma '" + entry.lemma + "'");
  }
  if (entries_.count(entry.lemma)) {
    throw Error("duplicate-lemma", "word '" + entry.lemma + "' already exists");
  }
  const auto& keys = required_forms(entry.word_class);
  if (entry.forms.size() != keys.size()) {
    throw Error("malformed-forms", "word '" + entry.lemma + "' has the wrong set of forms");
  }
  std::vector<std::string> seen;
  for (FormKey k : keys) {
    auto it = entry.forms.find(k);
    if (it == entry.forms.end() || it->second.empty()) {
      throw Error("malformed-forms",
                  "word '" + entry.lemma + "' is missing its " + std::string(to_string(k)) + " form");
    }
    const std::string& f = it->second;
    if (!is_valid_lemma(f)) {
      throw Error("malformed-forms", "form '" + f + "' is not a valid word");
    }
    if (is_function_word(f)) {
      throw Error("form-collision", "'" + f + "' is a reserved word");
    }
    if (forms_.count(f) || std::find(seen.begin(), seen.end(), f) != seen.end()) {
      throw Error("form-collision", "'" + f + "' is already used by another word form");
    }
    seen.push_back(f);
  }
  for (FormKey k : keys) {
    forms_.emplace(entry.forms.at(k), LexicalWord{entry.word_class, entry.lemma, k});
  }
  std::string lemma = entry.lemma;
  entries_.emplace(std::move(lemma), std::move(entry));
}

void Lexicon::remove_word(std::string_view lemma) {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) {
    throw Error("unknown-word", "no word '" + std::string(lemma) + "'");
  }
  for (const auto& [key, form] : it->second.forms) forms_.erase(form);
  entries_.erase(it);
}

const WordEntry* Lexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<TokenKind> Lexicon::lookup(std::string_view surface) const {
  if (is_function_word(surface)) return FunctionWord{std::string(surface)};
  if (auto n = parse_number(surface)) return NumberWord{*n};
  auto it = forms_.find(surface);
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

TokenSequence Lexicon::tokenize(std::string_view text) const {
  std::vector<std::string> units;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) units.push_back(lowercase(text.substr(start, i - start)));
  }
  if (!units.empty()) {
    std::string& last = units.back();
    if (last.size() > 1 && (last.back() == '.' || last.back() == '?')) {
      std::string mark(1, last.back());
      last.pop_back();
      units.push_back(mark);
    }
  }
  TokenSequence tokens;
  tokens.reserve(units.size());
  for (std::size_t pos = 0; pos < units.size(); ++pos) {
    auto kind = lookup(units[pos]);
    if (!kind) {
      throw Error("unknown-word", "unknown word '" + units[pos] + "'", pos);
    }
    tokens.push_back(Token{units[pos], std::move(*kind)});
  }
  return tokens;
}

std::vector<Token> Lexicon::expand(Category c) const {
  std::vector<Token> out;
  for (const auto& [surface, word] : forms_) {
    if (category_of(word.form) == c) out.push_back(Token{surface, word});
  }
  return out;
}

}  // namespace cnlwiki

namespace cnlwiki {

Lexicon parse_vocabulary(std::string_view text) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t tab = line.find('\t', f);
      fields.emplace_back(line.substr(f, tab == std::string_view::npos ? line.size() - f : tab - f));
      if (tab == std::string_view::npos) break;
      f = tab + 1;
    }
    auto word_class = word_class_from_string(fields.front());
    if (!word_class || fields.size() != 2 + required_forms(*word_class).size()) {
      throw Error("load-failure", "vocabulary line " + std::to_string(line_no) + " is malformed");
    }
    WordEntry entry{fields[1], *word_class, {}};
    const auto& keys = required_forms(*word_class);
    for (std::size_t i = 0; i < keys.size(); ++i) entry.forms[keys[i]] = fields[2 + i];
    lexicon.add_word(std::move(entry));
  }
  return lexicon;
}

std::string format_vocabulary(const Lexicon& lexicon) {
  std::string out;
  for (const auto& [lemma, entry] : lexicon.entries()) {
    out += to_string(entry.word_class);
    out += '\t';
    out += lemma;
    for (FormKey k : required_forms(entry.word_class)) {
      out += '\t';
      out += entry.form(k);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cnlwiki
