#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cnlwiki/ast.hpp"
#include "cnlwiki/axiom.hpp"
#include "cnlwiki/lexicon.hpp"

namespace cnlwiki {

/// Why a sentence is outside the reasoner fragment.
enum class RedReason { Modality, PassiveClassAgentUnsupported };

std::string_view to_string(RedReason r);
std::optional<RedReason> red_reason_from_string(std::string_view s);

struct Blue {
  std::vector<Axiom> axioms;
  friend bool operator==(const Blue&, const Blue&) = default;
};

struct Red {
  RedReason reason;
  friend bool operator==(const Red&, const Red&) = default;
};

using TranslationResult = std::variant<Blue, Red>;

/// Declarative sentence to axioms. Anonymous individuals introduced by
/// "a ..." sentences are named after `statement_id`.
/// Errors: not-declarative.
TranslationResult translate(const SentenceAst& ast, long statement_id);

struct RetrievalQuery {
  ClassExpr query;
};

struct EntailmentQuery {
  ClassExpr cls;
  std::string individual;
};

using QueryTranslation = std::variant<RetrievalQuery, EntailmentQuery, Red>;

/// Errors: not-a-question.
QueryTranslation translate_question(const SentenceAst& ast);

/// Renders an atomic axiom as a sentence that translates back to it.
/// Errors: not-atomic; unknown-word when a name is not in the lexicon.
TokenSequence verbalize_atomic(const Axiom& axiom, const Lexicon& lexicon);

/// Surface tokens for an AST; articles follow the vowel rule, so
/// parse(realize(ast)) == ast. Errors: unknown-word.
TokenSequence realize(const SentenceAst& ast, const Lexicon& lexicon);

/// True iff the axiom uses only the constructors translation can produce.
bool in_translation_fragment(const Axiom& axiom);

}  // namespace cnlwiki
