#pragma once

#include <optional>
#include <string>
#include <variant>

#include "cnlwiki/box.hpp"

namespace cnlwiki {

struct VpAst;

/// A common noun with an optional relative phrase ("country that borders a sea").
struct ClassTerm {
  std::string noun;
  std::optional<Box<VpAst>> relative;

  friend bool operator==(const ClassTerm&, const ClassTerm&) = default;
};

enum class Quantifier { Every, No, Some };
enum class CountKind { AtMost, AtLeast, Exactly, MoreThan, LessThan };
enum class Modality { Can, Must };

struct ExistsObject {
  ClassTerm term;
  friend bool operator==(const ExistsObject&, const ExistsObject&) = default;
};
struct NoneObject {
  ClassTerm term;
  friend bool operator==(const NoneObject&, const NoneObject&) = default;
};
struct IndividualObject {
  std::string name;
  friend bool operator==(const IndividualObject&, const IndividualObject&) = default;
};
struct CountObject {
  CountKind kind;
  int n = 0;
  ClassTerm term;
  friend bool operator==(const CountObject&, const CountObject&) = default;
};

using ObjectAst = std::variant<ExistsObject, NoneObject, IndividualObject, CountObject>;

struct IsAVp {
  bool negated = false;
  ClassTerm term;
  friend bool operator==(const IsAVp&, const IsAVp&) = default;
};
struct VerbVp {
  bool negated = false;
  std::string verb;
  ObjectAst object;
  friend bool operator==(const VerbVp&, const VerbVp&) = default;
};
struct PassiveVp {
  std::string verb;
  std::string agent;
  friend bool operator==(const PassiveVp&, const PassiveVp&) = default;
};
struct ModalVp {
  Modality modality;
  std::string verb;
  ObjectAst object;
  friend bool operator==(const ModalVp&, const ModalVp&) = default;
};

struct VpAst {
  std::variant<IsAVp, VerbVp, PassiveVp, ModalVp> node;
  friend bool operator==(const VpAst&, const VpAst&) = default;
};

struct QuantifiedSubject {
  Quantifier quantifier;
  ClassTerm term;
  friend bool operator==(const QuantifiedSubject&, const QuantifiedSubject&) = default;
};
struct IndividualSubject {
  std::string name;
  friend bool operator==(const IndividualSubject&, const IndividualSubject&) = default;
};

struct Declarative {
  std::variant<QuantifiedSubject, IndividualSubject> subject;
  VpAst vp;
  friend bool operator==(const Declarative&, const Declarative&) = default;
};
struct WhQuestion {
  ClassTerm term;
  VpAst vp;
  friend bool operator==(const WhQuestion&, const WhQuestion&) = default;
};
struct YnQuestion {
  std::string individual;
  ClassTerm term;
  friend bool operator==(const YnQuestion&, const YnQuestion&) = default;
};

using SentenceAst = std::variant<Declarative, WhQuestion, YnQuestion>;

inline bool is_question(const SentenceAst& ast) { return !std::holds_alternative<Declarative>(ast); }

/// Compact structural rendering, e.g.
/// `declarative{every landlocked-country, verb(+, borders, none-of(sea))}`.
std::string debug_string(const SentenceAst& ast);
std::string debug_string(const VpAst& vp);
std::string debug_string(const ClassTerm& term);

}  // namespace cnlwiki
