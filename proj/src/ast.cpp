#include "cnlwiki/ast.hpp"

#include "cnlwiki/overloaded.hpp"

namespace cnlwiki {

namespace {

std::string count_kind_name(CountKind k) {
  switch (k) {
    case CountKind::AtMost: return "at-most";
    case CountKind::AtLeast: return "at-least";
    case CountKind::Exactly: return "exactly";
    case CountKind::MoreThan: return "more-than";
    case CountKind::LessThan: return "less-than";
  }
  return "?";
}

std::string debug_string(const ObjectAst& object) {
  return std::visit(
      Overloaded{
          [](const ExistsObject& o) { return "exists(" + debug_string(o.term) + ")"; },
          [](const NoneObject& o) { return "none-of(" + debug_string(o.term) + ")"; },
          [](const IndividualObject& o) { return o.name; },
          [](const CountObject& o) {
            return "numq(" + count_kind_name(o.kind) + ", " + std::to_string(o.n) + ", " +
                   debug_string(o.term) + ")";
          },
      },
      object);
}

const char* sign(bool negated) { return negated ? "-" : "+"; }

}  // namespace

std::string debug_string(const ClassTerm& term) {
  if (!term.relative) return term.noun;
  return term.noun + " that " + debug_string(**term.relative);
}

std::string debug_string(const VpAst& vp) {
  return std::visit(
      Overloaded{
          [](const IsAVp& v) {
            return std::string("isa(") + sign(v.negated) + ", " + debug_string(v.term) + ")";
          },
          [](const VerbVp& v) {
            return std::string("verb(") + sign(v.negated) + ", " + v.verb + ", " +
                   debug_string(v.object) + ")";
          },
          [](const PassiveVp& v) { return "passive(" + v.verb + ", " + v.agent + ")"; },
          [](const ModalVp& v) {
            return std::string("modal(") + (v.modality == Modality::Can ? "can" : "must") + ", " +
                   v.verb + ", " + debug_string(v.object) + ")";
          },
      },
      vp.node);
}

std::string debug_string(const SentenceAst& ast) {
  return std::visit(
      Overloaded{
          [](const Declarative& d) {
            std::string subject = std::visit(
                Overloaded{
                    [](const QuantifiedSubject& q) {
                      const char* word = q.quantifier == Quantifier::Every ? "every"
                                         : q.quantifier == Quantifier::No  ? "no"
                                                                           : "a";
                      return std::string(word) + " " + debug_string(q.term);
                    },
                    [](const IndividualSubject& i) { return i.name; },
                },
                d.subject);
            return "declarative{" + subject + ", " + debug_string(d.vp) + "}";
          },
          [](const WhQuestion& q) {
            return "wh-question{" + debug_string(q.term) + ", " + debug_string(q.vp) + "}";
          },
          [](const YnQuestion& q) {
            return "yn-question{" + q.individual + ", " + debug_string(q.term) + "}";
          },
      },
      ast);
}

}  // namespace cnlwiki
