#include <set>

#include "cnlwiki/error.hpp"
#include "cnlwiki/reasoner.hpp"

namespace cnlwiki {

namespace {

int element_of(const Interpretation& i, const std::string& name) {
  auto it = i.individuals.find(name);
  if (it == i.individuals.end()) throw Error("signature-mismatch", "individual '" + name + "' has no denotation");
  return it->second;
}

const std::set<std::pair<int, int>>& role_of(const Interpretation& i, const std::string& role) {
  auto it = i.roles.find(role);
  if (it == i.roles.end()) throw Error("signature-mismatch", "role '" + role + "' has no extension");
  return it->second;
}

int successors_in(const Interpretation& i, const std::string& role, const ClassExpr& filler, int d) {
  int count = 0;
  for (const auto& [from, to] : role_of(i, role)) {
    if (from == d && evaluate(i, filler, to)) ++count;
  }
  return count;
}

}  // namespace

bool evaluate(const Interpretation& i, const ClassExpr& c, int d) {
  switch (c.kind) {
    case ExprKind::Atomic: {
      auto it = i.classes.find(c.name);
      if (it == i.classes.end()) throw Error("signature-mismatch", "class '" + c.name + "' has no extension");
      return it->second.count(d) > 0;
    }
    case ExprKind::Top: return true;
    case ExprKind::Not: return !evaluate(i, c.operand(), d);
    case ExprKind::And: return evaluate(i, c.operand(0), d) && evaluate(i, c.operand(1), d);
    case ExprKind::Or: return evaluate(i, c.operand(0), d) || evaluate(i, c.operand(1), d);
    case ExprKind::Some: return successors_in(i, c.name, c.operand(), d) >= 1;
    case ExprKind::Only: {
      for (const auto& [from, to] : role_of(i, c.name)) {
        if (from == d && !evaluate(i, c.operand(), to)) return false;
      }
      return true;
    }
    case ExprKind::AtLeast: return successors_in(i, c.name, c.operand(), d) >= c.n;
    case ExprKind::AtMost: return successors_in(i, c.name, c.operand(), d) <= c.n;
    case ExprKind::HasValue: return role_of(i, c.name).count({d, element_of(i, c.individual)}) > 0;
  }
  return false;
}

bool check_model(const Interpretation& i, const Ontology& o) {
  const Signature sig = o.signature();
  for (const auto& c : sig.classes) {
    if (!i.classes.count(c)) throw Error("signature-mismatch", "class '" + c + "' has no extension");
  }
  for (const auto& r : sig.roles) {
    if (!i.roles.count(r)) throw Error("signature-mismatch", "role '" + r + "' has no extension");
  }
  for (const auto& name : sig.individuals) element_of(i, name);

  if (i.domain_size < 1) return false;
  std::set<int> used;
  for (const auto& [name, d] : i.individuals) {
    if (d < 0 || d >= i.domain_size || !used.insert(d).second) return false;
  }

  for (const auto& a : o.axioms()) {
    switch (a.kind) {
      case AxiomKind::SubClassOf:
        for (int d = 0; d < i.domain_size; ++d) {
          if (evaluate(i, a.sub, d) && !evaluate(i, a.super, d)) return false;
        }
        break;
      case AxiomKind::ClassAssertion:
        if (!evaluate(i, a.sub, element_of(i, a.individual))) return false;
        break;
      case AxiomKind::RoleAssertion:
        if (!role_of(i, a.role).count({element_of(i, a.individual), element_of(i, a.target)})) return false;
        break;
    }
  }
  return true;
}

}  // namespace cnlwiki
