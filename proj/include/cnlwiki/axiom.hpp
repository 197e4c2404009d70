#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cnlwiki {

enum class ExprKind { Atomic, Top, Not, And, Or, Some, Only, AtLeast, AtMost, HasValue };

/// Description-logic class expression. `Or` never comes out of translation;
/// it appears only in negation normal forms inside the reasoner.
struct ClassExpr {
  ExprKind kind = ExprKind::Top;
  std::string name;        // class (Atomic) or role (restrictions)
  std::string individual;  // HasValue
  int n = 0;               // AtLeast / AtMost
  std::vector<ClassExpr> operands;

  static ClassExpr atomic(std::string cls);
  static ClassExpr top();
  static ClassExpr negation(ClassExpr c);
  static ClassExpr conjunction(ClassExpr a, ClassExpr b);
  static ClassExpr disjunction(ClassExpr a, ClassExpr b);
  static ClassExpr some(std::string role, ClassExpr c);
  static ClassExpr only(std::string role, ClassExpr c);
  static ClassExpr at_least(int n, std::string role, ClassExpr c);
  static ClassExpr at_most(int n, std::string role, ClassExpr c);
  static ClassExpr has_value(std::string role, std::string individual);

  const ClassExpr& operand(std::size_t i = 0) const { return operands.at(i); }
};

int compare(const ClassExpr& a, const ClassExpr& b);
inline bool operator==(const ClassExpr& a, const ClassExpr& b) { return compare(a, b) == 0; }
inline bool operator<(const ClassExpr& a, const ClassExpr& b) { return compare(a, b) < 0; }

enum class AxiomKind { SubClassOf, ClassAssertion, RoleAssertion };

struct Axiom {
  AxiomKind kind = AxiomKind::SubClassOf;
  ClassExpr sub;           // SubClassOf left side; ClassAssertion class
  ClassExpr super;         // SubClassOf right side
  std::string role;        // RoleAssertion
  std::string individual;  // ClassAssertion individual; RoleAssertion subject
  std::string target;      // RoleAssertion object

  static Axiom sub_class_of(ClassExpr sub, ClassExpr super);
  static Axiom class_assertion(ClassExpr cls, std::string individual);
  static Axiom role_assertion(std::string role, std::string subject, std::string object);
};

int compare(const Axiom& a, const Axiom& b);
inline bool operator==(const Axiom& a, const Axiom& b) { return compare(a, b) == 0; }
inline bool operator<(const Axiom& a, const Axiom& b) { return compare(a, b) < 0; }

/// Functional-style rendering: `SubClassOf(a ObjectComplementOf(b))`. Top is
/// `owl:Thing`; disjunction is `ObjectUnionOf` (reasoner-internal only).
std::string to_functional(const ClassExpr& c);
std::string to_functional(const Axiom& a);

/// Parses the rendering above back. Errors: load-failure.
ClassExpr parse_class_expr(std::string_view text);
Axiom parse_axiom(std::string_view text);

/// Anonymous individuals are named "_a<statement id>"; proper names never
/// start with an underscore.
std::string anonymous_individual(long statement_id);
bool is_anonymous(std::string_view individual);

struct Signature {
  std::set<std::string> classes;
  std::set<std::string> roles;
  std::set<std::string> individuals;

  void add(const ClassExpr& c);
  void add(const Axiom& a);
};

/// A set of axioms; duplicates coalesce.
class Ontology {
 public:
  Ontology() = default;
  Ontology(std::initializer_list<Axiom> axioms) : axioms_(axioms) {}
  template <typename It>
  Ontology(It first, It last) : axioms_(first, last) {}

  void add(const Axiom& a) { axioms_.insert(a); }
  void add(const std::vector<Axiom>& as) { axioms_.insert(as.begin(), as.end()); }
  void remove(const Axiom& a) { axioms_.erase(a); }

  const std::set<Axiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }
  Signature signature() const;

  Ontology with(const Axiom& a) const {
    Ontology o = *this;
    o.add(a);
    return o;
  }

  friend bool operator==(const Ontology&, const Ontology&) = default;

 private:
  std::set<Axiom> axioms_;
};

}  // namespace cnlwiki
