#include "cnlwiki/axiom.hpp"

#include <cctype>

#include "cnlwiki/error.hpp"

namespace cnlwiki {

ClassExpr ClassExpr::atomic(std::string cls) {
  ClassExpr c;
  c.kind = ExprKind::Atomic;
  c.name = std::move(cls);
  return c;
}

ClassExpr ClassExpr::top() { return ClassExpr{}; }

ClassExpr ClassExpr::negation(ClassExpr inner) {
  ClassExpr c;
  c.kind = ExprKind::Not;
  c.operands.push_back(std::move(inner));
  return c;
}

ClassExpr ClassExpr::conjunction(ClassExpr a, ClassExpr b) {
  ClassExpr c;
  c.kind = ExprKind::And;
  c.operands.push_back(std::move(a));
  c.operands.push_back(std::move(b));
  return c;
}

ClassExpr ClassExpr::disjunction(ClassExpr a, ClassExpr b) {
  ClassExpr c;
  c.kind = ExprKind::Or;
  c.operands.push_back(std::move(a));
  c.operands.push_back(std::move(b));
  return c;
}

namespace {

ClassExpr restriction(ExprKind kind, int n, std::string role, ClassExpr filler) {
  ClassExpr c;
  c.kind = kind;
  c.n = n;
  c.name = std::move(role);
  c.operands.push_back(std::move(filler));
  return c;
}

}  // namespace

ClassExpr ClassExpr::some(std::string role, ClassExpr c) { return restriction(ExprKind::Some, 0, std::move(role), std::move(c)); }
ClassExpr ClassExpr::only(std::string role, ClassExpr c) { return restriction(ExprKind::Only, 0, std::move(role), std::move(c)); }
ClassExpr ClassExpr::at_least(int n, std::string role, ClassExpr c) {
  return restriction(ExprKind::AtLeast, n, std::move(role), std::move(c));
}
ClassExpr ClassExpr::at_most(int n, std::string role, ClassExpr c) {
  return restriction(ExprKind::AtMost, n, std::move(role), std::move(c));
}

ClassExpr ClassExpr::has_value(std::string role, std::string individual) {
  ClassExpr c;
  c.kind = ExprKind::HasValue;
  c.name = std::move(role);
  c.individual = std::move(individual);
  return c;
}

int compare(const ClassExpr& a, const ClassExpr& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int r = a.name.compare(b.name)) return r < 0 ? -1 : 1;
  if (int r = a.individual.compare(b.individual)) return r < 0 ? -1 : 1;
  if (a.n != b.n) return a.n < b.n ? -1 : 1;
  if (a.operands.size() != b.operands.size()) return a.operands.size() < b.operands.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (int r = compare(a.operands[i], b.operands[i])) return r;
  }
  return 0;
}

Axiom Axiom::sub_class_of(ClassExpr sub, ClassExpr super) {
  Axiom a;
  a.kind = AxiomKind::SubClassOf;
  a.sub = std::move(sub);
  a.super = std::move(super);
  return a;
}

Axiom Axiom::class_assertion(ClassExpr cls, std::string individual) {
  Axiom a;
  a.kind = AxiomKind::ClassAssertion;
  a.sub = std::move(cls);
  a.individual = std::move(individual);
  return a;
}

Axiom Axiom::role_assertion(std::string role, std::string subject, std::string object) {
  Axiom a;
  a.kind = AxiomKind::RoleAssertion;
  a.role = std::move(role);
  a.individual = std::move(subject);
  a.target = std::move(object);
  return a;
}

int compare(const Axiom& a, const Axiom& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int r = compare(a.sub, b.sub)) return r;
  if (int r = compare(a.super, b.super)) return r;
  if (int r = a.role.compare(b.role)) return r < 0 ? -1 : 1;
  if (int r = a.individual.compare(b.individual)) return r < 0 ? -1 : 1;
  if (int r = a.target.compare(b.target)) return r < 0 ? -1 : 1;
  return 0;
}

std::string to_functional(const ClassExpr& c) {
  switch (c.kind) {
    case ExprKind::Atomic: return c.name;
    case ExprKind::Top: return "owl:Thing";
    case ExprKind::Not: return "ObjectComplementOf(" + to_functional(c.operand()) + ")";
    case ExprKind::And:
      return "ObjectIntersectionOf(" + to_functional(c.operand(0)) + " " + to_functional(c.operand(1)) + ")";
    case ExprKind::Or:
      return "ObjectUnionOf(" + to_functional(c.operand(0)) + " " + to_functional(c.operand(1)) + ")";
    case ExprKind::Some: return "ObjectSomeValuesFrom(" + c.name + " " + to_functional(c.operand()) + ")";
    case ExprKind::Only: return "ObjectAllValuesFrom(" + c.name + " " + to_functional(c.operand()) + ")";
    case ExprKind::AtLeast:
      return "ObjectMinCardinality(" + std::to_string(c.n) + " " + c.name + " " + to_functional(c.operand()) + ")";
    case ExprKind::AtMost:
      return "ObjectMaxCardinality(" + std::to_string(c.n) + " " + c.name + " " + to_functional(c.operand()) + ")";
    case ExprKind::HasValue: return "ObjectHasValue(" + c.name + " " + c.individual + ")";
  }
  return "?";
}

std::string to_functional(const Axiom& a) {
  switch (a.kind) {
    case AxiomKind::SubClassOf: return "SubClassOf(" + to_functional(a.sub) + " " + to_functional(a.super) + ")";
    case AxiomKind::ClassAssertion: return "ClassAssertion(" + to_functional(a.sub) + " " + a.individual + ")";
    case AxiomKind::RoleAssertion:
      return "ObjectPropertyAssertion(" + a.role + " " + a.individual + " " + a.target + ")";
  }
  return "?";
}

namespace {

class FunctionalReader {
 public:
  explicit FunctionalReader(std::string_view text) : text_(text) {}

  ClassExpr class_expr() {
    std::string head = word();
    if (!peek('(')) {
      if (head == "owl:Thing") return ClassExpr::top();
      return ClassExpr::atomic(head);
    }
    expect('(');
    ClassExpr out;
    if (head == "ObjectComplementOf") {
      out = ClassExpr::negation(class_expr());
    } else if (head == "ObjectIntersectionOf" || head == "ObjectUnionOf") {
      ClassExpr a = class_expr();
      ClassExpr b = class_expr();
      out = head == "ObjectUnionOf" ? ClassExpr::disjunction(std::move(a), std::move(b))
                                    : ClassExpr::conjunction(std::move(a), std::move(b));
    } else if (head == "ObjectSomeValuesFrom" || head == "ObjectAllValuesFrom") {
      std::string role = word();
      ClassExpr c = class_expr();
      out = head == "ObjectSomeValuesFrom" ? ClassExpr::some(role, std::move(c)) : ClassExpr::only(role, std::move(c));
    } else if (head == "ObjectMinCardinality" || head == "ObjectMaxCardinality") {
      int n = number();
      std::string role = word();
      ClassExpr c = class_expr();
      out = head == "ObjectMinCardinality" ? ClassExpr::at_least(n, role, std::move(c))
                                           : ClassExpr::at_most(n, role, std::move(c));
    } else if (head == "ObjectHasValue") {
      std::string role = word();
      out = ClassExpr::has_value(role, word());
    } else {
      fail("unknown constructor " + head);
    }
    expect(')');
    return out;
  }

  Axiom axiom() {
    std::string head = word();
    expect('(');
    Axiom out;
    if (head == "SubClassOf") {
      ClassExpr a = class_expr();
      out = Axiom::sub_class_of(std::move(a), class_expr());
    } else if (head == "ClassAssertion") {
      ClassExpr c = class_expr();
      out = Axiom::class_assertion(std::move(c), word());
    } else if (head == "ObjectPropertyAssertion") {
      std::string role = word();
      std::string subject = word();
      out = Axiom::role_assertion(role, subject, word());
    } else {
      fail("unknown axiom " + head);
    }
    expect(')');
    return out;
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing text");
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '(' && text_[pos_] != ')') ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  int number() {
    std::string w = word();
    for (char c : w) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number");
    }
    return std::stoi(w);
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error("load-failure", "cannot read '" + std::string(text_) + "': " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ClassExpr parse_class_expr(std::string_view text) {
  FunctionalReader reader(text);
  ClassExpr c = reader.class_expr();
  reader.finish();
  return c;
}

Axiom parse_axiom(std::string_view text) {
  FunctionalReader reader(text);
  Axiom a = reader.axiom();
  reader.finish();
  return a;
}

std::string anonymous_individual(long statement_id) { return "_a" + std::to_string(statement_id); }

bool is_anonymous(std::string_view individual) { return !individual.empty() && individual.front() == '_'; }

void Signature::add(const ClassExpr& c) {
  switch (c.kind) {
    case ExprKind::Atomic: classes.insert(c.name); break;
    case ExprKind::HasValue:
      roles.insert(c.name);
      individuals.insert(c.individual);
      break;
    case ExprKind::Some:
    case ExprKind::Only:
    case ExprKind::AtLeast:
    case ExprKind::AtMost: roles.insert(c.name); break;
    default: break;
  }
  for (const auto& op : c.operands) add(op);
}

void Signature::add(const Axiom& a) {
  switch (a.kind) {
    case AxiomKind::SubClassOf:
      add(a.sub);
      add(a.super);
      break;
    case AxiomKind::ClassAssertion:
      add(a.sub);
      individuals.insert(a.individual);
      break;
    case AxiomKind::RoleAssertion:
      roles.insert(a.role);
      individuals.insert(a.individual);
      individuals.insert(a.target);
      break;
  }
}

Signature Ontology::signature() const {
  Signature s;
  for (const auto& a : axioms_) s.add(a);
  return s;
}

}  // namespace cnlwiki
