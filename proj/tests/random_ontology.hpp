#pragma once

#include <random>

#include "cnlwiki/axiom.hpp"

namespace cnlwiki::testing {

/// Small random ontologies: <= 3 classes, <= 2 roles, <= 3 individuals,
/// <= 6 axioms, cardinalities <= 2, expression depth <= 2.
class RandomOntology {
 public:
  explicit RandomOntology(std::uint32_t seed) : rng_(seed) {}

  Ontology next() { return next(pick(1, 6)); }

  Ontology next(int axioms) {
    Ontology o;
    for (int k = 0; k < axioms; ++k) o.add(axiom());
    return o;
  }

  ClassExpr expr(int depth) {
    const int kinds = depth <= 0 ? 2 : 10;
    switch (pick(0, kinds - 1)) {
      case 0: return ClassExpr::atomic(cls());
      case 1: return pick(0, 5) == 0 ? ClassExpr::top() : ClassExpr::atomic(cls());
      case 2: return ClassExpr::negation(expr(depth - 1));
      case 3: return ClassExpr::conjunction(expr(depth - 1), expr(depth - 1));
      case 4: return ClassExpr::disjunction(expr(depth - 1), expr(depth - 1));
      case 5: return ClassExpr::some(role(), expr(depth - 1));
      case 6: return ClassExpr::only(role(), expr(depth - 1));
      case 7: return ClassExpr::at_least(pick(1, 2), role(), expr(depth - 1));
      case 8: return ClassExpr::at_most(pick(0, 2), role(), expr(depth - 1));
      default: return ClassExpr::has_value(role(), individual());
    }
  }

  Axiom axiom() {
    switch (pick(0, 3)) {
      case 0:
      case 1: return Axiom::sub_class_of(expr(pick(0, 1)), expr(2));
      case 2: return Axiom::class_assertion(expr(2), individual());
      default: return Axiom::role_assertion(role(), individual(), individual());
    }
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::string cls() { return std::string(1, static_cast<char>('A' + pick(0, 2))); }
  std::string role() { return pick(0, 1) ? "r" : "s"; }
  std::string individual() { return std::string(1, static_cast<char>('a' + pick(0, 2))); }

  std::mt19937 rng_;
};

}  // namespace cnlwiki::testing
