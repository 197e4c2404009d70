#include <algorithm>

#include "cnlwiki/error.hpp"
#include "cnlwiki/reasoner.hpp"

namespace cnlwiki {

namespace {

constexpr const char* kQueryIndividual = "_q";

void require_consistent(const Ontology& o) {
  if (!is_consistent(o)) throw Error("inconsistent-ontology", "the ontology has no model");
}

bool entailed_instance(const Ontology& o, const ClassExpr& c, const std::string& individual) {
  return !is_consistent(o.with(Axiom::class_assertion(ClassExpr::negation(c), individual)));
}

}  // namespace

bool entails_subsumption(const Ontology& o, const std::string& sub, const std::string& super) {
  if (sub == super) return true;
  auto probe = ClassExpr::conjunction(ClassExpr::atomic(sub), ClassExpr::negation(ClassExpr::atomic(super)));
  return !is_consistent(o.with(Axiom::class_assertion(std::move(probe), kQueryIndividual)));
}

std::set<std::string> retrieve(const Ontology& o, const ClassExpr& c) {
  require_consistent(o);
  std::set<std::string> out;
  for (const auto& name : o.signature().individuals) {
    if (!is_anonymous(name) && entailed_instance(o, c, name)) out.insert(name);
  }
  return out;
}

std::set<std::string> memberships(const Ontology& o, const std::string& individual) {
  require_consistent(o);
  std::set<std::string> out;
  for (const auto& cls : o.signature().classes) {
    if (entailed_instance(o, ClassExpr::atomic(cls), individual)) out.insert(cls);
  }
  return out;
}

Answer entails_membership(const Ontology& o, const ClassExpr& c, const std::string& individual) {
  require_consistent(o);
  if (entailed_instance(o, c, individual)) return Answer::Yes;
  if (!is_consistent(o.with(Axiom::class_assertion(c, individual)))) return Answer::No;
  return Answer::Unknown;
}

Hierarchy classify(const Ontology& o) {
  require_consistent(o);
  const auto& set = o.signature().classes;
  const std::vector<std::string> classes(set.begin(), set.end());
  const std::size_t n = classes.size();

  std::vector<std::vector<bool>> sub(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sub[i][j] = i == j || entails_subsumption(o, classes[i], classes[j]);
  }

  Hierarchy h;
  std::vector<std::size_t> group_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (group_of[i] != n) continue;
    group_of[i] = h.groups.size();
    h.groups.push_back({classes[i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sub[i][j] && sub[j][i]) {
        group_of[j] = group_of[i];
        h.groups.back().push_back(classes[j]);
      }
    }
  }

  // Group-level subsumption, using any representative.
  std::vector<std::size_t> rep(h.groups.size());
  for (std::size_t i = n; i-- > 0;) rep[group_of[i]] = i;
  const std::size_t g = h.groups.size();
  auto below = [&](std::size_t a, std::size_t b) { return a != b && sub[rep[a]][rep[b]]; };
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      if (!below(a, b)) continue;
      bool direct = true;
      for (std::size_t c = 0; c < g && direct; ++c) {
        if (c != a && c != b && below(a, c) && below(c, b)) direct = false;
      }
      if (direct) h.edges.insert({a, b});
    }
  }
  return h;
}

}  // namespace cnlwiki
