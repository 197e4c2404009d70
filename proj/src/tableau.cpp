// Tableau for ALCQ + has-value under the unique name assumption.
//
// Concepts are interned in negation normal form. Node labels are bitsets over
// the interned closure. Terminological axioms with an atomic left side (or
// "A and X") are unfolded lazily; the rest are internalized into every label.
// Successors are generated only once no other rule applies, and a clash
// backjumps to the latest branch point it depends on.

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_set>

#include "cnlwiki/error.hpp"
#include "cnlwiki/reasoner.hpp"

namespace cnlwiki {

namespace {

enum class CKind : std::uint8_t { Atom, NotAtom, Top, Bottom, And, Or, Some, Only, AtLeast, AtMost, HasValue, NotHasValue };

struct Concept {
  CKind kind;
  int ref = -1;   // class id (Atom/NotAtom) or individual id (HasValue/NotHasValue)
  int role = -1;
  int n = 0;
  int a = -1;     // operand / filler
  int b = -1;     // second operand

  auto key() const { return std::make_tuple(kind, ref, role, n, a, b); }
};

class ConceptTable {
 public:
  int class_id(const std::string& name) { return id_of(classes_, class_names_, name); }
  int role_id(const std::string& name) { return id_of(roles_, role_names_, name); }
  int individual_id(const std::string& name) { return id_of(individuals_, individual_names_, name); }

  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<std::string>& role_names() const { return role_names_; }
  const std::vector<std::string>& individual_names() const { return individual_names_; }

  int intern(const Concept& c) {
    auto [it, inserted] = index_.emplace(c.key(), static_cast<int>(concepts_.size()));
    if (inserted) concepts_.push_back(c);
    return it->second;
  }

  int top() { return intern({CKind::Top}); }
  int bottom() { return intern({CKind::Bottom}); }

  int nnf(const ClassExpr& e, bool negated) {
    switch (e.kind) {
      case ExprKind::Atomic:
        return intern({negated ? CKind::NotAtom : CKind::Atom, class_id(e.name)});
      case ExprKind::Top:
        return negated ? bottom() : top();
      case ExprKind::Not:
        return nnf(e.operand(), !negated);
      case ExprKind::And:
      case ExprKind::Or: {
        const bool conj = (e.kind == ExprKind::And) != negated;
        return junction(conj, nnf(e.operand(0), negated), nnf(e.operand(1), negated));
      }
      case ExprKind::Some:
      case ExprKind::Only: {
        const bool exists = (e.kind == ExprKind::Some) != negated;
        return restriction(exists ? CKind::Some : CKind::Only, role_id(e.name), 0, nnf(e.operand(), negated));
      }
      case ExprKind::AtLeast: {
        int filler = nnf(e.operand(), false);
        if (!negated) return restriction(CKind::AtLeast, role_id(e.name), e.n, filler);
        return e.n <= 0 ? bottom() : restriction(CKind::AtMost, role_id(e.name), e.n - 1, filler);
      }
      case ExprKind::AtMost: {
        int filler = nnf(e.operand(), false);
        if (!negated) return restriction(CKind::AtMost, role_id(e.name), e.n, filler);
        return restriction(CKind::AtLeast, role_id(e.name), e.n + 1, filler);
      }
      case ExprKind::HasValue:
        return intern({negated ? CKind::NotHasValue : CKind::HasValue, individual_id(e.individual), role_id(e.name)});
    }
    throw Error("unsupported-construct", "unknown class expression");
  }

  int complement(int id) {
    const Concept c = concepts_[id];
    switch (c.kind) {
      case CKind::Atom: return intern({CKind::NotAtom, c.ref});
      case CKind::NotAtom: return intern({CKind::Atom, c.ref});
      case CKind::Top: return bottom();
      case CKind::Bottom: return top();
      case CKind::And:
      case CKind::Or: {
        return junction(c.kind == CKind::Or, complement(c.a), complement(c.b));
      }
      case CKind::Some: return restriction(CKind::Only, c.role, 0, complement(c.a));
      case CKind::Only: return restriction(CKind::Some, c.role, 0, complement(c.a));
      case CKind::AtLeast: return c.n <= 0 ? bottom() : restriction(CKind::AtMost, c.role, c.n - 1, c.a);
      case CKind::AtMost: return restriction(CKind::AtLeast, c.role, c.n + 1, c.a);
      case CKind::HasValue: return intern({CKind::NotHasValue, c.ref, c.role});
      case CKind::NotHasValue: return intern({CKind::HasValue, c.ref, c.role});
    }
    return top();
  }

  /// Interns the complement of every concept; complements come in pairs, so
  /// this terminates with the closure twice the size at most.
  void close_under_complement() {
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
      const int comp = complement(static_cast<int>(i));
      if (complement_.size() < concepts_.size()) complement_.resize(concepts_.size(), -1);
      complement_[i] = comp;
    }
  }

  /// Requires close_under_complement().
  int complement_of(int id) const { return complement_[id]; }

  const Concept& operator[](int id) const { return concepts_[id]; }
  int size() const { return static_cast<int>(concepts_.size()); }

 private:
  // Constructors that fold away top and bottom.
  int junction(bool conj, int a, int b) {
    const CKind ka = concepts_[a].kind, kb = concepts_[b].kind;
    if (conj) {
      if (ka == CKind::Bottom || kb == CKind::Bottom) return bottom();
      if (ka == CKind::Top) return b;
      if (kb == CKind::Top || a == b) return a;
    } else {
      if (ka == CKind::Top || kb == CKind::Top) return top();
      if (ka == CKind::Bottom) return b;
      if (kb == CKind::Bottom || a == b) return a;
    }
    return intern({conj ? CKind::And : CKind::Or, -1, -1, 0, std::min(a, b), std::max(a, b)});
  }

  int restriction(CKind kind, int role, int n, int filler) {
    const bool empty = concepts_[filler].kind == CKind::Bottom;
    switch (kind) {
      case CKind::Some: return empty ? bottom() : intern({kind, -1, role, 0, filler});
      case CKind::Only: return concepts_[filler].kind == CKind::Top ? top() : intern({kind, -1, role, 0, filler});
      case CKind::AtLeast: return n <= 0 ? top() : empty ? bottom() : intern({kind, -1, role, n, filler});
      default: return empty ? top() : intern({kind, -1, role, n, filler});
    }
  }

  static int id_of(std::map<std::string, int>& ids, std::vector<std::string>& names, const std::string& name) {
    auto [it, inserted] = ids.emplace(name, static_cast<int>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  }

  std::vector<Concept> concepts_;
  std::map<std::tuple<CKind, int, int, int, int, int>, int> index_;
  std::map<std::string, int> classes_, roles_, individuals_;
  std::vector<std::string> class_names_, role_names_, individual_names_;
  std::vector<int> complement_;
};

class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : words_((n + 63) / 64, 0) {}
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool set(int i) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (words_[i >> 6] & mask) return false;
    words_[i >> 6] |= mask;
    return true;
  }
  bool merge(const Bits& o) {
    bool changed = false;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t next = words_[k] | o.words_[k];
      changed |= next != words_[k];
      words_[k] = next;
    }
    return changed;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        int bit = __builtin_ctzll(w);
        f(static_cast<int>(k * 64 + bit));
        w &= w - 1;
      }
    }
  }
  std::size_t hash() const {
    std::size_t h = words_.size();
    for (auto w : words_) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h >> 7));
    return h;
  }

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

// Branch points a fact depends on, as sorted branch depths. A clash carries
// the union of its facts' sets, which lets the search jump back over branch
// points that did not contribute.
using DepSet = std::vector<int>;

DepSet unite(const DepSet& a, const DepSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  DepSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct BitsHash {
  std::size_t operator()(const Bits* b) const { return b->hash(); }
};

struct BitsEqual {
  bool operator()(const Bits* a, const Bits* b) const { return *a == *b; }
};

struct Edge {
  int role;
  int target;
  DepSet deps;
};

struct Node {
  int parent = -1;
  bool named = false;
  bool alive = true;
  Bits label;
  std::map<int, DepSet> why;  // label entries with a non-empty dependency set
  std::vector<Edge> edges;

  const DepSet& deps(int c) const {
    static const DepSet none;
    auto it = why.find(c);
    return it == why.end() ? none : it->second;
  }
  bool add(int c, const DepSet& d) {
    if (!label.set(c)) return false;
    if (!d.empty()) why[c] = d;
    return true;
  }
};

struct State {
  std::vector<Node> nodes;
  std::map<std::pair<int, int>, DepSet> distinct;  // anonymous inequalities, (low, high)
};

class Tableau {
 public:
  Tableau(const Ontology& o, const TableauLimits& limits) : limits_(limits) {
    const Signature sig = o.signature();
    for (const auto& name : sig.individuals) table_.individual_id(name);
    for (const auto& name : sig.classes) table_.class_id(name);
    for (const auto& name : sig.roles) table_.role_id(name);
    top_ = table_.top();
    bottom_ = table_.bottom();

    for (const auto& a : o.axioms()) validate(a);

    std::vector<int> universal;
    std::vector<std::pair<int, int>> absorbed;  // (atom class id, concept)
    for (const auto& a : o.axioms()) {
      if (a.kind != AxiomKind::SubClassOf) continue;
      const ClassExpr& lhs = a.sub;
      if (lhs.kind == ExprKind::Atomic) {
        absorbed.emplace_back(table_.class_id(lhs.name), table_.nnf(a.super, false));
      } else if (lhs.kind == ExprKind::And &&
                 (lhs.operand(0).kind == ExprKind::Atomic || lhs.operand(1).kind == ExprKind::Atomic)) {
        const bool first = lhs.operand(0).kind == ExprKind::Atomic;
        const ClassExpr& atom = lhs.operand(first ? 0 : 1);
        const ClassExpr& rest = lhs.operand(first ? 1 : 0);
        absorbed.emplace_back(table_.class_id(atom.name),
                              table_.nnf(ClassExpr::disjunction(ClassExpr::negation(rest), a.super), false));
      } else if (lhs.kind == ExprKind::Top) {
        universal.push_back(table_.nnf(a.super, false));
      } else {
        universal.push_back(table_.nnf(ClassExpr::disjunction(ClassExpr::negation(lhs), a.super), false));
      }
    }

    struct Seed {
      int node;
      int concept_id;
    };
    std::vector<Seed> seeds;
    std::vector<std::tuple<int, int, int>> seed_edges;
    for (const auto& a : o.axioms()) {
      if (a.kind == AxiomKind::ClassAssertion) {
        seeds.push_back({table_.individual_id(a.individual), table_.nnf(a.sub, false)});
      } else if (a.kind == AxiomKind::RoleAssertion) {
        seed_edges.emplace_back(table_.individual_id(a.individual), table_.role_id(a.role),
                                table_.individual_id(a.target));
      }
    }
    table_.close_under_complement();
    const int concept_count = table_.size();

    universal_ = Bits(concept_count);
    universal_.set(top_);
    for (int c : universal) universal_.set(c);
    unfold_.assign(concept_count, {});
    for (const auto& [cls, c] : absorbed) {
      int atom = table_.intern({CKind::Atom, cls});
      if (atom < concept_count) unfold_[atom].push_back(c);
    }

    const int named = static_cast<int>(table_.individual_names().size());
    for (int i = 0; i < named; ++i) {
      Node node;
      node.named = true;
      node.label = universal_;
      initial_.nodes.push_back(std::move(node));
    }
    if (named == 0) {
      Node root;
      root.label = universal_;
      initial_.nodes.push_back(std::move(root));
    }
    for (const auto& s : seeds) initial_.nodes[s.node].label.set(s.concept_id);
    for (const auto& [from, role, to] : seed_edges) add_edge(initial_, from, role, to, {});
  }

  ConsistencyResult run() {
    State state = initial_;
    ConsistencyResult result;
    DepSet conflict;
    result.consistent = search(std::move(state), result.witness, conflict);
    return result;
  }

 private:
  static void validate(const Axiom& a) {
    std::function<void(const ClassExpr&)> check = [&](const ClassExpr& c) {
      std::size_t arity = 0;
      switch (c.kind) {
        case ExprKind::Atomic:
          if (c.name.empty()) throw Error("unsupported-construct", "unnamed class");
          break;
        case ExprKind::Top: break;
        case ExprKind::Not: arity = 1; break;
        case ExprKind::And:
        case ExprKind::Or: arity = 2; break;
        case ExprKind::Some:
        case ExprKind::Only: arity = 1; break;
        case ExprKind::AtLeast:
        case ExprKind::AtMost:
          arity = 1;
          if (c.n < 0) throw Error("unsupported-construct", "negative cardinality in " + to_functional(c));
          break;
        case ExprKind::HasValue:
          if (c.individual.empty()) throw Error("unsupported-construct", "has-value without individual");
          break;
      }
      if (c.operands.size() != arity) throw Error("unsupported-construct", "malformed " + to_functional(c));
      if (c.kind >= ExprKind::Some && c.name.empty()) throw Error("unsupported-construct", "restriction without role");
      for (const auto& op : c.operands) check(op);
    };
    switch (a.kind) {
      case AxiomKind::SubClassOf:
        check(a.sub);
        check(a.super);
        break;
      case AxiomKind::ClassAssertion:
        check(a.sub);
        if (a.individual.empty()) throw Error("unsupported-construct", "assertion without individual");
        break;
      case AxiomKind::RoleAssertion:
        if (a.role.empty() || a.individual.empty() || a.target.empty())
          throw Error("unsupported-construct", "incomplete role assertion");
        break;
    }
  }

  static const Edge* find_edge(const State& s, int from, int role, int to) {
    for (const auto& e : s.nodes[from].edges) {
      if (e.role == role && e.target == to) return &e;
    }
    return nullptr;
  }

  static bool add_edge(State& s, int from, int role, int to, const DepSet& deps) {
    if (find_edge(s, from, role, to)) return false;
    s.nodes[from].edges.push_back({role, to, deps});
    return true;
  }

  static const DepSet* distinct_deps(const State& s, int a, int b) {
    static const DepSet none;
    if (a == b) return nullptr;
    if (s.nodes[a].named && s.nodes[b].named) return &none;
    auto it = s.distinct.find({std::min(a, b), std::max(a, b)});
    return it == s.distinct.end() ? nullptr : &it->second;
  }

  static bool distinct(const State& s, int a, int b) { return distinct_deps(s, a, b) != nullptr; }

  static std::vector<int> successors(const State& s, int x, int role, int filler) {
    std::vector<int> out;
    for (const auto& e : s.nodes[x].edges) {
      if (e.role == role && s.nodes[e.target].alive && (filler < 0 || s.nodes[e.target].label.test(filler))) {
        out.push_back(e.target);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // A set of `k` pairwise-distinct nodes among `candidates`, if there is one.
  static std::optional<std::vector<int>> distinct_set(const State& s, const std::vector<int>& candidates, int k) {
    std::vector<int> chosen;
    if (k <= 0) return chosen;
    if (static_cast<int>(candidates.size()) < k) return std::nullopt;
    std::function<bool(std::size_t)> extend = [&](std::size_t from) {
      if (static_cast<int>(chosen.size()) == k) return true;
      for (std::size_t i = from; i < candidates.size(); ++i) {
        if (static_cast<int>(chosen.size() + candidates.size() - i) < k) return false;
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int c) { return distinct(s, c, candidates[i]); });
        if (!ok) continue;
        chosen.push_back(candidates[i]);
        if (extend(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (extend(0)) return chosen;
    return std::nullopt;
  }

  /// Why `x` has the successors `ys` in `filler`: the edges and the filler entries.
  static DepSet successor_deps(const State& s, int x, int role, int filler, const std::vector<int>& ys) {
    DepSet out;
    for (int y : ys) {
      if (const Edge* e = find_edge(s, x, role, y)) out = unite(out, e->deps);
      if (filler >= 0) out = unite(out, s.nodes[y].deps(filler));
    }
    return out;
  }

  int new_node(State& s, int parent, int role, int filler, const DepSet& deps) {
    if (s.nodes.size() >= limits_.max_nodes) throw Error("reasoner-limit", "tableau node limit reached");
    Node node;
    node.parent = parent;
    node.label = universal_;
    node.add(filler, deps);
    s.nodes.push_back(std::move(node));
    int id = static_cast<int>(s.nodes.size()) - 1;
    add_edge(s, parent, role, id, deps);
    return id;
  }

  // Anywhere blocking: an anonymous node whose label equals that of an
  // earlier unblocked anonymous node is blocked, and so is its subtree. With
  // no inverse roles a blocked node stands for a copy of its blocker's subtree.
  std::vector<bool> blocked(const State& s) const {
    std::vector<bool> out(s.nodes.size(), false);
    std::unordered_set<const Bits*, BitsHash, BitsEqual> seen;
    for (std::size_t y = 0; y < s.nodes.size(); ++y) {
      const Node& node = s.nodes[y];
      if (!node.alive || node.named) continue;
      if (node.parent >= 0 && out[node.parent]) {
        out[y] = true;
        continue;
      }
      if (!seen.insert(&node.label).second) out[y] = true;
    }
    return out;
  }

  /// On a clash, stores its dependency set in `conflict`.
  bool clash(const State& s, DepSet& conflict) const {
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      const Node& node = s.nodes[x];
      if (!node.alive) continue;
      bool found = false;
      node.label.for_each([&](int c) {
        if (found) return;
        const Concept& k = table_[c];
        switch (k.kind) {
          case CKind::Bottom:
            found = true;
            conflict = node.deps(c);
            break;
          case CKind::NotAtom: {
            const int atom = atom_index(k.ref);
            if (atom >= 0 && node.label.test(atom)) {
              found = true;
              conflict = unite(node.deps(c), node.deps(atom));
            }
            break;
          }
          case CKind::NotHasValue:
            for (const auto& e : node.edges) {
              if (e.role == k.role && e.target == k.ref && s.nodes[e.target].alive) {
                found = true;
                conflict = unite(node.deps(c), e.deps);
                break;
              }
            }
            break;
          case CKind::AtMost: {
            const int here = static_cast<int>(x);
            auto succ = successors(s, here, k.role, k.a);
            if (static_cast<int>(succ.size()) <= k.n) break;
            auto set = distinct_set(s, succ, k.n + 1);
            if (!set) break;
            found = true;
            conflict = unite(node.deps(c), successor_deps(s, here, k.role, k.a, *set));
            for (std::size_t i = 0; i < set->size(); ++i) {
              for (std::size_t j = i + 1; j < set->size(); ++j) {
                conflict = unite(conflict, *distinct_deps(s, (*set)[i], (*set)[j]));
              }
            }
            break;
          }
          default: break;
        }
      });
      if (found) return true;
    }
    return false;
  }

  int atom_index(int cls) const {
    auto it = atom_ids_.find(cls);
    return it == atom_ids_.end() ? -1 : it->second;
  }

  // and / or with a refuted disjunct / only / has-value / lazy unfolding, to a fixpoint.
  bool deterministic(State& s, const std::vector<bool>& is_blocked) const {
    bool changed = false;
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive || is_blocked[x]) continue;
      std::vector<int> present;
      s.nodes[x].label.for_each([&](int c) { present.push_back(c); });
      for (std::size_t i = 0; i < present.size(); ++i) {
        const int c = present[i];
        const Concept& k = table_[c];
        Node& node = s.nodes[x];
        auto add_here = [&](int d, const DepSet& deps) {
          if (s.nodes[x].add(d, deps)) {
            present.push_back(d);
            changed = true;
          }
        };
        switch (k.kind) {
          case CKind::And: {
            const DepSet deps = node.deps(c);
            add_here(k.a, deps);
            add_here(k.b, deps);
            break;
          }
          case CKind::Or: {
            if (node.label.test(k.a) || node.label.test(k.b)) break;
            const int not_a = table_.complement_of(k.a), not_b = table_.complement_of(k.b);
            if (node.label.test(not_a)) {
              add_here(k.b, unite(node.deps(c), node.deps(not_a)));
            } else if (node.label.test(not_b)) {
              add_here(k.a, unite(node.deps(c), node.deps(not_b)));
            }
            break;
          }
          case CKind::Atom: {
            const DepSet deps = node.deps(c);
            for (int d : unfold_[c]) add_here(d, deps);
            break;
          }
          case CKind::Only:
            for (const auto& e : std::vector<Edge>(node.edges)) {
              if (e.role != k.role || !s.nodes[e.target].alive) continue;
              changed |= s.nodes[e.target].add(k.a, unite(s.nodes[x].deps(c), e.deps));
            }
            break;
          case CKind::HasValue:
            changed |= add_edge(s, static_cast<int>(x), k.role, k.ref, node.deps(c));
            break;
          default: break;
        }
      }
    }
    return changed;
  }

  bool generating(State& s, const std::vector<bool>& is_blocked) {
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive || is_blocked[x]) continue;
      int fired = -1;
      s.nodes[x].label.for_each([&](int c) {
        if (fired >= 0) return;
        const Concept& k = table_[c];
        if (k.kind == CKind::Some && successors(s, static_cast<int>(x), k.role, k.a).empty()) fired = c;
        if (k.kind == CKind::AtLeast && !distinct_set(s, successors(s, static_cast<int>(x), k.role, k.a), k.n))
          fired = c;
      });
      if (fired < 0) continue;
      const Concept& k = table_[fired];
      const DepSet deps = s.nodes[x].deps(fired);
      if (k.kind == CKind::Some) {
        new_node(s, static_cast<int>(x), k.role, k.a, deps);
      } else {
        std::vector<int> created;
        for (int i = 0; i < k.n; ++i) created.push_back(new_node(s, static_cast<int>(x), k.role, k.a, deps));
        for (std::size_t i = 0; i < created.size(); ++i) {
          for (std::size_t j = i + 1; j < created.size(); ++j) s.distinct[{created[i], created[j]}] = deps;
        }
      }
      return true;
    }
    return false;
  }

  void merge(State& s, int from, int into, const DepSet& deps) const {
    s.nodes[from].label.for_each([&](int c) { s.nodes[into].add(c, unite(s.nodes[from].deps(c), deps)); });
    for (auto& node : s.nodes) {
      if (!node.alive) continue;
      std::vector<Edge> edges;
      for (const auto& e : node.edges) {
        Edge moved = e;
        if (e.target == from) {
          moved.target = into;
          moved.deps = unite(e.deps, deps);
        }
        auto same = [&](const Edge& o) { return o.role == moved.role && o.target == moved.target; };
        if (std::none_of(edges.begin(), edges.end(), same)) edges.push_back(std::move(moved));
      }
      node.edges = std::move(edges);
    }
    s.nodes[from].alive = false;
    s.nodes[from].edges.clear();
    for (std::size_t y = 0; y < s.nodes.size(); ++y) {
      Node& node = s.nodes[y];
      if (node.alive && !node.named && node.parent >= 0 && !s.nodes[node.parent].alive) {
        node.alive = false;
        node.edges.clear();
      }
    }
    for (auto& node : s.nodes) {
      if (!node.alive) continue;
      std::erase_if(node.edges, [&](const Edge& e) { return !s.nodes[e.target].alive; });
    }
    std::map<std::pair<int, int>, DepSet> distinct_pairs;
    for (const auto& [pair, why] : s.distinct) {
      auto [a, b] = pair;
      DepSet d = why;
      if (a == from || b == from) d = unite(d, deps);
      if (a == from) a = into;
      if (b == from) b = into;
      if (a == b || !s.nodes[a].alive || !s.nodes[b].alive) continue;
      distinct_pairs.emplace(std::make_pair(std::min(a, b), std::max(a, b)), std::move(d));
    }
    s.distinct = std::move(distinct_pairs);
  }

  // A branch point: the facts that made it necessary, and one action per
  // alternative. Each action receives the dependency set to attach.
  struct Branches {
    DepSet deps;
    std::vector<std::function<void(State&, const DepSet&)>> options;
    bool empty() const { return options.empty(); }
  };

  Branches choose_branches(const State& s, const std::vector<bool>& is_blocked) {
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive || is_blocked[x]) continue;
      Branches out;
      s.nodes[x].label.for_each([&](int c) {
        if (!out.empty()) return;
        const Concept& k = table_[c];
        if (k.kind != CKind::AtMost) return;
        const int comp = table_.complement_of(k.a);
        const int here = static_cast<int>(x);
        for (int y : successors(s, here, k.role, -1)) {
          const Bits& label = s.nodes[y].label;
          if (label.test(k.a) || label.test(comp)) continue;
          const int filler = k.a;
          out.deps = unite(s.nodes[x].deps(c), successor_deps(s, here, k.role, -1, {y}));
          out.options.push_back([y, filler](State& st, const DepSet& d) { st.nodes[y].add(filler, d); });
          out.options.push_back([y, comp](State& st, const DepSet& d) { st.nodes[y].add(comp, d); });
          return;
        }
      });
      if (!out.empty()) return out;
    }
    return {};
  }

  Branches merge_branches(const State& s, const std::vector<bool>& is_blocked) {
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive || is_blocked[x]) continue;
      Branches out;
      s.nodes[x].label.for_each([&](int c) {
        if (!out.empty()) return;
        const Concept& k = table_[c];
        if (k.kind != CKind::AtMost) return;
        const int here = static_cast<int>(x);
        auto succ = successors(s, here, k.role, k.a);
        if (static_cast<int>(succ.size()) <= k.n) return;
        for (std::size_t i = 0; i < succ.size(); ++i) {
          for (std::size_t j = i + 1; j < succ.size(); ++j) {
            int a = succ[i], b = succ[j];
            if (distinct(s, a, b)) continue;
            // Named nodes survive; otherwise the younger node folds into the older.
            int into = s.nodes[b].named ? b : a;
            int from = into == a ? b : a;
            out.options.push_back([this, from, into](State& st, const DepSet& d) { merge(st, from, into, d); });
          }
        }
        if (!out.empty()) out.deps = unite(s.nodes[x].deps(c), successor_deps(s, here, k.role, k.a, succ));
      });
      if (!out.empty()) return out;
    }
    return {};
  }

  Branches or_branches(const State& s, const std::vector<bool>& is_blocked) {
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive || is_blocked[x]) continue;
      Branches out;
      s.nodes[x].label.for_each([&](int c) {
        if (!out.empty()) return;
        const Concept& k = table_[c];
        if (k.kind != CKind::Or) return;
        const Bits& label = s.nodes[x].label;
        if (label.test(k.a) || label.test(k.b)) return;
        const int node = static_cast<int>(x);
        const int a = k.a, b = k.b, not_a = table_.complement_of(k.a);
        out.deps = s.nodes[x].deps(c);
        out.options.push_back([node, a](State& st, const DepSet& d) { st.nodes[node].add(a, d); });
        out.options.push_back([node, b, not_a](State& st, const DepSet& d) {
          st.nodes[node].add(b, d);
          st.nodes[node].add(not_a, d);
        });
      });
      if (!out.empty()) return out;
    }
    return {};
  }

  /// False with the clash's dependency set in `conflict` when every
  /// completion of `s` clashes.
  bool search(State s, std::optional<Interpretation>& witness, DepSet& conflict) {
    while (true) {
      if (++steps_ > limits_.max_steps) throw Error("reasoner-limit", "tableau step limit reached");
      if (clash(s, conflict)) return false;
      auto is_blocked = blocked(s);
      if (deterministic(s, is_blocked)) continue;
      Branches branches = choose_branches(s, is_blocked);
      if (branches.empty()) branches = merge_branches(s, is_blocked);
      if (branches.empty()) branches = or_branches(s, is_blocked);
      if (branches.empty() && generating(s, is_blocked)) continue;
      if (branches.empty()) {
        if (std::none_of(is_blocked.begin(), is_blocked.end(), [](bool b) { return b; })) witness = extract(s);
        return true;
      }
      return branch(s, branches, witness, conflict);
    }
  }

  // Every alternative but the last depends on this branch point's depth; the
  // last one instead depends on why the earlier ones failed. A failure that
  // does not involve this depth is returned unchanged (backjumping).
  bool branch(const State& s, const Branches& branches, std::optional<Interpretation>& witness, DepSet& conflict) {
    held_nodes_ += s.nodes.size();
    if (held_nodes_ > limits_.max_held_nodes) throw Error("reasoner-limit", "tableau search depth limit reached");
    const int level = ++depth_;
    DepSet failed = branches.deps;
    bool result = false;
    for (std::size_t i = 0; i < branches.options.size(); ++i) {
      const bool last = i + 1 == branches.options.size();
      State copy = s;
      branches.options[i](copy, last ? failed : unite(branches.deps, {level}));
      DepSet why;
      if (search(std::move(copy), witness, why)) {
        result = true;
        break;
      }
      if (!std::binary_search(why.begin(), why.end(), level)) {
        conflict = std::move(why);
        break;
      }
      std::erase(why, level);
      failed = unite(failed, why);
    }
    --depth_;
    held_nodes_ -= s.nodes.size();
    return result;
  }

  Interpretation extract(const State& s) const {
    Interpretation m;
    std::vector<int> element(s.nodes.size(), -1);
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (s.nodes[x].alive) element[x] = m.domain_size++;
    }
    for (const auto& c : table_.class_names()) m.classes[c];
    for (const auto& r : table_.role_names()) m.roles[r];
    const auto& names = table_.individual_names();
    for (std::size_t i = 0; i < names.size(); ++i) m.individuals[names[i]] = element[i];
    for (std::size_t x = 0; x < s.nodes.size(); ++x) {
      if (!s.nodes[x].alive) continue;
      s.nodes[x].label.for_each([&](int c) {
        if (table_[c].kind == CKind::Atom) m.classes[table_.class_names()[table_[c].ref]].insert(element[x]);
      });
      for (const auto& e : s.nodes[x].edges) m.roles[table_.role_names()[e.role]].insert({element[x], element[e.target]});
    }
    return m;
  }

 public:
  void index_atoms() {
    for (int c = 0; c < table_.size(); ++c) {
      if (table_[c].kind == CKind::Atom) atom_ids_[table_[c].ref] = c;
    }
  }

 private:
  TableauLimits limits_;
  ConceptTable table_;
  int top_ = -1;
  int bottom_ = -1;
  Bits universal_;
  std::vector<std::vector<int>> unfold_;
  std::map<int, int> atom_ids_;
  State initial_;
  std::size_t steps_ = 0;
  std::size_t held_nodes_ = 0;
  int depth_ = 0;
};

}  // namespace

ConsistencyResult check_consistency(const Ontology& o, const TableauLimits& limits) {
  Tableau tableau(o, limits);
  tableau.index_atoms();
  return tableau.run();
}

}  // namespace cnlwiki
