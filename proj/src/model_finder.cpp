// Bounded model finder. For each domain size the ontology is grounded into
// propositional clauses (named individuals fixed to the first elements) and
// handed to a small CDCL solver.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "cnlwiki/error.hpp"
#include "cnlwiki/reasoner.hpp"

namespace cnlwiki {

namespace {

// CDCL: two watched literals, first-UIP clause learning with
// non-chronological backjumping, activity-ordered decisions (false first),
// and Luby restarts.
class Solver {
 public:
  int new_var() {
    values_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    seen_.push_back(false);
    watches_.emplace_back();
    watches_.emplace_back();
    const int v = static_cast<int>(values_.size()) - 1;
    heap_insert(v);
    return v;
  }
  int vars() const { return static_cast<int>(values_.size()) - 1; }

  void add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
      for (std::size_t j = i + 1; j < lits.size(); ++j) {
        if (lits[i] == -lits[j]) return;  // tautology
      }
    }
    if (lits.empty()) {
      trivially_unsat_ = true;
      return;
    }
    if (lits.size() == 1) {
      units_.push_back(lits[0]);
      return;
    }
    attach(std::move(lits));
  }

  bool solve() {
    if (trivially_unsat_) return false;
    for (int u : units_) {
      if (value(u) < 0) return false;
      if (value(u) == 0) assign(u, -1);
    }
    std::size_t restart = 1;
    std::size_t conflicts = 0;
    std::size_t budget = luby(restart) * 100;
    while (true) {
      const int conflict = propagate();
      if (conflict >= 0) {
        ++conflicts;
        if (decision_level() == 0) return false;
        int backjump = 0;
        std::vector<int> learned = analyze(conflict, backjump);
        undo_to(backjump);
        if (learned.size() == 1) {
          assign(learned[0], -1);
        } else {
          const int c = attach(learned);
          assign(learned[0], c);
        }
        decay();
        continue;
      }
      if (conflicts >= budget) {
        conflicts = 0;
        budget = luby(++restart) * 100;
        undo_to(0);
        continue;
      }
      const int v = pick();
      if (v == 0) return true;
      level_starts_.push_back(trail_.size());
      assign(-v, -1);
    }
  }

  bool model(int var) const { return values_[var] > 0; }

 private:
  static std::size_t index(int lit) { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0); }
  int value(int lit) const { return lit > 0 ? values_[lit] : -values_[-lit]; }
  int decision_level() const { return static_cast<int>(level_starts_.size()); }

  static std::size_t luby(std::size_t i) {
    std::size_t size = 1, seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != i) {
      size = (size - 1) / 2;
      --seq;
      i = i % size;
    }
    return std::size_t{1} << seq;
  }

  int attach(std::vector<int> lits) {
    clauses_.push_back(std::move(lits));
    const int c = static_cast<int>(clauses_.size()) - 1;
    watches_[index(clauses_[c][0])].push_back(c);
    watches_[index(clauses_[c][1])].push_back(c);
    return c;
  }

  void assign(int lit, int reason) {
    const int v = std::abs(lit);
    values_[v] = lit > 0 ? 1 : -1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  void undo_to(int level) {
    if (decision_level() <= level) return;
    const std::size_t pos = level_starts_[level];
    while (trail_.size() > pos) {
      const int v = std::abs(trail_.back());
      values_[v] = 0;
      reason_[v] = -1;
      if (heap_pos_[v] < 0) heap_insert(v);
      trail_.pop_back();
    }
    level_starts_.resize(level);
    head_ = std::min(head_, pos);
  }

  /// Index of a falsified clause, or -1.
  int propagate() {
    while (head_ < trail_.size()) {
      const int falsified = -trail_[head_++];
      auto& list = watches_[index(falsified)];
      std::size_t keep = 0;
      int conflict = -1;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const int c = list[k];
        if (conflict >= 0) {
          list[keep++] = c;
          continue;
        }
        auto& lits = clauses_[c];
        if (lits[0] == falsified) std::swap(lits[0], lits[1]);
        if (value(lits[0]) > 0) {
          list[keep++] = c;
          continue;
        }
        bool moved = false;
        for (std::size_t j = 2; j < lits.size(); ++j) {
          if (value(lits[j]) >= 0) {
            std::swap(lits[1], lits[j]);
            watches_[index(lits[1])].push_back(c);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        list[keep++] = c;
        if (value(lits[0]) < 0) {
          conflict = c;
        } else {
          assign(lits[0], c);
        }
      }
      list.resize(keep);
      if (conflict >= 0) return conflict;
    }
    return -1;
  }

  // First-UIP learning. The asserting literal comes first, a literal of the
  // backjump level second.
  std::vector<int> analyze(int conflict, int& backjump) {
    std::vector<int> learned{0};
    int pending = 0;
    int lit = 0;
    std::size_t pos = trail_.size();
    int c = conflict;
    do {
      for (int q : clauses_[c]) {
        if (q == lit) continue;
        const int v = std::abs(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = true;
        bump(v);
        if (level_[v] == decision_level()) {
          ++pending;
        } else {
          learned.push_back(q);
        }
      }
      while (!seen_[std::abs(trail_[--pos])]) {
      }
      lit = trail_[pos];
      seen_[std::abs(lit)] = false;
      c = reason_[std::abs(lit)];
      --pending;
    } while (pending > 0);
    learned[0] = -lit;
    backjump = 0;
    for (std::size_t i = 1; i < learned.size(); ++i) {
      const int v = std::abs(learned[i]);
      seen_[v] = false;
      if (level_[v] > backjump) {
        backjump = level_[v];
        std::swap(learned[1], learned[i]);
      }
    }
    return learned;
  }

  void bump(int v) {
    activity_[v] += increment_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      increment_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) sift_up(heap_pos_[v]);
  }
  void decay() { increment_ /= 0.95; }

  int pick() {
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (values_[v] == 0) return v;
    }
    return 0;
  }

  bool before(int a, int b) const { return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b); }

  void heap_insert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    sift_up(heap_pos_[v]);
  }

  int heap_pop() {
    const int top = heap_.front();
    heap_pos_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_pos_[last] = 0;
      sift_down(0);
    }
    return top;
  }

  void sift_up(int i) {
    const int v = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  void sift_down(int i) {
    const int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (true) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_{{}, {}};
  std::vector<int> units_;
  std::vector<signed char> values_{0};
  std::vector<int> level_{0};
  std::vector<int> reason_{-1};
  std::vector<double> activity_{0.0};
  std::vector<int> heap_pos_{-1};
  std::vector<bool> seen_{false};
  std::vector<int> heap_;
  std::vector<int> trail_;
  std::vector<std::size_t> level_starts_;
  std::size_t head_ = 0;
  double increment_ = 1.0;
  bool trivially_unsat_ = false;
};

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(chosen.size()) == k) {
      f(chosen);
      return;
    }
    for (int e = from; e < n; ++e) {
      chosen.push_back(e);
      rec(e + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

class Grounding {
 public:
  Grounding(const Signature& sig, int domain, std::size_t max_variables)
      : domain_(domain), max_variables_(max_variables) {
    int i = 0;
    for (const auto& name : sig.individuals) individual_[name] = i++;
    for (const auto& c : sig.classes) {
      auto& vars = class_vars_[c];
      for (int d = 0; d < domain; ++d) vars.push_back(fresh());
    }
    for (const auto& r : sig.roles) {
      auto& vars = role_vars_[r];
      for (int d = 0; d < domain * domain; ++d) vars.push_back(fresh());
    }
    true_ = fresh();
    solver_.add_clause({true_});
  }

  void add(const Axiom& a) {
    switch (a.kind) {
      case AxiomKind::SubClassOf:
        for (int d = 0; d < domain_; ++d) solver_.add_clause({-lit(a.sub, d), lit(a.super, d)});
        break;
      case AxiomKind::ClassAssertion:
        solver_.add_clause({lit(a.sub, individual_.at(a.individual))});
        break;
      case AxiomKind::RoleAssertion:
        solver_.add_clause({role(a.role, individual_.at(a.individual), individual_.at(a.target))});
        break;
    }
  }

  std::optional<Interpretation> solve() {
    if (!solver_.solve()) return std::nullopt;
    Interpretation m;
    m.domain_size = domain_;
    m.individuals = individual_;
    for (const auto& [c, vars] : class_vars_) {
      auto& ext = m.classes[c];
      for (int d = 0; d < domain_; ++d) {
        if (solver_.model(vars[d])) ext.insert(d);
      }
    }
    for (const auto& [r, vars] : role_vars_) {
      auto& ext = m.roles[r];
      for (int d = 0; d < domain_; ++d) {
        for (int e = 0; e < domain_; ++e) {
          if (solver_.model(vars[d * domain_ + e])) ext.insert({d, e});
        }
      }
    }
    return m;
  }

 private:
  int fresh() {
    if (static_cast<std::size_t>(solver_.vars()) >= max_variables_) {
      throw Error("search-space-exceeded", "grounding exceeds the variable budget");
    }
    return solver_.new_var();
  }

  int role(const std::string& r, int d, int e) const { return role_vars_.at(r)[d * domain_ + e]; }

  int gate_and(const std::vector<int>& inputs) {
    if (inputs.size() == 1) return inputs[0];
    int v = fresh();
    std::vector<int> back{v};
    for (int l : inputs) {
      solver_.add_clause({-v, l});
      back.push_back(-l);
    }
    solver_.add_clause(back);
    return v;
  }

  int gate_or(const std::vector<int>& inputs) {
    if (inputs.empty()) return -true_;
    std::vector<int> negated;
    for (int l : inputs) negated.push_back(-l);
    return -gate_and(negated);
  }

  // r(d, e) and C(e)
  int edge_to(const std::string& r, const ClassExpr& filler, int d, int e) {
    return gate_and({role(r, d, e), lit(filler, e)});
  }

  int lit(const ClassExpr& c, int d) {
    auto key = std::make_pair(to_functional(c), d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int out = 0;
    switch (c.kind) {
      case ExprKind::Atomic: out = class_vars_.at(c.name)[d]; break;
      case ExprKind::Top: out = true_; break;
      case ExprKind::Not: out = -lit(c.operand(), d); break;
      case ExprKind::And: out = gate_and({lit(c.operand(0), d), lit(c.operand(1), d)}); break;
      case ExprKind::Or: out = gate_or({lit(c.operand(0), d), lit(c.operand(1), d)}); break;
      case ExprKind::Some: {
        std::vector<int> any;
        for (int e = 0; e < domain_; ++e) any.push_back(edge_to(c.name, c.operand(), d, e));
        out = gate_or(any);
        break;
      }
      case ExprKind::Only: {
        std::vector<int> all;
        for (int e = 0; e < domain_; ++e) all.push_back(gate_or({-role(c.name, d, e), lit(c.operand(), e)}));
        out = gate_and(all);
        break;
      }
      case ExprKind::AtLeast:
      case ExprKind::AtMost: {
        const bool least = c.kind == ExprKind::AtLeast;
        const int k = least ? c.n : c.n + 1;  // size of the witnessing / forbidden subset
        if (k <= 0) {
          out = least ? true_ : -true_;
          break;
        }
        if (k > domain_) {
          out = least ? -true_ : true_;
          break;
        }
        std::vector<int> edges;
        for (int e = 0; e < domain_; ++e) edges.push_back(edge_to(c.name, c.operand(), d, e));
        std::vector<int> subsets;
        for_each_subset(domain_, k, [&](const std::vector<int>& s) {
          std::vector<int> members;
          for (int e : s) members.push_back(edges[e]);
          subsets.push_back(gate_and(members));
        });
        out = least ? gate_or(subsets) : -gate_or(subsets);
        break;
      }
      case ExprKind::HasValue: out = role(c.name, d, individual_.at(c.individual)); break;
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  int domain_;
  std::size_t max_variables_;
  Solver solver_;
  int true_ = 0;
  std::map<std::string, int> individual_;
  std::map<std::string, std::vector<int>> class_vars_;
  std::map<std::string, std::vector<int>> role_vars_;
  std::map<std::pair<std::string, int>, int> memo_;
};

}  // namespace

std::optional<Interpretation> oracle_find_model(const Ontology& o, int max_domain, const OracleLimits& limits) {
  if (max_domain > limits.max_domain_cap) {
    throw Error("search-space-exceeded", "domain size " + std::to_string(max_domain) + " above the oracle cap");
  }
  const Signature sig = o.signature();
  const int named = static_cast<int>(sig.individuals.size());
  for (int n = std::max(1, named); n <= max_domain; ++n) {
    Grounding g(sig, n, limits.max_variables);
    for (const auto& a : o.axioms()) g.add(a);
    if (auto m = g.solve()) return m;
  }
  return std::nullopt;
}

}  // namespace cnlwiki
