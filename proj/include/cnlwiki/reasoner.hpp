#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cnlwiki/axiom.hpp"

namespace cnlwiki {

/// A finite interpretation over the domain {0, ..., domain_size - 1}.
struct Interpretation {
  int domain_size = 0;
  std::map<std::string, std::set<int>> classes;
  std::map<std::string, std::set<std::pair<int, int>>> roles;
  std::map<std::string, int> individuals;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

struct ConsistencyResult {
  bool consistent = false;
  /// Present when the completed tableau branch had no blocked node.
  std::optional<Interpretation> witness;
};

struct TableauLimits {
  std::size_t max_nodes = 20'000;
  std::size_t max_steps = 2'000'000;
  std::size_t max_held_nodes = 1'000'000;  // summed over the open branch points
};

/// Tableau decision procedure for ALCQ with has-value under the unique name
/// assumption. Errors: unsupported-construct; reasoner-limit when a limit trips.
ConsistencyResult check_consistency(const Ontology& o, const TableauLimits& limits = {});

inline bool is_consistent(const Ontology& o) { return check_consistency(o).consistent; }

/// Errors: as check_consistency.
bool entails_subsumption(const Ontology& o, const std::string& sub, const std::string& super);

/// Certain answers among the proper-named individuals of `o`.
/// Errors: inconsistent-ontology, plus check_consistency's.
std::set<std::string> retrieve(const Ontology& o, const ClassExpr& c);

/// Named classes of the signature the individual provably belongs to.
std::set<std::string> memberships(const Ontology& o, const std::string& individual);

/// yes: entailed; no: its negation is entailed; unknown otherwise.
enum class Answer { Yes, No, Unknown };
Answer entails_membership(const Ontology& o, const ClassExpr& c, const std::string& individual);

/// The inferred class hierarchy. Each group holds mutually equivalent named
/// classes; edges are direct subsumptions between groups (transitively reduced).
struct Hierarchy {
  std::vector<std::vector<std::string>> groups;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // sub group -> super group
};

/// Errors: inconsistent-ontology.
Hierarchy classify(const Ontology& o);

// ---------------------------------------------------------------------------
// Verification oracle

struct OracleLimits {
  int max_domain_cap = 4;
  std::size_t max_variables = 200'000;
};

/// Complete search for an interpretation with domain size 1..max_domain that
/// satisfies every axiom (unique name assumption respected).
/// Errors: search-space-exceeded.
std::optional<Interpretation> oracle_find_model(const Ontology& o, int max_domain, const OracleLimits& limits = {});

/// Direct semantic evaluation. Returns false when distinct names share an
/// element. Errors: signature-mismatch.
bool check_model(const Interpretation& i, const Ontology& o);

/// Whether `element` is in the extension of `c` under `i`.
bool evaluate(const Interpretation& i, const ClassExpr& c, int element);

}  // namespace cnlwiki
