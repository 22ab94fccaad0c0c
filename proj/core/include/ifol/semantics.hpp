#pragma once

// Worlds (extensionalization functions), assignments, Kripke satisfaction,
// the independent Tarski evaluator, consequence, Montague intensions and the
// relational extension of interpreted concepts.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifol/kernel.hpp"
#include "ifol/syntax.hpp"
#include "ifol/workspace.hpp"

namespace ifol {

using Tuple = std::vector<ElementId>;
using Relation = std::set<Tuple>;
/// Variable name to value.
using Assignment = std::map<std::string, ElementId>;

struct World {
  std::uint64_t index = 0;
  /// Indexed like WorldSpace::predicates().
  std::vector<Relation> relations;
  /// Indexed like WorldSpace::functions().
  std::vector<std::map<Tuple, ElementId>> functions;

  std::string id() const { return "w" + std::to_string(index); }
};

struct EnumerationOptions {
  /// Refuse to enumerate more candidate worlds than this.
  std::uint64_t max_candidates = std::uint64_t{1} << 20;
  /// Values available at nested-sentence positions. The domain itself has
  /// none, so by default those positions stay empty.
  std::vector<ElementId> reified;
  unsigned threads = 1;
};

/// The candidate worlds of a workspace, in a fixed mixed-radix order.
class WorldSpace {
 public:
  explicit WorldSpace(const Workspace& ws, EnumerationOptions options = {});

  const Workspace& workspace() const { return *ws_; }
  const EnumerationOptions& options() const { return options_; }

  /// Enumerated predicates, ordered by concept name.
  const std::vector<std::string>& predicates() const { return predicates_; }
  /// Enumerated (non-computed) functions, constants included, by name.
  const std::vector<std::string>& functions() const { return functions_; }
  std::optional<std::size_t> predicate_index(std::string_view symbol) const;
  std::optional<std::size_t> function_index(std::string_view symbol) const;
  /// Sorted product space of a predicate.
  const std::vector<Tuple>& product(std::size_t predicate) const { return products_[predicate]; }

  std::uint64_t candidate_count() const { return candidates_; }
  World candidate(std::uint64_t index) const;
  /// Sorted relations, total functions and IS-A extent inclusion.
  bool valid(const World& w) const;
  /// Every valid candidate, in candidate order.
  std::vector<World> worlds() const;

  /// ‖s‖ in a world.
  std::set<ElementId> sort_extension(const World& w, const std::string& sort) const;
  /// D_s, cached. Throws InfiniteExtent.
  const std::vector<ElementId>& domain(const std::string& sort) const;
  bool in_domain(ElementId value, const std::string& sort) const;

 private:
  const Workspace* ws_;
  EnumerationOptions options_;
  std::vector<std::string> predicates_;
  std::vector<std::string> functions_;
  std::vector<std::vector<Tuple>> products_;
  std::vector<std::vector<Tuple>> function_domains_;
  std::vector<std::vector<ElementId>> function_values_;
  // Least significant digit last.
  std::vector<std::uint64_t> radix_;
  std::uint64_t candidates_ = 1;
  std::vector<std::pair<std::string, std::string>> inclusions_;
  bool static_inclusions_hold_ = true;
  mutable std::mutex domain_mutex_;
  mutable std::map<std::string, std::vector<ElementId>, std::less<>> domains_;
  mutable std::map<std::string, std::set<ElementId>, std::less<>> domain_sets_;
};

/// All many-sorted assignments of the variables, in lexicographic order of
/// domain positions.
std::vector<Assignment> assignments(const WorldSpace& space, const std::vector<Variable>& vars);
Grounding to_grounding(const Ontology& ontology, const Assignment& g);

ElementId eval_term(const WorldSpace& space, const World& w, const Term& t, const Assignment& g);
bool eval_atom(const WorldSpace& space, const World& w, const Formula& atom, const Assignment& g);
/// Extension of an atom over its attribute variables: the union, over all
/// values of its hidden visible variables, of the instantiated atom's tuples.
Relation atom_extension(const WorldSpace& space, const World& w, const Formula& atom);

// --- Kripke semantics ---

/// Assignments reachable from g along x: equal off x, sorted at x.
std::vector<Assignment> accessible(const WorldSpace& space, const Assignment& g, const Variable& x);
bool related(const Assignment& a, const Assignment& b, const std::string& x);
bool satisfies(const WorldSpace& space, const World& w, const Assignment& g, const Formula& f);

// --- Tarski evaluation by grounding ---

/// A variable-free propositional expansion of φ/g, independent of worlds.
struct GroundFormula {
  enum class Kind { Truth, Atom, Not, And, Or };
  Kind kind = Kind::Truth;
  std::string predicate;
  std::vector<Term> args;
  std::vector<GroundFormula> children;
};

GroundFormula tarski_ground(const WorldSpace& space, const Formula& f, const Assignment& g);
bool tarski_truth(const WorldSpace& space, const World& w, const GroundFormula& f);
bool tarski_eval(const WorldSpace& space, const World& w, const Assignment& g, const Formula& f);

// --- consequence and intensions ---

struct ConsequenceResult {
  bool holds = true;
  std::size_t worlds = 0;
  std::size_t models = 0;
  /// Position in the world list and assignment of the first countermodel.
  std::optional<std::size_t> counter_world;
  Assignment counter_assignment;
};

/// Whether w satisfies every axiom (open ones universally closed).
bool is_model(const WorldSpace& space, const World& w, const std::vector<Formula>& axioms);
/// Γ ⊨ φ: φ holds under every assignment in every model of Γ.
ConsequenceResult consequence(const WorldSpace& space, const std::vector<World>& worlds,
                              const std::vector<Formula>& axioms, const Formula& goal);

/// I_n(φ)(w) for every world: the tuples of attribute-variable values under
/// the assignments that satisfy φ.
std::vector<Relation> montague_intension(const WorldSpace& space, const std::vector<World>& worlds,
                                         const Formula& f);

/// Extension that a world gives to an interpreted concept, computed with
/// relational operators from the world's predicate relations.
Relation concept_extension(const WorldSpace& space, const World& w, ElementId concept_id);
/// Relation over free_vars(f) computed with joins, complements and projections.
Relation formula_extension(const WorldSpace& space, const World& w, const Formula& f);

struct BealerMontagueResult {
  bool ok = true;
  std::optional<std::size_t> mismatch_world;
  Relation concept_side;
  Relation intension_side;
};

BealerMontagueResult bealer_montague_check(const WorldSpace& space, const std::vector<World>& worlds,
                                           const Formula& f);

// --- rendering ---

std::string render_tuple(const Ontology& ontology, const Tuple& t);
/// `{(a, b), ...}` with tuples sorted by lexeme.
std::string render_relation(const Ontology& ontology, const Relation& r);
/// One `WORLD <id> <concept> = {...}` line per predicate and function.
std::string render_world(const WorldSpace& space, const World& w);
/// `ASSIGN x=<lexeme>` lines.
std::string render_assignment(const Ontology& ontology, const Assignment& g, const std::vector<Variable>& order);

}  // namespace ifol
