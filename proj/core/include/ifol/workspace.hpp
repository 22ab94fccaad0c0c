#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifol/concepts.hpp"
#include "ifol/kernel.hpp"
#include "ifol/sorting.hpp"
#include "ifol/syntax.hpp"

namespace ifol {

struct NamedFormula {
  std::string id;
  std::size_t line = 0;
  Formula formula;
};

enum class QueryKind { Check, Eval, Consequence, Intension, Concepts, BealerMontague };

std::string_view to_string(QueryKind kind);

struct Query {
  QueryKind kind = QueryKind::Check;
  std::string id;
  std::size_t line = 0;
  std::optional<Formula> formula;
  /// Values for `eval`.
  Grounding with;
  /// Predicate for `concepts`.
  std::string predicate;
};

/// Everything a workspace file declares. Not movable: the interpretation
/// keeps references to the other members.
class Workspace {
 public:
  Workspace() : signature(ontology), registry(ontology, signature), interpretation(ontology, signature, registry) {}
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  Ontology ontology;
  Signature signature;
  PredicateConceptRegistry registry;
  IntensionalInterpretation interpretation;
  std::vector<NamedFormula> axioms;
  std::vector<Query> queries;
};

}  // namespace ifol
