#pragma once

// Predicate-concepts, canonical subconcepts and the intensional
// interpretation I of formulas into concepts and propositions.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ifol/kernel.hpp"
#include "ifol/sorting.hpp"
#include "ifol/syntax.hpp"

namespace ifol {

/// One optional lexeme per predicate position.
using PartialAssignment = std::vector<std::optional<std::string>>;

struct SubconceptNode {
  std::string name;
  std::vector<std::string> sorts;
  PartialAssignment partial;
  std::vector<SubconceptNode> children;

  std::size_t size() const;
};

/// Indented rendering, one node per line: `name:s1,...,sk`.
std::string render_concept_tree(const SubconceptNode& root);

class PredicateConceptRegistry {
 public:
  PredicateConceptRegistry(Ontology& ontology, Signature& signature)
      : ontology_(ontology), signature_(signature) {}

  /// Declares the predicate if needed and pairs it with a concept named `phrase`.
  const Concept& register_predicate_concept(const std::string& predicate, const std::string& phrase,
                                            std::vector<std::string> sorts);

  const Concept* concept_of(std::string_view predicate) const;
  std::optional<std::string> predicate_of(std::string_view concept_name) const;
  /// Predicate symbol to concept name.
  const std::map<std::string, std::string, std::less<>>& pairs() const { return by_predicate_; }

  /// Name of the subconcept for a partial assignment, without registering it.
  std::string subconcept_name(const std::string& predicate, const PartialAssignment& partial) const;
  /// Registers (once) the subconcept and its IS-A edge to its tree parent.
  const Concept& canonical_subconcept(const std::string& predicate, const PartialAssignment& partial);
  /// Materialized subconcepts of a predicate, keyed by bound positions.
  std::map<std::string, std::string> subconcepts(const std::string& predicate) const;

  SubconceptNode subconcept_tree(const std::string& predicate) const;
  void add_attribute_sort(const std::string& predicate, const std::string& sort);

 private:
  const Concept& root(const std::string& predicate) const;
  void validate(const std::string& predicate, const PartialAssignment& partial) const;
  std::vector<std::string> position_values(const std::string& sort) const;

  Ontology& ontology_;
  Signature& signature_;
  std::map<std::string, std::string, std::less<>> by_predicate_;
  std::map<std::string, std::string, std::less<>> by_concept_;
  std::map<std::string, std::map<std::string, std::string>, std::less<>> subconcepts_;
};

struct ConceptDefinition {
  enum class Kind { Formula, Union };
  Kind kind = Kind::Formula;
  /// Normalized defining formula (Formula kind).
  std::optional<Formula> formula;
  /// Attribute variables in order.
  std::vector<Variable> tuple;
  /// Members (Union kind).
  std::vector<ElementId> parts;
};

/// I: formulas to elements of the PRP domain. Memoized by a normalized
/// fingerprint, so equal inputs always give the identical element.
class IntensionalInterpretation {
 public:
  IntensionalInterpretation(const Ontology& ontology, const Signature& signature,
                            const PredicateConceptRegistry& registry)
      : ontology_(ontology), signature_(signature), registry_(registry) {}

  ElementId interpret(const Formula& f) const;
  /// Proper names denote particulars.
  ElementId interpret_constant(const std::string& symbol) const;
  /// Ground abstraction terms and constants.
  ElementId interpret_term(const Term& t) const;
  /// A concept whose extension is the union of the parts' extensions.
  ElementId union_concept(std::vector<ElementId> parts) const;

  std::optional<ConceptDefinition> definition(ElementId id) const;
  /// Predicate symbol when the element is a predicate-concept.
  std::optional<std::string> predicate_of(ElementId id) const;

  /// Arithmetic folding of computed functions over numerals.
  Formula normalize(const Formula& f) const;
  Term normalize(const Term& t) const;
  std::string fingerprint(const Formula& f) const;

  /// Variables whose values form the tuples of I(f): the free variables,
  /// minus those of an atom that occur only as visible variables of its
  /// abstraction terms (those range over the union instead).
  std::vector<Variable> attribute_variables(const Formula& f) const;
  std::vector<Variable> hidden_variables(const Formula& f) const;

  std::size_t memo_size() const;

 private:
  ElementId derived(const Formula& normalized, const std::string& fp, std::string name) const;

  const Ontology& ontology_;
  const Signature& signature_;
  const PredicateConceptRegistry& registry_;

  mutable std::mutex mutex_;
  mutable std::map<std::string, ElementId> memo_;
  mutable std::map<ElementId, ConceptDefinition> definitions_;
};

}  // namespace ifol
