#pragma once

// PRP domain: concepts (which double as sorts), the IS-A lattice over their
// names, and the table of domain elements with their dynamic sorts.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ifol {

inline constexpr std::string_view kEverything = "everything";
inline constexpr std::string_view kEmptySet = "empty set";
inline constexpr std::string_view kTruthValues = "truth values";
inline constexpr std::string_view kNestedSentence = "nested sentence";
inline constexpr std::string_view kVerbForm = "verb form";

/// A k-ary concept `phrase:s1,...,sk`. Its name is also a sort name.
struct Concept {
  std::string name;
  std::vector<std::string> attribute_sorts;

  std::size_t arity() const { return attribute_sorts.size(); }
  /// Index of the layer D_k the concept inhabits.
  std::size_t layer() const { return arity(); }
};

/// Finite IS-A order with "empty set" at the bottom and "everything" at the top.
/// The reflexive-transitive closure is materialized and recomputed on every edge.
class SortLattice {
 public:
  SortLattice();

  bool contains(std::string_view name) const;
  /// Adds a node between bottom and top. No-op if already present.
  void add_node(const std::string& name);
  /// Records sub ⊑ super. Throws UnknownSort or CycleDetected.
  void add_edge(const std::string& sub, const std::string& super);
  /// Throws UnknownSort.
  bool is_subsort(std::string_view sub, std::string_view super) const;

  const std::vector<std::string>& nodes() const { return names_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  /// Every s with s ⊑ name (including name itself).
  std::vector<std::string> subsorts_of(std::string_view name) const;
  /// Every s with name ⊑ s (including name itself).
  std::vector<std::string> supersorts_of(std::string_view name) const;

  /// Least upper bound, if unique.
  std::optional<std::string> join(std::string_view a, std::string_view b) const;
  /// Greatest lower bound, if unique.
  std::optional<std::string> meet(std::string_view a, std::string_view b) const;

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  // up_[i][j] iff names_[i] ⊑ names_[j]
  std::vector<std::vector<bool>> up_;
  std::set<std::pair<std::string, std::string>> edges_;
};

struct ElementId {
  std::uint32_t value = 0;
  friend auto operator<=>(ElementId, ElementId) = default;
};

enum class ElementKind { Particular, Concept, Proposition };

struct ElementInfo {
  ElementKind kind = ElementKind::Particular;
  std::string name;  // lexeme for particulars, concept name otherwise
  std::size_t arity = 0;
  std::string dynamic_sort;
  bool declared = false;  // part of the quantification domain
};

/// Interning table for domain elements. Safe for concurrent interning.
class Universe {
 public:
  ElementId intern(const std::string& key, ElementInfo info);
  std::optional<ElementId> find(const std::string& key) const;
  const ElementInfo& info(ElementId id) const;
  /// Replaces the info of an existing element (load-time only).
  void update(ElementId id, ElementInfo info);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::deque<ElementInfo> elements_;
  std::unordered_map<std::string, ElementId> by_key_;
};

/// Canonical lexeme for a numeric value ("2.0" and "2" both become "2").
std::string canonical_number(double value);
/// Parses a numeric literal; nullopt unless the whole string is a number.
std::optional<double> parse_number(std::string_view text);

/// Concepts, the sort lattice and the declared domain of one workspace.
class Ontology {
 public:
  Ontology();

  const Concept& declare_sort(const std::string& name, std::size_t arity,
                              std::vector<std::string> attribute_sorts);
  void declare_isa(const std::string& sub, const std::string& super);
  bool is_subsort(std::string_view sub, std::string_view super) const;

  bool has_sort(std::string_view name) const { return lattice_.contains(name); }
  const Concept& concept_named(std::string_view name) const;
  const Concept* find_concept(std::string_view name) const;
  /// Concept names in declaration order.
  const std::vector<std::string>& concept_names() const { return order_; }
  /// Appends an attribute sort to an existing concept.
  void append_attribute(const std::string& concept_name, const std::string& sort);
  const SortLattice& lattice() const { return lattice_; }

  /// Declares a particular with its dynamic sort. Redeclaring the same
  /// lexeme with a different sort throws DuplicateName.
  ElementId declare_particular(const std::string& lexeme, const std::string& sort);
  /// Fixes the extent of a sort. Lexemes not yet declared become
  /// particulars of that sort (numerals get their numeric dynamic sort).
  void declare_extent(const std::string& sort, const std::vector<std::string>& lexemes);
  const std::vector<ElementId>* declared_extent(std::string_view sort) const;
  const std::map<std::string, std::vector<ElementId>, std::less<>>& declared_extents() const {
    return extents_;
  }

  std::optional<ElementId> find_particular(std::string_view lexeme) const;
  /// Element for a numeric value, interned on demand (not part of the
  /// quantification domain unless declared).
  ElementId intern_number(double value) const;
  /// Most specific declared numeric sort containing the value.
  std::string numeric_sort_for(double value) const;
  bool is_numeric_sort(std::string_view name) const;
  /// True if quantifying over the sort would range over an unbounded numeric sort.
  bool is_infinite(std::string_view sort) const;

  /// D_s = { u | δ(u) ⊑ s } over the declared domain.
  std::vector<ElementId> valid_elements(std::string_view sort) const;
  /// valid_elements() that additionally refuses unbounded sorts.
  std::vector<ElementId> quantifier_domain(std::string_view sort) const;
  /// Declared particulars in declaration order.
  const std::vector<ElementId>& declared_elements() const { return declared_; }

  /// Extent of a relational concept used as a single sort, derived from the
  /// IS-A tree below it. `sort_extent` supplies ‖s‖ for the leaf sorts.
  std::set<std::string> derived_sort_extent(
      std::string_view concept_name,
      const std::function<std::vector<std::string>(const std::string&)>& sort_extent) const;

  /// Element standing for a named concept (arity ≥ 1) or proposition.
  ElementId concept_element(const std::string& name, std::size_t arity) const;
  ElementId truth() const { return truth_; }
  ElementId truth_value(bool value) const { return value ? true_ : false_; }

  Universe& universe() const { return universe_; }
  const ElementInfo& info(ElementId id) const { return universe_.info(id); }
  const std::string& lexeme(ElementId id) const { return universe_.info(id).name; }
  const std::string& dynamic_sort(ElementId id) const { return universe_.info(id).dynamic_sort; }

 private:
  void require_sort(std::string_view name) const;

  SortLattice lattice_;
  std::map<std::string, Concept, std::less<>> concepts_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<ElementId>, std::less<>> extents_;
  std::vector<ElementId> declared_;
  mutable Universe universe_;
  ElementId truth_{};
  ElementId true_{};
  ElementId false_{};

  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::vector<ElementId>, std::less<>> domain_cache_;
};

}  // namespace ifol
