#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifol/builtins.hpp"
#include "ifol/kernel.hpp"
#include "ifol/syntax.hpp"

namespace ifol {

struct PredicateDecl {
  std::string symbol;
  std::vector<std::string> sorts;
  /// Set for computed predicates.
  std::optional<BuiltinPredicate> builtin;
};

struct FunctionDecl {
  std::string symbol;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  std::optional<BuiltinFunction> builtin;
};

/// Predicate, function and constant symbols with their sorts. Constants
/// are nullary functions.
class Signature {
 public:
  explicit Signature(const Ontology& ontology) : ontology_(&ontology) {}

  const PredicateDecl& declare_predicate(const std::string& symbol, std::vector<std::string> sorts,
                                         std::optional<BuiltinPredicate> builtin = std::nullopt);
  const FunctionDecl& declare_function(const std::string& symbol, std::vector<std::string> arg_sorts,
                                       const std::string& result_sort,
                                       std::optional<BuiltinFunction> builtin = std::nullopt);
  void append_predicate_sort(const std::string& symbol, const std::string& sort);

  const PredicateDecl* predicate(std::string_view symbol) const;
  const FunctionDecl* function(std::string_view symbol) const;
  const std::map<std::string, PredicateDecl, std::less<>>& predicates() const { return predicates_; }
  const std::map<std::string, FunctionDecl, std::less<>>& functions() const { return functions_; }

 private:
  void require_sort(const std::string& sort, bool allow_nested) const;

  const Ontology* ontology_;
  std::map<std::string, PredicateDecl, std::less<>> predicates_;
  std::map<std::string, FunctionDecl, std::less<>> functions_;
};

/// Ϝ(t). Constants resolve as nullary functions, then particulars, then numerals.
std::string static_sort(const Term& t, const Signature& sig, const Ontology& ontology);

/// Sorts of the free variables of an open formula, in order.
std::vector<std::string> virtual_predicate_sort(const Formula& f);

struct SortError {
  enum class Kind { Mismatch, UnknownSymbol, UnknownSort, Arity };
  Kind kind = Kind::Mismatch;
  std::size_t position = 0;  // 1-based argument index
  std::string found;
  std::string required;
  std::string symbol;

  friend auto operator<=>(const SortError&, const SortError&) = default;
};

/// `SORT-ERR <id> ...` line.
std::string format_sort_error(const std::string& formula_id, const SortError& e);

std::vector<SortError> check_term(const Term& t, const std::string& expected, const Signature& sig,
                                  const Ontology& ontology);
/// Every error in the formula; does not stop at the first.
std::vector<SortError> check_formula(const Formula& f, const Signature& sig, const Ontology& ontology);

/// φ[x/t] after checking Ϝ(t) ⊑ Ϝ(x). Throws SortMismatch.
Formula substitute_checked(const Formula& f, const Variable& x, const Term& t, const Signature& sig,
                           const Ontology& ontology);

}  // namespace ifol
