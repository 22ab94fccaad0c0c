#pragma once

// Sorted terms and formulas. Only ⊤, atoms, ¬, ∧ and ∃ are primitive;
// the remaining connectives are built from these.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ifol {

struct Variable {
  std::string name;
  std::string sort;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

class Formula;

enum class TermKind { Var, Const, FnApp, Abstracted };

class Term {
 public:
  static Term var(Variable v);
  static Term constant(std::string symbol);
  static Term apply(std::string symbol, std::vector<Term> args);

  TermKind kind() const;
  const Variable& variable() const;
  /// Constant or function symbol.
  const std::string& symbol() const;
  const std::vector<Term>& args() const;
  const Formula& body() const;
  const std::vector<Variable>& alpha() const;
  const std::vector<Variable>& beta() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Term mk_abstracted(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta);
  friend Term make_abstracted_unchecked(Formula body, std::vector<Variable> alpha,
                                        std::vector<Variable> beta);

  std::shared_ptr<const Node> node_;
};

enum class FormulaKind { Truth, Atom, Not, And, Exists };

class Formula {
 public:
  static Formula truth();
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula exists(Variable v, Formula body);

  FormulaKind kind() const;
  const std::string& predicate() const;
  const std::vector<Term>& args() const;
  /// Operand of ¬, body of ∃.
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;
  const Variable& bound() const;

  /// Connective depth (atoms and ⊤ have depth 0).
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Derived connectives.
Formula falsum();
Formula disjunction(Formula a, Formula b);
Formula implication(Formula a, Formula b);
Formula forall(Variable v, Formula body);

/// ⋖body⋗ with hidden variables alpha and visible variables beta.
/// Both lists are reordered by first appearance in the body.
Term mk_abstracted(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta);

/// Free variables in order of first appearance. An abstraction term
/// contributes only its beta variables.
std::vector<Variable> free_vars(const Formula& f);
std::vector<Variable> free_vars(const Term& t);
/// Every variable occurring anywhere, bound, hidden or free.
std::vector<Variable> all_vars(const Formula& f);

bool is_sentence(const Formula& f);

/// φ[x/t]. Throws VariableCapture when a free variable of t would be bound.
Formula substitute(const Formula& f, const Variable& x, const Term& t);
Term substitute(const Term& s, const Variable& x, const Term& t);

/// Variable name to lexeme of the value it denotes.
using Grounding = std::map<std::string, std::string>;

/// φ/g: every free variable replaced by the constant naming its value.
/// Throws UnboundVariable when g misses a free variable.
Formula ground_instance(const Formula& f, const Grounding& g);
Term ground_instance(const Term& t, const Grounding& g);
/// Replaces the free variables that g names and leaves the others free.
Formula bind_variables(const Formula& f, const Grounding& g);

/// Text form accepted by the workspace parser. With `annotate`, every
/// variable occurrence carries its sort.
std::string to_string(const Term& t, bool annotate = false);
std::string to_string(const Formula& f, bool annotate = false);
/// A name as it must be written in workspace text (quoted when needed).
std::string quote_name(const std::string& name);

}  // namespace ifol
