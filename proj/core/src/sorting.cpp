#include "ifol/sorting.hpp"

#include "ifol/error.hpp"

namespace ifol {

const PredicateDecl& Signature::declare_predicate(const std::string& symbol, std::vector<std::string> sorts,
                                                  std::optional<BuiltinPredicate> builtin) {
  if (predicates_.count(symbol) || functions_.count(symbol)) {
    throw Error(ErrorKind::DuplicateName, "symbol '" + symbol + "' is already declared");
  }
  for (const auto& s : sorts) require_sort(s, !builtin);
  if (builtin && builtin->arity != sorts.size()) {
    throw Error(ErrorKind::ArityMismatch, "evaluator '" + builtin->name + "' takes " +
                                              std::to_string(builtin->arity) + " arguments");
  }
  return predicates_.emplace(symbol, PredicateDecl{symbol, std::move(sorts), std::move(builtin)}).first->second;
}

const FunctionDecl& Signature::declare_function(const std::string& symbol, std::vector<std::string> arg_sorts,
                                                const std::string& result_sort,
                                                std::optional<BuiltinFunction> builtin) {
  if (predicates_.count(symbol) || functions_.count(symbol)) {
    throw Error(ErrorKind::DuplicateName, "symbol '" + symbol + "' is already declared");
  }
  for (const auto& s : arg_sorts) require_sort(s, false);
  require_sort(result_sort, false);
  if (builtin && builtin->arity != arg_sorts.size()) {
    throw Error(ErrorKind::ArityMismatch, "evaluator '" + builtin->name + "' takes " +
                                              std::to_string(builtin->arity) + " arguments");
  }
  return functions_
      .emplace(symbol, FunctionDecl{symbol, std::move(arg_sorts), result_sort, std::move(builtin)})
      .first->second;
}

void Signature::append_predicate_sort(const std::string& symbol, const std::string& sort) {
  auto it = predicates_.find(symbol);
  if (it == predicates_.end()) throw Error(ErrorKind::UnregisteredPredicate, "unknown predicate '" + symbol + "'");
  require_sort(sort, true);
  it->second.sorts.push_back(sort);
}

const PredicateDecl* Signature::predicate(std::string_view symbol) const {
  auto it = predicates_.find(symbol);
  return it == predicates_.end() ? nullptr : &it->second;
}

const FunctionDecl* Signature::function(std::string_view symbol) const {
  auto it = functions_.find(symbol);
  return it == functions_.end() ? nullptr : &it->second;
}

void Signature::require_sort(const std::string& sort, bool allow_nested) const {
  if (!ontology_->has_sort(sort)) throw Error(ErrorKind::UnknownSort, "unknown sort '" + sort + "'");
  if (!allow_nested && sort == kNestedSentence) {
    throw Error(ErrorKind::SortViolation, "'nested sentence' is only allowed as a predicate position");
  }
}

std::string static_sort(const Term& t, const Signature& sig, const Ontology& ontology) {
  switch (t.kind()) {
    case TermKind::Var: return t.variable().sort;
    case TermKind::Const: {
      if (const FunctionDecl* f = sig.function(t.symbol()); f && f->arg_sorts.empty()) return f->result_sort;
      if (auto p = ontology.find_particular(t.symbol()); p && ontology.info(*p).declared) {
        return ontology.dynamic_sort(*p);
      }
      if (auto v = parse_number(t.symbol())) return ontology.numeric_sort_for(*v);
      throw Error(ErrorKind::UnknownSymbol, "unknown constant '" + t.symbol() + "'");
    }
    case TermKind::FnApp:
      if (const FunctionDecl* f = sig.function(t.symbol())) return f->result_sort;
      throw Error(ErrorKind::UnknownSymbol, "unknown function '" + t.symbol() + "'");
    case TermKind::Abstracted: return std::string(kNestedSentence);
  }
  return std::string(kEverything);
}

std::vector<std::string> virtual_predicate_sort(const Formula& f) {
  auto vars = free_vars(f);
  if (vars.empty()) throw Error(ErrorKind::ClosedFormula, "a sentence has no virtual predicate sort");
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back(v.sort);
  return out;
}

std::string format_sort_error(const std::string& formula_id, const SortError& e) {
  std::string head = "SORT-ERR " + formula_id + " ";
  switch (e.kind) {
    case SortError::Kind::Mismatch:
      return head + "arg" + std::to_string(e.position) + ": found " + e.found + " required " + e.required;
    case SortError::Kind::UnknownSymbol: return head + "unknown-symbol " + e.symbol;
    case SortError::Kind::UnknownSort: return head + "unknown-sort " + e.symbol;
    case SortError::Kind::Arity:
      return head + "arity " + e.symbol + ": found " + e.found + " required " + e.required;
  }
  return head;
}

namespace {

class Checker {
 public:
  Checker(const Signature& sig, const Ontology& ontology) : sig_(sig), ontology_(ontology) {}

  std::vector<SortError> errors;

  void formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Truth: return;
      case FormulaKind::Atom: {
        const PredicateDecl* p = sig_.predicate(f.predicate());
        if (p == nullptr) {
          errors.push_back({SortError::Kind::UnknownSymbol, 0, "", "", f.predicate()});
          for (const auto& a : f.args()) untyped(a);
          return;
        }
        if (p->sorts.size() != f.args().size()) {
          errors.push_back({SortError::Kind::Arity, 0, std::to_string(f.args().size()),
                            std::to_string(p->sorts.size()), f.predicate()});
          return;
        }
        for (std::size_t i = 0; i < f.args().size(); ++i) term(f.args()[i], p->sorts[i], i + 1);
        return;
      }
      case FormulaKind::Not: formula(f.operand()); return;
      case FormulaKind::And:
        formula(f.left());
        formula(f.right());
        return;
      case FormulaKind::Exists:
        variable(f.bound());
        formula(f.operand());
        return;
    }
  }

  void term(const Term& t, const std::string& expected, std::size_t position) {
    if (t.kind() == TermKind::Abstracted) {
      if (expected != kNestedSentence) mismatch(position, std::string(kNestedSentence), expected);
      formula(t.body());
      return;
    }
    std::optional<std::string> found;
    switch (t.kind()) {
      case TermKind::Var:
        if (!variable(t.variable())) return;
        found = t.variable().sort;
        break;
      case TermKind::Const:
        try {
          found = static_sort(t, sig_, ontology_);
        } catch (const Error&) {
          errors.push_back({SortError::Kind::UnknownSymbol, 0, "", "", t.symbol()});
          return;
        }
        break;
      case TermKind::FnApp: {
        const FunctionDecl* fn = sig_.function(t.symbol());
        if (fn == nullptr) {
          errors.push_back({SortError::Kind::UnknownSymbol, 0, "", "", t.symbol()});
          for (const auto& a : t.args()) untyped(a);
          return;
        }
        if (fn->arg_sorts.size() != t.args().size()) {
          errors.push_back({SortError::Kind::Arity, 0, std::to_string(t.args().size()),
                            std::to_string(fn->arg_sorts.size()), t.symbol()});
          return;
        }
        for (std::size_t i = 0; i < t.args().size(); ++i) term(t.args()[i], fn->arg_sorts[i], i + 1);
        found = fn->result_sort;
        break;
      }
      case TermKind::Abstracted: break;
    }
    if (!ontology_.has_sort(expected)) {
      errors.push_back({SortError::Kind::UnknownSort, 0, "", "", expected});
      return;
    }
    if (expected == kNestedSentence || !ontology_.is_subsort(*found, expected)) {
      mismatch(position, *found, expected);
    }
  }

 private:
  // Terms under an unknown symbol: report what can be reported.
  void untyped(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: variable(t.variable()); return;
      case TermKind::Const:
        try {
          static_sort(t, sig_, ontology_);
        } catch (const Error&) {
          errors.push_back({SortError::Kind::UnknownSymbol, 0, "", "", t.symbol()});
        }
        return;
      case TermKind::FnApp:
        if (!sig_.function(t.symbol())) errors.push_back({SortError::Kind::UnknownSymbol, 0, "", "", t.symbol()});
        for (const auto& a : t.args()) untyped(a);
        return;
      case TermKind::Abstracted: formula(t.body()); return;
    }
  }

  bool variable(const Variable& v) {
    if (!ontology_.has_sort(v.sort) || v.sort == kNestedSentence) {
      errors.push_back({SortError::Kind::UnknownSort, 0, "", "", v.sort});
      return false;
    }
    return true;
  }

  void mismatch(std::size_t position, std::string found, std::string required) {
    errors.push_back({SortError::Kind::Mismatch, position, std::move(found), std::move(required), ""});
  }

  const Signature& sig_;
  const Ontology& ontology_;
};

}  // namespace

std::vector<SortError> check_term(const Term& t, const std::string& expected, const Signature& sig,
                                  const Ontology& ontology) {
  Checker c(sig, ontology);
  c.term(t, expected, 1);
  return std::move(c.errors);
}

std::vector<SortError> check_formula(const Formula& f, const Signature& sig, const Ontology& ontology) {
  Checker c(sig, ontology);
  c.formula(f);
  return std::move(c.errors);
}

Formula substitute_checked(const Formula& f, const Variable& x, const Term& t, const Signature& sig,
                           const Ontology& ontology) {
  std::string s = static_sort(t, sig, ontology);
  if (!ontology.is_subsort(s, x.sort)) {
    throw Error(ErrorKind::SortMismatch, "cannot substitute a term of sort '" + s + "' for '" + x.name +
                                             "' of sort '" + x.sort + "'");
  }
  return substitute(f, x, t);
}

}  // namespace ifol
