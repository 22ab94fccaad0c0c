#include <algorithm>

#include "ifol/error.hpp"
#include "ifol/semantics.hpp"

namespace ifol {

namespace {

double numeric_value(const Ontology& ont, ElementId id, const std::string& symbol) {
  const auto& info = ont.info(id);
  if (info.kind == ElementKind::Particular) {
    if (auto v = parse_number(info.name)) return *v;
  }
  throw Error(ErrorKind::EvaluationFailure, "'" + symbol + "' needs numbers, got '" + info.name + "'");
}

}  // namespace

ElementId eval_term(const WorldSpace& space, const World& w, const Term& t, const Assignment& g) {
  const Workspace& ws = space.workspace();
  const Ontology& ont = ws.ontology;
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = g.find(t.variable().name);
      if (it == g.end()) throw Error(ErrorKind::UnboundVariable, "no value for '" + t.variable().name + "'");
      return it->second;
    }
    case TermKind::Const: {
      if (auto idx = space.function_index(t.symbol())) {
        auto it = w.functions[*idx].find(Tuple{});
        if (it == w.functions[*idx].end()) {
          throw Error(ErrorKind::FunctionUndefinedAt, "constant '" + t.symbol() + "' has no value");
        }
        return it->second;
      }
      return ws.interpretation.interpret_constant(t.symbol());
    }
    case TermKind::FnApp: {
      Tuple args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(eval_term(space, w, a, g));
      const FunctionDecl* fn = ws.signature.function(t.symbol());
      if (fn == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown function '" + t.symbol() + "'");
      if (fn->builtin) {
        std::vector<double> values;
        for (ElementId a : args) values.push_back(numeric_value(ont, a, t.symbol()));
        return ont.intern_number(fn->builtin->eval(values));
      }
      auto idx = space.function_index(t.symbol());
      if (idx) {
        auto it = w.functions[*idx].find(args);
        if (it != w.functions[*idx].end()) return it->second;
      }
      std::string at;
      for (ElementId a : args) at += (at.empty() ? "" : ", ") + ont.lexeme(a);
      throw Error(ErrorKind::FunctionUndefinedAt, "'" + t.symbol() + "' is undefined at (" + at + ")");
    }
    case TermKind::Abstracted: {
      if (t.beta().empty()) return ws.interpretation.interpret(t.body());
      Grounding visible;
      for (const auto& v : t.beta()) {
        auto it = g.find(v.name);
        if (it == g.end()) throw Error(ErrorKind::UnboundVariable, "no value for '" + v.name + "'");
        visible[v.name] = ont.lexeme(it->second);
      }
      return ws.interpretation.interpret_term(ground_instance(t, visible));
    }
  }
  throw Error(ErrorKind::EvaluationFailure, "unreachable term kind");
}

bool eval_atom(const WorldSpace& space, const World& w, const Formula& atom, const Assignment& g) {
  const Workspace& ws = space.workspace();
  const PredicateDecl* p = ws.signature.predicate(atom.predicate());
  if (p == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown predicate '" + atom.predicate() + "'");
  Tuple args;
  args.reserve(atom.args().size());
  for (const auto& a : atom.args()) args.push_back(eval_term(space, w, a, g));
  if (p->builtin) {
    std::vector<double> values;
    for (ElementId a : args) values.push_back(numeric_value(ws.ontology, a, atom.predicate()));
    return p->builtin->eval(values);
  }
  auto idx = space.predicate_index(atom.predicate());
  if (!idx) throw Error(ErrorKind::UnknownSymbol, "predicate '" + atom.predicate() + "' has no extension");
  return w.relations[*idx].count(args) > 0;
}

namespace {

// Tuples over `vars` of the atom (free of hidden variables) true in w.
Relation scan_atom(const WorldSpace& space, const World& w, const Formula& atom, const std::vector<Variable>& vars) {
  const Workspace& ws = space.workspace();
  const PredicateDecl* p = ws.signature.predicate(atom.predicate());
  if (p == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown predicate '" + atom.predicate() + "'");

  bool scannable = !p->builtin;
  for (const auto& a : atom.args()) {
    if (a.kind() != TermKind::Var && !free_vars(a).empty()) scannable = false;
  }

  Relation out;
  if (!scannable) {
    for (const auto& g : assignments(space, vars)) {
      if (!eval_atom(space, w, atom, g)) continue;
      Tuple t;
      for (const auto& v : vars) t.push_back(g.at(v.name));
      out.insert(std::move(t));
    }
    return out;
  }

  // Pattern scan of the predicate's relation.
  std::vector<std::optional<ElementId>> fixed(atom.args().size());
  for (std::size_t i = 0; i < atom.args().size(); ++i) {
    if (atom.args()[i].kind() != TermKind::Var) fixed[i] = eval_term(space, w, atom.args()[i], {});
  }
  const Relation& rel = w.relations[*space.predicate_index(atom.predicate())];
  for (const auto& row : rel) {
    Assignment g;
    bool match = true;
    for (std::size_t i = 0; i < row.size() && match; ++i) {
      if (fixed[i]) {
        match = *fixed[i] == row[i];
        continue;
      }
      const Variable& v = atom.args()[i].variable();
      auto [it, fresh] = g.emplace(v.name, row[i]);
      match = fresh ? space.in_domain(row[i], v.sort) : it->second == row[i];
    }
    if (!match) continue;
    Tuple t;
    for (const auto& v : vars) t.push_back(g.at(v.name));
    out.insert(std::move(t));
  }
  return out;
}

}  // namespace

Relation atom_extension(const WorldSpace& space, const World& w, const Formula& atom) {
  const Workspace& ws = space.workspace();
  auto hidden = ws.interpretation.hidden_variables(atom);
  auto vars = ws.interpretation.attribute_variables(atom);
  if (hidden.empty()) return scan_atom(space, w, atom, vars);
  std::vector<Assignment> outer;
  try {
    outer = assignments(space, hidden);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InfiniteExtent) throw;
    throw Error(ErrorKind::InfiniteHiddenDomain, e.detail());
  }
  Relation out;
  for (const auto& g : outer) {
    Formula instance = bind_variables(atom, to_grounding(ws.ontology, g));
    auto part = scan_atom(space, w, instance, vars);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::vector<Assignment> accessible(const WorldSpace& space, const Assignment& g, const Variable& x) {
  std::vector<Assignment> out;
  for (ElementId d : space.domain(x.sort)) {
    Assignment next = g;
    next[x.name] = d;
    out.push_back(std::move(next));
  }
  return out;
}

bool related(const Assignment& a, const Assignment& b, const std::string& x) {
  for (const auto& [name, value] : a) {
    if (name == x) continue;
    auto it = b.find(name);
    if (it == b.end() || it->second != value) return false;
  }
  for (const auto& [name, value] : b) {
    if (name != x && !a.count(name)) return false;
  }
  return true;
}

bool satisfies(const WorldSpace& space, const World& w, const Assignment& g, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Truth: return true;
    case FormulaKind::Atom: return eval_atom(space, w, f, g);
    case FormulaKind::Not: return !satisfies(space, w, g, f.operand());
    case FormulaKind::And: return satisfies(space, w, g, f.left()) && satisfies(space, w, g, f.right());
    case FormulaKind::Exists: {
      // Walks the R_x-successors of g one at a time on a single copy.
      Assignment next = g;
      ElementId& slot = next[f.bound().name];
      for (ElementId d : space.domain(f.bound().sort)) {
        slot = d;
        if (satisfies(space, w, next, f.operand())) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace ifol
