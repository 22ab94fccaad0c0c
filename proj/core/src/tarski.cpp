#include "ifol/error.hpp"
#include "ifol/semantics.hpp"

namespace ifol {

namespace {

GroundFormula expand(const WorldSpace& space, const Formula& f) {
  GroundFormula out;
  switch (f.kind()) {
    case FormulaKind::Truth: out.kind = GroundFormula::Kind::Truth; return out;
    case FormulaKind::Atom:
      out.kind = GroundFormula::Kind::Atom;
      out.predicate = f.predicate();
      out.args = f.args();
      return out;
    case FormulaKind::Not:
      out.kind = GroundFormula::Kind::Not;
      out.children.push_back(expand(space, f.operand()));
      return out;
    case FormulaKind::And:
      out.kind = GroundFormula::Kind::And;
      out.children.push_back(expand(space, f.left()));
      out.children.push_back(expand(space, f.right()));
      return out;
    case FormulaKind::Exists: {
      out.kind = GroundFormula::Kind::Or;
      const Ontology& ont = space.workspace().ontology;
      for (ElementId d : space.domain(f.bound().sort)) {
        Formula instance = substitute(f.operand(), f.bound(), Term::constant(ont.lexeme(d)));
        out.children.push_back(expand(space, instance));
      }
      return out;
    }
  }
  return out;
}

double number_of(const Ontology& ont, ElementId id) {
  if (auto v = parse_number(ont.lexeme(id)); v && ont.info(id).kind == ElementKind::Particular) return *v;
  throw Error(ErrorKind::EvaluationFailure, "'" + ont.lexeme(id) + "' is not a number");
}

// Value of a variable-free term in a world.
ElementId ground_value(const WorldSpace& space, const World& w, const Term& t) {
  const Workspace& ws = space.workspace();
  const Ontology& ont = ws.ontology;
  switch (t.kind()) {
    case TermKind::Var:
      throw Error(ErrorKind::UnboundVariable, "'" + t.variable().name + "' survived grounding");
    case TermKind::Const: {
      const FunctionDecl* fn = ws.signature.function(t.symbol());
      if (fn != nullptr && fn->arg_sorts.empty() && !fn->builtin) {
        return w.functions[*space.function_index(t.symbol())].at(Tuple{});
      }
      if (auto id = ont.find_particular(t.symbol())) return *id;
      if (auto v = parse_number(t.symbol())) return ont.intern_number(*v);
      throw Error(ErrorKind::UnknownSymbol, "unknown constant '" + t.symbol() + "'");
    }
    case TermKind::FnApp: {
      Tuple args;
      for (const auto& a : t.args()) args.push_back(ground_value(space, w, a));
      const FunctionDecl* fn = ws.signature.function(t.symbol());
      if (fn == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown function '" + t.symbol() + "'");
      if (fn->builtin) {
        std::vector<double> xs;
        for (ElementId a : args) xs.push_back(number_of(ont, a));
        return ont.intern_number(fn->builtin->eval(xs));
      }
      const auto& graph = w.functions[*space.function_index(t.symbol())];
      auto it = graph.find(args);
      if (it == graph.end()) throw Error(ErrorKind::FunctionUndefinedAt, "'" + t.symbol() + "' is undefined here");
      return it->second;
    }
    case TermKind::Abstracted:
      if (!t.beta().empty()) throw Error(ErrorKind::UnboundVariable, "abstraction term survived grounding");
      return ws.interpretation.interpret(t.body());
  }
  throw Error(ErrorKind::EvaluationFailure, "unreachable term kind");
}

}  // namespace

GroundFormula tarski_ground(const WorldSpace& space, const Formula& f, const Assignment& g) {
  Grounding values;
  for (const auto& v : free_vars(f)) {
    auto it = g.find(v.name);
    if (it == g.end()) throw Error(ErrorKind::UnboundVariable, "no value for '" + v.name + "'");
    values[v.name] = space.workspace().ontology.lexeme(it->second);
  }
  return expand(space, ground_instance(f, values));
}

bool tarski_truth(const WorldSpace& space, const World& w, const GroundFormula& f) {
  switch (f.kind) {
    case GroundFormula::Kind::Truth: return true;
    case GroundFormula::Kind::Atom: {
      const Workspace& ws = space.workspace();
      const PredicateDecl* p = ws.signature.predicate(f.predicate);
      if (p == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown predicate '" + f.predicate + "'");
      Tuple args;
      for (const auto& a : f.args) args.push_back(ground_value(space, w, a));
      if (p->builtin) {
        std::vector<double> xs;
        for (ElementId a : args) xs.push_back(number_of(ws.ontology, a));
        return p->builtin->eval(xs);
      }
      return w.relations[*space.predicate_index(f.predicate)].count(args) > 0;
    }
    case GroundFormula::Kind::Not: return !tarski_truth(space, w, f.children[0]);
    case GroundFormula::Kind::And:
      return tarski_truth(space, w, f.children[0]) && tarski_truth(space, w, f.children[1]);
    case GroundFormula::Kind::Or:
      for (const auto& c : f.children) {
        if (tarski_truth(space, w, c)) return true;
      }
      return false;
  }
  return false;
}

bool tarski_eval(const WorldSpace& space, const World& w, const Assignment& g, const Formula& f) {
  return tarski_truth(space, w, tarski_ground(space, f, g));
}

}  // namespace ifol
