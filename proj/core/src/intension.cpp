#include <algorithm>

#include "ifol/error.hpp"
#include "ifol/parallel.hpp"
#include "ifol/semantics.hpp"

namespace ifol {

// --- consequence -----------------------------------------------------------

bool is_model(const WorldSpace& space, const World& w, const std::vector<Formula>& axioms) {
  for (const auto& a : axioms) {
    for (const auto& g : assignments(space, free_vars(a))) {
      if (!satisfies(space, w, g, a)) return false;
    }
  }
  return true;
}

ConsequenceResult consequence(const WorldSpace& space, const std::vector<World>& worlds,
                              const std::vector<Formula>& axioms, const Formula& goal) {
  struct Outcome {
    bool model = false;
    std::optional<Assignment> counter;
  };
  auto goal_assignments = assignments(space, free_vars(goal));
  std::vector<Outcome> outcomes(worlds.size());
  parallel_for(worlds.size(), space.options().threads, [&](std::size_t i) {
    if (!is_model(space, worlds[i], axioms)) return;
    outcomes[i].model = true;
    for (const auto& g : goal_assignments) {
      if (!satisfies(space, worlds[i], g, goal)) {
        outcomes[i].counter = g;
        return;
      }
    }
  });
  ConsequenceResult r;
  r.worlds = worlds.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].model) continue;
    ++r.models;
    if (outcomes[i].counter && !r.counter_world) {
      r.holds = false;
      r.counter_world = i;
      r.counter_assignment = *outcomes[i].counter;
    }
  }
  return r;
}

// --- Montague intension ----------------------------------------------------

std::vector<Relation> montague_intension(const WorldSpace& space, const std::vector<World>& worlds,
                                         const Formula& f) {
  const auto& interp = space.workspace().interpretation;
  auto tuple_vars = interp.attribute_variables(f);
  auto all = assignments(space, free_vars(f));
  std::vector<Relation> out(worlds.size());
  parallel_for(worlds.size(), space.options().threads, [&](std::size_t i) {
    for (const auto& g : all) {
      if (!satisfies(space, worlds[i], g, f)) continue;
      Tuple t;
      for (const auto& v : tuple_vars) t.push_back(g.at(v.name));
      out[i].insert(std::move(t));
    }
  });
  return out;
}

// --- relational extension of concepts --------------------------------------

namespace {

struct Table {
  std::vector<Variable> vars;
  Relation rows;
};

std::size_t position(const std::vector<Variable>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return i;
  }
  return vars.size();
}

// Reorders (and drops) columns to match `target`.
Relation project(const Table& t, const std::vector<Variable>& target) {
  std::vector<std::size_t> cols;
  for (const auto& v : target) {
    std::size_t p = position(t.vars, v.name);
    if (p == t.vars.size()) throw Error(ErrorKind::UnboundVariable, "column '" + v.name + "' is missing");
    cols.push_back(p);
  }
  Relation out;
  for (const auto& row : t.rows) {
    Tuple r;
    r.reserve(cols.size());
    for (std::size_t c : cols) r.push_back(row[c]);
    out.insert(std::move(r));
  }
  return out;
}

Table join(const Table& a, const Table& b, const std::vector<Variable>& target) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    std::size_t j = position(b.vars, a.vars[i].name);
    if (j < b.vars.size()) shared.emplace_back(i, j);
  }
  std::vector<std::pair<bool, std::size_t>> source;  // (from a, column)
  for (const auto& v : target) {
    std::size_t i = position(a.vars, v.name);
    if (i < a.vars.size()) {
      source.emplace_back(true, i);
    } else {
      source.emplace_back(false, position(b.vars, v.name));
    }
  }
  Table out{target, {}};
  for (const auto& ra : a.rows) {
    for (const auto& rb : b.rows) {
      bool ok = std::all_of(shared.begin(), shared.end(), [&](const auto& p) { return ra[p.first] == rb[p.second]; });
      if (!ok) continue;
      Tuple r;
      r.reserve(source.size());
      for (const auto& [from_a, c] : source) r.push_back(from_a ? ra[c] : rb[c]);
      out.rows.insert(std::move(r));
    }
  }
  return out;
}

Relation product(const WorldSpace& space, const std::vector<Variable>& vars) {
  Relation out;
  for (const auto& g : assignments(space, vars)) {
    Tuple t;
    for (const auto& v : vars) t.push_back(g.at(v.name));
    out.insert(std::move(t));
  }
  return out;
}

Table extension(const WorldSpace& space, const World& w, const Formula& f) {
  auto vars = free_vars(f);
  switch (f.kind()) {
    case FormulaKind::Truth: return {{}, {Tuple{}}};
    case FormulaKind::Atom: {
      const auto& interp = space.workspace().interpretation;
      auto hidden = interp.hidden_variables(f);
      if (hidden.empty()) return {vars, project({interp.attribute_variables(f), atom_extension(space, w, f)}, vars)};
      // Keep the hidden columns: one instantiated scan per hidden assignment.
      Table out{vars, {}};
      auto shown = interp.attribute_variables(f);
      for (const auto& g : assignments(space, hidden)) {
        Formula instance = bind_variables(f, to_grounding(space.workspace().ontology, g));
        Table part{shown, atom_extension(space, w, instance)};
        for (const auto& row : part.rows) {
          Tuple r;
          for (const auto& v : vars) {
            auto it = g.find(v.name);
            r.push_back(it != g.end() ? it->second : row[position(shown, v.name)]);
          }
          out.rows.insert(std::move(r));
        }
      }
      return out;
    }
    case FormulaKind::Not: {
      Table inner = extension(space, w, f.operand());
      Relation kept = project(inner, vars);
      Table out{vars, {}};
      for (auto& t : product(space, vars)) {
        if (!kept.count(t)) out.rows.insert(t);
      }
      return out;
    }
    case FormulaKind::And:
      return join(extension(space, w, f.left()), extension(space, w, f.right()), vars);
    case FormulaKind::Exists: {
      Table inner = extension(space, w, f.operand());
      if (position(inner.vars, f.bound().name) == inner.vars.size()) {
        if (space.domain(f.bound().sort).empty()) return {vars, {}};
        return {vars, project(inner, vars)};
      }
      return {vars, project(inner, vars)};
    }
  }
  return {vars, {}};
}

}  // namespace

Relation formula_extension(const WorldSpace& space, const World& w, const Formula& f) {
  return extension(space, w, f).rows;
}

Relation concept_extension(const WorldSpace& space, const World& w, ElementId concept_id) {
  const Workspace& ws = space.workspace();
  const Ontology& ont = ws.ontology;
  if (concept_id == ont.truth()) return {Tuple{}};
  const auto& info = ont.info(concept_id);
  if (info.kind == ElementKind::Particular) {
    throw Error(ErrorKind::EvaluationFailure, "'" + info.name + "' is a particular, not a concept");
  }
  if (auto p = ws.interpretation.predicate_of(concept_id)) {
    if (auto idx = space.predicate_index(*p)) return w.relations[*idx];
  }
  auto def = ws.interpretation.definition(concept_id);
  if (!def) throw Error(ErrorKind::UnknownSymbol, "no extension rule for concept '" + info.name + "'");
  if (def->kind == ConceptDefinition::Kind::Union) {
    Relation out;
    for (ElementId part : def->parts) {
      auto r = concept_extension(space, w, part);
      out.insert(r.begin(), r.end());
    }
    return out;
  }
  const Formula& f = *def->formula;
  if (f.kind() == FormulaKind::Atom && !ws.interpretation.hidden_variables(f).empty()) {
    return atom_extension(space, w, f);
  }
  return project(extension(space, w, f), def->tuple);
}

BealerMontagueResult bealer_montague_check(const WorldSpace& space, const std::vector<World>& worlds,
                                           const Formula& f) {
  ElementId id = space.workspace().interpretation.interpret(f);
  auto intension = montague_intension(space, worlds, f);
  std::vector<Relation> concept_side(worlds.size());
  parallel_for(worlds.size(), space.options().threads,
               [&](std::size_t i) { concept_side[i] = concept_extension(space, worlds[i], id); });
  BealerMontagueResult r;
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (concept_side[i] != intension[i]) {
      r.ok = false;
      r.mismatch_world = i;
      r.concept_side = concept_side[i];
      r.intension_side = intension[i];
      break;
    }
  }
  return r;
}

// --- rendering -------------------------------------------------------------

std::string render_tuple(const Ontology& ontology, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += ontology.lexeme(t[i]);
  }
  return out + ")";
}

std::string render_relation(const Ontology& ontology, const Relation& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& t : r) {
    std::vector<std::string> row;
    for (ElementId e : t) row.push_back(ontology.lexeme(e));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "{";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += "(";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ", ";
      out += rows[i][j];
    }
    out += ")";
  }
  return out + "}";
}

std::string render_world(const WorldSpace& space, const World& w) {
  const Workspace& ws = space.workspace();
  std::string out;
  for (std::size_t p = 0; p < space.predicates().size(); ++p) {
    const Concept* c = ws.registry.concept_of(space.predicates()[p]);
    out += "WORLD " + w.id() + " " + (c ? c->name : space.predicates()[p]) + " = " +
           render_relation(ws.ontology, w.relations[p]) + "\n";
  }
  for (std::size_t f = 0; f < space.functions().size(); ++f) {
    std::vector<std::string> entries;
    for (const auto& [args, value] : w.functions[f]) {
      entries.push_back(render_tuple(ws.ontology, args) + " -> " + ws.ontology.lexeme(value));
    }
    std::sort(entries.begin(), entries.end());
    out += "WORLD " + w.id() + " " + space.functions()[f] + " = {";
    for (std::size_t i = 0; i < entries.size(); ++i) out += (i ? ", " : "") + entries[i];
    out += "}\n";
  }
  return out;
}

std::string render_assignment(const Ontology& ontology, const Assignment& g, const std::vector<Variable>& order) {
  std::string out;
  for (const auto& v : order) {
    auto it = g.find(v.name);
    if (it != g.end()) out += "ASSIGN " + v.name + "=" + ontology.lexeme(it->second) + "\n";
  }
  return out;
}

}  // namespace ifol
