#include "ifol/concepts.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ifol/error.hpp"

namespace ifol {

// --- subconcept trees ------------------------------------------------------

std::size_t SubconceptNode::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

namespace {

void render_node(const SubconceptNode& node, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += node.name;
  out += ':';
  for (std::size_t i = 0; i < node.sorts.size(); ++i) {
    if (i) out += ',';
    out += node.sorts[i];
  }
  out += '\n';
  for (const auto& c : node.children) render_node(c, depth + 1, out);
}

std::string partial_key(const PartialAssignment& partial) {
  std::string key;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (!partial[i]) continue;
    if (!key.empty()) key += ';';
    key += std::to_string(i + 1) + "=" + *partial[i];
  }
  return key;
}

std::vector<std::string> free_sorts(const std::vector<std::string>& sorts, const PartialAssignment& partial) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (i >= partial.size() || !partial[i]) out.push_back(sorts[i]);
  }
  return out;
}

}  // namespace

std::string render_concept_tree(const SubconceptNode& root) {
  std::string out;
  render_node(root, 0, out);
  return out;
}

// --- registry --------------------------------------------------------------

const Concept& PredicateConceptRegistry::register_predicate_concept(const std::string& predicate,
                                                                    const std::string& phrase,
                                                                    std::vector<std::string> sorts) {
  if (by_concept_.count(phrase)) throw Error(ErrorKind::DuplicatePhrase, "phrase '" + phrase + "' is already paired");
  if (by_predicate_.count(predicate)) {
    throw Error(ErrorKind::DuplicateName, "predicate '" + predicate + "' already has a concept");
  }
  if (const PredicateDecl* p = signature_.predicate(predicate)) {
    if (p->sorts.size() != sorts.size()) {
      throw Error(ErrorKind::ArityMismatch, "predicate '" + predicate + "' has arity " +
                                                std::to_string(p->sorts.size()));
    }
    if (p->builtin) throw Error(ErrorKind::SortViolation, "computed predicate '" + predicate + "' has no concept");
  }
  const Concept* c = ontology_.find_concept(phrase);
  if (c != nullptr) {
    if (c->attribute_sorts != sorts) {
      throw Error(ErrorKind::DuplicatePhrase, "phrase '" + phrase + "' names a concept with other sorts");
    }
  } else {
    c = &ontology_.declare_sort(phrase, sorts.size(), sorts);
  }
  if (!signature_.predicate(predicate)) signature_.declare_predicate(predicate, sorts);
  by_predicate_.emplace(predicate, phrase);
  by_concept_.emplace(phrase, predicate);
  return *c;
}

const Concept* PredicateConceptRegistry::concept_of(std::string_view predicate) const {
  auto it = by_predicate_.find(predicate);
  return it == by_predicate_.end() ? nullptr : ontology_.find_concept(it->second);
}

std::optional<std::string> PredicateConceptRegistry::predicate_of(std::string_view concept_name) const {
  auto it = by_concept_.find(concept_name);
  if (it == by_concept_.end()) return std::nullopt;
  return it->second;
}

const Concept& PredicateConceptRegistry::root(const std::string& predicate) const {
  const Concept* c = concept_of(predicate);
  if (c == nullptr) throw Error(ErrorKind::UnregisteredPredicate, "no concept for predicate '" + predicate + "'");
  return *c;
}

void PredicateConceptRegistry::validate(const std::string& predicate, const PartialAssignment& partial) const {
  const Concept& c = root(predicate);
  if (partial.size() != c.arity()) {
    throw Error(ErrorKind::ArityMismatch, "'" + c.name + "' has " + std::to_string(c.arity()) + " positions");
  }
  std::size_t bound = 0;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (!partial[i]) continue;
    ++bound;
    const std::string& sort = c.attribute_sorts[i];
    auto id = ontology_.find_particular(*partial[i]);
    if (sort == kNestedSentence || !id || !ontology_.info(*id).declared ||
        !ontology_.is_subsort(ontology_.dynamic_sort(*id), sort)) {
      throw Error(ErrorKind::SortViolation, "'" + *partial[i] + "' is not a value of sort '" + sort + "'");
    }
  }
  if (bound == 0) throw Error(ErrorKind::EmptyAssignment, "no position of '" + c.name + "' is bound");
  if (bound == partial.size()) {
    throw Error(ErrorKind::FullAssignment, "binding every position of '" + c.name + "' gives a proposition");
  }
}

std::string PredicateConceptRegistry::subconcept_name(const std::string& predicate,
                                                      const PartialAssignment& partial) const {
  validate(predicate, partial);
  std::string name = root(predicate).name;
  for (const auto& v : partial) {
    if (v) name += " " + ontology_.lexeme(*ontology_.find_particular(*v));
  }
  return name;
}

const Concept& PredicateConceptRegistry::canonical_subconcept(const std::string& predicate,
                                                              const PartialAssignment& partial) {
  std::string name = subconcept_name(predicate, partial);
  const Concept& top = root(predicate);
  auto sorts = free_sorts(top.attribute_sorts, partial);

  std::string parent = top.name;
  PartialAssignment up = partial;
  for (std::size_t i = up.size(); i-- > 0;) {
    if (up[i]) {
      up[i].reset();
      break;
    }
  }
  if (std::any_of(up.begin(), up.end(), [](const auto& v) { return v.has_value(); })) {
    parent = canonical_subconcept(predicate, up).name;
  }

  const Concept* c = ontology_.find_concept(name);
  if (c != nullptr) {
    if (c->attribute_sorts != sorts) {
      throw Error(ErrorKind::DuplicatePhrase, "'" + name + "' already names a concept with other sorts");
    }
  } else {
    c = &ontology_.declare_sort(name, sorts.size(), sorts);
  }
  if (!ontology_.is_subsort(name, parent)) ontology_.declare_isa(name, parent);
  subconcepts_[predicate][partial_key(partial)] = name;
  return *c;
}

std::map<std::string, std::string> PredicateConceptRegistry::subconcepts(const std::string& predicate) const {
  auto it = subconcepts_.find(predicate);
  return it == subconcepts_.end() ? std::map<std::string, std::string>{} : it->second;
}

std::vector<std::string> PredicateConceptRegistry::position_values(const std::string& sort) const {
  std::vector<std::string> out;
  if (sort == kNestedSentence) return out;
  if (ontology_.is_infinite(sort)) {
    throw Error(ErrorKind::InfiniteSortExtent, "sort '" + sort + "' has no finite extent to enumerate");
  }
  std::vector<ElementId> ids;
  if (const auto* ext = ontology_.declared_extent(sort)) {
    ids = *ext;
  } else {
    ids = ontology_.valid_elements(sort);
  }
  for (ElementId id : ids) out.push_back(ontology_.lexeme(id));
  return out;
}

SubconceptNode PredicateConceptRegistry::subconcept_tree(const std::string& predicate) const {
  const Concept& top = root(predicate);
  std::vector<std::vector<std::string>> values;
  for (const auto& s : top.attribute_sorts) values.push_back(position_values(s));

  std::function<SubconceptNode(const PartialAssignment&, std::size_t)> build =
      [&](const PartialAssignment& partial, std::size_t first_free) {
        SubconceptNode node;
        bool any = std::any_of(partial.begin(), partial.end(), [](const auto& v) { return v.has_value(); });
        node.name = any ? subconcept_name(predicate, partial) : top.name;
        node.sorts = free_sorts(top.attribute_sorts, partial);
        node.partial = partial;
        if (node.sorts.size() <= 1) return node;
        for (std::size_t i = first_free; i < partial.size(); ++i) {
          for (const auto& v : values[i]) {
            PartialAssignment next = partial;
            next[i] = v;
            node.children.push_back(build(next, i + 1));
          }
        }
        return node;
      };
  return build(PartialAssignment(top.arity()), 0);
}

void PredicateConceptRegistry::add_attribute_sort(const std::string& predicate, const std::string& sort) {
  const Concept& top = root(predicate);
  if (!ontology_.has_sort(sort)) throw Error(ErrorKind::UnknownSort, "unknown sort '" + sort + "'");
  signature_.append_predicate_sort(predicate, sort);
  ontology_.append_attribute(top.name, sort);
  if (auto it = subconcepts_.find(predicate); it != subconcepts_.end()) {
    for (const auto& [key, name] : it->second) ontology_.append_attribute(name, sort);
  }
}

// --- intensional interpretation --------------------------------------------

namespace {

bool is_numeral(const Term& t) { return t.kind() == TermKind::Const && parse_number(t.symbol()).has_value(); }

bool is_numeral(const Term& t, double value) {
  if (!is_numeral(t)) return false;
  return *parse_number(t.symbol()) == value;
}

class Fingerprinter {
 public:
  explicit Fingerprinter(const std::vector<Variable>& free) {
    for (std::size_t i = 0; i < free.size(); ++i) names_[free[i].name] = "_" + std::to_string(i + 1);
  }

  std::string formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Truth: return "T";
      case FormulaKind::Atom: {
        std::string out = quote_name(f.predicate()) + "(";
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ",";
          out += term(f.args()[i]);
        }
        return out + ")";
      }
      case FormulaKind::Not: return "~(" + formula(f.operand()) + ")";
      case FormulaKind::And: return "(" + formula(f.left()) + "&" + formula(f.right()) + ")";
      case FormulaKind::Exists: {
        auto saved = names_;
        std::string b = fresh(f.bound().name);
        std::string out = "E" + b + ":" + quote_name(f.bound().sort) + "." + formula(f.operand());
        names_ = std::move(saved);
        return out;
      }
    }
    return "";
  }

  std::string term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        auto it = names_.find(t.variable().name);
        std::string n = it == names_.end() ? t.variable().name : it->second;
        return n + ":" + quote_name(t.variable().sort);
      }
      case TermKind::Const: return quote_name(t.symbol());
      case TermKind::FnApp: {
        std::string out = quote_name(t.symbol()) + "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ",";
          out += term(t.args()[i]);
        }
        return out + ")";
      }
      case TermKind::Abstracted: {
        if (t.beta().empty()) {
          Fingerprinter inner(free_vars(t.body()));
          return "I(" + inner.formula(t.body()) + ")";
        }
        auto saved = names_;
        std::string out = "<<";
        std::string hidden;
        for (const auto& v : t.alpha()) hidden += (hidden.empty() ? "" : ",") + fresh(v.name);
        out += formula(t.body()) + ">>a:" + hidden + "|b:";
        for (std::size_t i = 0; i < t.beta().size(); ++i) {
          if (i) out += ",";
          auto it = names_.find(t.beta()[i].name);
          out += it == names_.end() ? t.beta()[i].name : it->second;
        }
        names_ = std::move(saved);
        return out;
      }
    }
    return "";
  }

 private:
  std::string fresh(const std::string& name) {
    std::string n = "_b" + std::to_string(++counter_);
    names_[name] = n;
    return n;
  }

  std::map<std::string, std::string> names_;
  std::size_t counter_ = 0;
};

}  // namespace

Term IntensionalInterpretation::normalize(const Term& t) const {
  switch (t.kind()) {
    case TermKind::Var: return t;
    case TermKind::Const:
      if (auto v = parse_number(t.symbol())) return Term::constant(canonical_number(*v));
      return t;
    case TermKind::FnApp: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(normalize(a));
      const FunctionDecl* fn = signature_.function(t.symbol());
      if (fn == nullptr || !fn->builtin) return Term::apply(t.symbol(), std::move(args));
      if (std::all_of(args.begin(), args.end(), [](const Term& a) { return is_numeral(a); })) {
        std::vector<double> values;
        for (const auto& a : args) values.push_back(*parse_number(a.symbol()));
        try {
          return Term::constant(canonical_number(fn->builtin->eval(values)));
        } catch (const Error&) {
          return Term::apply(t.symbol(), std::move(args));
        }
      }
      const std::string& op = fn->builtin->name;
      if (args.size() == 2) {
        if ((op == "add" || op == "sub") && is_numeral(args[1], 0)) return args[0];
        if (op == "add" && is_numeral(args[0], 0)) return args[1];
        if ((op == "mul" || op == "div" || op == "pow") && is_numeral(args[1], 1)) return args[0];
        if (op == "mul" && is_numeral(args[0], 1)) return args[1];
      }
      return Term::apply(t.symbol(), std::move(args));
    }
    case TermKind::Abstracted: {
      Formula body = normalize(t.body());
      std::vector<Variable> alpha = t.alpha();
      std::vector<Variable> beta = t.beta();
      // Folding can only remove variables; keep the lists consistent.
      auto fv = free_vars(body);
      auto keep = [&](std::vector<Variable>& vs) {
        std::erase_if(vs, [&](const Variable& v) {
          return std::none_of(fv.begin(), fv.end(), [&](const Variable& w) { return w.name == v.name; });
        });
      };
      keep(alpha);
      keep(beta);
      if (alpha.empty() && beta.empty() && !fv.empty()) return t;
      return mk_abstracted(body, alpha, beta);
    }
  }
  return t;
}

Formula IntensionalInterpretation::normalize(const Formula& f) const {
  switch (f.kind()) {
    case FormulaKind::Truth: return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(normalize(a));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case FormulaKind::Not: return Formula::negation(normalize(f.operand()));
    case FormulaKind::And: return Formula::conjunction(normalize(f.left()), normalize(f.right()));
    case FormulaKind::Exists: return Formula::exists(f.bound(), normalize(f.operand()));
  }
  return f;
}

std::string IntensionalInterpretation::fingerprint(const Formula& f) const {
  Formula n = normalize(f);
  Fingerprinter p(free_vars(n));
  return p.formula(n);
}

std::vector<Variable> IntensionalInterpretation::hidden_variables(const Formula& f) const {
  if (f.kind() != FormulaKind::Atom) return {};
  std::set<std::string> direct;
  for (const auto& a : f.args()) {
    if (a.kind() == TermKind::Abstracted) continue;
    for (const auto& v : free_vars(a)) direct.insert(v.name);
  }
  std::vector<Variable> out;
  for (const auto& v : free_vars(f)) {
    if (!direct.count(v.name)) out.push_back(v);
  }
  return out;
}

std::vector<Variable> IntensionalInterpretation::attribute_variables(const Formula& f) const {
  auto hidden = hidden_variables(f);
  std::vector<Variable> out;
  for (const auto& v : free_vars(f)) {
    if (std::find(hidden.begin(), hidden.end(), v) == hidden.end()) out.push_back(v);
  }
  return out;
}

ElementId IntensionalInterpretation::interpret_constant(const std::string& symbol) const {
  if (auto id = ontology_.find_particular(symbol)) return *id;
  if (auto v = parse_number(symbol)) return ontology_.intern_number(*v);
  throw Error(ErrorKind::UnknownSymbol, "'" + symbol + "' does not name a particular");
}

ElementId IntensionalInterpretation::interpret_term(const Term& t) const {
  switch (t.kind()) {
    case TermKind::Const: return interpret_constant(t.symbol());
    case TermKind::Abstracted:
      if (!t.beta().empty()) {
        throw Error(ErrorKind::UnboundVariable, "abstraction term still has visible variables");
      }
      return interpret(t.body());
    default:
      throw Error(ErrorKind::IllSorted, "only constants and ground abstraction terms are interpreted directly");
  }
}

ElementId IntensionalInterpretation::derived(const Formula& normalized, const std::string& fp,
                                             std::string name) const {
  auto tuple = attribute_variables(normalized);
  ElementId id = ontology_.concept_element(name, tuple.size());
  std::lock_guard lock(mutex_);
  definitions_.try_emplace(id, ConceptDefinition{ConceptDefinition::Kind::Formula, normalized, tuple, {}});
  memo_.try_emplace(fp, id);
  return id;
}

ElementId IntensionalInterpretation::interpret(const Formula& f) const {
  if (f.kind() == FormulaKind::Truth) return ontology_.truth();
  Formula n = normalize(f);
  auto fv = free_vars(n);
  std::string fp = Fingerprinter(fv).formula(n);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(fp); it != memo_.end()) return it->second;
  }
  if (!check_formula(n, signature_, ontology_).empty()) {
    throw Error(ErrorKind::IllSorted, "cannot interpret an ill-sorted formula: " + to_string(f));
  }

  if (n.kind() == FormulaKind::Atom) {
    auto hidden = hidden_variables(n);
    if (!hidden.empty()) {
      std::vector<std::vector<ElementId>> domains;
      for (const auto& v : hidden) {
        try {
          domains.push_back(ontology_.quantifier_domain(v.sort));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::InfiniteExtent) throw;
          throw Error(ErrorKind::InfiniteHiddenDomain, "visible variable '" + v.name + "' ranges over '" +
                                                           v.sort + "' which has no finite extent");
        }
      }
      std::vector<ElementId> parts;
      std::vector<std::size_t> at(hidden.size(), 0);
      bool empty = std::any_of(domains.begin(), domains.end(), [](const auto& d) { return d.empty(); });
      while (!empty) {
        Grounding g;
        for (std::size_t i = 0; i < hidden.size(); ++i) g[hidden[i].name] = ontology_.lexeme(domains[i][at[i]]);
        parts.push_back(interpret(bind_variables(n, g)));
        std::size_t i = hidden.size();
        while (i > 0) {
          --i;
          if (++at[i] < domains[i].size()) break;
          at[i] = 0;
          if (i == 0) empty = true;
        }
      }
      if (parts.empty()) return derived(n, fp, "I(" + fp + ")");
      ElementId u = union_concept(parts);
      std::lock_guard lock(mutex_);
      definitions_[u].tuple = attribute_variables(n);
      memo_.try_emplace(fp, u);
      return u;
    }

    if (const Concept* c = registry_.concept_of(n.predicate())) {
      bool exact = true;
      bool has_var = false;
      bool has_const = false;
      std::set<std::string> seen;
      PartialAssignment partial(n.args().size());
      for (std::size_t i = 0; i < n.args().size() && exact; ++i) {
        const Term& a = n.args()[i];
        const std::string& sort = c->attribute_sorts[i];
        if (a.kind() == TermKind::Var) {
          exact = a.variable().sort == sort && seen.insert(a.variable().name).second;
          has_var = true;
        } else if (a.kind() == TermKind::Const && !signature_.function(a.symbol())) {
          auto id = ontology_.find_particular(a.symbol());
          exact = id && ontology_.info(*id).declared && ontology_.is_subsort(ontology_.dynamic_sort(*id), sort);
          if (exact) partial[i] = ontology_.lexeme(*id);
          has_const = true;
        } else {
          exact = false;
        }
      }
      if (exact && has_var && !has_const) {
        ElementId id = ontology_.concept_element(c->name, c->arity());
        std::lock_guard lock(mutex_);
        memo_.try_emplace(fp, id);
        return id;
      }
      if (exact && has_var && has_const) {
        return derived(n, fp, registry_.subconcept_name(n.predicate(), partial));
      }
    }
  }
  return derived(n, fp, "I(" + fp + ")");
}

ElementId IntensionalInterpretation::union_concept(std::vector<ElementId> parts) const {
  if (parts.empty()) throw Error(ErrorKind::EmptyParts, "union of no concepts");
  std::size_t arity = ontology_.info(parts.front()).arity;
  for (ElementId p : parts) {
    const auto& info = ontology_.info(p);
    if (info.kind == ElementKind::Particular || info.arity != arity) {
      throw Error(ErrorKind::MixedArity, "union parts must be concepts of one arity");
    }
  }
  std::sort(parts.begin(), parts.end(),
            [&](ElementId a, ElementId b) { return ontology_.lexeme(a) < ontology_.lexeme(b); });
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string name = "U(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) name += " | ";
    name += ontology_.lexeme(parts[i]);
  }
  name += ")";
  ElementId id = ontology_.concept_element(name, arity);
  std::vector<Variable> tuple;
  if (auto d = definition(parts.front())) tuple = d->tuple;
  std::lock_guard lock(mutex_);
  definitions_.try_emplace(id, ConceptDefinition{ConceptDefinition::Kind::Union, std::nullopt, tuple, parts});
  return id;
}

std::optional<ConceptDefinition> IntensionalInterpretation::definition(ElementId id) const {
  std::lock_guard lock(mutex_);
  auto it = definitions_.find(id);
  if (it == definitions_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> IntensionalInterpretation::predicate_of(ElementId id) const {
  const auto& info = ontology_.info(id);
  if (info.kind != ElementKind::Concept) return std::nullopt;
  return registry_.predicate_of(info.name);
}

std::size_t IntensionalInterpretation::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

}  // namespace ifol
