#include <algorithm>

#include "ifol/error.hpp"
#include "ifol/parallel.hpp"
#include "ifol/semantics.hpp"

namespace ifol {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, const std::string& what) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) {
    throw Error(ErrorKind::ExplosionGuard, what + " exceeds the limit of " + std::to_string(cap) + " candidate worlds");
  }
  return a * b;
}

std::vector<Tuple> cartesian(const std::vector<std::vector<ElementId>>& columns) {
  std::vector<Tuple> out;
  for (const auto& c : columns) {
    if (c.empty()) return out;
  }
  Tuple current(columns.size());
  std::vector<std::size_t> at(columns.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < columns.size(); ++i) current[i] = columns[i][at[i]];
    out.push_back(current);
    std::size_t i = columns.size();
    while (i > 0) {
      --i;
      if (++at[i] < columns[i].size()) break;
      at[i] = 0;
      if (i == 0) return out;
    }
    if (columns.empty()) return out;
  }
}

}  // namespace

WorldSpace::WorldSpace(const Workspace& ws, EnumerationOptions options) : ws_(&ws), options_(std::move(options)) {
  const Ontology& ont = ws.ontology;
  const std::uint64_t cap = options_.max_candidates;

  std::vector<std::pair<std::string, std::string>> by_name;
  for (const auto& [symbol, decl] : ws.signature.predicates()) {
    if (decl.builtin) continue;
    const Concept* c = ws.registry.concept_of(symbol);
    by_name.emplace_back(c ? c->name : symbol, symbol);
  }
  std::sort(by_name.begin(), by_name.end());
  for (const auto& [name, symbol] : by_name) {
    predicates_.push_back(symbol);
    std::vector<std::vector<ElementId>> columns;
    for (const auto& s : ws.signature.predicate(symbol)->sorts) {
      columns.push_back(s == kNestedSentence ? options_.reified : domain(s));
    }
    products_.push_back(cartesian(columns));
    std::size_t n = products_.back().size();
    if (n >= 63 || (std::uint64_t{1} << n) > cap) {
      throw Error(ErrorKind::ExplosionGuard, "predicate '" + symbol + "' alone has 2^" + std::to_string(n) +
                                                 " candidate extensions");
    }
    radix_.push_back(std::uint64_t{1} << n);
  }

  for (const auto& [symbol, decl] : ws.signature.functions()) {
    if (decl.builtin) continue;
    functions_.push_back(symbol);
    std::vector<std::vector<ElementId>> columns;
    for (const auto& s : decl.arg_sorts) columns.push_back(domain(s));
    function_domains_.push_back(cartesian(columns));
    function_values_.push_back(domain(decl.result_sort));
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < function_domains_.back().size(); ++i) {
      r = checked_mul(r, function_values_.back().size(), cap, "function '" + symbol + "'");
    }
    radix_.push_back(r);
  }

  for (std::uint64_t r : radix_) candidates_ = checked_mul(candidates_, r, cap, "the world space");
  if (candidates_ > cap) {
    throw Error(ErrorKind::ExplosionGuard, "the world space exceeds the limit of " + std::to_string(cap) +
                                               " candidate worlds");
  }

  // IS-A pairs whose extents must nest in every world.
  auto world_dependent = [&](const std::string& s) {
    const Concept* c = ont.find_concept(s);
    if (c == nullptr || c->arity() != 1) return false;
    auto p = ws.registry.predicate_of(s);
    return p && predicate_index(*p).has_value();
  };
  World empty;
  empty.relations.resize(predicates_.size());
  empty.functions.resize(functions_.size());
  for (const auto& a : ont.lattice().nodes()) {
    const Concept* ca = ont.find_concept(a);
    if (a == kEmptySet || a == kNestedSentence || (ca && ca->arity() > 1)) continue;
    for (const auto& b : ont.lattice().supersorts_of(a)) {
      const Concept* cb = ont.find_concept(b);
      if (a == b || b == kEverything || b == kNestedSentence || (cb && cb->arity() > 1)) continue;
      if (world_dependent(a) || world_dependent(b)) {
        inclusions_.emplace_back(a, b);
        continue;
      }
      auto ea = sort_extension(empty, a);
      auto eb = sort_extension(empty, b);
      if (!std::includes(eb.begin(), eb.end(), ea.begin(), ea.end())) static_inclusions_hold_ = false;
    }
  }
}

std::optional<std::size_t> WorldSpace::predicate_index(std::string_view symbol) const {
  auto it = std::find(predicates_.begin(), predicates_.end(), symbol);
  if (it == predicates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - predicates_.begin());
}

std::optional<std::size_t> WorldSpace::function_index(std::string_view symbol) const {
  auto it = std::find(functions_.begin(), functions_.end(), symbol);
  if (it == functions_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - functions_.begin());
}

const std::vector<ElementId>& WorldSpace::domain(const std::string& sort) const {
  std::lock_guard lock(domain_mutex_);
  auto it = domains_.find(sort);
  if (it == domains_.end()) {
    auto values = ws_->ontology.quantifier_domain(sort);
    domain_sets_.emplace(sort, std::set<ElementId>(values.begin(), values.end()));
    it = domains_.emplace(sort, std::move(values)).first;
  }
  return it->second;
}

bool WorldSpace::in_domain(ElementId value, const std::string& sort) const {
  if (sort == kNestedSentence) {
    return std::find(options_.reified.begin(), options_.reified.end(), value) != options_.reified.end();
  }
  domain(sort);
  std::lock_guard lock(domain_mutex_);
  return domain_sets_.find(sort)->second.count(value) > 0;
}

World WorldSpace::candidate(std::uint64_t index) const {
  if (index >= candidates_) throw Error(ErrorKind::ExplosionGuard, "candidate index out of range");
  World w;
  w.index = index;
  w.relations.resize(predicates_.size());
  w.functions.resize(functions_.size());
  std::vector<std::uint64_t> digits(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    digits[i] = index % radix_[i];
    index /= radix_[i];
  }
  for (std::size_t p = 0; p < predicates_.size(); ++p) {
    const auto& space = products_[p];
    for (std::size_t k = 0; k < space.size(); ++k) {
      if ((digits[p] >> k) & 1U) w.relations[p].insert(space[k]);
    }
  }
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    std::uint64_t d = digits[predicates_.size() + f];
    const auto& dom = function_domains_[f];
    const auto& values = function_values_[f];
    for (std::size_t k = dom.size(); k-- > 0;) {
      w.functions[f][dom[k]] = values[d % values.size()];
      d /= values.size();
    }
  }
  return w;
}

std::set<ElementId> WorldSpace::sort_extension(const World& w, const std::string& sort) const {
  const Ontology& ont = ws_->ontology;
  if (const Concept* c = ont.find_concept(sort); c && c->arity() == 1) {
    if (auto p = ws_->registry.predicate_of(sort)) {
      if (auto idx = predicate_index(*p)) {
        std::set<ElementId> out;
        for (const auto& t : w.relations[*idx]) out.insert(t[0]);
        return out;
      }
    }
  }
  if (const auto* ext = ont.declared_extent(sort)) return {ext->begin(), ext->end()};
  auto values = ont.valid_elements(sort);
  return {values.begin(), values.end()};
}

bool WorldSpace::valid(const World& w) const {
  if (!static_inclusions_hold_) return false;
  if (w.relations.size() != predicates_.size() || w.functions.size() != functions_.size()) return false;
  for (std::size_t p = 0; p < predicates_.size(); ++p) {
    const auto& sorts = ws_->signature.predicate(predicates_[p])->sorts;
    for (const auto& t : w.relations[p]) {
      if (t.size() != sorts.size()) return false;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!in_domain(t[i], sorts[i])) return false;
      }
    }
  }
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    const auto& graph = w.functions[f];
    if (graph.size() != function_domains_[f].size()) return false;
    const auto& values = function_values_[f];
    for (const auto& args : function_domains_[f]) {
      auto it = graph.find(args);
      if (it == graph.end()) return false;
      if (std::find(values.begin(), values.end(), it->second) == values.end()) return false;
    }
  }
  for (const auto& [sub, super] : inclusions_) {
    auto a = sort_extension(w, sub);
    auto b = sort_extension(w, super);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
  }
  return true;
}

std::vector<World> WorldSpace::worlds() const {
  constexpr std::uint64_t kBlock = 4096;
  std::uint64_t blocks = (candidates_ + kBlock - 1) / kBlock;
  std::vector<std::vector<World>> found(blocks);
  parallel_for(blocks, options_.threads, [&](std::size_t b) {
    std::uint64_t begin = b * kBlock;
    std::uint64_t end = std::min(candidates_, begin + kBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      World w = candidate(i);
      if (valid(w)) found[b].push_back(std::move(w));
    }
  });
  std::vector<World> out;
  for (auto& block : found) {
    for (auto& w : block) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Assignment> assignments(const WorldSpace& space, const std::vector<Variable>& vars) {
  std::vector<const std::vector<ElementId>*> domains;
  for (const auto& v : vars) {
    domains.push_back(&space.domain(v.sort));
    if (domains.back()->empty()) return {};
  }
  std::vector<Assignment> out;
  std::vector<std::size_t> at(vars.size(), 0);
  while (true) {
    Assignment g;
    for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i].name] = (*domains[i])[at[i]];
    out.push_back(std::move(g));
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++at[i] < domains[i]->size()) break;
      at[i] = 0;
      if (i == 0) return out;
    }
    if (vars.empty()) return out;
  }
}

Grounding to_grounding(const Ontology& ontology, const Assignment& g) {
  Grounding out;
  for (const auto& [name, value] : g) out[name] = ontology.lexeme(value);
  return out;
}

}  // namespace ifol
