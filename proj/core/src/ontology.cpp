#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "ifol/error.hpp"
#include "ifol/kernel.hpp"

namespace ifol {

namespace {

const std::vector<std::string> kNumericSorts = {"naturals", "integers", "rationals", "reals"};

std::string particular_key(std::string_view lexeme) { return "P:" + std::string(lexeme); }
std::string concept_key(std::string_view name) { return "C:" + std::string(name); }

std::string canonical_lexeme(const std::string& lexeme) {
  if (auto v = parse_number(lexeme)) return canonical_number(*v);
  return lexeme;
}

}  // namespace

// --- Universe -------------------------------------------------------------

ElementId Universe::intern(const std::string& key, ElementInfo info) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  ElementId id{static_cast<std::uint32_t>(elements_.size())};
  elements_.push_back(std::move(info));
  by_key_.emplace(key, id);
  return id;
}

std::optional<ElementId> Universe::find(const std::string& key) const {
  std::shared_lock lock(mutex_);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  return std::nullopt;
}

const ElementInfo& Universe::info(ElementId id) const {
  std::shared_lock lock(mutex_);
  return elements_.at(id.value);
}

void Universe::update(ElementId id, ElementInfo info) {
  std::unique_lock lock(mutex_);
  elements_.at(id.value) = std::move(info);
}

std::size_t Universe::size() const {
  std::shared_lock lock(mutex_);
  return elements_.size();
}

// --- numerals --------------------------------------------------------------

std::string canonical_number(double value) {
  if (value == 0.0) value = 0.0;  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

// --- Ontology --------------------------------------------------------------

Ontology::Ontology() {
  for (std::string_view s : {kEverything, kEmptySet}) {
    concepts_.emplace(std::string(s), Concept{std::string(s), {std::string(s)}});
    order_.emplace_back(s);
  }
  declare_sort(std::string(kTruthValues), 1, {std::string(kTruthValues)});
  declare_sort(std::string(kNestedSentence), 1, {std::string(kNestedSentence)});
  declare_sort(std::string(kVerbForm), 1, {std::string(kVerbForm)});

  false_ = declare_particular("f", std::string(kTruthValues));
  true_ = declare_particular("t", std::string(kTruthValues));
  declare_extent(std::string(kTruthValues), {"f", "t"});
  declare_extent(std::string(kVerbForm), {"past", "present", "future", "gerund"});
  truth_ = concept_element("Truth", 0);
}

void Ontology::require_sort(std::string_view name) const {
  if (!lattice_.contains(name)) {
    throw Error(ErrorKind::UnknownSort, "unknown sort '" + std::string(name) + "'");
  }
}

const Concept& Ontology::declare_sort(const std::string& name, std::size_t arity,
                                      std::vector<std::string> attribute_sorts) {
  if (lattice_.contains(name)) throw Error(ErrorKind::DuplicateName, "'" + name + "' is already declared");
  if (arity == 0) {
    throw Error(ErrorKind::ZeroArityNonProposition,
                "'" + name + "': arity 0 is reserved for propositions");
  }
  if (attribute_sorts.size() != arity) {
    throw Error(ErrorKind::ArityMismatch, "'" + name + "' declares arity " + std::to_string(arity) +
                                              " but lists " + std::to_string(attribute_sorts.size()) +
                                              " sorts");
  }
  for (const auto& s : attribute_sorts) {
    if (s == kEmptySet) {
      throw Error(ErrorKind::SortViolation, "'" + name + "': 'empty set' cannot be an attribute sort");
    }
    if (s != name && s != kNestedSentence && !lattice_.contains(s)) {
      throw Error(ErrorKind::UnknownAttributeSort, "'" + name + "': unknown attribute sort '" + s + "'");
    }
  }
  lattice_.add_node(name);
  order_.push_back(name);
  {
    std::lock_guard lock(cache_mutex_);
    domain_cache_.clear();
  }
  return concepts_.emplace(name, Concept{name, std::move(attribute_sorts)}).first->second;
}

void Ontology::declare_isa(const std::string& sub, const std::string& super) {
  lattice_.add_edge(sub, super);
  std::lock_guard lock(cache_mutex_);
  domain_cache_.clear();
}

bool Ontology::is_subsort(std::string_view sub, std::string_view super) const {
  return lattice_.is_subsort(sub, super);
}

const Concept& Ontology::concept_named(std::string_view name) const {
  if (const Concept* c = find_concept(name)) return *c;
  throw Error(ErrorKind::UnknownSort, "unknown concept '" + std::string(name) + "'");
}

const Concept* Ontology::find_concept(std::string_view name) const {
  auto it = concepts_.find(name);
  return it == concepts_.end() ? nullptr : &it->second;
}

void Ontology::append_attribute(const std::string& concept_name, const std::string& sort) {
  auto it = concepts_.find(concept_name);
  if (it == concepts_.end()) throw Error(ErrorKind::UnknownSort, "unknown concept '" + concept_name + "'");
  if (sort != kNestedSentence) require_sort(sort);
  it->second.attribute_sorts.push_back(sort);
}

ElementId Ontology::declare_particular(const std::string& lexeme, const std::string& sort) {
  require_sort(sort);
  if (sort == kNestedSentence || sort == kEmptySet) {
    throw Error(ErrorKind::SortViolation, "particular '" + lexeme + "' cannot have sort '" + sort + "'");
  }
  std::string lex = canonical_lexeme(lexeme);
  std::string key = particular_key(lex);
  if (auto existing = universe_.find(key)) {
    ElementInfo info = universe_.info(*existing);
    if (info.declared) {
      if (info.dynamic_sort != sort) {
        throw Error(ErrorKind::DuplicateName, "particular '" + lex + "' already has sort '" +
                                                  info.dynamic_sort + "'");
      }
      return *existing;
    }
    info.declared = true;
    info.dynamic_sort = sort;
    universe_.update(*existing, info);
    declared_.push_back(*existing);
  } else {
    ElementId id = universe_.intern(key, ElementInfo{ElementKind::Particular, lex, 0, sort, true});
    declared_.push_back(id);
  }
  std::lock_guard lock(cache_mutex_);
  domain_cache_.clear();
  return *universe_.find(key);
}

void Ontology::declare_extent(const std::string& sort, const std::vector<std::string>& lexemes) {
  require_sort(sort);
  if (sort == kNestedSentence || sort == kEmptySet) {
    throw Error(ErrorKind::SortViolation, "sort '" + sort + "' cannot be given an extent");
  }
  if (extents_.count(sort)) throw Error(ErrorKind::DuplicateName, "extent of '" + sort + "' already declared");
  std::vector<ElementId> members;
  for (const auto& raw : lexemes) {
    std::string lex = canonical_lexeme(raw);
    std::optional<ElementId> id;
    if (auto existing = universe_.find(particular_key(lex)); existing && info(*existing).declared) {
      id = existing;
      if (!is_subsort(dynamic_sort(*id), sort)) {
        throw Error(ErrorKind::SortViolation, "'" + lex + "' has sort '" + dynamic_sort(*id) +
                                                  "' which is not below '" + sort + "'");
      }
    } else {
      std::string dyn = sort;
      if (auto v = parse_number(lex)) {
        std::string numeric = numeric_sort_for(*v);
        if (is_subsort(numeric, sort)) dyn = numeric;
      }
      id = declare_particular(lex, dyn);
    }
    if (std::find(members.begin(), members.end(), *id) == members.end()) members.push_back(*id);
  }
  extents_.emplace(sort, std::move(members));
}

const std::vector<ElementId>* Ontology::declared_extent(std::string_view sort) const {
  auto it = extents_.find(sort);
  return it == extents_.end() ? nullptr : &it->second;
}

std::optional<ElementId> Ontology::find_particular(std::string_view lexeme) const {
  std::string key = "P:";
  // Only numerals have several spellings.
  bool numeral = !lexeme.empty() && (std::isdigit(static_cast<unsigned char>(lexeme[0])) || lexeme[0] == '-' ||
                                     lexeme[0] == '.');
  if (numeral) {
    key += canonical_lexeme(std::string(lexeme));
  } else {
    key += lexeme;
  }
  auto id = universe_.find(key);
  if (id && info(*id).kind == ElementKind::Particular) return id;
  return std::nullopt;
}

bool Ontology::is_numeric_sort(std::string_view name) const {
  return lattice_.contains(name) &&
         std::find(kNumericSorts.begin(), kNumericSorts.end(), name) != kNumericSorts.end();
}

std::string Ontology::numeric_sort_for(double value) const {
  bool integral = std::floor(value) == value;
  if (integral && value >= 0 && is_numeric_sort("naturals")) return "naturals";
  if (integral && is_numeric_sort("integers")) return "integers";
  if (is_numeric_sort("rationals")) return "rationals";
  if (is_numeric_sort("reals")) return "reals";
  return std::string(kEverything);
}

ElementId Ontology::intern_number(double value) const {
  std::string lex = canonical_number(value);
  return universe_.intern(particular_key(lex),
                          ElementInfo{ElementKind::Particular, lex, 0, numeric_sort_for(value), false});
}

bool Ontology::is_infinite(std::string_view sort) const {
  require_sort(sort);
  for (const auto& n : kNumericSorts) {
    if (!lattice_.contains(n) || !is_subsort(n, sort)) continue;
    bool covered = false;
    for (const auto& [extent_sort, members] : extents_) {
      if (is_subsort(n, extent_sort)) {
        covered = true;
        break;
      }
    }
    if (!covered) return true;
  }
  return false;
}

std::vector<ElementId> Ontology::valid_elements(std::string_view sort) const {
  require_sort(sort);
  if (sort == kNestedSentence) {
    throw Error(ErrorKind::NestedSentenceSortHasNoElements, "'nested sentence' has no domain elements");
  }
  std::lock_guard lock(cache_mutex_);
  if (auto it = domain_cache_.find(sort); it != domain_cache_.end()) return it->second;
  std::vector<ElementId> out;
  for (ElementId id : declared_) {
    if (is_subsort(dynamic_sort(id), sort)) out.push_back(id);
  }
  domain_cache_.emplace(std::string(sort), out);
  return out;
}

std::vector<ElementId> Ontology::quantifier_domain(std::string_view sort) const {
  if (sort != kNestedSentence && is_infinite(sort)) {
    throw Error(ErrorKind::InfiniteExtent, "sort '" + std::string(sort) + "' has no finite extent");
  }
  return valid_elements(sort);
}

std::set<std::string> Ontology::derived_sort_extent(
    std::string_view concept_name,
    const std::function<std::vector<std::string>(const std::string&)>& sort_extent) const {
  const Concept& root = concept_named(concept_name);
  if (root.arity() < 2) {
    throw Error(ErrorKind::NotARelationalConcept, "'" + root.name + "' has arity " +
                                                       std::to_string(root.arity()));
  }
  std::set<std::string> out;
  for (const auto& name : lattice_.subsorts_of(root.name)) {
    if (name == root.name || name == kEmptySet) continue;
    const Concept* c = find_concept(name);
    if (c == nullptr) continue;
    if (c->arity() >= 2) {
      out.insert(c->name);
      continue;
    }
    bool leaf = true;
    for (const auto& below : lattice_.subsorts_of(c->name)) {
      if (below != c->name && below != kEmptySet) {
        leaf = false;
        break;
      }
    }
    if (!leaf) continue;
    for (const auto& value : sort_extent(c->attribute_sorts.front())) out.insert(c->name + " " + value);
  }
  return out;
}

ElementId Ontology::concept_element(const std::string& name, std::size_t arity) const {
  ElementInfo info{arity == 0 ? ElementKind::Proposition : ElementKind::Concept, name, arity,
                   std::string(arity == 0 ? kTruthValues : kNestedSentence), false};
  return universe_.intern(concept_key(name), std::move(info));
}

}  // namespace ifol
