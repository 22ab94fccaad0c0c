#include <algorithm>

#include "ifol/error.hpp"
#include "ifol/kernel.hpp"

namespace ifol {

namespace {
constexpr std::size_t kBottom = 0;
constexpr std::size_t kTop = 1;
}  // namespace

SortLattice::SortLattice() {
  names_ = {std::string(kEmptySet), std::string(kEverything)};
  index_ = {{names_[kBottom], kBottom}, {names_[kTop], kTop}};
  up_ = {{true, true}, {false, true}};
}

bool SortLattice::contains(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

std::size_t SortLattice::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw Error(ErrorKind::UnknownSort, "unknown sort '" + std::string(name) + "'");
  return it->second;
}

void SortLattice::add_node(const std::string& name) {
  if (contains(name)) return;
  std::size_t n = names_.size();
  names_.push_back(name);
  index_.emplace(name, n);
  for (auto& row : up_) row.push_back(false);
  up_.emplace_back(n + 1, false);
  up_[n][n] = true;
  up_[n][kTop] = true;
  up_[kBottom][n] = true;
}

void SortLattice::add_edge(const std::string& sub, const std::string& super) {
  std::size_t a = index_of(sub);
  std::size_t b = index_of(super);
  if (a != b && up_[b][a]) {
    throw Error(ErrorKind::CycleDetected, "'" + sub + "' ⊑ '" + super + "' would close a cycle");
  }
  edges_.emplace(sub, super);
  if (up_[a][b]) return;
  // Everything below a now also sits below everything above b.
  for (std::size_t x = 0; x < names_.size(); ++x) {
    if (!up_[x][a]) continue;
    for (std::size_t y = 0; y < names_.size(); ++y) {
      if (up_[b][y]) up_[x][y] = true;
    }
  }
}

bool SortLattice::is_subsort(std::string_view sub, std::string_view super) const {
  return up_[index_of(sub)][index_of(super)];
}

std::vector<std::string> SortLattice::subsorts_of(std::string_view name) const {
  std::size_t s = index_of(name);
  std::vector<std::string> out;
  for (std::size_t x = 0; x < names_.size(); ++x) {
    if (up_[x][s]) out.push_back(names_[x]);
  }
  return out;
}

std::vector<std::string> SortLattice::supersorts_of(std::string_view name) const {
  std::size_t s = index_of(name);
  std::vector<std::string> out;
  for (std::size_t y = 0; y < names_.size(); ++y) {
    if (up_[s][y]) out.push_back(names_[y]);
  }
  return out;
}

std::optional<std::string> SortLattice::join(std::string_view a, std::string_view b) const {
  std::size_t i = index_of(a);
  std::size_t j = index_of(b);
  std::vector<std::size_t> upper;
  for (std::size_t y = 0; y < names_.size(); ++y) {
    if (up_[i][y] && up_[j][y]) upper.push_back(y);
  }
  for (std::size_t c : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return up_[c][u]; })) {
      return names_[c];
    }
  }
  return std::nullopt;
}

std::optional<std::string> SortLattice::meet(std::string_view a, std::string_view b) const {
  std::size_t i = index_of(a);
  std::size_t j = index_of(b);
  std::vector<std::size_t> lower;
  for (std::size_t x = 0; x < names_.size(); ++x) {
    if (up_[x][i] && up_[x][j]) lower.push_back(x);
  }
  for (std::size_t c : lower) {
    if (std::all_of(lower.begin(), lower.end(), [&](std::size_t l) { return up_[l][c]; })) {
      return names_[c];
    }
  }
  return std::nullopt;
}

}  // namespace ifol
