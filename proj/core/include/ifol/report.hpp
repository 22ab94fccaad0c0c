#pragma once

#include <cstdint>
#include <string>

#include "ifol/workspace.hpp"

namespace ifol {

struct RunOptions {
  unsigned threads = 1;
  std::uint64_t max_worlds = std::uint64_t{1} << 20;
};

struct RunResult {
  std::string report;
  /// 0 when every check, consequence and Bealer-Montague query succeeds, else 1.
  int exit_code = 0;
};

/// One `QUERY <n> <kind>` block per query, in file order.
RunResult run_queries(const Workspace& ws, const RunOptions& options = {});

/// Subconcept tree of a registered predicate, one node per line.
std::string render_concept_tree(const Workspace& ws, const std::string& predicate);

}  // namespace ifol
