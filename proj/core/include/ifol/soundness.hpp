#pragma once

#include <optional>
#include <string>

#include "ifol/semantics.hpp"

namespace ifol {

struct SoundnessViolation {
  ElementId value;
  std::string dynamic_sort;
  std::string static_sort;
};

/// Evaluates t and checks that the value's dynamic sort lies below the
/// term's static sort. Abstraction terms must denote concepts or propositions.
std::optional<SoundnessViolation> dynamic_soundness(const WorldSpace& space, const World& w, const Term& t,
                                                    const Assignment& g);

}  // namespace ifol
