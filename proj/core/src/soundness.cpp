#include "ifol/soundness.hpp"

namespace ifol {

std::optional<SoundnessViolation> dynamic_soundness(const WorldSpace& space, const World& w, const Term& t,
                                                    const Assignment& g) {
  const Workspace& ws = space.workspace();
  const Ontology& ont = ws.ontology;
  std::string expected = static_sort(t, ws.signature, ont);
  ElementId value = eval_term(space, w, t, g);
  const auto& info = ont.info(value);
  if (t.kind() == TermKind::Abstracted) {
    if (info.kind == ElementKind::Particular) return SoundnessViolation{value, info.dynamic_sort, expected};
    return std::nullopt;
  }
  if (info.kind != ElementKind::Particular || !ont.is_subsort(info.dynamic_sort, expected)) {
    return SoundnessViolation{value, info.dynamic_sort, expected};
  }
  return std::nullopt;
}

}  // namespace ifol
