#include "ifol/report.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>

#include "ifol/error.hpp"
#include "ifol/semantics.hpp"

namespace ifol {

namespace {

class Runner {
 public:
  Runner(const Workspace& ws, const RunOptions& options) : ws_(ws), options_(options) {
    for (const auto& a : ws.axioms) axioms_.push_back(a.formula);
  }

  RunResult run() {
    RunResult result;
    for (std::size_t i = 0; i < ws_.queries.size(); ++i) {
      const Query& q = ws_.queries[i];
      std::string block = "QUERY " + std::to_string(i + 1) + " " + std::string(to_string(q.kind)) + "\n";
      if (q.formula) block += "FORMULA " + to_string(*q.formula) + "\n";
      bool ok = true;
      try {
        ok = answer(q, block);
      } catch (const Error& e) {
        block += "ERROR " + std::string(e.what()) + "\n";
        ok = false;
      }
      bool counts = q.kind == QueryKind::Check || q.kind == QueryKind::Consequence ||
                    q.kind == QueryKind::BealerMontague;
      if (counts && !ok) result.exit_code = 1;
      if (i) result.report += "\n";
      result.report += block;
    }
    return result;
  }

 private:
  const WorldSpace& space() {
    if (!space_) {
      EnumerationOptions e;
      e.max_candidates = options_.max_worlds;
      e.threads = options_.threads;
      space_ = std::make_unique<WorldSpace>(ws_, e);
    }
    return *space_;
  }

  const std::vector<World>& worlds() {
    if (!worlds_) worlds_ = space().worlds();
    return *worlds_;
  }

  bool answer(const Query& q, std::string& out) {
    const Ontology& ont = ws_.ontology;
    switch (q.kind) {
      case QueryKind::Check: {
        const auto& all = worlds();
        std::size_t models = 0;
        for (const auto& w : all) models += is_model(space(), w, axioms_) ? 1 : 0;
        out += "WORLDS " + std::to_string(all.size()) + "\nMODELS " + std::to_string(models) + "\n";
        if (models == 0) {
          out += "CHECK failed: the axioms have no model\n";
          return false;
        }
        out += "CHECK ok\n";
        return true;
      }
      case QueryKind::Consequence: {
        auto r = consequence(space(), worlds(), axioms_, *q.formula);
        out += "WORLDS " + std::to_string(r.worlds) + "\nMODELS " + std::to_string(r.models) + "\n";
        if (r.holds) {
          out += "CONSEQUENCE yes\n";
          return true;
        }
        const World& w = worlds()[*r.counter_world];
        std::vector<Formula> all = axioms_;
        all.push_back(*q.formula);
        std::vector<Variable> order;
        for (const auto& f : all) {
          for (const auto& v : free_vars(f)) {
            if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
          }
        }
        out += "CONSEQUENCE no\nCOUNTERMODEL " + w.id() + "\n";
        out += render_world(space(), w);
        out += render_assignment(ont, r.counter_assignment, order);
        return false;
      }
      case QueryKind::Eval: {
        Formula ground = ground_instance(*q.formula, q.with);
        out += "GROUND " + to_string(ground) + "\n";
        ElementId id = ws_.interpretation.interpret(ground);
        const auto& info = ont.info(id);
        out += std::string(info.kind == ElementKind::Proposition ? "PROPOSITION " : "CONCEPT ") + info.name + "\n";
        std::size_t count[2] = {0, 0};
        std::optional<std::size_t> first[2];
        const auto& all = worlds();
        for (std::size_t i = 0; i < all.size(); ++i) {
          int v = satisfies(space(), all[i], {}, ground) ? 1 : 0;
          if (!first[v]) first[v] = i;
          ++count[v];
        }
        for (int v : {1, 0}) {
          out += std::string("EVAL ") + (v ? "true" : "false") + " " + std::to_string(count[v]);
          if (first[v]) out += " first " + all[*first[v]].id();
          out += "\n";
        }
        return true;
      }
      case QueryKind::Intension: {
        auto vars = ws_.interpretation.attribute_variables(*q.formula);
        out += "VARIABLES";
        for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? ", " : " ") + vars[i].name;
        out += "\n";
        const auto& all = worlds();
        auto relations = montague_intension(space(), all, *q.formula);
        // Identical relations are reported once, in order of first occurrence.
        std::map<Relation, std::size_t> seen;
        std::vector<std::pair<std::size_t, std::size_t>> groups;  // (first world, count)
        for (std::size_t i = 0; i < all.size(); ++i) {
          auto [it, fresh] = seen.emplace(relations[i], groups.size());
          if (fresh) groups.emplace_back(i, 0);
          ++groups[it->second].second;
        }
        for (const auto& [first, n] : groups) {
          out += "INTENSION " + std::to_string(relations[first].size()) + " " + render_relation(ont, relations[first]) +
                 " worlds " + std::to_string(n) + " first " + all[first].id() + "\n";
        }
        return true;
      }
      case QueryKind::Concepts: {
        auto tree = ws_.registry.subconcept_tree(q.predicate);
        out += "NODES " + std::to_string(tree.size()) + "\n";
        out += render_concept_tree(tree);
        return true;
      }
      case QueryKind::BealerMontague: {
        auto r = bealer_montague_check(space(), worlds(), *q.formula);
        ElementId id = ws_.interpretation.interpret(*q.formula);
        out += "CONCEPT " + ont.lexeme(id) + "\nWORLDS " + std::to_string(worlds().size()) + "\n";
        if (r.ok) {
          out += "BEALER-MONTAGUE ok\n";
          return true;
        }
        out += "BEALER-MONTAGUE mismatch " + worlds()[*r.mismatch_world].id() + "\n";
        out += "EXTENSION " + render_relation(ont, r.concept_side) + "\n";
        out += "INTENSION " + render_relation(ont, r.intension_side) + "\n";
        return false;
      }
    }
    return false;
  }

  const Workspace& ws_;
  RunOptions options_;
  std::vector<Formula> axioms_;
  std::unique_ptr<WorldSpace> space_;
  std::optional<std::vector<World>> worlds_;
};

}  // namespace

RunResult run_queries(const Workspace& ws, const RunOptions& options) { return Runner(ws, options).run(); }

std::string render_concept_tree(const Workspace& ws, const std::string& predicate) {
  return render_concept_tree(ws.registry.subconcept_tree(predicate));
}

}  // namespace ifol
