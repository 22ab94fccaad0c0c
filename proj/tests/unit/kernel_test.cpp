#include <algorithm>
#include <random>
#include <set>

#include "ifol/kernel.hpp"
#include "support.hpp"

namespace ifol {
namespace {

std::set<std::string> lexemes(const Ontology& ont, const std::vector<ElementId>& ids) {
  std::set<std::string> out;
  for (ElementId id : ids) out.insert(ont.lexeme(id));
  return out;
}

TEST(Ontology, DeclaresRelationalConceptInItsLayer) {
  Ontology ont;
  ont.declare_sort("kind of animals", 1, {"kind of animals"});
  ont.declare_sort("hairness", 1, {"hairness"});
  const Concept& animal = ont.declare_sort("animal", 2, {"kind of animals", "hairness"});
  EXPECT_EQ(animal.arity(), 2u);
  EXPECT_EQ(animal.layer(), 2u);
  EXPECT_TRUE(ont.is_subsort("animal", kEverything));
  EXPECT_TRUE(ont.is_subsort(kEmptySet, "animal"));
}

TEST(Ontology, ReservedNamesAreTaken) {
  Ontology ont;
  EXPECT_IFOL_ERROR(ont.declare_sort("everything", 1, {"everything"}), DuplicateName);
  for (auto name : {kEverything, kEmptySet, kTruthValues, kNestedSentence}) EXPECT_TRUE(ont.has_sort(name));
}

TEST(Ontology, UnaryBuiltinStyleConcept) {
  Ontology ont;
  const Concept& reals = ont.declare_sort("reals", 1, {"reals"});
  EXPECT_EQ(reals.attribute_sorts, std::vector<std::string>{"reals"});
  EXPECT_TRUE(ont.is_numeric_sort("reals"));
}

TEST(Ontology, DeclarationErrors) {
  Ontology ont;
  EXPECT_IFOL_ERROR(ont.declare_sort("animal", 1, {"nowhere"}), UnknownAttributeSort);
  EXPECT_IFOL_ERROR(ont.declare_sort("animal", 0, {}), ZeroArityNonProposition);
  EXPECT_IFOL_ERROR(ont.declare_sort("weird", 1, {std::string(kEmptySet)}), SortViolation);
  ont.declare_sort("thing", 1, {"thing"});
  EXPECT_IFOL_ERROR(ont.declare_sort("thing", 1, {"thing"}), DuplicateName);
  // "nested sentence" is allowed as an attribute sort.
  EXPECT_NO_THROW(ont.declare_sort("to say", 2, {"thing", std::string(kNestedSentence)}));
}

TEST(Ontology, IsaEdgesAndCycles) {
  Ontology ont;
  for (auto s : {"cat", "animal", "integers", "rationals"}) ont.declare_sort(s, 1, {s});
  ont.declare_isa("cat", "animal");
  ont.declare_isa("integers", "rationals");
  EXPECT_TRUE(ont.is_subsort("cat", "animal"));
  EXPECT_TRUE(ont.is_subsort("integers", "rationals"));
  EXPECT_FALSE(ont.is_subsort("animal", "cat"));
  EXPECT_IFOL_ERROR(ont.declare_isa("animal", "cat"), CycleDetected);
  EXPECT_IFOL_ERROR(ont.declare_isa("cat", "dog"), UnknownSort);
  EXPECT_IFOL_ERROR(ont.is_subsort("cat", "dog"), UnknownSort);
}

TEST(Ontology, SubsortChain) {
  Ontology ont;
  for (auto s : {"naturals", "integers", "rationals", "reals", "cat", "dog"}) ont.declare_sort(s, 1, {s});
  ont.declare_isa("naturals", "integers");
  ont.declare_isa("integers", "rationals");
  ont.declare_isa("rationals", "reals");
  EXPECT_TRUE(ont.is_subsort("cat", "cat"));
  EXPECT_TRUE(ont.is_subsort("integers", "reals"));
  EXPECT_TRUE(ont.is_subsort("naturals", "reals"));
  EXPECT_FALSE(ont.is_subsort("cat", "dog"));
  EXPECT_FALSE(ont.is_subsort("reals", "integers"));
}

TEST(Ontology, ValidElementsFollowDynamicSorts) {
  Ontology ont;
  for (auto s : {"animal", "cat", "dog"}) ont.declare_sort(s, 1, {s});
  ont.declare_isa("cat", "animal");
  ont.declare_isa("dog", "animal");
  ont.declare_extent("cat", {"tom"});
  ont.declare_extent("dog", {"rex"});
  EXPECT_EQ(lexemes(ont, ont.valid_elements("animal")), (std::set<std::string>{"tom", "rex"}));
  EXPECT_EQ(lexemes(ont, ont.valid_elements("cat")), (std::set<std::string>{"tom"}));
  EXPECT_TRUE(ont.valid_elements(kEmptySet).empty());
  auto everything = lexemes(ont, ont.valid_elements(kEverything));
  EXPECT_TRUE(everything.count("tom") && everything.count("rex") && everything.count("present"));
  EXPECT_IFOL_ERROR(ont.valid_elements(kNestedSentence), NestedSentenceSortHasNoElements);
  EXPECT_IFOL_ERROR(ont.valid_elements("unicorn"), UnknownSort);
}

TEST(Ontology, NumericDynamicSorts) {
  Ontology ont;
  ont.declare_sort("rationals", 1, {"rationals"});
  ont.declare_sort("integers", 1, {"integers"});
  ont.declare_isa("integers", "rationals");
  ont.declare_extent("integers", {"1", "2"});
  ont.declare_extent("rationals", {"1", "2", "0.5"});
  auto one = *ont.find_particular("1");
  auto half = *ont.find_particular("0.5");
  EXPECT_EQ(ont.dynamic_sort(one), "integers");
  EXPECT_EQ(ont.dynamic_sort(half), "rationals");
  EXPECT_EQ(lexemes(ont, ont.valid_elements("rationals")), (std::set<std::string>{"1", "2", "0.5"}));
  EXPECT_EQ(lexemes(ont, ont.valid_elements("integers")), (std::set<std::string>{"1", "2"}));
}

TEST(Ontology, PropositionsLiveInTruthValues) {
  Ontology ont;
  ElementId p = ont.concept_element("it rains", 0);
  EXPECT_EQ(ont.info(p).kind, ElementKind::Proposition);
  EXPECT_EQ(ont.dynamic_sort(p), kTruthValues);
  EXPECT_EQ(ont.dynamic_sort(ont.truth()), kTruthValues);
}

TEST(Ontology, CanonicalNumbers) {
  EXPECT_EQ(canonical_number(2.0), "2");
  EXPECT_EQ(canonical_number(-0.0), "0");
  EXPECT_EQ(canonical_number(0.5), "0.5");
  EXPECT_EQ(parse_number("2.0"), 2.0);
  EXPECT_FALSE(parse_number("2x"));
  EXPECT_FALSE(parse_number(""));
}

TEST(Ontology, DerivedSortExtentWalksTheTree) {
  Ontology ont;
  for (auto s : {"kinds", "hairness", "habitat"}) ont.declare_sort(s, 1, {s});
  ont.declare_sort("animal", 3, {"kinds", "hairness", "habitat"});
  ont.declare_sort("animal with breasts", 2, {"hairness", "habitat"});
  ont.declare_sort("cat", 1, {"kinds"});
  ont.declare_isa("animal with breasts", "animal");
  ont.declare_isa("cat", "animal");
  auto extent = [](const std::string& sort) {
    return sort == "kinds" ? std::vector<std::string>{"siamese"} : std::vector<std::string>{};
  };
  EXPECT_EQ(ont.derived_sort_extent("animal", extent), (std::set<std::string>{"animal with breasts", "cat siamese"}));
  EXPECT_TRUE(ont.derived_sort_extent("animal with breasts", extent).empty());
  EXPECT_IFOL_ERROR(ont.derived_sort_extent("cat", extent), NotARelationalConcept);
}

TEST(Lattice, BoundsJoinAndMeet) {
  SortLattice l;
  for (auto s : {"a", "b", "c"}) l.add_node(s);
  l.add_edge("a", "c");
  l.add_edge("b", "c");
  EXPECT_EQ(l.join("a", "b"), "c");
  EXPECT_EQ(l.meet("a", "b"), std::string(kEmptySet));
  EXPECT_EQ(l.join("a", "c"), "c");
  EXPECT_EQ(l.meet("a", "c"), "a");
}

// Random DAGs over up to 32 sorts: the closure is a bounded partial order.
TEST(LatticeProperty, PartialOrderLawsAndBounds) {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    SortLattice l;
    std::size_t n = 1 + rng() % 30;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("s" + std::to_string(i));
      l.add_node(names.back());
    }
    for (std::size_t k = 0; k < 2 * n; ++k) {
      std::size_t i = rng() % n;
      std::size_t j = rng() % n;
      if (i < j) l.add_edge(names[i], names[j]);  // index order keeps it acyclic
    }
    const auto& all = l.nodes();
    ASSERT_LE(all.size(), 32u);
    for (const auto& a : all) {
      EXPECT_TRUE(l.is_subsort(a, a));
      EXPECT_TRUE(l.is_subsort(kEmptySet, a));
      EXPECT_TRUE(l.is_subsort(a, kEverything));
      for (const auto& b : all) {
        if (a != b && l.is_subsort(a, b)) EXPECT_FALSE(l.is_subsort(b, a));
        for (const auto& c : all) {
          if (l.is_subsort(a, b) && l.is_subsort(b, c)) EXPECT_TRUE(l.is_subsort(a, c));
        }
      }
    }
  }
}

TEST(OntologyProperty, ValidElementsAreMonotone) {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    Ontology ont;
    std::vector<std::string> sorts;
    for (int i = 0; i < 6; ++i) {
      sorts.push_back("t" + std::to_string(i));
      ont.declare_sort(sorts.back(), 1, {sorts.back()});
    }
    for (int k = 0; k < 8; ++k) {
      std::size_t i = rng() % 6;
      std::size_t j = rng() % 6;
      if (i < j) ont.declare_isa(sorts[i], sorts[j]);
    }
    for (int e = 0; e < 8; ++e) {
      std::string lexeme = "e" + std::to_string(round) + "_" + std::to_string(e);
      ont.declare_particular(lexeme, sorts[rng() % 6]);
    }
    for (const auto& a : sorts) {
      auto da = ont.valid_elements(a);
      std::set<ElementId> sa(da.begin(), da.end());
      for (ElementId u : da) EXPECT_TRUE(ont.is_subsort(ont.dynamic_sort(u), a));
      for (const auto& b : sorts) {
        if (!ont.is_subsort(a, b)) continue;
        auto db = ont.valid_elements(b);
        std::set<ElementId> sb(db.begin(), db.end());
        EXPECT_TRUE(std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
      }
    }
  }
}

TEST(Ontology, ParticularRedeclaredWithOtherSort) {
  Ontology ont;
  ont.declare_sort("cat", 1, {"cat"});
  ont.declare_sort("dog", 1, {"dog"});
  ont.declare_particular("tom", "cat");
  EXPECT_NO_THROW(ont.declare_particular("tom", "cat"));
  EXPECT_IFOL_ERROR(ont.declare_particular("tom", "dog"), DuplicateName);
}

}  // namespace
}  // namespace ifol
