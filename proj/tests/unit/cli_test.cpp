#include <fstream>
#include <sstream>

#include "ifol/report.hpp"
#include "support.hpp"

namespace ifol {
namespace {

const std::vector<std::string> kFixtures = {"animals.ifol", "arith.ifol",      "en_problem.ifol", "purrs.ifol",
                                            "sphere.ifol",  "unentailed.ifol", "witness.ifol"};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_text(const std::string& text, unsigned threads = 1) {
  auto ws = testing::load(text);
  RunOptions options;
  options.threads = threads;
  return run_queries(*ws, options);
}

LoadFailure load_failure(const std::string& text) {
  try {
    testing::load(text);
  } catch (const LoadFailure& e) {
    return e;
  }
  ADD_FAILURE() << "expected the workspace to be rejected";
  return LoadFailure("<none>", {});
}

TEST(Loader, EveryFixtureLoads) {
  for (const auto& name : kFixtures) {
    EXPECT_NO_THROW(load_workspace(testing::fixture(name))) << name;
  }
}

TEST(Loader, AnimalsFixture) {
  auto ws = load_workspace(testing::fixture("animals.ifol"));
  EXPECT_TRUE(ws->ontology.is_subsort("cat", "animal"));
  EXPECT_EQ(ws->ontology.concept_named("animal").arity(), 3u);
  EXPECT_EQ(ws->queries.size(), 5u);
}

TEST(Loader, DeclarationOrderDoesNotMatter) {
  const char* ordered = R"(
sort Animal
sort Cat isa Animal
extent Cat = {tom}
extent Animal = {tom, rex}
concept purrs arity 1 sorts Cat predicate purrs
axiom exists x:Cat . purrs(x)
query check
query consequence purrs(tom)
)";
  const char* shuffled = R"(
concept purrs arity 1 sorts Cat predicate purrs
axiom exists x:Cat . purrs(x)
extent Animal = {tom, rex}
sort Cat isa Animal
query check
extent Cat = {tom}
query consequence purrs(tom)
sort Animal
)";
  auto a = run_text(ordered);
  auto b = run_text(shuffled);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_NE(a.report.find("CONSEQUENCE yes"), std::string::npos);
}

TEST(Loader, RedeclaredSortReportsItsLine) {
  auto failure = load_failure("sort thing\n\nsort thing\n");
  ASSERT_EQ(failure.diagnostics().size(), 1u);
  EXPECT_EQ(failure.diagnostics()[0].kind, ErrorKind::DuplicateName);
  EXPECT_EQ(failure.diagnostics()[0].line, 3u);
  EXPECT_EQ(format_diagnostics(failure).rfind("<input>:3:1: DuplicateName:", 0), 0u) << format_diagnostics(failure);
}

TEST(Loader, ParseErrorsCarryLineAndColumn) {
  auto failure = load_failure("sort thing\naxiom p(a\n");
  ASSERT_FALSE(failure.diagnostics().empty());
  const auto& d = failure.diagnostics()[0];
  EXPECT_EQ(d.kind, ErrorKind::ParseError);
  EXPECT_EQ(d.line, 2u);
  EXPECT_GT(d.column, 1u);
  EXPECT_EQ(load_failure("frobnicate everything\n").diagnostics()[0].kind, ErrorKind::ParseError);
}

TEST(Loader, SortErrorsRejectTheWholeFile) {
  auto failure = load_failure(R"(
sort rationals
sort integers isa rationals
extent integers = {1, 2}
extent rationals = {1, 2, 0.5}
concept p arity 1 sorts integers predicate p
axiom p(0.5)
query consequence p(1) & p(0.5)
)");
  ASSERT_EQ(failure.diagnostics().size(), 2u);
  EXPECT_EQ(failure.diagnostics()[0].kind, ErrorKind::ValidationError);
  EXPECT_EQ(failure.diagnostics()[0].line, 7u);
  EXPECT_EQ(failure.diagnostics()[0].message, "SORT-ERR A1 arg1: found rationals required integers");
  EXPECT_EQ(failure.diagnostics()[1].message, "SORT-ERR Q1 arg1: found rationals required integers");
}

TEST(Loader, UnknownConceptsQueryPredicate) {
  auto failure = load_failure("sort thing\nquery concepts nothing\n");
  EXPECT_EQ(failure.diagnostics()[0].kind, ErrorKind::UnregisteredPredicate);
}

TEST(Reports, ConsequenceBlocks) {
  auto yes = run_queries(*load_workspace(testing::fixture("purrs.ifol")));
  EXPECT_EQ(yes.exit_code, 0);
  EXPECT_NE(yes.report.find("QUERY 2 consequence\nFORMULA purrs(tom)\nWORLDS 2\nMODELS 1\nCONSEQUENCE yes\n"),
            std::string::npos);
  EXPECT_EQ(yes.report.find("COUNTERMODEL"), std::string::npos);

  auto no = run_queries(*load_workspace(testing::fixture("unentailed.ifol")));
  EXPECT_EQ(no.exit_code, 1);
  EXPECT_EQ(no.report,
            "QUERY 1 consequence\nFORMULA p(a)\nWORLDS 2\nMODELS 2\nCONSEQUENCE no\nCOUNTERMODEL w0\n"
            "WORLD w0 p = {}\n");
}

TEST(Reports, CountermodelListsTheAssignment) {
  auto r = run_text("sort thing\nextent thing = {a, b}\nconcept p arity 1 sorts thing predicate p\n"
                    "axiom p(a)\nquery consequence p(x:thing)\n");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.report.find("COUNTERMODEL w1\nWORLD w1 p = {(a)}\nASSIGN x=b\n"), std::string::npos) << r.report;
}

TEST(Reports, SphereIntensionIsSortedAnd33Long) {
  auto r = run_queries(*load_workspace(testing::fixture("sphere.ifol")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.report.find("INTENSION 33 {(-1, -1, -1), (-1, -1, 0),"), std::string::npos);
  EXPECT_NE(r.report.find("BEALER-MONTAGUE ok"), std::string::npos);
  EXPECT_NE(r.report.find("PROPOSITION I(know(present,\"Zoran Majkic\",I(told(past,\"Alberto Rossi\",I(leq2("),
            std::string::npos);
  EXPECT_EQ(r.report.find("ERROR"), std::string::npos);
}

TEST(Reports, ConceptTrees) {
  auto ws = load_workspace(testing::fixture("animals.ifol"));
  std::string tree = render_concept_tree(*ws, "animal");
  EXPECT_NE(tree.find("\n    animal with breasts hairy:habitat\n"), std::string::npos);
  EXPECT_EQ(tree.find("animal hairy with breasts"), std::string::npos);
  EXPECT_EQ(tree.rfind("animal:kind of animals,hairness,habitat\n", 0), 0u);

  auto unary = testing::load("sort thing\nextent thing = {a, b}\nconcept p arity 1 sorts thing predicate p\n");
  EXPECT_EQ(render_concept_tree(*unary, "p"), "p:thing\n");

  auto r = run_text("sort reals\nsort thing\nextent thing = {a}\n"
                    "concept size arity 2 sorts thing reals predicate size\nquery concepts size\n");
  EXPECT_NE(r.report.find("ERROR InfiniteSortExtent: sort 'reals' has no finite extent to enumerate"),
            std::string::npos)
      << r.report;
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Reports, ErrorsStayInTheirBlock) {
  auto r = run_text("sort thing\nextent thing = {a}\nsort reals\nconcept p arity 1 sorts thing predicate p\n"
                    "concept big arity 1 sorts reals predicate big\nquery check\nquery concepts p\n");
  EXPECT_NE(r.report.find("QUERY 1 check\nERROR InfiniteExtent"), std::string::npos) << r.report;
  EXPECT_NE(r.report.find("QUERY 2 concepts\nNODES 1\np:thing\n"), std::string::npos);
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Reports, CorpusFixturesEvaluateWithoutErrors) {
  for (const auto& name : {"sphere.ifol", "en_problem.ifol"}) {
    auto r = run_queries(*load_workspace(testing::fixture(name)));
    EXPECT_EQ(r.report.find("ERROR"), std::string::npos) << name;
    EXPECT_NE(r.report.find("PROPOSITION "), std::string::npos) << name;
    EXPECT_EQ(r.exit_code, 0);
  }
}

TEST(RoundTrip, RenderedWorkspacesBehaveIdentically) {
  for (const auto& name : kFixtures) {
    auto original = load_workspace(testing::fixture(name));
    std::string text = render_workspace(*original);
    std::unique_ptr<Workspace> reloaded;
    ASSERT_NO_THROW(reloaded = testing::load(text)) << name << "\n" << text;
    auto a = run_queries(*original);
    auto b = run_queries(*reloaded);
    EXPECT_EQ(a.report, b.report) << name;
    EXPECT_EQ(a.exit_code, b.exit_code) << name;
    EXPECT_EQ(render_workspace(*reloaded), text) << name;
  }
}

TEST(Determinism, ReportsDoNotDependOnThreadCount) {
  for (const auto& name : kFixtures) {
    std::string text = read_file(testing::fixture(name));
    auto once = run_text(text, 1);
    EXPECT_EQ(run_text(text, 1).report, once.report) << name;
    EXPECT_EQ(run_text(text, 8).report, once.report) << name;
  }
}

}  // namespace
}  // namespace ifol
