#include <doctest.h>

#include "support.hpp"
#include "taam/aspect_lang.hpp"
#include "taam/constraints.hpp"

using namespace taam;
using taam::testing::corpus;
using taam::testing::ids_of;

namespace {

std::set<std::set<StatementId>> members(const std::vector<StatementsSet>& sets) {
  std::set<std::set<StatementId>> out;
  for (const auto& s : sets) out.insert(s.members);
  return out;
}

Model pair_model(RelationTypes types, ThemeSet rel_themes = {"t"}) {
  Model m;
  m.add_theme("t");
  m.add_statement({"a", Ordinary{}}, {"t"});
  m.add_statement({"b", Ordinary{}}, {"t"});
  m.add_relation({"a", "b", types, std::move(rel_themes)});
  return m;
}

Interpretation pair_interp(const Algebra& alg, const std::string& a, const std::string& b) {
  Interpretation i(alg);
  i.set_theme_aspects({"t"}, AspectSpace::all(alg));
  i.set_statement_aspects({"t"}, "a", {eval(a, alg)});
  i.set_statement_aspects({"t"}, "b", {eval(b, alg)});
  return i;
}

}  // namespace

TEST_CASE("statements-sets on the reference graph") {
  auto m = taam::testing::reference_graph();
  using K = StatementsSetKind;
  using R = RelationType;
  using S = std::set<StatementId>;
  CHECK(members(statements_sets(m, "s6", "t2", R::attack, K::width)) == std::set<S>{{"s4", "s6"}});
  CHECK(members(statements_sets(m, "s6", "t1", R::support, K::width)) == std::set<S>{{"s3", "s5", "s6"}});
  CHECK(members(statements_sets(m, "s6", "t2", R::attack, K::depth)) == std::set<S>{{"s1", "s4", "s6"}});
  CHECK(members(statements_sets(m, "s6", "t1", R::support, K::depth)) ==
        std::set<S>{{"s2", "s5", "s6"}, {"s3", "s6"}});
  auto depth = statements_sets(m, "s6", "t2", R::attack, K::depth);
  CHECK(depth[0].path == std::vector<StatementId>{"s1", "s4", "s6"});
}

TEST_CASE("an isolated statement is its own statements-set") {
  Model m;
  m.add_theme("t");
  m.add_statement({"s", Ordinary{}}, {"t"});
  using S = std::set<StatementId>;
  for (auto k : {StatementsSetKind::width, StatementsSetKind::depth})
    CHECK(members(statements_sets(m, "s", "t", RelationType::attack, k)) == std::set<S>{{"s"}});
}

TEST_CASE("statements-sets agree with subset enumeration") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    auto m = taam::testing::random_graph(rng, 6);
    for (const auto& s : m.statements())
      for (const auto& t : m.themes_of(s.id))
        for (auto rel : {RelationType::attack, RelationType::support}) {
          CHECK(members(statements_sets(m, s.id, t, rel, StatementsSetKind::depth)) ==
                taam::testing::brute_depth(m, s.id, t, rel));
          CHECK(members(statements_sets(m, s.id, t, rel, StatementsSetKind::width)) ==
                taam::testing::brute_width(m, s.id, t, rel));
        }
  }
}

TEST_CASE("minimal representations") {
  Algebra a({"x", "y"});
  auto imp = eval("x -> y", a);
  auto nand = eval("~x | ~y", a);
  auto nx = eval("~x", a);
  CHECK(minimal_representations(a, {imp, nand}) == std::vector<ElementSet>{{imp, nand}});
  CHECK(minimal_representations(a, {imp, nx}) == std::vector<ElementSet>{{nx}});
  CHECK(minimal_representations(a, {}).empty());

  Algebra g({"ge", "bt"});
  auto reps = minimal_representations(g, {eval("ge", g), eval("bt", g), eval("bt -> ge", g)});
  CHECK(reps.size() == 2);
  CHECK(std::find(reps.begin(), reps.end(), ElementSet{eval("ge", g), eval("bt", g)}) != reps.end());
}

TEST_CASE("redundancy in a statements-set") {
  Algebra a({"x", "y"});
  Model m;
  m.add_theme("t");
  for (const auto* s : {"s2", "s5", "s6"}) m.add_statement({s, Ordinary{}}, {"t"});
  Interpretation i(a);
  i.set_statement_aspects({"t"}, "s5", {eval("x -> y", a), eval("~x | ~y", a)});
  i.set_statement_aspects({"t"}, "s6", {eval("~x", a)});
  i.set_statement_aspects({"t"}, "s2", {eval("x -> y", a), eval("~x", a)});
  CHECK_FALSE(find_redundancy(m, i, "t", {"s5", "s6"}));
  auto red = find_redundancy(m, i, "t", {"s2", "s5", "s6"});
  REQUIRE(red);
  CHECK(red->shared == ElementSet{eval("~x", a)});
}

TEST_CASE("relation classification") {
  Algebra a({"x", "y"});
  auto x = a.prop("x");
  auto y = a.prop("y");
  using L = RelationLabel;
  CHECK(classify_aspects(~x | ~y, x) == std::set<L>{L::weakened_contradiction});
  CHECK(classify_aspects(y, x) == std::set<L>{L::incomparable_alternative});
  CHECK(classify_aspects(x, x) == std::set<L>{L::affirmation});
  CHECK(classify_aspects(x & y, x) == std::set<L>{L::strengthening});
  CHECK(classify_aspects(x | y, x) == std::set<L>{L::weakening});
  CHECK(classify_aspects(~x & y, x) == std::set<L>{L::contrary});
  CHECK(classify_aspects(std::nullopt, x) == std::set<L>{L::undefined});

  auto doc = corpus("straw_man");
  const auto& r = *doc.model.find_relation("s2", "s1");
  CHECK(classify_relation(doc.model, *doc.interpretation, {"t"}, r) == std::set<L>{L::strengthening});
}

TEST_CASE("graphic constraints") {
  SUBCASE("tr") {
    auto doc = corpus("tr_violation");
    auto vs = check_graphic(doc.model);
    CHECK(ids_of(vs) == std::set<ConstraintId>{ConstraintId::tr});
  }
  SUBCASE("nnp on a dangling pointer") {
    auto doc = corpus("false_flag");
    auto vs = check_graphic(doc.model);
    REQUIRE(ids_of(vs) == std::set<ConstraintId>{ConstraintId::nnp});
    CHECK(vs[0].witness.statements[0] == StatementId("s1"));
  }
  SUBCASE("nnp on a summary pointer") {
    Model m;
    m.add_theme("t1");
    m.add_theme("t2");
    m.add_statement({"c", SummaryPointer{"t2"}}, {"t1"});
    CHECK(ids_of(check_graphic(m)) == std::set<ConstraintId>{ConstraintId::nnp});
  }
  SUBCASE("nsa") {
    Model m;
    m.add_theme("t");
    m.add_statement({"a", Ordinary{}}, {"t"});
    m.add_relation({"a", "a", {.attack = true}, {"t"}});
    CHECK(ids_of(check_graphic(m)) == std::set<ConstraintId>{ConstraintId::nsa});
  }
  SUBCASE("kos") {
    Model m;
    m.add_theme("t1");
    m.add_theme("t2");
    m.add_statement({"a", Ordinary{}}, {"t1"});
    m.add_statement({"p", StatementPointer{"t1", "a"}}, {"t2"});
    CHECK(ids_of(check_graphic(m)) == std::set<ConstraintId>{ConstraintId::kos});
  }
  SUBCASE("nss") {
    auto both = pair_model({.attack = true, .support = true});
    CHECK(ids_of(check_graphic(both)) == std::set<ConstraintId>{ConstraintId::nss});

    auto m = pair_model({.attack = true});
    m.add_statement({"c", Ordinary{}}, {"t"});
    m.add_relation({"c", "a", {.support = true}, {"t"}});
    m.add_relation({"c", "b", {.support = true}, {"t"}});
    CHECK(ids_of(check_graphic(m)) == std::set<ConstraintId>{ConstraintId::nss});

    auto n = pair_model({.attack = true});
    n.add_statement({"c", Ordinary{}}, {"t"});
    n.add_relation({"a", "c", {.support = true}, {"t"}});
    n.add_relation({"b", "c", {.support = true}, {"t"}});
    CHECK(ids_of(check_graphic(n)) == std::set<ConstraintId>{ConstraintId::nss});
  }
}

TEST_CASE("Core constraints one at a time") {
  Algebra alg({"x", "y"});
  SUBCASE("aass attack needs different aspects") {
    auto m = pair_model({.attack = true});
    CHECK(ids_of(check_core(m, pair_interp(alg, "x", "x"))) == std::set<ConstraintId>{ConstraintId::aass});
    CHECK(check_core(m, pair_interp(alg, "x", "y")).empty());
  }
  SUBCASE("aass support needs comparable aspects") {
    auto m = pair_model({.support = true});
    CHECK(ids_of(check_core(m, pair_interp(alg, "x", "y"))) == std::set<ConstraintId>{ConstraintId::aass});
    CHECK(check_core(m, pair_interp(alg, "x & y", "y")).empty());
  }
  SUBCASE("aass needs aspects on both ends") {
    auto m = pair_model({.attack = true});
    auto i = pair_interp(alg, "x", "y");
    i.set_statement_aspects({"t"}, "b", {});
    CHECK(ids_of(check_core(m, i)) == std::set<ConstraintId>{ConstraintId::aass});
  }
  SUBCASE("i, vi, ss") {
    auto m = pair_model({.attack = true});
    auto i = pair_interp(alg, "x", "y");
    i.set_theme_aspects({"t"}, AspectSpace::generated(alg, {alg.prop("x")}));
    CHECK(ids_of(check_core(m, i)) == std::set<ConstraintId>{ConstraintId::i});
    auto j = pair_interp(alg, "x", "y");
    j.set_statement_aspects({}, "a", {alg.prop("x")});
    CHECK(ids_of(check_core(m, j)).contains(ConstraintId::vi));
    auto k = pair_interp(alg, "x", "1");
    CHECK(ids_of(check_core(m, k)) == std::set<ConstraintId>{ConstraintId::ss});
  }
  SUBCASE("bat") {
    auto m = pair_model({.attack = true});
    auto i = pair_interp(alg, "x", "y");
    i.set_theme_aspects({"t"}, AspectSpace::listed({alg.bottom(), alg.top(), alg.prop("x"), alg.prop("y")}));
    auto ids = ids_of(check_core(m, i));
    CHECK(ids.contains(ConstraintId::bat));
  }
  SUBCASE("pr, mat, manss") {
    Model m;
    m.add_theme("t1");
    m.add_theme("t2");
    m.add_statement({"a", Ordinary{}}, {"t1"});
    Interpretation i(alg);
    for (ThemeSet ts : {ThemeSet{"t1"}, ThemeSet{"t2"}, ThemeSet{"t1", "t2"}})
      i.set_theme_aspects(ts, AspectSpace::all(alg));
    i.set_statement_aspects({"t1"}, "a", {alg.prop("x")});
    CHECK(check_core(m, i).empty());
    i.set_statement_aspects({"t2"}, "a", {alg.prop("y")});
    CHECK(ids_of(check_core(m, i)) == std::set<ConstraintId>{ConstraintId::pr});
    i.set_statement_aspects({"t2"}, "a", {});
    i.set_statement_aspects({"t1", "t2"}, "a", {});
    CHECK(ids_of(check_core(m, i)) == std::set<ConstraintId>{ConstraintId::manss});
    i.set_statement_aspects({"t1", "t2"}, "a", {alg.prop("x")});
    i.set_theme_aspects({"t1", "t2"}, AspectSpace::generated(alg, {alg.prop("x")}));
    CHECK(ids_of(check_core(m, i)) == std::set<ConstraintId>{ConstraintId::mat});
  }
}

TEST_CASE("corpus verdicts") {
  SUBCASE("fear appeal") {
    auto doc = corpus("fear_appeal");
    auto vs = check_core(doc.model, *doc.interpretation);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].constraint == ConstraintId::i);
    CHECK(*vs[0].witness.themes == ThemeSet{"t2"});
    CHECK(vs[0].witness.statements == std::vector<StatementId>{"s2"});
    CHECK(check_graphic(doc.model).empty());
  }
  SUBCASE("straw man") {
    auto doc = corpus("straw_man");
    const auto& i = *doc.interpretation;
    CHECK(check_core(doc.model, i).empty());
    auto das = check_das(doc.model, i);
    CHECK(das.size() == 2);
    CHECK(classify_normal_form(doc.model, i, {ConstraintGroup::core, ConstraintGroup::e}).normal);
    CHECK(classify_normal_form(doc.model, i, {ConstraintGroup::core, ConstraintGroup::f}).normal);
    CHECK(classify_normal_form(doc.model, i, {ConstraintGroup::core, ConstraintGroup::nwci}).normal);
    CHECK_FALSE(classify_normal_form(doc.model, i, {ConstraintGroup::core, ConstraintGroup::das}).normal);
  }
  SUBCASE("question begging") {
    for (const auto* name : {"question_begging_opium", "question_begging_god"}) {
      auto doc = corpus(name);
      const auto& i = *doc.interpretation;
      CHECK(check_core(doc.model, i).empty());
      CHECK(check_das(doc.model, i).empty());
      auto f = check_F(doc.model, i);
      CHECK(ids_of(f).contains(ConstraintId::faD));
      for (const auto& v : f)
        CHECK(std::set<StatementId>(v.witness.statements.begin(), v.witness.statements.end()) ==
              std::set<StatementId>{"s1", "s2"});
    }
  }
  SUBCASE("existence") {
    auto doc = corpus("existence");
    CHECK(check_core(doc.model, *doc.interpretation).empty());
  }
  SUBCASE("false flag") {
    auto doc = corpus("false_flag");
    CHECK(ids_of(check_core(doc.model, *doc.interpretation)) == std::set<ConstraintId>{ConstraintId::pr});
  }
}

TEST_CASE("normal form needs Core") {
  auto doc = corpus("straw_man");
  CHECK_THROWS_AS(classify_normal_form(doc.model, *doc.interpretation, {ConstraintGroup::das}),
                  std::invalid_argument);
}

TEST_CASE("every reported violation is reconfirmed by its witness") {
  for (const auto* name : {"fear_appeal", "straw_man", "question_begging_opium", "question_begging_god",
                           "false_flag", "contradictory"}) {
    auto doc = corpus(name);
    const auto& i = *doc.interpretation;
    auto verdict = classify_normal_form(
        doc.model, i,
        {ConstraintGroup::core, ConstraintGroup::e, ConstraintGroup::das, ConstraintGroup::nwci, ConstraintGroup::f});
    auto all = verdict.violations;
    for (auto& g : check_graphic(doc.model)) all.push_back(g);
    for (const auto& v : all) CHECK_MESSAGE(reconfirm(doc.model, i, v), name << " " << to_string(v.constraint));
  }
}

TEST_CASE("witness synthesis") {
  SUBCASE("refuses graphs violating a graphic constraint") {
    auto ff = corpus("false_flag");
    try {
      synthesize_core_witness(ff.model);
      FAIL("expected a precondition error");
    } catch (const SynthesisError& e) {
      CHECK(e.kind() == SynthesisError::Kind::precondition);
      CHECK(std::string(e.what()) == "nnp violated");
    }
    auto tr = corpus("tr_violation");
    CHECK_THROWS_AS(synthesize_core_witness(tr.model), SynthesisError);
  }
  SUBCASE("single statement") {
    auto doc = corpus("existence");
    auto w = synthesize_core_witness(doc.model);
    CHECK(check_core(doc.model, w.interpretation).empty());
  }
  SUBCASE("pointers and summaries") {
    Model m;
    m.add_theme("t1");
    m.add_theme("t2");
    m.add_statement({"a", Ordinary{}}, {"t1", "t2"});
    m.add_statement({"b", Ordinary{}}, {"t1", "t2"});
    m.add_statement({"p", StatementPointer{"t1", "a"}}, {"t1", "t2"});
    m.add_statement({"c", SummaryPointer{"t2"}}, {"t1", "t2"});
    m.add_relation({"b", "a", {.attack = true}, {"t1", "t2"}});
    m.add_relation({"p", "c", {.attack = true}, {"t1"}});
    auto w = synthesize_core_witness(m);
    CHECK(w.algebra.prop_count() == 16);
    CHECK(check_core(m, w.interpretation).empty());
  }
  SUBCASE("cap") {
    Model m;
    for (const auto* t : {"t1", "t2", "t3"}) m.add_theme(t);
    m.add_statement({"a", Ordinary{}}, {"t1"});
    try {
      synthesize_core_witness(m);
      FAIL("expected a cap error");
    } catch (const SynthesisError& e) {
      CHECK(e.kind() == SynthesisError::Kind::cap);
    }
  }
}
