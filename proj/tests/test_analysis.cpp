// Language comparison, expansions, tautology checking, redex
// classification, and the preservation harness over the bundled corpus.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "helpers.hpp"
#include "lkgram/analysis.hpp"

using namespace lkgram;
using namespace testutil;

namespace {

WitnessItem item(int index, std::vector<TermPtr> terms) {
  return make_witness_item(index, std::move(terms));
}

}  // namespace

TEST_CASE("language comparison relations") {
  WitnessItem a = item(0, {mk_fun("c")});
  WitnessItem b = item(0, {mk_fun("d")});
  WitnessItem c2 = item(1, {});

  SUBCASE("equal") {
    LanguageComparison r = compare_languages({a, b}, {a, b});
    CHECK(r.rel == Relation::Equal);
    CHECK(r.only_left.empty());
    CHECK(r.only_right.empty());
  }
  SUBCASE("proper subset and superset") {
    LanguageComparison r = compare_languages({a}, {a, b});
    CHECK(r.rel == Relation::ProperSubset);
    REQUIRE(r.only_right.size() == 1);
    CHECK(r.only_right[0] == b);

    r = compare_languages({a, b}, {a});
    CHECK(r.rel == Relation::ProperSuperset);
    REQUIRE(r.only_left.size() == 1);
    CHECK(r.only_left[0] == b);
  }
  SUBCASE("incomparable, with witnesses in both directions") {
    LanguageComparison r = compare_languages({a, c2}, {b, c2});
    CHECK(r.rel == Relation::Incomparable);
    REQUIRE(r.only_left.size() == 1);
    REQUIRE(r.only_right.size() == 1);
    CHECK(r.only_left[0] == a);
    CHECK(r.only_right[0] == b);
  }
  SUBCASE("subset helper") {
    CHECK(witness_subset({a}, {a, b}));
    CHECK(witness_subset({}, {a}));
    CHECK_FALSE(witness_subset({a, b}, {a}));
  }
}

TEST_CASE("expansions instantiate the end-sequent with its witnesses") {
  Problem prob = load("e01_single_witness.lk");
  Expansion e = expansion(prob.proof);
  REQUIRE(e.disjuncts.size() == 2);
  REQUIRE(e.disjuncts[0].size() == 1);
  CHECK(alpha_equal(e.disjuncts[0][0], mk_atom("P", {mk_fun("c")})));
  REQUIRE(e.disjuncts[1].size() == 1);
  CHECK(alpha_equal(e.disjuncts[1][0], mk_negatom("P", {mk_fun("c")})));
  CHECK(expansion_formulas(e).size() == 2);
  CHECK(show_expansion(e).find("atom P c") != std::string::npos);

  // An index with no tuples stays empty (falsum).
  Sequent end{mk_ex("v", mk_atom("P", {mk_bound("v")}))};
  Expansion none = expansion_of(end, {});
  REQUIRE(none.disjuncts.size() == 1);
  CHECK(none.disjuncts[0].empty());
}

TEST_CASE("tautology checking is exact") {
  FormulaPtr pc = mk_atom("P", {mk_fun("c")});

  TautologyResult r = is_tautology({pc, dual(pc)});
  CHECK(r.tautology);
  CHECK(r.countermodel.empty());

  r = is_tautology({pc});
  CHECK_FALSE(r.tautology);
  REQUIRE(r.countermodel.size() == 1);
  CHECK(r.countermodel.begin()->second == false);

  // (P ∧ ¬Q) ∨ ¬P ∨ Q is valid; dropping a disjunct breaks it.
  FormulaPtr q = mk_atom("Q", {mk_fun("c")});
  FormulaPtr both = mk_and(pc, dual(q));
  CHECK(is_tautology({both, dual(pc), q}).tautology);
  CHECK_FALSE(is_tautology({both, dual(pc)}).tautology);

  CHECK_THROWS_AS(is_tautology({mk_ex("v", mk_atom("P", {mk_bound("v")}))}),
                  InputError);
  CHECK_THROWS_AS(is_tautology({mk_atom("P", {mk_var("x")})}), InputError);
}

TEST_CASE("every corpus expansion is propositionally valid") {
  for (const auto& name : valid_corpus()) {
    CAPTURE(name);
    TautologyResult r = is_tautology(
        expansion_formulas(expansion(load(name).proof)));
    CHECK(r.tautology);
  }
}

TEST_CASE("redex classification covers every case of the table") {
  // case name -> expectation, collected over the whole corpus.
  std::map<std::string, std::set<Expectation>> seen;
  for (const auto& name : valid_corpus()) {
    ProofPtr p = load(name).proof;
    for (const Redex& r : applicable_reductions(p)) {
      LemmaExpectation le = classify_redex(p, r);
      seen[le.case_name].insert(le.expected);
    }
  }
  // Equality cases.
  CHECK(seen["quantifier"] ==
        std::set<Expectation>{Expectation::Equal});
  CHECK(seen["other"] == std::set<Expectation>{Expectation::Equal});
  // Inclusion cases.
  CHECK(seen["quantifier-permutation"] ==
        std::set<Expectation>{Expectation::SubsetOrEqual});
  CHECK(seen["weakening"] ==
        std::set<Expectation>{Expectation::SubsetOrEqual});
  // Contraction splits by the class of the contracted formula and by
  // whether the other premise contracts the dual.
  CHECK(seen["contraction"] ==
        std::set<Expectation>{Expectation::Equal, Expectation::SubsetOrEqual,
                              Expectation::NoGuarantee});
  // Cut permutation splits by the classes of the two stacked cut formulas.
  CHECK(seen["cut-permutation"] ==
        std::set<Expectation>{Expectation::Equal, Expectation::NoGuarantee});
}

TEST_CASE("classification details on pinned instances") {
  SUBCASE("existential-class contraction expects exact preservation") {
    ProofPtr p = load("e17_contracted_existential_cut.lk").proof;
    std::vector<Redex> rs = applicable_reductions(p);
    REQUIRE(rs.size() == 1);
    LemmaExpectation le = classify_redex(p, rs[0]);
    CHECK(le.case_name == "contraction");
    CHECK(le.sigma2_cut_formula);
    CHECK_FALSE(le.dual_contractions);
    CHECK(le.expected == Expectation::Equal);
  }
  SUBCASE("one-sided two-block contraction expects at most the language") {
    ProofPtr p = load("e18_contracted_two_block_cut_one_sided.lk").proof;
    for (const Redex& r : applicable_reductions(p)) {
      if (r.kind != RedexKind::Contraction) continue;
      LemmaExpectation le = classify_redex(p, r);
      CHECK_FALSE(le.sigma2_cut_formula);
      CHECK_FALSE(le.dual_contractions);
      CHECK(le.expected == Expectation::SubsetOrEqual);
    }
  }
  SUBCASE("mutual contractions void the guarantee") {
    ProofPtr p =
        load("e09_contraction_on_universal_cut_formula.lk").proof;
    bool found = false;
    for (const Redex& r : applicable_reductions(p)) {
      if (r.kind != RedexKind::Contraction) continue;
      LemmaExpectation le = classify_redex(p, r);
      CHECK_FALSE(le.sigma2_cut_formula);
      CHECK(le.dual_contractions);
      CHECK(le.expected == Expectation::NoGuarantee);
      found = true;
    }
    CHECK(found);
  }
  SUBCASE("stacked one-block cuts keep the equality guarantee") {
    ProofPtr p = load("e16_cut_hoisted_over_universal.lk").proof;
    bool found = false;
    for (const Redex& r : applicable_reductions(p)) {
      if (r.kind != RedexKind::BinaryPerm) continue;
      LemmaExpectation le = classify_redex(p, r);
      CHECK(le.case_name == "cut-permutation");
      CHECK(le.expected == Expectation::Equal);
      found = true;
    }
    CHECK(found);
  }
  SUBCASE("stacked genuine two-block cuts do not") {
    ProofPtr p = load("e08_coupled_stacked_cuts.lk").proof;
    bool found = false;
    for (const Redex& r : applicable_reductions(p)) {
      if (r.kind != RedexKind::BinaryPerm) continue;
      LemmaExpectation le = classify_redex(p, r);
      CHECK(le.case_name == "cut-permutation");
      CHECK(le.expected == Expectation::NoGuarantee);
      found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("preservation verification over the whole corpus is consistent") {
  size_t reports = 0;
  for (const auto& name : valid_corpus()) {
    ProofPtr p = load(name).proof;
    for (const PreservationReport& rep : verify_all(p)) {
      CAPTURE(name);
      CAPTURE(show_redex(rep.redex));
      CHECK(rep.consistent);
      ++reports;
    }
  }
  CHECK(reports >= 24);  // every corpus redex produced a report
}

TEST_CASE("the coupled stacked cuts are incomparable under permutation") {
  ProofPtr p = load("e08_coupled_stacked_cuts.lk").proof;
  std::vector<Redex> rs = applicable_reductions(p);
  REQUIRE_FALSE(rs.empty());
  REQUIRE(rs[0].kind == RedexKind::BinaryPerm);

  PreservationReport rep = verify_preservation(p, rs[0]);
  CHECK(rep.consistent);
  CHECK(rep.observed == Relation::Incomparable);
  CHECK(rep.only_before.size() == 6);
  CHECK(rep.only_after.size() == 1);

  // Pinned witnesses: one tuple in each direction.
  bool lost_pinned = false;
  for (const auto& w : rep.only_before)
    if (show_witness_item(w) == "(3, <h(g(d)),g(k(f(c)))>)") lost_pinned = true;
  CHECK(lost_pinned);
  CHECK(show_witness_item(rep.only_after[0]) ==
        "(3, <h(g(k(f(c)))),g(k(f(h(g(k(f(c)))))))>)");

  // The permuted proof itself re-checks and its language is the after-set.
  ProofPtr q = apply_reduction(p, rs[0]);
  CHECK(check_proof(q).empty());
  LanguageComparison cmp = compare_languages(items_of(q), items_of(p));
  CHECK(cmp.rel == Relation::Incomparable);
}

TEST_CASE("the weakening step can lose exactly the filler tuples") {
  ProofPtr p = load("e06_weakened_cut_left.lk").proof;
  bool found = false;
  for (const Redex& r : applicable_reductions(p)) {
    if (r.kind != RedexKind::Weakening) continue;
    PreservationReport rep = verify_preservation(p, r);
    CHECK(rep.consistent);
    CHECK(rep.observed == Relation::ProperSubset);
    CHECK(rep.only_after.empty());
    REQUIRE_FALSE(rep.only_before.empty());
    found = true;
  }
  CHECK(found);
}

TEST_CASE("end-to-end pipeline") {
  SUBCASE("a representative proof under each strategy") {
    ProofPtr p = load("e03_two_block_cut.lk").proof;
    for (Strategy s :
         {Strategy::WeakFirst, Strategy::Restricted, Strategy::Unrestricted}) {
      CAPTURE(strategy_name(s));
      EndToEndReport rep = end_to_end_check(p, s);
      CHECK(rep.ok);
      CHECK(rep.output_valid);
      CHECK(rep.herbrand_included);
      CHECK(rep.taut.tautology);
      CHECK_FALSE(rep.limit_hit);
      CHECK(rep.language_before.size() == 1);
    }
  }
  SUBCASE("the step limit is reported, not fatal") {
    EndToEndReport rep = end_to_end_check(
        load("e03_two_block_cut.lk").proof, Strategy::WeakFirst,
        GrammarMode::ContextSensitive, 2);
    CHECK(rep.limit_hit);
    CHECK_FALSE(rep.ok);
  }
  SUBCASE("whole corpus, both supported strategies") {
    for (const auto& name : valid_corpus()) {
      ProofPtr p = load(name).proof;
      for (Strategy s : {Strategy::WeakFirst, Strategy::Restricted}) {
        CAPTURE(name);
        CAPTURE(strategy_name(s));
        EndToEndReport rep = end_to_end_check(p, s);
        CHECK(rep.ok);
      }
    }
  }
}
