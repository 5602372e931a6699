// Grammar extraction, typing, acyclicity, rewriting, and language
// enumeration, with frozen expected languages for the bundled proofs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <random>

#include "helpers.hpp"
#include "lkgram/grammar.hpp"
#include "lkgram/lambda.hpp"

using namespace lkgram;
using namespace testutil;

namespace {

std::string lang_str(const std::string& file,
                     GrammarMode mode = GrammarMode::ContextSensitive) {
  Grammar g = extract_grammar(load(file).proof, mode);
  return show_witness_set(language(g).items);
}

}  // namespace

TEST_CASE("extraction produces one non-terminal family per proof node") {
  Problem prob = load("e01_single_witness.lk");
  Grammar g = extract_grammar(prob.proof, GrammarMode::ContextSensitive);
  CHECK(g.root == prob.proof->id);
  CHECK(g.end.size() == 2);
  CHECK(g.nts.size() == proof_size(prob.proof));
  CHECK(g.prods.size() == 4);
  CHECK(type_equal(nt_full_type(g, g.root, 0),
                   ty_arrow(ty_eps(), ty_arrow(ty_eps(), o_power(1)))));

  std::string dump = dump_grammar(g);
  CHECK(dump.find("mode: context-sensitive") != std::string::npos);
  CHECK(dump.find("s[0:0] y0 y1 -> (c * ((s[1:0] y0) y1))") !=
        std::string::npos);
  CHECK(dump == dump_grammar(g));  // deterministic
}

TEST_CASE("corpus grammars type-check and are acyclic in both modes") {
  for (const auto& name : valid_corpus()) {
    ProofPtr p = load(name).proof;
    for (GrammarMode m :
         {GrammarMode::ContextSensitive, GrammarMode::ContextFree}) {
      CAPTURE(name);
      CAPTURE(grammar_mode_name(m));
      auto t0 = std::chrono::steady_clock::now();
      Grammar g = extract_grammar(p, m);
      CHECK(grammar_type_errors(g).empty());
      CHECK(grammar_acyclic(g));
      auto dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      CHECK(dt < 1.0);
    }
  }
}

TEST_CASE("tampered grammars are caught") {
  Grammar g = extract_grammar(load("e01_single_witness.lk").proof,
                              GrammarMode::ContextSensitive);

  SUBCASE("value-type mismatch") {
    Grammar bad = g;
    // The start component produces a 1-tuple; an empty tuple cannot.
    for (auto& p : bad.prods)
      if (p.node == bad.root && p.index == 0) p.rhs = l_unit();
    CHECK_FALSE(grammar_type_errors(bad).empty());
  }

  SUBCASE("parameter type mismatch") {
    Grammar bad = g;
    for (auto& p : bad.prods)
      if (p.node == bad.root && p.index == 0 && !p.param_types.empty())
        p.param_types[0] = o_power(1);
    CHECK_FALSE(grammar_type_errors(bad).empty());
  }

  SUBCASE("a back-reference creates a cycle") {
    Grammar bad = g;
    Production back;
    back.node = 1;
    back.index = 0;
    back.params = {"y0", "y1"};
    back.param_types = {ty_eps(), ty_eps()};
    back.rhs = l_apps(l_nt(bad.root, 0),
                      {l_tvar("y0", ty_eps()), l_tvar("y1", ty_eps())});
    bad.prods.push_back(back);
    CHECK_FALSE(grammar_acyclic(bad));
  }
}

TEST_CASE("frozen corpus languages") {
  CHECK(lang_str("e01_single_witness.lk") == "{(0, <c>), (1, <>)}");
  CHECK(lang_str("e02_chain.lk") ==
        "{(0, <c>), (0, <f(c)>), (1, <>), (2, <>)}");
  CHECK(lang_str("e03_two_block_cut.lk") == "{(0, <c>)}");
  CHECK(lang_str("e04_two_block_cut_mirrored.lk") == "{(0, <c>)}");
  CHECK(lang_str("e05_contracted_cut.lk") ==
        "{(0, <c>), (0, <f(c)>), (1, <c>)}");
  CHECK(lang_str("e10_propositional_cut.lk") == "{(0, <>), (1, <>), (2, <>)}");
  CHECK(lang_str("e13_double_universal_block.lk") == "{(0, <d>)}");
}

TEST_CASE("weakened positions contribute the filler constant") {
  CHECK(lang_str("e06_weakened_cut_left.lk") ==
        "{(0, <>), (1, <>), (2, <c>), (2, <wc>)}");
  CHECK(lang_str("e09_contraction_on_universal_cut_formula.lk") ==
        "{(0, <c>), (0, <f(c)>), (1, <c>), (1, <wc>)}");
}

TEST_CASE("the coupled stacked cuts generate the full witness product") {
  // Two chained uses on each side of a shared premise with mutually coupled
  // witnesses: the observed pairs range over all nine combinations.
  CHECK(lang_str("e08_coupled_stacked_cuts.lk") ==
        "{(0, <>), (1, <>), (2, <>), "
        "(3, <h(g(d)),g(d)>), "
        "(3, <h(g(d)),g(k(f(c)))>), "
        "(3, <h(g(d)),g(k(f(h(g(d)))))>), "
        "(3, <h(g(k(f(c)))),g(d)>), "
        "(3, <h(g(k(f(c)))),g(k(f(c)))>), "
        "(3, <h(g(k(f(c)))),g(k(f(h(g(d)))))>), "
        "(3, <h(g(k(f(h(g(d)))))),g(d)>), "
        "(3, <h(g(k(f(h(g(d)))))),g(k(f(c)))>), "
        "(3, <h(g(k(f(h(g(d)))))),g(k(f(h(g(d)))))>), "
        "(4, <>)}");
}

TEST_CASE("languages are closed under the mode relaxation") {
  for (const auto& name : valid_corpus()) {
    CAPTURE(name);
    ProofPtr p = load(name).proof;
    LanguageResult cs =
        language(extract_grammar(p, GrammarMode::ContextSensitive));
    LanguageResult cf = language(extract_grammar(p, GrammarMode::ContextFree));
    CHECK(cs.stuck == 0);
    CHECK(witness_subset(cs.items, cf.items));
  }
}

TEST_CASE("rewrite orders agree where the exhaustive order is feasible") {
  for (const auto& name : small_corpus()) {
    CAPTURE(name);
    ProofPtr p = load(name).proof;
    for (GrammarMode m :
         {GrammarMode::ContextSensitive, GrammarMode::ContextFree}) {
      Grammar g = extract_grammar(p, m);
      LanguageResult a = language(g, RewriteOrder::Outermost);
      LanguageResult b = language(g, RewriteOrder::AllPositions);
      CHECK(a.items == b.items);
      CHECK(a.stuck == b.stuck);
    }
  }
}

TEST_CASE("serial and parallel enumeration produce the same language") {
  for (const auto& name : valid_corpus()) {
    CAPTURE(name);
    ProofPtr p = load(name).proof;
    for (GrammarMode m :
         {GrammarMode::ContextSensitive, GrammarMode::ContextFree}) {
      Grammar g = extract_grammar(p, m);
      LanguageResult serial = language(g);
      LanguageResult parallel = language_parallel(g, 4);
      CHECK(serial.items == parallel.items);
      CHECK(serial.stuck == parallel.stuck);
    }
  }
}

TEST_CASE("random derivations stay inside the enumerated language") {
  for (const auto& name :
       {"e05_contracted_cut.lk", "e08_coupled_stacked_cuts.lk"}) {
    CAPTURE(name);
    Problem prob = load(name);
    Grammar g = extract_grammar(prob.proof, GrammarMode::ContextSensitive);
    WitnessSet lang = language(g).items;
    std::mt19937_64 rng(7);
    for (int i = 0; i < static_cast<int>(g.end.size()); ++i) {
      for (int s = 0; s < 25; ++s) {
        LTermPtr nf = sample_normal_form(g, start_term(g, i), rng);
        if (lterm_contains_nt(nf)) continue;  // dead branch of the rewrite
        WitnessItem item = make_witness_item(i, evaluate_substitutions(nf));
        CHECK(lang.count(item));
      }
    }
  }
}

TEST_CASE("start terms require an existential end-sequent position") {
  Problem prob = load("e01_single_witness.lk");
  Grammar g = extract_grammar(prob.proof, GrammarMode::ContextSensitive);
  CHECK(lterm_type(start_term(g, 0), [&](long n, int i) {
          return nt_full_type(g, n, i);
        }) != nullptr);

  // Weakening a two-block universal formula in front makes slot 0 a function
  // position, so no start term exists for it.
  IdGen ids;
  ids.next = max_node_id(prob.proof) + 1;
  FormulaPtr pi2 = mk_all("u", mk_ex("w", mk_atom("Q", {mk_bound("u"),
                                                        mk_bound("w")})));
  ProofPtr wk = mk_weak(pi2, prob.proof, ids);
  Grammar g2 = extract_grammar(wk, GrammarMode::ContextSensitive);
  CHECK_THROWS_AS(start_term(g2, 0), InputError);
  CHECK_THROWS_AS(start_term(g2, 99), InputError);
}

TEST_CASE("the state cap aborts enumeration with a limit error") {
  Grammar g = extract_grammar(load("e08_coupled_stacked_cuts.lk").proof,
                              GrammarMode::ContextSensitive);
  EnumLimits tiny;
  tiny.max_states = 3;
  CHECK_THROWS_AS(language(g, RewriteOrder::Outermost, tiny), LimitError);
  CHECK_THROWS_AS(language_parallel(g, 4, RewriteOrder::Outermost, tiny),
                  LimitError);
}

TEST_CASE("structured-term layer") {
  SUBCASE("delayed substitutions distribute over tuples") {
    LTermPtr t = l_subst(l_pair(l_fo(mk_var("a")), l_unit()), "a",
                         l_fo(mk_fun("c")));
    std::vector<TermPtr> parts = evaluate_substitutions(beta_normalize(t));
    REQUIRE(parts.size() == 1);
    CHECK(show_term(parts[0]) == "c");
  }
  SUBCASE("innermost substitutions win") {
    // a[a := d][a := c] applies the inner binding first.
    LTermPtr t = l_subst(
        l_subst(l_pair(l_fo(mk_var("a")), l_unit()), "a", l_fo(mk_fun("d"))),
        "a", l_fo(mk_fun("c")));
    std::vector<TermPtr> parts = evaluate_substitutions(beta_normalize(t));
    REQUIRE(parts.size() == 1);
    CHECK(show_term(parts[0]) == "d");
  }
  SUBCASE("binder names do not affect term keys") {
    LTermPtr a = l_lam("x", ty_o(), l_tvar("x", ty_o()));
    LTermPtr b = l_lam("y", ty_o(), l_tvar("y", ty_o()));
    CHECK(lterm_key(a) == lterm_key(b));
    CHECK_FALSE(lterm_equal(a, b));  // structural equality sees the names
  }
  SUBCASE("beta reduction") {
    LTermPtr id = l_lam("x", o_power(1), l_tvar("x", o_power(1)));
    LTermPtr body = l_pair(l_fo(mk_fun("c")), l_unit());
    CHECK(lterm_equal(beta_normalize(l_app(id, body)), body));
  }
  SUBCASE("non-ground terms cannot be evaluated") {
    CHECK_THROWS_AS(evaluate_substitutions(l_nt(0, 0)), InputError);
    CHECK_THROWS_AS(evaluate_substitutions(l_tvar("x", ty_eps())), InputError);
  }
}
