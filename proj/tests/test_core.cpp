// Terms, formulas, prenex classification, and the simple type layer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lkgram/term_core.hpp"

using namespace lkgram;

namespace {

TermPtr c() { return mk_fun("c"); }
TermPtr fc() { return mk_fun("f", {c()}); }

FormulaPtr P(const TermPtr& t) { return mk_atom("P", {t}); }
FormulaPtr nP(const TermPtr& t) { return mk_negatom("P", {t}); }

}  // namespace

TEST_CASE("term construction and printing") {
  TermPtr t = mk_fun("g", {c(), mk_var("x")});
  CHECK(show_term(t) == "g(c,x)");
  CHECK(show_term(c()) == "c");
  CHECK(show_term(mk_bound("v")) == "v");
  CHECK(show_term_sexpr(t) == "(fn g c x)");
  CHECK(show_term_sexpr(c()) == "c");
}

TEST_CASE("term equality distinguishes free and bound variables") {
  CHECK(term_equal(fc(), fc()));
  CHECK_FALSE(term_equal(fc(), c()));
  CHECK_FALSE(term_equal(mk_var("x"), mk_bound("x")));
  CHECK_FALSE(term_equal(mk_var("x"), mk_fun("x")));
}

TEST_CASE("term substitution and abstraction") {
  TermPtr t = mk_fun("g", {mk_var("x"), mk_bound("x")});
  TermPtr r = term_subst_var(t, "x", c());
  CHECK(show_term(r) == "g(c,x)");  // only the free occurrence is replaced

  // Abstract the subterm f(c) everywhere.
  TermPtr u = mk_fun("h", {fc(), fc(), c()});
  TermPtr a = term_abstract(u, fc(), "w");
  CHECK(show_term(a) == "h(w,w,c)");
  CHECK(term_contains_bound(a, "w"));
  CHECK_FALSE(term_contains_var(a, "w"));
}

TEST_CASE("groundness and variable collection") {
  CHECK(term_ground(fc()));
  CHECK_FALSE(term_ground(mk_fun("f", {mk_var("x")})));
  CHECK_FALSE(term_ground(mk_fun("f", {mk_bound("v")})));
  std::set<std::string> vars;
  term_collect_vars(mk_fun("g", {mk_var("x"), mk_fun("f", {mk_var("y")})}),
                    vars);
  CHECK(vars == std::set<std::string>{"x", "y"});
}

TEST_CASE("dual is an involution and follows de Morgan") {
  FormulaPtr f = mk_all("v", mk_ex("w", mk_or(nP(mk_bound("v")),
                                              P(mk_bound("w")))));
  CHECK(alpha_equal(dual(dual(f)), f));

  FormulaPtr d = dual(f);
  CHECK(d->kind == FormulaKind::Ex);
  CHECK(d->body->kind == FormulaKind::All);
  CHECK(d->body->body->kind == FormulaKind::And);

  CHECK(alpha_equal(dual(P(c())), nP(c())));
  CHECK(alpha_equal(dual(mk_or(P(c()), nP(c()))),
                    mk_and(nP(c()), P(c()))));
}

TEST_CASE("alpha equality and formula keys") {
  FormulaPtr a = mk_all("v", P(mk_bound("v")));
  FormulaPtr b = mk_all("w", P(mk_bound("w")));
  CHECK(alpha_equal(a, b));
  CHECK(formula_key(a) == formula_key(b));
  CHECK_FALSE(alpha_equal(a, mk_ex("v", P(mk_bound("v")))));
  CHECK(formula_key(a) != formula_key(mk_ex("v", P(mk_bound("v")))));
  // Free variables are not renamed.
  CHECK_FALSE(alpha_equal(P(mk_var("x")), P(mk_var("y"))));
}

TEST_CASE("instantiate respects shadowing") {
  // Body of the outer binder in ex v (P(v) or ex v P(v)).
  FormulaPtr body =
      mk_or(P(mk_bound("v")), mk_ex("v", P(mk_bound("v"))));
  FormulaPtr r = instantiate(body, "v", c());
  CHECK(alpha_equal(r, mk_or(P(c()), mk_ex("v", P(mk_bound("v"))))));
}

TEST_CASE("formula variable substitution") {
  FormulaPtr f = mk_ex("w", mk_atom("Q", {mk_var("x"), mk_bound("w")}));
  FormulaPtr r = formula_subst_var(f, "x", fc());
  CHECK(formula_contains_var(f, "x"));
  CHECK_FALSE(formula_contains_var(r, "x"));
  CHECK(alpha_equal(r, mk_ex("w", mk_atom("Q", {fc(), mk_bound("w")}))));
}

TEST_CASE("prenex classification") {
  FormulaPtr qf = mk_or(P(c()), nP(c()));
  CHECK(classify(qf).cls == PrenexClass::Qf);
  CHECK(quantifier_free(qf));

  FormulaPtr s1 = mk_ex("v", P(mk_bound("v")));
  CHECK(classify(s1).cls == PrenexClass::Sigma1);
  CHECK(classify(s1).first_block == 1);

  FormulaPtr p1 = mk_all("v", P(mk_bound("v")));
  CHECK(classify(p1).cls == PrenexClass::Pi1);

  FormulaPtr p2 = mk_all(
      "u", mk_all("v", mk_ex("w", mk_atom("R", {mk_bound("u"), mk_bound("v"),
                                                mk_bound("w")}))));
  PrenexShape sh = classify(p2);
  CHECK(sh.cls == PrenexClass::Pi2);
  CHECK(sh.first_block == 2);
  CHECK(sh.second_block == 1);

  FormulaPtr s2 = mk_ex("u", mk_all("v", mk_atom("Q", {mk_bound("u"),
                                                       mk_bound("v")})));
  CHECK(classify(s2).cls == PrenexClass::Sigma2);

  // Three alternations and a non-prenex formula are out of range.
  FormulaPtr p3 = mk_all("u", mk_ex("v", mk_all("w", P(mk_bound("w")))));
  CHECK(classify(p3).cls == PrenexClass::Other);
  FormulaPtr np = mk_or(mk_all("v", P(mk_bound("v"))), P(c()));
  CHECK(classify(np).cls == PrenexClass::Other);
}

TEST_CASE("degenerate class membership") {
  FormulaPtr qf = P(c());
  FormulaPtr s1 = mk_ex("v", P(mk_bound("v")));
  FormulaPtr p1 = mk_all("v", P(mk_bound("v")));
  FormulaPtr p2 = mk_all("v", mk_ex("w", mk_atom("Q", {mk_bound("v"),
                                                       mk_bound("w")})));
  FormulaPtr s2 = dual(p2);

  for (const auto& f : {qf, s1, p1}) {
    CHECK(in_sigma2(f));
    CHECK(in_pi2(f));
    CHECK_FALSE(genuine_pi2(f));
    CHECK_FALSE(genuine_sigma2(f));
  }
  CHECK(in_sigma1(s1));
  CHECK_FALSE(in_sigma1(p1));

  CHECK(genuine_pi2(p2));
  CHECK_FALSE(in_sigma2(p2));
  CHECK(in_pi2(p2));
  CHECK(genuine_sigma2(s2));
  CHECK(in_sigma2(s2));
  CHECK_FALSE(in_pi2(s2));
}

TEST_CASE("leading existential block") {
  FormulaPtr d2 = mk_ex("x", mk_ex("y", mk_atom("D", {mk_bound("x"),
                                                      mk_bound("y")})));
  CHECK(leading_exists(d2) == std::vector<std::string>{"x", "y"});
  CHECK(leading_exists(P(c())).empty());
  CHECK(leading_exists(mk_all("v", P(mk_bound("v")))).empty());
}

TEST_CASE("sequents") {
  Sequent s{P(c()), mk_all("v", P(mk_bound("v")))};
  Sequent t{P(c()), mk_all("w", P(mk_bound("w")))};
  CHECK(sequent_equal(s, t));
  CHECK_FALSE(sequent_equal(s, Sequent{P(c())}));
  CHECK(show_sequent(s) == "(seq (atom P c) (all v (atom P v)))");
}

TEST_CASE("types: products, arrows, order, width") {
  CHECK(type_equal(o_power(0), ty_eps()));
  CHECK(type_equal(o_power(2), ty_prod(ty_o(), ty_prod(ty_o(), ty_eps()))));
  CHECK(tuple_width(o_power(3)) == 3);
  CHECK(tuple_width(ty_eps()) == 0);
  CHECK_THROWS(tuple_width(ty_arrow(ty_o(), ty_eps())));

  CHECK(type_order(ty_o()) == 0);
  CHECK(type_order(o_power(4)) == 0);
  CHECK(type_order(ty_arrow(ty_o(), o_power(2))) == 1);
  // Everything the grammars build stays at order <= 2 inputs; a nested arrow
  // argument raises the order.
  CHECK(type_order(ty_arrow(ty_arrow(ty_o(), ty_o()), ty_o())) == 2);

  CHECK(show_type(ty_eps()) == show_type(o_power(0)));
  CHECK(show_type(o_power(2)) != show_type(o_power(1)));
}

TEST_CASE("value and input types per prenex class") {
  FormulaPtr qf = mk_or(P(c()), nP(c()));
  CHECK(type_equal(value_type(qf), ty_eps()));
  CHECK(type_equal(input_type(qf), ty_eps()));

  FormulaPtr s1 = mk_ex("v", mk_ex("w", mk_atom("Q", {mk_bound("v"),
                                                      mk_bound("w")})));
  CHECK(type_equal(value_type(s1), o_power(2)));
  CHECK(type_equal(input_type(s1), ty_eps()));

  FormulaPtr p1 = mk_all("v", P(mk_bound("v")));
  CHECK(type_equal(value_type(p1), ty_eps()));
  CHECK(type_equal(input_type(p1), o_power(1)));

  // Universal-then-existential: values are the existential tuple, inputs the
  // universal tuple.
  FormulaPtr p2 = mk_all(
      "u", mk_all("v", mk_ex("w", mk_atom("R", {mk_bound("u"), mk_bound("v"),
                                                mk_bound("w")}))));
  CHECK(type_equal(value_type(p2), o_power(1)));
  CHECK(type_equal(input_type(p2), o_power(2)));

  // Existential-then-universal: values are the existential tuple, inputs are
  // functions from those choices to the universal tuple.
  FormulaPtr s2 = dual(p2);
  CHECK(type_equal(value_type(s2), o_power(2)));
  CHECK(type_equal(input_type(s2),
                   ty_arrow(ty_o(), ty_arrow(ty_o(), o_power(1)))));

  FormulaPtr p3 = mk_all("u", mk_ex("v", mk_all("w", P(mk_bound("w")))));
  CHECK_THROWS_AS((void)value_type(p3), InputError);
  CHECK_THROWS_AS((void)input_type(p3), InputError);
}
