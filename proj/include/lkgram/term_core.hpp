// Core syntax: first-order terms, formulas in negation normal form,
// sequents, simple types over the base sort, and prenex classification.
#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lkgram {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Malformed or unreadable input (syntax, arities, undeclared symbols).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates a semantic precondition.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource limit (step/size bound) was exceeded.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug in this toolkit.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// First-order terms
// ---------------------------------------------------------------------------

// Free variables (eigenvariables and parameters) are distinct from bound
// variables (occurrences bound by a quantifier of an enclosing formula).
// Constants are nullary function applications.
enum class TermKind { Var, Bound, Fun };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;
  std::vector<TermPtr> args;  // Fun only
};

// Reserved constant used to fill argument positions that a weakening
// introduced; it may not be declared in input signatures.
inline constexpr const char* kWeakeningConst = "wc";

TermPtr mk_var(const std::string& name);
TermPtr mk_bound(const std::string& name);
TermPtr mk_fun(const std::string& name, std::vector<TermPtr> args = {});

bool term_equal(const TermPtr& a, const TermPtr& b);
// Functional notation: f(c,x); nullary applications and variables print bare.
std::string show_term(const TermPtr& t);
// Input syntax: (fn f t...) for applications, bare symbols otherwise.
std::string show_term_sexpr(const TermPtr& t);
bool term_contains_var(const TermPtr& t, const std::string& name);
bool term_contains_bound(const TermPtr& t, const std::string& name);
// Replace free-variable occurrences of `name` by `r`.
TermPtr term_subst_var(const TermPtr& t, const std::string& name,
                       const TermPtr& r);
// Replace every occurrence of the subterm `target` by the bound variable
// `bname` (used when introducing an existential quantifier).
TermPtr term_abstract(const TermPtr& t, const TermPtr& target,
                      const std::string& bname);
// No free or bound variables anywhere.
bool term_ground(const TermPtr& t);
void term_collect_vars(const TermPtr& t, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Formulas (negation normal form: negation only on atoms)
// ---------------------------------------------------------------------------

enum class FormulaKind { Atom, NegAtom, Or, And, All, Ex };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  // Atom / NegAtom
  std::string pred;
  std::vector<TermPtr> args;
  // Or / And
  FormulaPtr lhs, rhs;
  // All / Ex
  std::string var;
  FormulaPtr body;
};

FormulaPtr mk_atom(const std::string& pred, std::vector<TermPtr> args = {});
FormulaPtr mk_negatom(const std::string& pred, std::vector<TermPtr> args = {});
FormulaPtr mk_or(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr mk_and(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr mk_all(const std::string& var, const FormulaPtr& body);
FormulaPtr mk_ex(const std::string& var, const FormulaPtr& body);

// De Morgan dual; an involution.
FormulaPtr dual(const FormulaPtr& f);
// Equality modulo renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
// Canonical key: bound variables De Bruijn-numbered, so alpha-equal formulas
// have equal keys. Usable for hashing and deterministic ordering.
std::string formula_key(const FormulaPtr& f);
// Input syntax: (atom P t...), (neg (atom ...)), (or F G), (and F G),
// (all v F), (ex v F).
std::string show_formula(const FormulaPtr& f);

// Substitute `t` for the occurrences of the bound variable `var` in `body`
// (an inner binder of the same name shadows).
FormulaPtr instantiate(const FormulaPtr& body, const std::string& var,
                       const TermPtr& t);
// Substitute for a free first-order variable.
FormulaPtr formula_subst_var(const FormulaPtr& f, const std::string& name,
                             const TermPtr& r);
bool formula_contains_var(const FormulaPtr& f, const std::string& name);
void formula_collect_vars(const FormulaPtr& f, std::set<std::string>& out);
bool quantifier_free(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Prenex classification
// ---------------------------------------------------------------------------

// Shape of the leading quantifier prefix over a quantifier-free matrix.
//   Qf        no quantifiers
//   Sigma1    ∃^a matrix            (a ≥ 1)
//   Pi1       ∀^a matrix            (a ≥ 1)
//   Sigma2    ∃^a ∀^b matrix        (a,b ≥ 1)
//   Pi2       ∀^a ∃^b matrix        (a,b ≥ 1)
//   Other     anything else (non-prenex or deeper alternation)
enum class PrenexClass { Qf, Sigma1, Pi1, Sigma2, Pi2, Other };

struct PrenexShape {
  PrenexClass cls = PrenexClass::Other;
  // Quantifier counts of the first and second block (0 when absent).
  int first_block = 0;
  int second_block = 0;
};

PrenexShape classify(const FormulaPtr& f);
// Membership in the classes closed downwards (Qf, Sigma1, Pi1 are degenerate
// members of both two-quantifier classes).
bool in_sigma2(const FormulaPtr& f);
bool in_pi2(const FormulaPtr& f);
bool in_sigma1(const FormulaPtr& f);
// Strictly ∀-then-∃ with both blocks nonempty.
bool genuine_pi2(const FormulaPtr& f);
bool genuine_sigma2(const FormulaPtr& f);
// Leading existential block: binder names in order plus the matrix under it.
std::vector<std::string> leading_exists(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Sequents
// ---------------------------------------------------------------------------

using Sequent = std::vector<FormulaPtr>;

bool sequent_equal(const Sequent& a, const Sequent& b);  // pointwise alpha
std::string show_sequent(const Sequent& s);

// ---------------------------------------------------------------------------
// Simple types over the base sort o
// ---------------------------------------------------------------------------

// Finite products are right-nested: o^0 is the empty product, o^{k+1} is
// o × o^k. Arrows only arise as o → ... → o → o^k.
enum class TypeKind { O, Eps, Prod, Arrow };

struct SType;
using TypePtr = std::shared_ptr<const SType>;

struct SType {
  TypeKind kind;
  TypePtr a, b;  // Prod(a,b), Arrow(a,b)
};

TypePtr ty_o();
TypePtr ty_eps();
TypePtr ty_prod(const TypePtr& a, const TypePtr& b);
TypePtr ty_arrow(const TypePtr& a, const TypePtr& b);
TypePtr o_power(int k);
bool type_equal(const TypePtr& a, const TypePtr& b);
std::string show_type(const TypePtr& t);
// order(o) = order(o^k) = 0 for products of base; order(a→b) =
// max(order(a)+1, order(b)).
int type_order(const TypePtr& t);
// Number of components of a finite product of o (throws otherwise).
int tuple_width(const TypePtr& t);

// Value type of a formula occurrence: the tuple of existential witnesses it
// produces. Defined for the two-quantifier prenex classes only.
TypePtr value_type(const FormulaPtr& f);   // τ
// Input type of a formula occurrence: what a proof of it consumes.
TypePtr input_type(const FormulaPtr& f);   // τ*

}  // namespace lkgram
