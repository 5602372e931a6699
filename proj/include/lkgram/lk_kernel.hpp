// Proof kernel: one-sided sequent-calculus proof trees, elaboration from the
// input syntax, well-formedness checking, regularization, and printing.
//
// Every rule introduces its principal formula at position 0 of the
// conclusion:
//   Axiom          ⊢ A, ¬A                (A atomic)
//   Or             from ⊢ A,B,Γ derive ⊢ A∨B, Γ
//   And            from ⊢ A,Γ and ⊢ B,Δ derive ⊢ A∧B, Γ, Δ
//   All            from ⊢ A(α),Γ derive ⊢ ∀v A(v), Γ   (eigenvariable α)
//   Ex             from ⊢ A(t),Γ derive ⊢ ∃v A(v), Γ   (witness t)
//   Cut            from ⊢ A,Γ and ⊢ ¬A,Δ derive ⊢ Γ, Δ
//   Weak           from ⊢ Γ derive ⊢ A, Γ
//   Contr          from ⊢ A,A,Γ derive ⊢ A, Γ
//   Perm           from ⊢ Γ derive Γ with positions i and i+1 swapped
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lkgram/term_core.hpp"

namespace lkgram {

enum class Rule { Axiom, Or, And, All, Ex, Cut, Weak, Contr, Perm };

int rule_arity(Rule r);
std::string rule_name(Rule r);

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

struct Proof {
  long id = -1;
  Rule rule;
  std::vector<ProofPtr> premises;
  Sequent conclusion;
  std::string eigen;      // All
  TermPtr witness;        // Ex
  FormulaPtr weak_f;      // Weak
  int perm_pos = -1;      // Perm: swaps positions perm_pos and perm_pos+1
};

// Monotone id source for freshly built nodes.
struct IdGen {
  long next = 0;
  long fresh() { return next++; }
};

// --- constructors that compute conclusions (throw InputError when the
// premises do not fit the rule) -------------------------------------------
ProofPtr mk_axiom(const FormulaPtr& atom, IdGen& ids);
ProofPtr mk_or(const ProofPtr& p, IdGen& ids);
ProofPtr mk_and(const ProofPtr& l, const ProofPtr& r, IdGen& ids);
// Abstracts the eigenvariable in the front formula; the bound name is chosen
// fresh for the formula.
ProofPtr mk_all(const std::string& eigen, const ProofPtr& p, IdGen& ids);
// `result` names the quantified formula explicitly (it must instantiate, at
// its outer binder, to the premise's front formula). Without it, every
// occurrence of the witness is abstracted.
ProofPtr mk_ex(const TermPtr& witness, const std::optional<FormulaPtr>& result,
               const ProofPtr& p, IdGen& ids);
// Requires dual(front(l)) alpha-equal front(r).
ProofPtr mk_cut(const ProofPtr& l, const ProofPtr& r, IdGen& ids);
ProofPtr mk_weak(const FormulaPtr& f, const ProofPtr& p, IdGen& ids);
ProofPtr mk_contr(const ProofPtr& p, IdGen& ids);
ProofPtr mk_perm(int pos, const ProofPtr& p, IdGen& ids);

// --- queries ---------------------------------------------------------------
std::vector<ProofPtr> subproofs(const ProofPtr& p);  // preorder
size_t proof_size(const ProofPtr& p);
long max_node_id(const ProofPtr& p);
bool contains_cut(const ProofPtr& p);
// Node ids 0..n-1 in preorder.
ProofPtr renumber(const ProofPtr& p);

struct Violation {
  long node;
  std::string message;
};

// Full well-formedness check: per-rule conclusion recomputation, axiom
// atomicity, eigenvariable conditions and regularity (each eigenvariable
// introduced once and confined to its subtree), permutation bounds,
// contraction alpha-equality, cut pairing, and the prenex class bound on cut
// formulas (two quantifier blocks at most). Returns all violations found.
std::vector<Violation> check_proof(const ProofPtr& p);

// Renames eigenvariables so the proof is regular: a name that would repeat
// or collide with any other variable of the proof gets the first unused
// name_counter suffix. Deterministic.
ProofPtr regularize(const ProofPtr& p, IdGen& ids);

// Deep copy with fresh node ids.
ProofPtr copy_fresh(const ProofPtr& p, IdGen& ids);

// Substitute a first-order term for a free variable everywhere (conclusions,
// witnesses, weakening formulas). The variable must not be an eigenvariable
// of the subtree.
ProofPtr proof_subst_var(const ProofPtr& p, const std::string& name,
                         const TermPtr& r, IdGen& ids);

// --- input / output ---------------------------------------------------------

struct Signature {
  std::map<std::string, int> funs;
  std::map<std::string, int> preds;
};

struct Problem {
  std::string name;
  Signature sig;
  ProofPtr proof;
  std::optional<Sequent> expect;
};

// Parse and elaborate a problem file:
//   (problem (signature (fun c 0) ... (pred P 1) ...)
//            (proof <proof>)
//            (expect <formula>...))        ; optional
// Undeclared nullary symbols in terms are free variables. Throws ParseError
// on syntax/arity problems, InputError on rule violations (including a
// mismatch with the expected end-sequent).
Problem parse_problem(const std::string& text, const std::string& name = "");

// Parse a formula / term in isolation (tests and tooling).
FormulaPtr parse_formula_text(const std::string& text, const Signature& sig);
TermPtr parse_term_text(const std::string& text, const Signature& sig);

// Canonical re-printing; parse_problem(print_problem(p)) rebuilds the same
// proof up to node identity.
std::string print_proof(const ProofPtr& p, int indent = 0);
std::string print_problem(const Problem& p);

}  // namespace lkgram
