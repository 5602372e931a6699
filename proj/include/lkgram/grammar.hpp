// Proof grammars: extraction of a typed tree grammar from a proof whose cut
// formulas live in the two-quantifier-block prenex classes, rewriting of
// grammar terms, enumeration of the finite language, and the induced witness
// sets.
//
// Each proof node n with conclusion (A_0, ..., A_k) yields one non-terminal
// per conclusion position; component i has type
//     in(A_0) -> ... -> in(A_k) -> val(A_i)
// where `in` and `val` are the input/value types of the prenex classes. The
// production table follows the inference rule at the node. The universal
// row exists in two variants: the context-sensitive one destructures its
// first argument (a literal pair), the context-free one projects instead.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lkgram/lambda.hpp"
#include "lkgram/lk_kernel.hpp"
#include "lkgram/reduction.hpp"

namespace lkgram {

enum class GrammarMode { ContextSensitive, ContextFree };

std::string grammar_mode_name(GrammarMode m);
std::optional<GrammarMode> grammar_mode_from_name(const std::string& n);

// One rewrite rule for non-terminal component (node, index). When
// `destructure` is set the rule only applies if the first argument is a
// literal pair; params then name the pair head, the pair tail, and the
// remaining argument slots.
struct Production {
  long node;
  int index;
  bool destructure = false;
  std::vector<std::string> params;
  std::vector<TypePtr> param_types;
  LTermPtr rhs;
};

// Argument and component value types of one node's non-terminals.
struct NTInfo {
  std::vector<TypePtr> args;
  std::vector<TypePtr> comps;
};

struct Grammar {
  GrammarMode mode = GrammarMode::ContextSensitive;
  long root = 0;
  Sequent end;
  std::map<long, NTInfo> nts;
  std::vector<Production> prods;  // deterministic extraction order
};

// Build the grammar of a proof. Throws InputError if some sequent formula
// falls outside the supported prenex classes.
Grammar extract_grammar(const ProofPtr& p, GrammarMode mode);

// Arrow type of component (node, index), for type checking.
TypePtr nt_full_type(const Grammar& g, long node, int index);

// Empty when every production's right-hand side has the component's value
// type under the declared parameter types.
std::vector<std::string> grammar_type_errors(const Grammar& g);

// Non-terminal dependency graph has no cycles (true for grammars of proofs,
// which reference premise nodes only).
bool grammar_acyclic(const Grammar& g);

// Deterministic text rendering: mode, start, types, productions.
std::string dump_grammar(const Grammar& g);

// Start term for end-sequent position `index`; its argument slots must all
// have the empty tuple type (purely existential end-sequent).
LTermPtr start_term(const Grammar& g, int index);

// Outermost: rewrite only at non-terminals not enclosed by another matched
// non-terminal (canonical mode). AllPositions: rewrite everywhere (reference
// mode for differential checks).
enum class RewriteOrder { Outermost, AllPositions };

// All single-step successors of t, beta-normalized, deduplicated, in
// deterministic order.
std::vector<LTermPtr> rewrite_step(const Grammar& g, const LTermPtr& t,
                                   RewriteOrder order = RewriteOrder::Outermost);

struct EnumLimits {
  size_t max_states = 1000000;
};

// Every normal form reachable from `start` (memoized breadth-first closure).
// Throws LimitError when the state cap is hit.
std::vector<LTermPtr> normal_forms(const Grammar& g, const LTermPtr& start,
                                   RewriteOrder order = RewriteOrder::Outermost,
                                   EnumLimits limits = {});

// Same closure with each breadth-first level's successor computation fanned
// out to worker threads (rewriting is pure over immutable data) and the
// results merged as a set union, so the outcome is independent of
// scheduling. workers = 0 uses the hardware concurrency; workers = 1 falls
// back to the serial closure.
std::vector<LTermPtr> normal_forms_parallel(
    const Grammar& g, const LTermPtr& start, unsigned workers = 0,
    RewriteOrder order = RewriteOrder::Outermost, EnumLimits limits = {});

// One random maximal rewrite sequence (all-positions redex choice).
LTermPtr sample_normal_form(const Grammar& g, LTermPtr t, std::mt19937_64& rng,
                            size_t max_steps = 100000);

struct LanguageResult {
  WitnessSet items;
  size_t stuck = 0;  // normal forms that still contain a non-terminal
};

// The finite language: ground witness tuples of all NT-free normal forms of
// every start component, after evaluating the delayed substitutions.
LanguageResult language(const Grammar& g,
                        RewriteOrder order = RewriteOrder::Outermost,
                        EnumLimits limits = {});

// language() computed with normal_forms_parallel.
LanguageResult language_parallel(const Grammar& g, unsigned workers = 0,
                                 RewriteOrder order = RewriteOrder::Outermost,
                                 EnumLimits limits = {});

}  // namespace lkgram
