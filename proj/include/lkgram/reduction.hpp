// Cut-reduction engine: redex detection on cut nodes, the rewrite steps,
// strategy-driven cut elimination, and witness extraction from cut-free
// proofs.
//
// Permutation inferences directly above a cut premise are transparent for
// redex detection: the cut-formula occurrence is tracked through the maximal
// trailing permutation block, and the step is classified by the first
// non-permutation inference found there. Rewrites rebuild the necessary
// permutations explicitly below the hoisted material, so every intermediate
// proof re-checks.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lkgram/lk_kernel.hpp"

namespace lkgram {

// Classification of a reduction step available at a cut.
//   Axiom        one premise is (virtually) an axiom
//   Weakening    the cut formula was weakened in
//   Contraction  the cut formula was contracted
//   Quantifier   both premises introduce the cut-formula quantifiers
//   Boolean      both premises introduce the cut-formula connective
//   UnaryPerm    hoist the cut above a unary inference that does not act
//                on the cut formula
//   BinaryPerm   hoist the cut above a binary inference (including another
//                cut) that does not act on the cut formula
enum class RedexKind {
  Axiom,
  Weakening,
  Contraction,
  Quantifier,
  Boolean,
  UnaryPerm,
  BinaryPerm
};

enum class Side { Left, Right };

std::string redex_kind_name(RedexKind k);
std::string side_name(Side s);

struct Redex {
  std::vector<int> path;  // premise indices from the root to the cut node
  RedexKind kind;
  Side side;  // which premise's first non-permutation inference is acted on
};

std::string show_redex(const Redex& r);

// Resolve a path to a node.
ProofPtr node_at(const ProofPtr& root, const std::vector<int>& path);

// All reduction steps applicable anywhere in the proof, in deterministic
// order (cuts in preorder; per cut: axiom and principal pairs first on the
// left, then the right). A matching principal pair (boolean/quantifier) is
// reported once.
std::vector<Redex> applicable_reductions(const ProofPtr& root);

// Apply one step. The descriptor must match a currently applicable redex
// (otherwise InputError). The result is regularized and its end-sequent is
// unchanged; new and copied nodes get fresh ids.
ProofPtr apply_reduction(const ProofPtr& root, const Redex& r);

// --- strategies --------------------------------------------------------------

enum class Strategy { WeakFirst, Restricted, Unrestricted };

std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& n);

// The premise a strategy prefers to act on: the side whose cut formula is
// existential-first (it carries witnesses rather than functions). Empty for
// quantifier-free cut formulas.
std::optional<Side> weak_side(const FormulaPtr& cut_formula);

// For a binary-permutation redex whose inner inference is another cut: the
// two cut formulas as held by the premise the two cuts share — first the
// outer cut's formula (its occurrence tracked through the permutation
// block), then the inner cut's formula as the shared premise states it.
// Language preservation under this step depends on the quantifier prefixes
// of exactly these two occurrences. Throws InputError on any other redex.
std::pair<FormulaPtr, FormulaPtr> stacked_cut_formulas(const ProofPtr& cut,
                                                       const Redex& r);

struct TraceStep {
  size_t step;
  std::vector<int> path;
  RedexKind kind;
  Side side;
  size_t size_after;
};

struct EliminationResult {
  ProofPtr proof;
  std::vector<TraceStep> trace;
  std::vector<std::string> notes;  // redexes skipped by the restricted mode
  bool limit_hit = false;          // stopped at the step limit, proof partial
};

// Repeatedly select and apply a reduction until no cut remains. Selection:
// innermost cut first (a cut with no cut above it), leftmost on ties; the
// chosen cut's redexes are ordered by the strategy. When the step limit is
// reached the partial proof and trace are returned with limit_hit set.
EliminationResult eliminate_cuts(const ProofPtr& root, Strategy strategy,
                                 size_t limit = 100000);

// --- witness extraction -------------------------------------------------------

// A tuple of witness terms for one end-sequent position.
struct WitnessItem {
  int index;
  std::vector<TermPtr> terms;
  std::vector<std::string> keys;  // canonical prints, ordering key

  bool operator<(const WitnessItem& other) const {
    if (index != other.index) return index < other.index;
    return keys < other.keys;
  }
  bool operator==(const WitnessItem& other) const {
    return index == other.index && keys == other.keys;
  }
};

using WitnessSet = std::set<WitnessItem>;

WitnessItem make_witness_item(int index, std::vector<TermPtr> terms);
std::string show_witness_item(const WitnessItem& w);
std::string show_witness_set(const WitnessSet& s);

// Existential witnesses read off a cut-free proof whose end-sequent is
// purely existential (leading existential block over a quantifier-free
// matrix, possibly empty). Throws InputError otherwise.
WitnessSet herbrand_set(const ProofPtr& p);

}  // namespace lkgram
