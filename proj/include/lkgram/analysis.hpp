// Language comparison, Herbrand expansions, tautology checking, and the
// preservation-verification harness over cut-reduction steps.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "lkgram/grammar.hpp"
#include "lkgram/lk_kernel.hpp"
#include "lkgram/reduction.hpp"

namespace lkgram {

enum class Relation { Equal, ProperSubset, ProperSuperset, Incomparable };

std::string relation_name(Relation r);

struct LanguageComparison {
  Relation rel;
  std::vector<WitnessItem> only_left;   // in left, not in right
  std::vector<WitnessItem> only_right;  // in right, not in left
};

LanguageComparison compare_languages(const WitnessSet& left,
                                     const WitnessSet& right);
bool witness_subset(const WitnessSet& a, const WitnessSet& b);

// --- Herbrand expansion -------------------------------------------------------

// Per end-sequent position, the instances of its matrix by the witness
// tuples. An index with no tuples has an empty disjunct list (falsum).
struct Expansion {
  std::vector<std::vector<FormulaPtr>> disjuncts;
};

// Instantiate the purely existential end-sequent with a witness set.
Expansion expansion_of(const Sequent& end, const WitnessSet& lang);
// Convenience: language(p) under the given mode, then expansion_of.
Expansion expansion(const ProofPtr& p,
                    GrammarMode mode = GrammarMode::ContextSensitive);
std::string show_expansion(const Expansion& e);
// All instances of all positions, flattened (the sequent's disjuncts).
std::vector<FormulaPtr> expansion_formulas(const Expansion& e);

struct TautologyResult {
  bool tautology = false;
  // Falsifying assignment, atom print -> value, when not a tautology.
  std::map<std::string, bool> countermodel;
};

// Propositional validity of the disjunction of ground quantifier-free
// formulas. Splits on atoms with short-circuit evaluation; throws InputError
// on quantifiers or non-ground atoms, LimitError if the search explodes.
TautologyResult is_tautology(const std::vector<FormulaPtr>& disjuncts);

// --- preservation lemmas --------------------------------------------------------

enum class Expectation { Equal, SubsetOrEqual, NoGuarantee };

std::string expectation_name(Expectation e);

// Which preservation case a redex falls under, its side conditions, and the
// expected relation between the languages after and before the step.
struct LemmaExpectation {
  std::string case_name;  // cut-permutation | contraction | quantifier |
                          // quantifier-permutation | weakening | other
  bool sigma2_cut_formula = false;  // the acted-on formula is existential-class
  bool dual_contractions = false;   // the other premise contracts the dual
  Expectation expected = Expectation::Equal;
};

LemmaExpectation classify_redex(const ProofPtr& p, const Redex& r);

struct PreservationReport {
  Redex redex;
  LemmaExpectation expectation;
  Relation observed;  // language after the step vs language before
  std::vector<WitnessItem> only_before;  // tuples lost by the step
  std::vector<WitnessItem> only_after;   // tuples gained by the step
  bool consistent = false;
};

PreservationReport verify_preservation(
    const ProofPtr& p, const Redex& r,
    GrammarMode mode = GrammarMode::ContextSensitive);

// Reports for every applicable redex of p.
std::vector<PreservationReport> verify_all(
    const ProofPtr& p, GrammarMode mode = GrammarMode::ContextSensitive);

// --- end-to-end pipeline --------------------------------------------------------

struct EndToEndReport {
  WitnessSet language_before;
  size_t steps = 0;
  bool limit_hit = false;
  bool output_valid = false;      // the cut-free proof re-checks
  WitnessSet herbrand;            // of the cut-free proof
  bool herbrand_included = false; // herbrand subset of language_before
  TautologyResult taut;           // expansion of language_before
  std::vector<std::string> notes;
  bool ok = false;
};

EndToEndReport end_to_end_check(const ProofPtr& p, Strategy strategy,
                                GrammarMode mode = GrammarMode::ContextSensitive,
                                size_t limit = 100000);

}  // namespace lkgram
