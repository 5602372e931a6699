// Language comparison, expansions, tautology checking, preservation harness.
#include "lkgram/analysis.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace lkgram {

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Equal:
      return "equal";
    case Relation::ProperSubset:
      return "proper-subset";
    case Relation::ProperSuperset:
      return "proper-superset";
    case Relation::Incomparable:
      return "incomparable";
  }
  throw InternalError("relation_name: bad relation");
}

LanguageComparison compare_languages(const WitnessSet& left,
                                     const WitnessSet& right) {
  LanguageComparison c;
  for (const auto& w : left)
    if (!right.count(w)) c.only_left.push_back(w);
  for (const auto& w : right)
    if (!left.count(w)) c.only_right.push_back(w);
  if (c.only_left.empty() && c.only_right.empty())
    c.rel = Relation::Equal;
  else if (c.only_left.empty())
    c.rel = Relation::ProperSubset;
  else if (c.only_right.empty())
    c.rel = Relation::ProperSuperset;
  else
    c.rel = Relation::Incomparable;
  return c;
}

bool witness_subset(const WitnessSet& a, const WitnessSet& b) {
  for (const auto& w : a)
    if (!b.count(w)) return false;
  return true;
}

// --- Herbrand expansion -------------------------------------------------------

Expansion expansion_of(const Sequent& end, const WitnessSet& lang) {
  Expansion e;
  e.disjuncts.resize(end.size());
  std::vector<std::set<std::string>> seen(end.size());
  for (const auto& w : lang) {
    if (w.index < 0 || w.index >= static_cast<int>(end.size()))
      throw InputError("witness index out of range: " + show_witness_item(w));
    FormulaPtr f = end[w.index];
    for (const auto& t : w.terms) {
      if (f->kind != FormulaKind::Ex)
        throw InputError("witness tuple longer than the quantifier block: " +
                         show_witness_item(w));
      f = instantiate(f->body, f->var, t);
    }
    if (!quantifier_free(f))
      throw InputError("witness tuple shorter than the quantifier block: " +
                       show_witness_item(w));
    if (seen[w.index].insert(formula_key(f)).second)
      e.disjuncts[w.index].push_back(f);
  }
  return e;
}

Expansion expansion(const ProofPtr& p, GrammarMode mode) {
  Grammar g = extract_grammar(p, mode);
  return expansion_of(p->conclusion, language(g).items);
}

std::string show_expansion(const Expansion& e) {
  std::string out;
  for (size_t i = 0; i < e.disjuncts.size(); ++i) {
    out += std::to_string(i) + ": ";
    if (e.disjuncts[i].empty()) {
      out += "false";
    } else {
      for (size_t j = 0; j < e.disjuncts[i].size(); ++j) {
        if (j) out += " | ";
        out += show_formula(e.disjuncts[i][j]);
      }
    }
    out += "\n";
  }
  return out;
}

std::vector<FormulaPtr> expansion_formulas(const Expansion& e) {
  std::vector<FormulaPtr> out;
  for (const auto& d : e.disjuncts) out.insert(out.end(), d.begin(), d.end());
  return out;
}

// --- tautology checking --------------------------------------------------------

namespace {

std::string atom_print(const FormulaPtr& f) {
  std::string out = f->pred;
  if (!f->args.empty()) {
    out += "(";
    for (size_t i = 0; i < f->args.size(); ++i) {
      if (i) out += ",";
      out += show_term(f->args[i]);
    }
    out += ")";
  }
  return out;
}

void collect_atoms(const FormulaPtr& f, std::vector<std::string>& order,
                   std::set<std::string>& seen) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      for (const auto& t : f->args)
        if (!term_ground(t))
          throw InputError("tautology check on a non-ground atom: " +
                           show_formula(f));
      std::string key = atom_print(f);
      if (seen.insert(key).second) order.push_back(key);
      return;
    }
    case FormulaKind::Or:
    case FormulaKind::And:
      collect_atoms(f->lhs, order, seen);
      collect_atoms(f->rhs, order, seen);
      return;
    case FormulaKind::All:
    case FormulaKind::Ex:
      throw InputError("tautology check on a quantified formula: " +
                       show_formula(f));
  }
  throw InternalError("collect_atoms: bad formula");
}

std::optional<bool> eval3(const FormulaPtr& f,
                          const std::map<std::string, bool>& assign) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      auto it = assign.find(atom_print(f));
      if (it == assign.end()) return std::nullopt;
      return it->second;
    }
    case FormulaKind::NegAtom: {
      auto it = assign.find(atom_print(f));
      if (it == assign.end()) return std::nullopt;
      return !it->second;
    }
    case FormulaKind::Or: {
      auto l = eval3(f->lhs, assign), r = eval3(f->rhs, assign);
      if ((l && *l) || (r && *r)) return true;
      if (l && r) return false;
      return std::nullopt;
    }
    case FormulaKind::And: {
      auto l = eval3(f->lhs, assign), r = eval3(f->rhs, assign);
      if ((l && !*l) || (r && !*r)) return false;
      if (l && r) return true;
      return std::nullopt;
    }
    default:
      throw InternalError("eval3: bad formula");
  }
}

}  // namespace

TautologyResult is_tautology(const std::vector<FormulaPtr>& disjuncts) {
  std::vector<std::string> atoms;
  std::set<std::string> seen;
  for (const auto& f : disjuncts) collect_atoms(f, atoms, seen);

  TautologyResult res;
  std::map<std::string, bool> assign;
  size_t budget = 1u << 22;

  std::function<bool()> rec = [&]() -> bool {
    if (budget-- == 0)
      throw LimitError("tautology search exceeded its node budget");
    bool all_false = true;
    for (const auto& f : disjuncts) {
      auto v = eval3(f, assign);
      if (v && *v) return true;  // some disjunct already true
      if (!v) all_false = false;
    }
    if (all_false) {
      res.countermodel = assign;
      for (const auto& a : atoms)
        if (!res.countermodel.count(a)) res.countermodel[a] = false;
      return false;
    }
    const std::string* pick = nullptr;
    for (const auto& a : atoms)
      if (!assign.count(a)) {
        pick = &a;
        break;
      }
    if (!pick) {
      // fully assigned, nothing true: falsified
      res.countermodel = assign;
      return false;
    }
    assign[*pick] = false;
    if (!rec()) return false;
    assign[*pick] = true;
    if (!rec()) return false;
    assign.erase(*pick);
    return true;
  };

  res.tautology = rec();
  if (res.tautology) res.countermodel.clear();
  return res;
}

// --- preservation lemmas --------------------------------------------------------

std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Equal:
      return "equal";
    case Expectation::SubsetOrEqual:
      return "subset-or-equal";
    case Expectation::NoGuarantee:
      return "no-guarantee";
  }
  throw InternalError("expectation_name: bad expectation");
}

namespace {

ProofPtr peel_inner(const ProofPtr& premise) {
  ProofPtr cur = premise;
  while (cur->rule == Rule::Perm) cur = cur->premises[0];
  return cur;
}

bool contracts_formula(const ProofPtr& p, const FormulaPtr& f) {
  for (const auto& q : subproofs(p))
    if (q->rule == Rule::Contr && alpha_equal(q->conclusion[0], f))
      return true;
  return false;
}

}  // namespace

LemmaExpectation classify_redex(const ProofPtr& p, const Redex& r) {
  ProofPtr cut = node_at(p, r.path);
  if (cut->rule != Rule::Cut)
    throw InputError("classify_redex: path does not address a cut");
  const ProofPtr& prem =
      r.side == Side::Left ? cut->premises[0] : cut->premises[1];
  const ProofPtr& other =
      r.side == Side::Left ? cut->premises[1] : cut->premises[0];
  const FormulaPtr& acted = prem->conclusion[0];

  LemmaExpectation e;
  switch (r.kind) {
    case RedexKind::Axiom:
    case RedexKind::Boolean:
      e.case_name = "other";
      e.expected = Expectation::Equal;
      return e;
    case RedexKind::Quantifier:
      e.case_name = "quantifier";
      e.expected = Expectation::Equal;
      return e;
    case RedexKind::Weakening:
      e.case_name = "weakening";
      e.expected = Expectation::SubsetOrEqual;
      return e;
    case RedexKind::UnaryPerm: {
      ProofPtr inner = peel_inner(prem);
      if (inner->rule == Rule::All) {
        e.case_name = "quantifier-permutation";
        e.expected = Expectation::SubsetOrEqual;
      } else {
        e.case_name = "other";
        e.expected = Expectation::Equal;
      }
      return e;
    }
    case RedexKind::BinaryPerm: {
      ProofPtr inner = peel_inner(prem);
      if (inner->rule == Rule::Cut) {
        e.case_name = "cut-permutation";
        auto [outer_f, inner_f] = stacked_cut_formulas(cut, r);
        e.sigma2_cut_formula = !(genuine_pi2(outer_f) && genuine_pi2(inner_f));
        e.expected = e.sigma2_cut_formula ? Expectation::Equal
                                          : Expectation::NoGuarantee;
      } else {
        e.case_name = "other";
        e.expected = Expectation::Equal;
      }
      return e;
    }
    case RedexKind::Contraction: {
      e.case_name = "contraction";
      e.sigma2_cut_formula = in_sigma2(acted);
      if (e.sigma2_cut_formula) {
        e.expected = Expectation::Equal;
      } else {
        e.dual_contractions = contracts_formula(other, dual(acted));
        e.expected = e.dual_contractions ? Expectation::NoGuarantee
                                         : Expectation::SubsetOrEqual;
      }
      return e;
    }
  }
  throw InternalError("classify_redex: bad kind");
}

PreservationReport verify_preservation(const ProofPtr& p, const Redex& r,
                                       GrammarMode mode) {
  PreservationReport rep;
  rep.redex = r;
  rep.expectation = classify_redex(p, r);
  WitnessSet before = language(extract_grammar(p, mode)).items;
  ProofPtr reduced = apply_reduction(p, r);
  WitnessSet after = language(extract_grammar(reduced, mode)).items;
  LanguageComparison cmp = compare_languages(after, before);
  rep.observed = cmp.rel;
  rep.only_after = cmp.only_left;
  rep.only_before = cmp.only_right;
  switch (rep.expectation.expected) {
    case Expectation::Equal:
      rep.consistent = rep.observed == Relation::Equal;
      break;
    case Expectation::SubsetOrEqual:
      rep.consistent = rep.observed == Relation::Equal ||
                       rep.observed == Relation::ProperSubset;
      break;
    case Expectation::NoGuarantee:
      rep.consistent = true;
      break;
  }
  return rep;
}

std::vector<PreservationReport> verify_all(const ProofPtr& p,
                                           GrammarMode mode) {
  std::vector<PreservationReport> out;
  for (const Redex& r : applicable_reductions(p))
    out.push_back(verify_preservation(p, r, mode));
  return out;
}

// --- end-to-end pipeline --------------------------------------------------------

EndToEndReport end_to_end_check(const ProofPtr& p, Strategy strategy,
                                GrammarMode mode, size_t limit) {
  EndToEndReport rep;
  Grammar g = extract_grammar(p, mode);
  rep.language_before = language(g).items;

  EliminationResult elim = eliminate_cuts(p, strategy, limit);
  rep.steps = elim.trace.size();
  rep.limit_hit = elim.limit_hit;
  rep.notes = elim.notes;

  if (!rep.limit_hit) {
    rep.output_valid = check_proof(elim.proof).empty();
    rep.herbrand = herbrand_set(elim.proof);
    rep.herbrand_included = witness_subset(rep.herbrand, rep.language_before);
  }

  rep.taut = is_tautology(
      expansion_formulas(expansion_of(p->conclusion, rep.language_before)));

  rep.ok = !rep.limit_hit && rep.output_valid && rep.herbrand_included &&
           rep.taut.tautology;
  return rep;
}

}  // namespace lkgram
