// Proof kernel: constructors, structural queries, checking, regularization.
#include "lkgram/lk_kernel.hpp"

#include <algorithm>
#include <functional>

namespace lkgram {

int rule_arity(Rule r) {
  switch (r) {
    case Rule::Axiom:
      return 0;
    case Rule::And:
    case Rule::Cut:
      return 2;
    default:
      return 1;
  }
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom:
      return "ax";
    case Rule::Or:
      return "or-intro";
    case Rule::And:
      return "and-intro";
    case Rule::All:
      return "all-intro";
    case Rule::Ex:
      return "ex-intro";
    case Rule::Cut:
      return "cut";
    case Rule::Weak:
      return "weak";
    case Rule::Contr:
      return "contr";
    case Rule::Perm:
      return "perm";
  }
  throw InternalError("rule_name: bad rule");
}

static ProofPtr mk(Proof p) { return std::make_shared<Proof>(std::move(p)); }

ProofPtr mk_axiom(const FormulaPtr& atom, IdGen& ids) {
  if (atom->kind != FormulaKind::Atom)
    throw InputError("axiom formula must be a positive atom, got " +
                     show_formula(atom));
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Axiom;
  p.conclusion = {atom, dual(atom)};
  return mk(std::move(p));
}

ProofPtr mk_or(const ProofPtr& q, IdGen& ids) {
  if (q->conclusion.size() < 2)
    throw InputError("or-intro needs two leading formulas");
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Or;
  p.premises = {q};
  p.conclusion.push_back(mk_or(q->conclusion[0], q->conclusion[1]));
  p.conclusion.insert(p.conclusion.end(), q->conclusion.begin() + 2,
                      q->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_and(const ProofPtr& l, const ProofPtr& r, IdGen& ids) {
  if (l->conclusion.empty() || r->conclusion.empty())
    throw InputError("and-intro premises must be nonempty");
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::And;
  p.premises = {l, r};
  p.conclusion.push_back(mk_and(l->conclusion[0], r->conclusion[0]));
  p.conclusion.insert(p.conclusion.end(), l->conclusion.begin() + 1,
                      l->conclusion.end());
  p.conclusion.insert(p.conclusion.end(), r->conclusion.begin() + 1,
                      r->conclusion.end());
  return mk(std::move(p));
}

// First short lowercase name not used anywhere in the formula.
static std::string pick_bound_name(const FormulaPtr& f) {
  std::set<std::string> used;
  formula_collect_vars(f, used);
  static const char* names[] = {"v", "w", "u", "x", "y", "z"};
  for (const char* n : names)
    if (!used.count(n)) return n;
  for (int k = 1;; ++k) {
    std::string n = "v" + std::to_string(k);
    if (!used.count(n)) return n;
  }
}

static FormulaPtr abstract_var(const FormulaPtr& f, const std::string& var,
                               const std::string& bname) {
  // Replace free occurrences of `var` by the bound variable `bname`.
  return formula_subst_var(f, var, mk_bound(bname));
}

ProofPtr mk_all(const std::string& eigen, const ProofPtr& q, IdGen& ids) {
  if (q->conclusion.empty())
    throw InputError("all-intro premise must be nonempty");
  const FormulaPtr& front = q->conclusion[0];
  std::string bname = pick_bound_name(front);
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::All;
  p.premises = {q};
  p.eigen = eigen;
  p.conclusion.push_back(mk_all(bname, abstract_var(front, eigen, bname)));
  p.conclusion.insert(p.conclusion.end(), q->conclusion.begin() + 1,
                      q->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_ex(const TermPtr& witness, const std::optional<FormulaPtr>& result,
               const ProofPtr& q, IdGen& ids) {
  if (q->conclusion.empty())
    throw InputError("ex-intro premise must be nonempty");
  const FormulaPtr& front = q->conclusion[0];
  FormulaPtr concl;
  if (result) {
    concl = *result;
    if (concl->kind != FormulaKind::Ex)
      throw InputError("ex-intro result formula must be existential, got " +
                       show_formula(concl));
    FormulaPtr inst = instantiate(concl->body, concl->var, witness);
    if (!alpha_equal(inst, front))
      throw InputError(
          "ex-intro: the result formula instantiated with the witness does "
          "not match the premise front: " + show_formula(inst) + " vs " +
          show_formula(front));
  } else {
    std::string bname = pick_bound_name(front);
    FormulaPtr body = front;
    // Abstract every occurrence of the witness term.
    std::function<FormulaPtr(const FormulaPtr&)> abs =
        [&](const FormulaPtr& f) -> FormulaPtr {
      switch (f->kind) {
        case FormulaKind::Atom:
        case FormulaKind::NegAtom: {
          std::vector<TermPtr> args;
          for (const auto& a : f->args)
            args.push_back(term_abstract(a, witness, bname));
          return f->kind == FormulaKind::Atom
                     ? mk_atom(f->pred, std::move(args))
                     : mk_negatom(f->pred, std::move(args));
        }
        case FormulaKind::Or:
          return mk_or(abs(f->lhs), abs(f->rhs));
        case FormulaKind::And:
          return mk_and(abs(f->lhs), abs(f->rhs));
        case FormulaKind::All:
          return mk_all(f->var, abs(f->body));
        case FormulaKind::Ex:
          return mk_ex(f->var, abs(f->body));
      }
      throw InternalError("mk_ex abs: bad kind");
    };
    concl = mk_ex(bname, abs(body));
  }
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Ex;
  p.premises = {q};
  p.witness = witness;
  p.conclusion.push_back(concl);
  p.conclusion.insert(p.conclusion.end(), q->conclusion.begin() + 1,
                      q->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_cut(const ProofPtr& l, const ProofPtr& r, IdGen& ids) {
  if (l->conclusion.empty() || r->conclusion.empty())
    throw InputError("cut premises must be nonempty");
  if (!alpha_equal(dual(l->conclusion[0]), r->conclusion[0]))
    throw InputError("cut formulas are not dual: " +
                     show_formula(l->conclusion[0]) + " vs " +
                     show_formula(r->conclusion[0]));
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Cut;
  p.premises = {l, r};
  p.conclusion.insert(p.conclusion.end(), l->conclusion.begin() + 1,
                      l->conclusion.end());
  p.conclusion.insert(p.conclusion.end(), r->conclusion.begin() + 1,
                      r->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_weak(const FormulaPtr& f, const ProofPtr& q, IdGen& ids) {
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Weak;
  p.premises = {q};
  p.weak_f = f;
  p.conclusion.push_back(f);
  p.conclusion.insert(p.conclusion.end(), q->conclusion.begin(),
                      q->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_contr(const ProofPtr& q, IdGen& ids) {
  if (q->conclusion.size() < 2 ||
      !alpha_equal(q->conclusion[0], q->conclusion[1]))
    throw InputError("contraction needs two equal leading formulas, got " +
                     show_sequent(q->conclusion));
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Contr;
  p.premises = {q};
  p.conclusion.push_back(q->conclusion[0]);
  p.conclusion.insert(p.conclusion.end(), q->conclusion.begin() + 2,
                      q->conclusion.end());
  return mk(std::move(p));
}

ProofPtr mk_perm(int pos, const ProofPtr& q, IdGen& ids) {
  if (pos < 0 || pos + 1 >= static_cast<int>(q->conclusion.size()))
    throw InputError("permutation position " + std::to_string(pos) +
                     " out of range for " + show_sequent(q->conclusion));
  Proof p;
  p.id = ids.fresh();
  p.rule = Rule::Perm;
  p.premises = {q};
  p.perm_pos = pos;
  p.conclusion = q->conclusion;
  std::swap(p.conclusion[pos], p.conclusion[pos + 1]);
  return mk(std::move(p));
}

// ---------------------------------------------------------------------------
// Structural queries
// ---------------------------------------------------------------------------

static void subproofs_rec(const ProofPtr& p, std::vector<ProofPtr>& out) {
  out.push_back(p);
  for (const auto& q : p->premises) subproofs_rec(q, out);
}

std::vector<ProofPtr> subproofs(const ProofPtr& p) {
  std::vector<ProofPtr> out;
  subproofs_rec(p, out);
  return out;
}

size_t proof_size(const ProofPtr& p) {
  size_t n = 1;
  for (const auto& q : p->premises) n += proof_size(q);
  return n;
}

long max_node_id(const ProofPtr& p) {
  long m = p->id;
  for (const auto& q : p->premises) m = std::max(m, max_node_id(q));
  return m;
}

bool contains_cut(const ProofPtr& p) {
  if (p->rule == Rule::Cut) return true;
  for (const auto& q : p->premises)
    if (contains_cut(q)) return true;
  return false;
}

static ProofPtr renumber_rec(const ProofPtr& p, long& next) {
  Proof q = *p;
  q.id = next++;
  for (auto& pr : q.premises) pr = renumber_rec(pr, next);
  return mk(std::move(q));
}

ProofPtr renumber(const ProofPtr& p) {
  long next = 0;
  return renumber_rec(p, next);
}

ProofPtr copy_fresh(const ProofPtr& p, IdGen& ids) {
  Proof q = *p;
  q.id = ids.fresh();
  for (auto& pr : q.premises) pr = copy_fresh(pr, ids);
  return mk(std::move(q));
}

ProofPtr proof_subst_var(const ProofPtr& p, const std::string& name,
                         const TermPtr& r, IdGen& ids) {
  Proof q = *p;
  q.id = ids.fresh();
  for (auto& f : q.conclusion) f = formula_subst_var(f, name, r);
  if (q.witness) q.witness = term_subst_var(q.witness, name, r);
  if (q.weak_f) q.weak_f = formula_subst_var(q.weak_f, name, r);
  if (q.rule == Rule::All && q.eigen == name)
    throw InternalError("proof_subst_var: substituting an eigenvariable");
  for (auto& pr : q.premises) pr = proof_subst_var(pr, name, r, ids);
  return mk(std::move(q));
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

namespace {

// Free variables mentioned by the node itself (not its subtree).
void node_vars(const ProofPtr& p, std::set<std::string>& out) {
  for (const auto& f : p->conclusion) formula_collect_vars(f, out);
  if (p->witness) term_collect_vars(p->witness, out);
  if (p->weak_f) formula_collect_vars(p->weak_f, out);
}

struct Checker {
  std::vector<Violation> out;

  void fail(const ProofPtr& p, const std::string& msg) {
    out.push_back({p->id, msg});
  }

  void expect_conclusion(const ProofPtr& p, const Sequent& want) {
    if (!sequent_equal(p->conclusion, want))
      fail(p, rule_name(p->rule) + ": conclusion " +
                  show_sequent(p->conclusion) + " differs from recomputed " +
                  show_sequent(want));
  }

  void check_node(const ProofPtr& p) {
    if (static_cast<int>(p->premises.size()) != rule_arity(p->rule)) {
      fail(p, "wrong premise count");
      return;
    }
    switch (p->rule) {
      case Rule::Axiom: {
        if (p->conclusion.size() != 2) {
          fail(p, "axiom conclusion must have two formulas");
          return;
        }
        const FormulaPtr& a = p->conclusion[0];
        if (a->kind != FormulaKind::Atom)
          fail(p, "axiom front formula must be a positive atom");
        else if (!alpha_equal(p->conclusion[1], dual(a)))
          fail(p, "axiom formulas are not dual");
        return;
      }
      case Rule::Or: {
        const Sequent& s = p->premises[0]->conclusion;
        if (s.size() < 2) {
          fail(p, "or-intro premise too short");
          return;
        }
        Sequent want = {mk_or(s[0], s[1])};
        want.insert(want.end(), s.begin() + 2, s.end());
        expect_conclusion(p, want);
        return;
      }
      case Rule::And: {
        const Sequent& l = p->premises[0]->conclusion;
        const Sequent& r = p->premises[1]->conclusion;
        if (l.empty() || r.empty()) {
          fail(p, "and-intro premise empty");
          return;
        }
        Sequent want = {mk_and(l[0], r[0])};
        want.insert(want.end(), l.begin() + 1, l.end());
        want.insert(want.end(), r.begin() + 1, r.end());
        expect_conclusion(p, want);
        return;
      }
      case Rule::All: {
        const Sequent& s = p->premises[0]->conclusion;
        if (s.empty() || p->conclusion.empty()) {
          fail(p, "all-intro premise or conclusion empty");
          return;
        }
        const FormulaPtr& con = p->conclusion[0];
        if (con->kind != FormulaKind::All) {
          fail(p, "all-intro conclusion front must be universal");
          return;
        }
        FormulaPtr inst = instantiate(con->body, con->var, mk_var(p->eigen));
        if (!alpha_equal(inst, s[0]))
          fail(p, "all-intro: premise front is not the eigenvariable "
                  "instance of the conclusion");
        Sequent want = {con};
        want.insert(want.end(), s.begin() + 1, s.end());
        expect_conclusion(p, want);
        // Eigenvariable condition: not free in the conclusion.
        for (const auto& f : p->conclusion)
          if (formula_contains_var(f, p->eigen)) {
            fail(p, "eigenvariable " + p->eigen + " occurs in the conclusion");
            break;
          }
        return;
      }
      case Rule::Ex: {
        const Sequent& s = p->premises[0]->conclusion;
        if (s.empty() || p->conclusion.empty()) {
          fail(p, "ex-intro premise or conclusion empty");
          return;
        }
        const FormulaPtr& con = p->conclusion[0];
        if (con->kind != FormulaKind::Ex) {
          fail(p, "ex-intro conclusion front must be existential");
          return;
        }
        if (!p->witness) {
          fail(p, "ex-intro without witness");
          return;
        }
        FormulaPtr inst = instantiate(con->body, con->var, p->witness);
        if (!alpha_equal(inst, s[0]))
          fail(p, "ex-intro: witness instance of the conclusion does not "
                  "match the premise front");
        Sequent want = {con};
        want.insert(want.end(), s.begin() + 1, s.end());
        expect_conclusion(p, want);
        return;
      }
      case Rule::Cut: {
        const Sequent& l = p->premises[0]->conclusion;
        const Sequent& r = p->premises[1]->conclusion;
        if (l.empty() || r.empty()) {
          fail(p, "cut premise empty");
          return;
        }
        if (!alpha_equal(dual(l[0]), r[0]))
          fail(p, "cut formulas are not dual");
        Sequent want(l.begin() + 1, l.end());
        want.insert(want.end(), r.begin() + 1, r.end());
        expect_conclusion(p, want);
        // Prenex class bound for cut formulas.
        if (!in_pi2(l[0]) && !in_sigma2(l[0]))
          fail(p, "cut formula outside the prenex two-quantifier classes: " +
                      show_formula(l[0]));
        return;
      }
      case Rule::Weak: {
        if (!p->weak_f) {
          fail(p, "weakening without formula");
          return;
        }
        Sequent want = {p->weak_f};
        const Sequent& s = p->premises[0]->conclusion;
        want.insert(want.end(), s.begin(), s.end());
        expect_conclusion(p, want);
        return;
      }
      case Rule::Contr: {
        const Sequent& s = p->premises[0]->conclusion;
        if (s.size() < 2) {
          fail(p, "contraction premise too short");
          return;
        }
        if (!alpha_equal(s[0], s[1])) {
          fail(p, "contraction: leading formulas differ");
          return;
        }
        Sequent want = {s[0]};
        want.insert(want.end(), s.begin() + 2, s.end());
        expect_conclusion(p, want);
        return;
      }
      case Rule::Perm: {
        const Sequent& s = p->premises[0]->conclusion;
        if (p->perm_pos < 0 ||
            p->perm_pos + 1 >= static_cast<int>(s.size())) {
          fail(p, "permutation position out of range");
          return;
        }
        Sequent want = s;
        std::swap(want[p->perm_pos], want[p->perm_pos + 1]);
        expect_conclusion(p, want);
        return;
      }
    }
  }
};

}  // namespace

std::vector<Violation> check_proof(const ProofPtr& p) {
  Checker ck;
  std::vector<ProofPtr> nodes = subproofs(p);

  // Duplicate node ids make descriptors ambiguous; flag them.
  {
    std::set<long> seen;
    for (const auto& n : nodes)
      if (!seen.insert(n->id).second)
        ck.fail(n, "duplicate node id");
  }

  for (const auto& n : nodes) ck.check_node(n);

  // Regularity: each eigenvariable is introduced by exactly one node and
  // stays inside that node's subtree. Subtrees are contiguous preorder
  // ranges, so record [start, end) per introduction.
  struct Intro {
    ProofPtr node;
    size_t begin, end;
  };
  std::map<std::string, std::vector<Intro>> intros;
  {
    // Compute preorder ranges.
    std::map<const Proof*, std::pair<size_t, size_t>> range;
    std::function<size_t(const ProofPtr&, size_t)> walk =
        [&](const ProofPtr& n, size_t at) -> size_t {
      size_t start = at++;
      for (const auto& q : n->premises) at = walk(q, at);
      range[n.get()] = {start, at};
      return at;
    };
    walk(p, 0);
    for (const auto& n : nodes)
      if (n->rule == Rule::All)
        intros[n->eigen].push_back(
            {n, range[n.get()].first, range[n.get()].second});
  }
  for (const auto& [eigen, list] : intros) {
    if (list.size() > 1)
      ck.fail(list[1].node,
              "eigenvariable " + eigen + " introduced more than once");
    for (const auto& intro : list) {
      for (size_t i = 0; i < nodes.size(); ++i) {
        if (i >= intro.begin && i < intro.end) continue;
        std::set<std::string> vars;
        node_vars(nodes[i], vars);
        if (vars.count(eigen)) {
          ck.fail(intro.node, "eigenvariable " + eigen +
                                  " occurs outside its subtree (node " +
                                  std::to_string(nodes[i]->id) + ")");
          break;
        }
      }
    }
  }
  return ck.out;
}

// ---------------------------------------------------------------------------
// Regularization
// ---------------------------------------------------------------------------

namespace {

void collect_all_names(const ProofPtr& p, std::set<std::string>& out) {
  node_vars(p, out);
  if (p->rule == Rule::All) out.insert(p->eigen);
  for (const auto& q : p->premises) collect_all_names(q, out);
}

ProofPtr regularize_rec(const ProofPtr& p, std::set<std::string>& used,
                        const std::set<std::string>& duplicated, IdGen& ids) {
  // Rebuild bottom-up; when an introduction clashes with a name already
  // accepted, or its name is introduced more than once anywhere in the
  // proof, rename the eigenvariable inside its own subtree first. Renaming
  // every occurrence of a duplicated name keeps the numbering uniform
  // (alpha twice becomes alpha_1 and alpha_2).
  Proof q = *p;
  for (auto& pr : q.premises) pr = regularize_rec(pr, used, duplicated, ids);
  if (q.rule == Rule::All) {
    if (used.count(q.eigen) || duplicated.count(q.eigen)) {
      std::string base = q.eigen;
      std::string fresh;
      for (int k = 1;; ++k) {
        fresh = base + "_" + std::to_string(k);
        if (!used.count(fresh)) break;
      }
      q.premises[0] = proof_subst_var(q.premises[0], q.eigen, mk_var(fresh), ids);
      q.eigen = fresh;
    }
    used.insert(q.eigen);
  }
  return mk(std::move(q));
}

}  // namespace

ProofPtr regularize(const ProofPtr& p, IdGen& ids) {
  // Free variables anywhere in the proof are off-limits as eigennames; seed
  // `used` with every name that occurs outside introductions, then walk.
  std::set<std::string> all_names;
  collect_all_names(p, all_names);
  std::map<std::string, int> eigen_count;
  for (const auto& n : subproofs(p))
    if (n->rule == Rule::All) ++eigen_count[n->eigen];
  std::set<std::string> used;
  for (const auto& n : all_names)
    if (!eigen_count.count(n)) used.insert(n);
  std::set<std::string> duplicated;
  for (const auto& [name, count] : eigen_count)
    if (count > 1) duplicated.insert(name);
  return regularize_rec(p, used, duplicated, ids);
}

}  // namespace lkgram
