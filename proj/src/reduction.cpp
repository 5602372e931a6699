// Cut-reduction engine implementation.
#include "lkgram/reduction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace lkgram {

namespace {

ProofPtr mk(Proof p) { return std::make_shared<Proof>(std::move(p)); }

// ---------------------------------------------------------------------------
// Permutation-transparent premise view
// ---------------------------------------------------------------------------

// A cut premise seen through its trailing permutation block. `out[j]` is the
// position, in the premise's own conclusion, of the occurrence sitting at
// position j of `inner`'s conclusion; `tracked` is the inner position of the
// cut-formula occurrence (premise position 0).
struct Peeled {
  ProofPtr inner;
  std::vector<int> out;
  int tracked = -1;
};

Peeled peel(const ProofPtr& premise) {
  Peeled v;
  size_t n = premise->conclusion.size();
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  ProofPtr cur = premise;
  while (cur->rule == Rule::Perm) {
    int i = cur->perm_pos;
    // Position k of the node's premise lands at step(k) of its conclusion.
    std::vector<int> next(n);
    for (size_t k = 0; k < n; ++k) {
      size_t s = k == static_cast<size_t>(i)       ? i + 1
                 : k == static_cast<size_t>(i + 1) ? i
                                                   : k;
      next[k] = map[s];
    }
    map = std::move(next);
    cur = cur->premises[0];
  }
  v.inner = cur;
  v.out = std::move(map);
  for (size_t j = 0; j < v.out.size(); ++j)
    if (v.out[j] == 0) v.tracked = static_cast<int>(j);
  if (v.tracked < 0) throw InternalError("peel: lost the front occurrence");
  return v;
}

// ---------------------------------------------------------------------------
// Permutation-block builders
// ---------------------------------------------------------------------------

// Adjacent swaps so that position k of the result holds what `target[k]`
// indexes in p's conclusion.
ProofPtr permute_to(ProofPtr p, const std::vector<int>& target, IdGen& ids) {
  size_t n = p->conclusion.size();
  if (target.size() != n) throw InternalError("permute_to: size mismatch");
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (size_t k = 0; k < n; ++k) {
    size_t j = k;
    while (j < n && cur[j] != target[k]) ++j;
    if (j == n) throw InternalError("permute_to: not a permutation");
    for (size_t i = j; i-- > k;) {
      p = mk_perm(static_cast<int>(i), p, ids);
      std::swap(cur[i], cur[i + 1]);
    }
  }
  return p;
}

ProofPtr front_block(ProofPtr p, int from, IdGen& ids) {
  for (int i = from - 1; i >= 0; --i) p = mk_perm(i, p, ids);
  return p;
}

// Send the front formula to position `to`.
ProofPtr sink_front(ProofPtr p, int to, IdGen& ids) {
  for (int i = 0; i < to; ++i) p = mk_perm(i, p, ids);
  return p;
}

// Weaken the given formulas in, so the conclusion becomes (fs..., old...).
ProofPtr weaken_list(ProofPtr p, const std::vector<FormulaPtr>& fs,
                     IdGen& ids) {
  for (size_t i = fs.size(); i-- > 0;) p = mk_weak(fs[i], p, ids);
  return p;
}

// Contract the alpha-equal occurrences at pos1 < pos2; the merged occurrence
// returns to pos1.
ProofPtr contract_at(ProofPtr p, int pos1, int pos2, IdGen& ids) {
  if (pos1 >= pos2) throw InternalError("contract_at: bad positions");
  p = front_block(p, pos1, ids);
  // pos2 is unchanged (it was beyond pos1); bubble it to position 1.
  for (int i = pos2 - 1; i >= 1; --i) p = mk_perm(i, p, ids);
  p = mk_contr(p, ids);
  return sink_front(p, pos1, ids);
}

// ---------------------------------------------------------------------------
// Redex detection
// ---------------------------------------------------------------------------

bool is_principal_rule(Rule r) {
  switch (r) {
    case Rule::Or:
    case Rule::And:
    case Rule::All:
    case Rule::Ex:
    case Rule::Weak:
    case Rule::Contr:
      return true;
    default:
      return false;
  }
}

std::vector<std::pair<RedexKind, Side>> detect_at_cut(const ProofPtr& cut) {
  const Peeled pl = peel(cut->premises[0]);
  const Peeled pr = peel(cut->premises[1]);
  std::vector<std::pair<RedexKind, Side>> out;

  auto principal = [](const Peeled& v) {
    return v.tracked == 0 && is_principal_rule(v.inner->rule);
  };

  // Axioms first.
  if (pl.inner->rule == Rule::Axiom) out.push_back({RedexKind::Axiom, Side::Left});
  if (pr.inner->rule == Rule::Axiom)
    out.push_back({RedexKind::Axiom, Side::Right});

  // Principal steps; a matching introduction pair is reported once, with the
  // side naming the premise whose virtual inference is the conjunction
  // (boolean) or the universal introduction (quantifier).
  if (pl.inner->rule != Rule::Axiom && principal(pl)) {
    switch (pl.inner->rule) {
      case Rule::Weak:
        out.push_back({RedexKind::Weakening, Side::Left});
        break;
      case Rule::Contr:
        out.push_back({RedexKind::Contraction, Side::Left});
        break;
      case Rule::And:
        if (principal(pr) && pr.inner->rule == Rule::Or)
          out.push_back({RedexKind::Boolean, Side::Left});
        break;
      case Rule::Or:
        if (principal(pr) && pr.inner->rule == Rule::And)
          out.push_back({RedexKind::Boolean, Side::Right});
        break;
      case Rule::All:
        if (principal(pr) && pr.inner->rule == Rule::Ex)
          out.push_back({RedexKind::Quantifier, Side::Left});
        break;
      case Rule::Ex:
        if (principal(pr) && pr.inner->rule == Rule::All)
          out.push_back({RedexKind::Quantifier, Side::Right});
        break;
      default:
        break;
    }
  }
  if (pr.inner->rule != Rule::Axiom && principal(pr)) {
    switch (pr.inner->rule) {
      case Rule::Weak:
        out.push_back({RedexKind::Weakening, Side::Right});
        break;
      case Rule::Contr:
        out.push_back({RedexKind::Contraction, Side::Right});
        break;
      default:
        break;  // introduction pairs were handled from the left scan
    }
  }

  // Non-principal hoists.
  auto nonprincipal = [&](const Peeled& v, Side s) {
    if (v.inner->rule == Rule::Axiom) return;
    if (v.tracked == 0 && is_principal_rule(v.inner->rule)) return;
    switch (v.inner->rule) {
      case Rule::Or:
      case Rule::All:
      case Rule::Ex:
      case Rule::Weak:
      case Rule::Contr:
        out.push_back({RedexKind::UnaryPerm, s});
        return;
      case Rule::And:
      case Rule::Cut:
        out.push_back({RedexKind::BinaryPerm, s});
        return;
      default:
        throw InternalError("detect: unexpected inner rule");
    }
  };
  nonprincipal(pl, Side::Left);
  nonprincipal(pr, Side::Right);
  return out;
}

void collect_redexes(const ProofPtr& p, std::vector<int>& path,
                     std::vector<Redex>& out) {
  if (p->rule == Rule::Cut) {
    for (auto [k, s] : detect_at_cut(p)) out.push_back({path, k, s});
  }
  for (size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_redexes(p->premises[i], path, out);
    path.pop_back();
  }
}

// ---------------------------------------------------------------------------
// Reduct construction
// ---------------------------------------------------------------------------

// Tracks, for each position of a sequent under construction, the position it
// must finally occupy in the cut's conclusion.
struct Labeled {
  ProofPtr proof;
  std::vector<int> labels;
};

ProofPtr finish(const Labeled& lb, const Sequent& want, IdGen& ids) {
  size_t n = lb.labels.size();
  if (lb.proof->conclusion.size() != n)
    throw InternalError("reduct: label count mismatch");
  std::vector<int> target(n, -1);
  for (size_t i = 0; i < n; ++i) {
    int k = lb.labels[i];
    if (k < 0 || k >= static_cast<int>(n) || target[k] != -1)
      throw InternalError("reduct: labels are not a permutation");
    target[k] = static_cast<int>(i);
  }
  ProofPtr done = permute_to(lb.proof, target, ids);
  if (!sequent_equal(done->conclusion, want))
    throw InternalError("reduct changed the end-sequent: " +
                        show_sequent(done->conclusion) + " vs " +
                        show_sequent(want));
  return done;
}

struct CutView {
  ProofPtr L, R;
  Peeled pl, pr;
  int nl, nr;  // premise conclusion sizes

  explicit CutView(const ProofPtr& cut)
      : L(cut->premises[0]),
        R(cut->premises[1]),
        pl(peel(L)),
        pr(peel(R)),
        nl(static_cast<int>(L->conclusion.size())),
        nr(static_cast<int>(R->conclusion.size())) {}

  // Final label of an occurrence of the left/right virtual conclusion.
  int label_left(int u) const { return pl.out[u] - 1; }
  int label_right(int u) const { return (nl - 1) + pr.out[u] - 1; }
  int label_of(Side s, int u) const {
    return s == Side::Left ? label_left(u) : label_right(u);
  }
  // Final label of position m of the untouched other premise's tail.
  int label_other(Side s, int m) const {
    return s == Side::Left ? (nl - 1) + m : m;
  }
};

ProofPtr reduce_axiom(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  if (side == Side::Left) {
    // The left premise is a permuted axiom; its side formula equals the dual
    // cut formula, so the right premise already proves the conclusion.
    if (!sequent_equal(v.R->conclusion, cut->conclusion))
      throw InternalError("axiom step: right premise does not close");
    return v.R;
  }
  // Mirror: rotate the cut formula of the left premise to the back.
  size_t n = v.L->conclusion.size();
  std::vector<int> target(n);
  for (size_t k = 0; k + 1 < n; ++k) target[k] = static_cast<int>(k) + 1;
  target[n - 1] = 0;
  ProofPtr done = permute_to(v.L, target, ids);
  if (!sequent_equal(done->conclusion, cut->conclusion))
    throw InternalError("axiom step: left premise does not close");
  return done;
}

ProofPtr reduce_weakening(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  const Peeled& p = side == Side::Left ? v.pl : v.pr;
  ProofPtr body = p.inner->premises[0];
  Labeled lb;
  // The other premise's tail gets weakened in front of the kept premise's
  // remaining formulas; the discarded premise disappears entirely.
  std::vector<FormulaPtr> add;
  std::vector<int> add_labels;
  if (side == Side::Left) {
    for (int m = 0; m + 1 < v.nr; ++m) {
      add.push_back(v.R->conclusion[m + 1]);
      add_labels.push_back(v.label_other(Side::Left, m));
    }
  } else {
    for (int m = 0; m + 1 < v.nl; ++m) {
      add.push_back(v.L->conclusion[m + 1]);
      add_labels.push_back(v.label_other(Side::Right, m));
    }
  }
  lb.proof = weaken_list(body, add, ids);
  lb.labels = add_labels;
  for (size_t i = 0; i < body->conclusion.size(); ++i)
    lb.labels.push_back(v.label_of(side, static_cast<int>(i) + 1));
  return finish(lb, cut->conclusion, ids);
}

ProofPtr reduce_contraction(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  if (side == Side::Left) {
    ProofPtr body = v.pl.inner->premises[0];  // (A, A, S0')
    int s0 = static_cast<int>(body->conclusion.size()) - 2;
    int k = v.nr - 1;
    ProofPtr c1 = mk_cut(body, v.R, ids);            // (A, S0', D)
    ProofPtr r2 = copy_fresh(v.R, ids);
    ProofPtr c2 = mk_cut(c1, r2, ids);               // (S0', D, D)
    ProofPtr x = c2;
    for (int i = 0; i < k; ++i) x = contract_at(x, s0 + i, s0 + k, ids);
    Labeled lb{x, {}};
    for (int j = 0; j < s0; ++j) lb.labels.push_back(v.label_left(j + 1));
    for (int m = 0; m < k; ++m)
      lb.labels.push_back(v.label_other(Side::Left, m));
    return finish(lb, cut->conclusion, ids);
  }
  ProofPtr body = v.pr.inner->premises[0];  // (nA, nA, S1')
  int s1 = static_cast<int>(body->conclusion.size()) - 2;
  int k = v.nl - 1;
  ProofPtr c1 = mk_cut(v.L, body, ids);      // (G, nA, S1')
  ProofPtr x1 = front_block(c1, k, ids);     // (nA, G, S1')
  ProofPtr l2 = copy_fresh(v.L, ids);
  ProofPtr c2 = mk_cut(l2, x1, ids);         // (G, G, S1')
  ProofPtr x = c2;
  for (int i = 0; i < k; ++i) x = contract_at(x, i, k, ids);
  Labeled lb{x, {}};
  for (int m = 0; m < k; ++m) lb.labels.push_back(v.label_other(Side::Right, m));
  for (int j = 0; j < s1; ++j) lb.labels.push_back(v.label_right(j + 1));
  return finish(lb, cut->conclusion, ids);
}

ProofPtr reduce_quantifier(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  // `side` names the premise whose virtual inference introduces the
  // universal quantifier.
  const Peeled& pall = side == Side::Left ? v.pl : v.pr;
  const Peeled& pex = side == Side::Left ? v.pr : v.pl;
  const std::string& eigen = pall.inner->eigen;
  const TermPtr& t = pex.inner->witness;
  ProofPtr abody = proof_subst_var(pall.inner->premises[0], eigen, t, ids);
  ProofPtr ebody = pex.inner->premises[0];
  ProofPtr c = side == Side::Left ? mk_cut(abody, ebody, ids)
                                  : mk_cut(ebody, abody, ids);
  Labeled lb{c, {}};
  // Left premise tail first, then right premise tail (cut builds it so).
  size_t ltail = (side == Side::Left ? abody : ebody)->conclusion.size() - 1;
  size_t rtail = (side == Side::Left ? ebody : abody)->conclusion.size() - 1;
  for (size_t j = 0; j < ltail; ++j)
    lb.labels.push_back(v.label_left(static_cast<int>(j) + 1));
  for (size_t j = 0; j < rtail; ++j)
    lb.labels.push_back(v.label_right(static_cast<int>(j) + 1));
  return finish(lb, cut->conclusion, ids);
}

ProofPtr reduce_boolean(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  if (side == Side::Left) {
    // Conjunction introduced on the left premise, disjunction on the right.
    ProofPtr px = v.pl.inner->premises[0];  // (X, GL)
    ProofPtr py = v.pl.inner->premises[1];  // (Y, GR)
    ProofPtr po = v.pr.inner->premises[0];  // (nX, nY, P)
    int gl = static_cast<int>(px->conclusion.size()) - 1;
    int gr = static_cast<int>(py->conclusion.size()) - 1;
    int np = static_cast<int>(po->conclusion.size()) - 2;
    ProofPtr o2 = mk_perm(0, po, ids);        // (nY, nX, P)
    ProofPtr c1 = mk_cut(py, o2, ids);        // (GR, nX, P)
    ProofPtr f1 = front_block(c1, gr, ids);   // (nX, GR, P)
    ProofPtr c2 = mk_cut(px, f1, ids);        // (GL, GR, P)
    Labeled lb{c2, {}};
    for (int i = 0; i < gl; ++i) lb.labels.push_back(v.label_left(1 + i));
    for (int i = 0; i < gr; ++i)
      lb.labels.push_back(v.label_left(1 + gl + i));
    for (int i = 0; i < np; ++i) lb.labels.push_back(v.label_right(1 + i));
    return finish(lb, cut->conclusion, ids);
  }
  // Disjunction on the left premise, conjunction on the right.
  ProofPtr po = v.pl.inner->premises[0];   // (X, Y, G)
  ProofPtr pxb = v.pr.inner->premises[0];  // (nX, DL)
  ProofPtr pyb = v.pr.inner->premises[1];  // (nY, DR)
  int ng = static_cast<int>(po->conclusion.size()) - 2;
  int dl = static_cast<int>(pxb->conclusion.size()) - 1;
  int dr = static_cast<int>(pyb->conclusion.size()) - 1;
  ProofPtr c1 = mk_cut(po, pxb, ids);  // (Y, G, DL)
  ProofPtr c2 = mk_cut(c1, pyb, ids);  // (G, DL, DR)
  Labeled lb{c2, {}};
  for (int i = 0; i < ng; ++i) lb.labels.push_back(v.label_left(1 + i));
  for (int i = 0; i < dl; ++i) lb.labels.push_back(v.label_right(1 + i));
  for (int i = 0; i < dr; ++i)
    lb.labels.push_back(v.label_right(1 + dl + i));
  return finish(lb, cut->conclusion, ids);
}

// Hoist the cut above a non-principal inference (the unary and binary
// permutation steps).
ProofPtr reduce_hoist(const ProofPtr& cut, Side side, IdGen& ids) {
  CutView v(cut);
  const Peeled& p = side == Side::Left ? v.pl : v.pr;
  const ProofPtr& inf = p.inner;
  int tr = p.tracked;

  // Locate the tracked occurrence inside one of the inference's premises.
  int w = 0;     // premise slot
  int q = -1;    // its position in that premise's conclusion
  int consumed;  // leading formulas of that premise the inference consumes
  switch (inf->rule) {
    case Rule::Or:
      q = tr + 1;
      consumed = 2;
      break;
    case Rule::All:
    case Rule::Ex:
      q = tr;
      consumed = 1;
      break;
    case Rule::Weak:
      q = tr - 1;
      consumed = 0;
      break;
    case Rule::Contr:
      q = tr + 1;
      consumed = 2;
      break;
    case Rule::And: {
      int rest_l = static_cast<int>(inf->premises[0]->conclusion.size()) - 1;
      consumed = 1;
      if (tr <= rest_l) {
        w = 0;
        q = tr;
      } else {
        w = 1;
        q = tr - rest_l;
      }
      break;
    }
    case Rule::Cut: {
      int rest_l = static_cast<int>(inf->premises[0]->conclusion.size()) - 1;
      consumed = 1;
      if (tr < rest_l) {
        w = 0;
        q = tr + 1;
      } else {
        w = 1;
        q = tr - rest_l + 1;
      }
      break;
    }
    default:
      throw InternalError("hoist: bad inner rule");
  }

  // Position of a surviving premise-w occurrence in the inference's
  // conclusion.
  auto to_inf_concl = [&](int s) -> int {
    switch (inf->rule) {
      case Rule::Or:
        return s - 1;
      case Rule::All:
      case Rule::Ex:
        return s;
      case Rule::Weak:
        return s + 1;
      case Rule::Contr:
        return s - 1;
      case Rule::And: {
        int rest_l = static_cast<int>(inf->premises[0]->conclusion.size()) - 1;
        return w == 0 ? s : rest_l + s;
      }
      case Rule::Cut: {
        int rest_l = static_cast<int>(inf->premises[0]->conclusion.size()) - 1;
        return w == 0 ? s - 1 : rest_l + s - 1;
      }
      default:
        throw InternalError("hoist: bad inner rule");
    }
  };

  const ProofPtr& W = inf->premises[w];
  int nw = static_cast<int>(W->conclusion.size());
  if (q < 0 || q >= nw || q < consumed)
    throw InternalError("hoist: bad occurrence position");
  if (!alpha_equal(W->conclusion[q],
                   side == Side::Left ? v.L->conclusion[0]
                                      : v.R->conclusion[0]))
    throw InternalError("hoist: tracked occurrence mismatch");

  ProofPtr f = front_block(W, q, ids);
  ProofPtr c = side == Side::Left ? mk_cut(f, v.R, ids) : mk_cut(v.L, f, ids);

  // Current layout of c's conclusion, as (origin, payload) pairs:
  //   origin 0 = surviving premise-w occurrence (payload: its original
  //   position s), origin 1 = other cut premise tail (payload: tail index).
  struct Slot {
    int origin;
    int payload;
  };
  std::vector<Slot> layout;
  {
    std::vector<Slot> from_w;
    for (int s = 0; s < nw; ++s)
      if (s != q) from_w.push_back({0, s});
    int other_tail = side == Side::Left ? v.nr - 1 : v.nl - 1;
    std::vector<Slot> from_other;
    for (int m = 0; m < other_tail; ++m) from_other.push_back({1, m});
    if (side == Side::Left) {
      layout = from_w;
      layout.insert(layout.end(), from_other.begin(), from_other.end());
    } else {
      layout = from_other;
      layout.insert(layout.end(), from_w.begin(), from_w.end());
    }
  }

  // Bring the consumed formulas to the front (they are the first `consumed`
  // premise-w occurrences).
  if (consumed > 0) {
    std::vector<int> target;
    std::vector<Slot> new_layout;
    for (int s = 0; s < consumed; ++s) {
      for (size_t i = 0; i < layout.size(); ++i)
        if (layout[i].origin == 0 && layout[i].payload == s) {
          target.push_back(static_cast<int>(i));
          new_layout.push_back(layout[i]);
        }
    }
    for (size_t i = 0; i < layout.size(); ++i)
      if (!(layout[i].origin == 0 && layout[i].payload < consumed)) {
        target.push_back(static_cast<int>(i));
        new_layout.push_back(layout[i]);
      }
    c = permute_to(c, target, ids);
    layout = std::move(new_layout);
  }

  // Re-apply the inference.
  ProofPtr v2;
  switch (inf->rule) {
    case Rule::Or:
      v2 = mk_or(c, ids);
      break;
    case Rule::All:
      v2 = mk_all(inf->eigen, c, ids);
      break;
    case Rule::Ex:
      v2 = mk_ex(inf->witness, inf->conclusion[0], c, ids);
      break;
    case Rule::Weak:
      v2 = mk_weak(inf->weak_f, c, ids);
      break;
    case Rule::Contr:
      v2 = mk_contr(c, ids);
      break;
    case Rule::And:
      v2 = w == 0 ? mk_and(c, inf->premises[1], ids)
                  : mk_and(inf->premises[0], c, ids);
      break;
    case Rule::Cut:
      v2 = w == 0 ? mk_cut(c, inf->premises[1], ids)
                  : mk_cut(inf->premises[0], c, ids);
      break;
    default:
      throw InternalError("hoist: bad inner rule");
  }

  // Assemble final labels for v2's conclusion.
  auto inf_label = [&](int u) { return v.label_of(side, u); };
  Labeled lb{v2, {}};
  int principal_count = inf->rule == Rule::Cut ? 0 : 1;
  for (int i = 0; i < principal_count; ++i) lb.labels.push_back(inf_label(0));

  auto push_other_premise_tail = [&](int slot) {
    const ProofPtr& other = inf->premises[slot];
    int tail = static_cast<int>(other->conclusion.size()) - 1;
    int rest_l = static_cast<int>(inf->premises[0]->conclusion.size()) - 1;
    for (int i = 0; i < tail; ++i) {
      int u;
      if (inf->rule == Rule::And)
        u = slot == 0 ? 1 + i : 1 + rest_l + i;
      else  // Cut
        u = slot == 0 ? i : rest_l + i;
      lb.labels.push_back(inf_label(u));
    }
  };

  // Binary inference, cut premise in slot 1: slot 0's tail comes first.
  bool binary = inf->rule == Rule::And || inf->rule == Rule::Cut;
  if (binary && w == 1) push_other_premise_tail(0);

  // The hoisted premise's remaining occurrences (layout minus consumed).
  for (const Slot& slot : layout) {
    if (slot.origin == 0) {
      if (slot.payload < consumed) continue;  // consumed by the inference
      lb.labels.push_back(inf_label(to_inf_concl(slot.payload)));
    } else {
      lb.labels.push_back(v.label_other(side, slot.payload));
    }
  }

  if (binary && w == 0) push_other_premise_tail(1);

  return finish(lb, cut->conclusion, ids);
}

ProofPtr reduce_at_cut(const ProofPtr& cut, RedexKind kind, Side side,
                       IdGen& ids) {
  switch (kind) {
    case RedexKind::Axiom:
      return reduce_axiom(cut, side, ids);
    case RedexKind::Weakening:
      return reduce_weakening(cut, side, ids);
    case RedexKind::Contraction:
      return reduce_contraction(cut, side, ids);
    case RedexKind::Quantifier:
      return reduce_quantifier(cut, side, ids);
    case RedexKind::Boolean:
      return reduce_boolean(cut, side, ids);
    case RedexKind::UnaryPerm:
    case RedexKind::BinaryPerm:
      return reduce_hoist(cut, side, ids);
  }
  throw InternalError("reduce_at_cut: bad kind");
}

ProofPtr replace_at(const ProofPtr& root, const std::vector<int>& path,
                    size_t d, const std::function<ProofPtr(const ProofPtr&)>& f) {
  if (d == path.size()) return f(root);
  int i = path[d];
  if (i < 0 || i >= static_cast<int>(root->premises.size()))
    throw InputError("stale reduction descriptor: bad path");
  Proof q = *root;
  q.premises[i] = replace_at(root->premises[i], path, d + 1, f);
  return mk(std::move(q));
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

std::string redex_kind_name(RedexKind k) {
  switch (k) {
    case RedexKind::Axiom:
      return "axiom";
    case RedexKind::Weakening:
      return "weakening";
    case RedexKind::Contraction:
      return "contraction";
    case RedexKind::Quantifier:
      return "quantifier";
    case RedexKind::Boolean:
      return "boolean";
    case RedexKind::UnaryPerm:
      return "unary-perm";
    case RedexKind::BinaryPerm:
      return "binary-perm";
  }
  throw InternalError("redex_kind_name: bad kind");
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

std::string show_redex(const Redex& r) {
  std::string path = "[";
  for (size_t i = 0; i < r.path.size(); ++i) {
    if (i) path += ".";
    path += std::to_string(r.path[i]);
  }
  path += "]";
  return redex_kind_name(r.kind) + " " + side_name(r.side) + " at " + path;
}

ProofPtr node_at(const ProofPtr& root, const std::vector<int>& path) {
  ProofPtr cur = root;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(cur->premises.size()))
      throw InputError("bad path into proof");
    cur = cur->premises[i];
  }
  return cur;
}

std::vector<Redex> applicable_reductions(const ProofPtr& root) {
  std::vector<Redex> out;
  std::vector<int> path;
  collect_redexes(root, path, out);
  return out;
}

ProofPtr apply_reduction(const ProofPtr& root, const Redex& r) {
  ProofPtr cut = node_at(root, r.path);
  if (cut->rule != Rule::Cut)
    throw InputError("stale reduction descriptor: no cut at " + show_redex(r));
  bool found = false;
  for (auto [k, s] : detect_at_cut(cut))
    if (k == r.kind && s == r.side) found = true;
  if (!found)
    throw InputError("stale reduction descriptor: " + show_redex(r) +
                     " is not applicable");
  IdGen ids{max_node_id(root) + 1};
  ProofPtr out = replace_at(root, r.path, 0, [&](const ProofPtr& c) {
    return reduce_at_cut(c, r.kind, r.side, ids);
  });
  return regularize(out, ids);
}

// ---------------------------------------------------------------------------
// Strategies and elimination
// ---------------------------------------------------------------------------

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::WeakFirst:
      return "weak-first";
    case Strategy::Restricted:
      return "restricted";
    case Strategy::Unrestricted:
      return "unrestricted";
  }
  throw InternalError("strategy_name: bad strategy");
}

std::optional<Strategy> strategy_from_name(const std::string& n) {
  if (n == "weak-first") return Strategy::WeakFirst;
  if (n == "restricted") return Strategy::Restricted;
  if (n == "unrestricted") return Strategy::Unrestricted;
  return std::nullopt;
}

std::optional<Side> weak_side(const FormulaPtr& cut_formula) {
  if (cut_formula->kind == FormulaKind::Ex) return Side::Left;
  if (cut_formula->kind == FormulaKind::All) return Side::Right;
  return std::nullopt;
}

namespace {

int kind_priority(RedexKind k) {
  switch (k) {
    case RedexKind::Axiom:
      return 0;
    case RedexKind::Weakening:
      return 1;
    case RedexKind::Quantifier:
      return 2;
    case RedexKind::Boolean:
      return 3;
    case RedexKind::UnaryPerm:
      return 4;
    case RedexKind::BinaryPerm:
      return 5;
    case RedexKind::Contraction:
      return 6;
  }
  throw InternalError("kind_priority: bad kind");
}

// Restriction checks for the restricted strategy.
bool is_restricted_contraction(const ProofPtr& cut, const Redex& r) {
  if (r.kind != RedexKind::Contraction) return false;
  const FormulaPtr& f = r.side == Side::Left
                            ? cut->premises[0]->conclusion[0]
                            : cut->premises[1]->conclusion[0];
  return genuine_pi2(f);
}

bool is_restricted_cut_perm(const ProofPtr& cut, const Redex& r) {
  if (r.kind != RedexKind::BinaryPerm) return false;
  const ProofPtr& premise =
      r.side == Side::Left ? cut->premises[0] : cut->premises[1];
  ProofPtr inner = premise;
  while (inner->rule == Rule::Perm) inner = inner->premises[0];
  if (inner->rule != Rule::Cut) return false;
  auto [outer_f, inner_f] = stacked_cut_formulas(cut, r);
  return genuine_pi2(outer_f) && genuine_pi2(inner_f);
}

}  // namespace

std::pair<FormulaPtr, FormulaPtr> stacked_cut_formulas(const ProofPtr& cut,
                                                       const Redex& r) {
  if (cut->rule != Rule::Cut || r.kind != RedexKind::BinaryPerm)
    throw InputError("stacked_cut_formulas: not a binary-permutation redex");
  const ProofPtr& premise =
      r.side == Side::Left ? cut->premises[0] : cut->premises[1];
  ProofPtr inner = premise;
  size_t tracked = 0;  // outer cut-formula position, walked up the perm block
  while (inner->rule == Rule::Perm) {
    size_t pos = static_cast<size_t>(inner->perm_pos);
    if (tracked == pos)
      tracked = pos + 1;
    else if (tracked == pos + 1)
      tracked = pos;
    inner = inner->premises[0];
  }
  if (inner->rule != Rule::Cut)
    throw InputError("stacked_cut_formulas: inner inference is not a cut");
  FormulaPtr outer_held = inner->conclusion[tracked];
  size_t from_left = inner->premises[0]->conclusion.size() - 1;
  FormulaPtr inner_held = tracked < from_left
                              ? inner->premises[0]->conclusion[0]
                              : inner->premises[1]->conclusion[0];
  return {outer_held, inner_held};
}

EliminationResult eliminate_cuts(const ProofPtr& root, Strategy strategy,
                                 size_t limit) {
  EliminationResult res;
  res.proof = root;
  size_t step = 0;
  while (true) {
    std::vector<Redex> all = applicable_reductions(res.proof);
    if (all.empty()) {
      if (contains_cut(res.proof))
        throw InternalError("no reduction applicable but cuts remain");
      break;
    }
    if (++step > limit) {
      res.limit_hit = true;
      break;
    }

    // Deepest cut first, leftmost on ties.
    std::vector<int> best_path;
    bool have = false;
    for (const auto& r : all) {
      if (!have || r.path.size() > best_path.size() ||
          (r.path.size() == best_path.size() && r.path < best_path)) {
        best_path = r.path;
        have = true;
      }
    }
    std::vector<Redex> local;
    for (const auto& r : all)
      if (r.path == best_path) local.push_back(r);
    ProofPtr cut = node_at(res.proof, best_path);
    const FormulaPtr& cut_formula = cut->premises[0]->conclusion[0];

    auto sort_key = [&](const Redex& r) {
      int weak_rank = 0;
      if (strategy == Strategy::WeakFirst) {
        auto ws = weak_side(cut_formula);
        weak_rank = ws && r.side != *ws ? 1 : 0;
      }
      return std::tuple(weak_rank, kind_priority(r.kind),
                        r.side == Side::Right);
    };
    std::stable_sort(local.begin(), local.end(),
                     [&](const Redex& a, const Redex& b) {
                       return sort_key(a) < sort_key(b);
                     });

    std::optional<Redex> chosen;
    if (strategy == Strategy::Restricted) {
      std::vector<Redex> kept;
      std::vector<Redex> skipped;
      for (const auto& r : local) {
        if (is_restricted_cut_perm(cut, r))
          skipped.push_back(r);
        else
          kept.push_back(r);
      }
      // A contraction on a genuinely two-block universal cut formula only
      // fires when nothing else applies to this cut.
      std::vector<Redex> preferred;
      for (const auto& r : kept)
        if (!is_restricted_contraction(cut, r)) preferred.push_back(r);
      if (!preferred.empty() && preferred.size() < kept.size()) {
        for (const auto& r : kept)
          if (is_restricted_contraction(cut, r)) skipped.push_back(r);
        kept = preferred;
      }
      for (const auto& r : skipped)
        res.notes.push_back("skipped " + show_redex(r) +
                            " (restricted strategy)");
      if (!kept.empty()) chosen = kept.front();
      else if (!local.empty()) {
        // Fall back rather than stall; record the exception.
        chosen = local.front();
        res.notes.push_back("restriction fallback: applied " +
                            show_redex(local.front()));
      }
    } else {
      chosen = local.front();
    }
    if (!chosen) throw InternalError("no redex chosen");

    res.proof = apply_reduction(res.proof, *chosen);
    res.trace.push_back({step, chosen->path, chosen->kind, chosen->side,
                         proof_size(res.proof)});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Witness extraction from cut-free proofs
// ---------------------------------------------------------------------------

WitnessItem make_witness_item(int index, std::vector<TermPtr> terms) {
  WitnessItem w;
  w.index = index;
  w.terms = std::move(terms);
  for (const auto& t : w.terms) w.keys.push_back(show_term(t));
  return w;
}

std::string show_witness_item(const WitnessItem& w) {
  std::string out = "(" + std::to_string(w.index) + ", <";
  for (size_t i = 0; i < w.keys.size(); ++i) {
    if (i) out += ",";
    out += w.keys[i];
  }
  return out + ">)";
}

std::string show_witness_set(const WitnessSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& w : s) {
    if (!first) out += ", ";
    first = false;
    out += show_witness_item(w);
  }
  return out + "}";
}

namespace {

// Per-position tuple sets, deduplicated by printed keys.
using PosSet = std::map<std::vector<std::string>, std::vector<TermPtr>>;

std::vector<TermPtr> prepend(const TermPtr& t, const std::vector<TermPtr>& v) {
  std::vector<TermPtr> out{t};
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<std::string> keys_of(const std::vector<TermPtr>& v) {
  std::vector<std::string> out;
  for (const auto& t : v) out.push_back(show_term(t));
  return out;
}

std::vector<PosSet> collect_witnesses(const ProofPtr& p) {
  switch (p->rule) {
    case Rule::Axiom:
      return {PosSet{{{}, {}}}, PosSet{{{}, {}}}};
    case Rule::Or: {
      auto h = collect_witnesses(p->premises[0]);
      std::vector<PosSet> out;
      PosSet front;
      if (!h[0].empty() || !h[1].empty()) front[{}] = {};
      out.push_back(std::move(front));
      for (size_t i = 2; i < h.size(); ++i) out.push_back(std::move(h[i]));
      return out;
    }
    case Rule::And: {
      auto l = collect_witnesses(p->premises[0]);
      auto r = collect_witnesses(p->premises[1]);
      std::vector<PosSet> out;
      PosSet front;
      if (!l[0].empty() || !r[0].empty()) front[{}] = {};
      out.push_back(std::move(front));
      for (size_t i = 1; i < l.size(); ++i) out.push_back(std::move(l[i]));
      for (size_t i = 1; i < r.size(); ++i) out.push_back(std::move(r[i]));
      return out;
    }
    case Rule::Ex: {
      auto h = collect_witnesses(p->premises[0]);
      PosSet front;
      for (const auto& [k, v] : h[0]) {
        auto tup = prepend(p->witness, v);
        front[keys_of(tup)] = tup;
      }
      h[0] = std::move(front);
      return h;
    }
    case Rule::Weak: {
      auto h = collect_witnesses(p->premises[0]);
      std::vector<PosSet> out;
      out.emplace_back();  // nothing flows through a weakened occurrence
      for (auto& s : h) out.push_back(std::move(s));
      return out;
    }
    case Rule::Contr: {
      auto h = collect_witnesses(p->premises[0]);
      std::vector<PosSet> out;
      PosSet front = std::move(h[0]);
      for (auto& [k, v] : h[1]) front[k] = v;
      out.push_back(std::move(front));
      for (size_t i = 2; i < h.size(); ++i) out.push_back(std::move(h[i]));
      return out;
    }
    case Rule::Perm: {
      auto h = collect_witnesses(p->premises[0]);
      std::swap(h[p->perm_pos], h[p->perm_pos + 1]);
      return h;
    }
    case Rule::All:
      throw InputError(
          "witness extraction: universal introduction in a cut-free proof "
          "of an existential end-sequent");
    case Rule::Cut:
      throw InputError("witness extraction requires a cut-free proof");
  }
  throw InternalError("collect_witnesses: bad rule");
}

}  // namespace

WitnessSet herbrand_set(const ProofPtr& p) {
  for (const auto& f : p->conclusion)
    if (!in_sigma1(f))
      throw InputError(
          "witness extraction: end-sequent formula outside the purely "
          "existential class: " + show_formula(f));
  if (contains_cut(p))
    throw InputError("witness extraction requires a cut-free proof");
  auto sets = collect_witnesses(p);
  WitnessSet out;
  for (size_t i = 0; i < sets.size(); ++i)
    for (const auto& [k, v] : sets[i])
      out.insert(make_witness_item(static_cast<int>(i), v));
  return out;
}

}  // namespace lkgram
