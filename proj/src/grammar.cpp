// Grammar extraction, rewriting, and language enumeration.
#include "lkgram/grammar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <future>
#include <set>
#include <thread>

namespace lkgram {

namespace {

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

std::vector<LTermPtr> with_front(const LTermPtr& head,
                                 const std::vector<LTermPtr>& rest) {
  std::vector<LTermPtr> out{head};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// The argument fed into the front slot of a premise whose first formula is
// `f`, built from the two cut premises' value components. `self` proves
// (f, ...), `other` proves (dual f, ...); self_args/other_args are the side
// arguments of the respective premises.
LTermPtr front_input(const FormulaPtr& f, long self,
                     const std::vector<LTermPtr>& self_args, long other,
                     const std::vector<LTermPtr>& other_args) {
  PrenexShape sh = classify(f);
  switch (sh.cls) {
    case PrenexClass::Qf:
    case PrenexClass::Sigma1:
      // Trivial input: the premise produces its own witnesses.
      return l_unit();
    case PrenexClass::Pi1:
      // The dual side produces the instance tuple directly.
      return l_apps(l_nt(other, 0), with_front(l_unit(), other_args));
    case PrenexClass::Pi2: {
      // The dual side computes the first-block tuple, given the function
      // that maps it to this side's second-block witnesses.
      int m = sh.first_block;
      std::vector<LTermPtr> ws;
      for (int j = 0; j < m; ++j) ws.push_back(l_tvar("w" + std::to_string(j), ty_o()));
      LTermPtr inner =
          l_apps(l_nt(self, 0), with_front(l_tuple(ws), self_args));
      for (int j = m; j-- > 0;)
        inner = l_lam("w" + std::to_string(j), ty_o(), inner);
      return l_apps(l_nt(other, 0), with_front(inner, other_args));
    }
    case PrenexClass::Sigma2: {
      // The input is the function from first-block witnesses to the dual
      // side's second-block instances.
      int m = sh.first_block;
      std::vector<LTermPtr> ws;
      for (int j = 0; j < m; ++j) ws.push_back(l_tvar("w" + std::to_string(j), ty_o()));
      LTermPtr body =
          l_apps(l_nt(other, 0), with_front(l_tuple(ws), other_args));
      for (int j = m; j-- > 0;)
        body = l_lam("w" + std::to_string(j), ty_o(), body);
      return body;
    }
    case PrenexClass::Other:
      throw InputError("grammar: formula outside the prenex classes: " +
                       show_formula(f));
  }
  throw InternalError("front_input: bad class");
}

struct Extractor {
  Grammar g;

  // Fresh parameter lists for a node with the given argument types.
  std::vector<LTermPtr> param_vars(const std::vector<std::string>& names,
                                   const std::vector<TypePtr>& tys) {
    std::vector<LTermPtr> out;
    for (size_t i = 0; i < names.size(); ++i)
      out.push_back(l_tvar(names[i], tys[i]));
    return out;
  }

  void add(long node, int index, bool destructure,
           std::vector<std::string> params, std::vector<TypePtr> ptys,
           LTermPtr rhs) {
    g.prods.push_back({node, index, destructure, std::move(params),
                       std::move(ptys), std::move(rhs)});
  }

  void visit(const ProofPtr& p) {
    NTInfo info;
    for (const auto& f : p->conclusion) {
      info.args.push_back(input_type(f));
      info.comps.push_back(value_type(f));
    }
    g.nts[p->id] = info;

    int n = static_cast<int>(p->conclusion.size());
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("y" + std::to_string(i));

    switch (p->rule) {
      case Rule::Axiom: {
        for (int i = 0; i < 2; ++i)
          add(p->id, i, false, names, info.args,
              l_tvar(names[1 - i], info.args[1 - i]));
        break;
      }
      case Rule::All: {
        long q = p->premises[0]->id;
        const std::string& eigen = p->eigen;
        PrenexShape sh = classify(p->conclusion[0]);
        TypePtr tail_ty = o_power(sh.first_block - 1);
        for (int i = 0; i < n; ++i) {
          if (g.mode == GrammarMode::ContextSensitive) {
            std::vector<std::string> ps{"z0", "z1"};
            std::vector<TypePtr> ptys{ty_o(), tail_ty};
            std::vector<LTermPtr> args{l_tvar("z1", tail_ty)};
            for (int j = 1; j < n; ++j) {
              ps.push_back(names[j]);
              ptys.push_back(info.args[j]);
              args.push_back(l_tvar(names[j], info.args[j]));
            }
            LTermPtr rhs = l_subst(l_apps(l_nt(q, i), args), eigen,
                                   l_tvar("z0", ty_o()));
            add(p->id, i, true, ps, ptys, rhs);
          } else {
            std::vector<LTermPtr> vars = param_vars(names, info.args);
            std::vector<LTermPtr> args{l_proj(1, vars[0])};
            for (int j = 1; j < n; ++j) args.push_back(vars[j]);
            LTermPtr rhs = l_subst(l_apps(l_nt(q, i), args), eigen,
                                   l_proj(0, vars[0]));
            add(p->id, i, false, names, info.args, rhs);
          }
        }
        break;
      }
      case Rule::Ex: {
        long q = p->premises[0]->id;
        LTermPtr wit = l_fo(p->witness);
        bool fn_input = classify(p->conclusion[0]).cls == PrenexClass::Sigma2;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        LTermPtr dotted = fn_input ? l_app(vars[0], wit) : vars[0];
        for (int i = 0; i < n; ++i) {
          std::vector<LTermPtr> args{dotted};
          for (int j = 1; j < n; ++j) args.push_back(vars[j]);
          LTermPtr body = l_apps(l_nt(q, i), args);
          LTermPtr rhs = i == 0 ? l_pair(wit, body) : body;
          add(p->id, i, false, names, info.args, rhs);
        }
        break;
      }
      case Rule::Cut: {
        const ProofPtr& l = p->premises[0];
        const ProofPtr& r = p->premises[1];
        int nl = static_cast<int>(l->conclusion.size()) - 1;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        std::vector<LTermPtr> largs(vars.begin(), vars.begin() + nl);
        std::vector<LTermPtr> rargs(vars.begin() + nl, vars.end());
        for (int i = 0; i < n; ++i) {
          LTermPtr rhs;
          if (i < nl) {
            LTermPtr in = front_input(l->conclusion[0], l->id, largs, r->id,
                                      rargs);
            rhs = l_apps(l_nt(l->id, i + 1), with_front(in, largs));
          } else {
            LTermPtr in = front_input(r->conclusion[0], r->id, rargs, l->id,
                                      largs);
            rhs = l_apps(l_nt(r->id, i - nl + 1), with_front(in, rargs));
          }
          add(p->id, i, false, names, info.args, rhs);
        }
        break;
      }
      case Rule::Contr: {
        long q = p->premises[0]->id;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        auto dup_args = [&](void) {
          std::vector<LTermPtr> args{vars[0], vars[0]};
          for (int j = 1; j < n; ++j) args.push_back(vars[j]);
          return args;
        };
        add(p->id, 0, false, names, info.args,
            l_apps(l_nt(q, 0), dup_args()));
        add(p->id, 0, false, names, info.args,
            l_apps(l_nt(q, 1), dup_args()));
        for (int i = 1; i < n; ++i)
          add(p->id, i, false, names, info.args,
              l_apps(l_nt(q, i + 1), dup_args()));
        break;
      }
      case Rule::Weak: {
        long q = p->premises[0]->id;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        int width = tuple_width(info.comps[0]);
        std::vector<LTermPtr> wcs(width, l_fo(mk_fun(kWeakeningConst, {})));
        add(p->id, 0, false, names, info.args, l_tuple(wcs));
        for (int i = 1; i < n; ++i) {
          std::vector<LTermPtr> args(vars.begin() + 1, vars.end());
          add(p->id, i, false, names, info.args, l_apps(l_nt(q, i - 1), args));
        }
        break;
      }
      case Rule::Perm: {
        long q = p->premises[0]->id;
        int pos = p->perm_pos;
        auto swap_ix = [&](int i) {
          return i == pos ? pos + 1 : i == pos + 1 ? pos : i;
        };
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        for (int i = 0; i < n; ++i) {
          std::vector<LTermPtr> args;
          for (int j = 0; j < n; ++j) args.push_back(vars[swap_ix(j)]);
          add(p->id, i, false, names, info.args,
              l_apps(l_nt(q, swap_ix(i)), args));
        }
        break;
      }
      case Rule::Or: {
        long q = p->premises[0]->id;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        add(p->id, 0, false, names, info.args, l_unit());
        for (int i = 1; i < n; ++i) {
          // Both disjunct slots receive the (empty-tuple-typed) argument.
          std::vector<LTermPtr> args{vars[0], vars[0]};
          for (int j = 1; j < n; ++j) args.push_back(vars[j]);
          add(p->id, i, false, names, info.args, l_apps(l_nt(q, i + 1), args));
        }
        break;
      }
      case Rule::And: {
        const ProofPtr& l = p->premises[0];
        const ProofPtr& r = p->premises[1];
        int nl = static_cast<int>(l->conclusion.size()) - 1;
        std::vector<LTermPtr> vars = param_vars(names, info.args);
        add(p->id, 0, false, names, info.args, l_unit());
        for (int i = 1; i < n; ++i) {
          std::vector<LTermPtr> args{vars[0]};
          LTermPtr rhs;
          if (i <= nl) {
            for (int j = 1; j <= nl; ++j) args.push_back(vars[j]);
            rhs = l_apps(l_nt(l->id, i), args);
          } else {
            for (int j = nl + 1; j < n; ++j) args.push_back(vars[j]);
            rhs = l_apps(l_nt(r->id, i - nl), args);
          }
          add(p->id, i, false, names, info.args, rhs);
        }
        break;
      }
    }
    for (const auto& q : p->premises) visit(q);
  }
};

}  // namespace

std::string grammar_mode_name(GrammarMode m) {
  return m == GrammarMode::ContextSensitive ? "context-sensitive"
                                            : "context-free";
}

std::optional<GrammarMode> grammar_mode_from_name(const std::string& n) {
  if (n == "context-sensitive" || n == "cs") return GrammarMode::ContextSensitive;
  if (n == "context-free" || n == "cf") return GrammarMode::ContextFree;
  return std::nullopt;
}

Grammar extract_grammar(const ProofPtr& p, GrammarMode mode) {
  Extractor e;
  e.g.mode = mode;
  e.g.root = p->id;
  e.g.end = p->conclusion;
  e.visit(p);
  return e.g;
}

TypePtr nt_full_type(const Grammar& g, long node, int index) {
  auto it = g.nts.find(node);
  if (it == g.nts.end())
    throw InternalError("unknown non-terminal node " + std::to_string(node));
  const NTInfo& info = it->second;
  if (index < 0 || index >= static_cast<int>(info.comps.size()))
    throw InternalError("unknown non-terminal component " +
                        std::to_string(index));
  TypePtr t = info.comps[index];
  for (size_t i = info.args.size(); i-- > 0;) t = ty_arrow(info.args[i], t);
  return t;
}

std::vector<std::string> grammar_type_errors(const Grammar& g) {
  std::vector<std::string> errors;
  NTTypeFn fn = [&](long node, int index) {
    return nt_full_type(g, node, index);
  };
  for (const Production& p : g.prods) {
    std::string where = "s[" + std::to_string(p.node) + ":" +
                        std::to_string(p.index) + "]";
    const NTInfo& info = g.nts.at(p.node);
    // Declared parameter types must agree with the argument slots.
    std::vector<TypePtr> expect;
    if (p.destructure) {
      if (info.args.empty() || info.args[0]->kind != TypeKind::Prod) {
        errors.push_back(where + ": destructuring a non-pair argument");
        continue;
      }
      expect.push_back(info.args[0]->a);
      expect.push_back(info.args[0]->b);
      for (size_t i = 1; i < info.args.size(); ++i)
        expect.push_back(info.args[i]);
    } else {
      expect = info.args;
    }
    if (expect.size() != p.param_types.size()) {
      errors.push_back(where + ": parameter count mismatch");
      continue;
    }
    bool ok = true;
    for (size_t i = 0; i < expect.size(); ++i)
      if (!type_equal(expect[i], p.param_types[i])) ok = false;
    if (!ok) {
      errors.push_back(where + ": parameter type mismatch");
      continue;
    }
    try {
      TypePtr got = lterm_type(p.rhs, fn);
      if (!type_equal(got, info.comps[p.index]))
        errors.push_back(where + ": right-hand side has type " +
                         show_type(got) + ", expected " +
                         show_type(info.comps[p.index]));
    } catch (const std::exception& ex) {
      errors.push_back(where + ": " + ex.what());
    }
  }
  return errors;
}

bool grammar_acyclic(const Grammar& g) {
  std::map<long, std::set<long>> deps;
  for (const Production& p : g.prods) {
    std::vector<std::pair<long, int>> nts;
    lterm_collect_nts(p.rhs, nts);
    for (auto [node, idx] : nts) deps[p.node].insert(node);
  }
  std::map<long, int> state;  // 0 unseen, 1 in progress, 2 done
  std::function<bool(long)> dfs = [&](long v) {
    int& s = state[v];
    if (s == 1) return false;
    if (s == 2) return true;
    s = 1;
    for (long w : deps[v])
      if (!dfs(w)) return false;
    s = 2;
    return true;
  };
  for (const auto& [v, _] : deps)
    if (!dfs(v)) return false;
  return true;
}

std::string dump_grammar(const Grammar& g) {
  std::string out;
  out += "mode: " + grammar_mode_name(g.mode) + "\n";
  out += "start: s[" + std::to_string(g.root) + "]\n";
  out += "end-sequent: " + show_sequent(g.end) + "\n";
  out += "non-terminals:\n";
  for (const auto& [node, info] : g.nts) {
    for (size_t i = 0; i < info.comps.size(); ++i) {
      out += "  s[" + std::to_string(node) + ":" + std::to_string(i) + "] : ";
      for (const auto& a : info.args) out += show_type(a) + " -> ";
      out += show_type(info.comps[i]) + "\n";
    }
  }
  out += "productions:\n";
  std::vector<const Production*> sorted;
  for (const auto& p : g.prods) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Production* a, const Production* b) {
                     return std::tie(a->node, a->index) <
                            std::tie(b->node, b->index);
                   });
  for (const Production* p : sorted) {
    out += "  s[" + std::to_string(p->node) + ":" + std::to_string(p->index) +
           "]";
    if (p->destructure) {
      out += " (" + p->params[0] + " * " + p->params[1] + ")";
      for (size_t i = 2; i < p->params.size(); ++i) out += " " + p->params[i];
    } else {
      for (const auto& s : p->params) out += " " + s;
    }
    out += " -> " + show_lterm(p->rhs) + "\n";
  }
  return out;
}

LTermPtr start_term(const Grammar& g, int index) {
  const NTInfo& info = g.nts.at(g.root);
  if (index < 0 || index >= static_cast<int>(info.comps.size()))
    throw InputError("start component out of range");
  std::vector<LTermPtr> args;
  for (const auto& a : info.args) {
    if (a->kind != TypeKind::Eps)
      throw InputError(
          "language enumeration requires a purely existential end-sequent");
    args.push_back(l_unit());
  }
  return l_apps(l_nt(g.root, index), args);
}

// ---------------------------------------------------------------------------
// Rewriting
// ---------------------------------------------------------------------------

namespace {

bool nt_spine(const LTermPtr& t, long& node, int& index,
              std::vector<LTermPtr>& args) {
  LTermPtr cur = t;
  std::vector<LTermPtr> rev;
  while (cur->kind == LKind::App) {
    rev.push_back(cur->b);
    cur = cur->a;
  }
  if (cur->kind != LKind::NT) return false;
  node = cur->node;
  index = cur->index;
  args.assign(rev.rbegin(), rev.rend());
  return true;
}

// Instantiate a production; null if a destructuring pattern does not match.
LTermPtr apply_production(const Production& p,
                          const std::vector<LTermPtr>& args) {
  std::map<std::string, LTermPtr> bind;
  if (p.destructure) {
    if (args.empty() || args[0]->kind != LKind::Pair) return nullptr;
    bind[p.params[0]] = args[0]->a;
    bind[p.params[1]] = args[0]->b;
    for (size_t j = 1; j < args.size(); ++j) bind[p.params[j + 1]] = args[j];
  } else {
    for (size_t j = 0; j < args.size(); ++j) bind[p.params[j]] = args[j];
  }
  return lsubst_tvar(p.rhs, bind);
}

// Index productions by (node, index) once per use.
struct ProdIndex {
  std::map<std::pair<long, int>, std::vector<const Production*>> by_nt;
  explicit ProdIndex(const Grammar& g) {
    for (const auto& p : g.prods) by_nt[{p.node, p.index}].push_back(&p);
  }
  const std::vector<const Production*>* find(long node, int index) const {
    auto it = by_nt.find({node, index});
    return it == by_nt.end() ? nullptr : &it->second;
  }
};

// Collect the successors of t.  Under Outermost, only the first position
// (preorder) with an applicable production is rewritten and `stop` is set:
// choices at distinct positions are independent, so resolving one position
// at a time reaches the same normal forms while avoiding the combinatorial
// blow-up of interleaving independent choices.  AllPositions rewrites
// everywhere and serves as the exhaustive reference for differential tests.
void rewrites_rec(const Grammar& g, const ProdIndex& ix, const LTermPtr& t,
                  const std::function<LTermPtr(const LTermPtr&)>& rebuild,
                  RewriteOrder order, std::vector<LTermPtr>& out, bool& stop) {
  if (stop) return;
  bool matched = false;
  long node;
  int index;
  std::vector<LTermPtr> args;
  if (nt_spine(t, node, index, args)) {
    auto nt = g.nts.find(node);
    if (nt != g.nts.end() && args.size() == nt->second.args.size()) {
      if (const auto* prods = ix.find(node, index)) {
        for (const Production* p : *prods) {
          LTermPtr res = apply_production(*p, args);
          if (res) {
            matched = true;
            out.push_back(beta_normalize(rebuild(res)));
          }
        }
      }
    }
  }
  if (order == RewriteOrder::Outermost && matched) {
    stop = true;
    return;
  }

  auto child = [&](const LTermPtr& sub,
                   const std::function<LTermPtr(const LTermPtr&)>& wrap) {
    if (stop) return;
    rewrites_rec(g, ix, sub,
                 [&](const LTermPtr& r) { return rebuild(wrap(r)); }, order,
                 out, stop);
  };
  switch (t->kind) {
    case LKind::App:
      child(t->a, [&](const LTermPtr& r) { return l_app(r, t->b); });
      child(t->b, [&](const LTermPtr& r) { return l_app(t->a, r); });
      break;
    case LKind::Pair:
      child(t->a, [&](const LTermPtr& r) { return l_pair(r, t->b); });
      child(t->b, [&](const LTermPtr& r) { return l_pair(t->a, r); });
      break;
    case LKind::Subst:
      child(t->a,
            [&](const LTermPtr& r) { return l_subst(r, t->name, t->b); });
      child(t->b,
            [&](const LTermPtr& r) { return l_subst(t->a, t->name, r); });
      break;
    case LKind::Lam:
      child(t->a, [&](const LTermPtr& r) { return l_lam(t->name, t->ty, r); });
      break;
    case LKind::Proj:
      child(t->a, [&](const LTermPtr& r) { return l_proj(t->pidx, r); });
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<LTermPtr> rewrite_step(const Grammar& g, const LTermPtr& t,
                                   RewriteOrder order) {
  ProdIndex ix(g);
  std::vector<LTermPtr> raw;
  bool stop = false;
  rewrites_rec(g, ix, t, [](const LTermPtr& r) { return r; }, order, raw,
               stop);
  std::set<std::string> seen;
  std::vector<LTermPtr> out;
  for (const auto& s : raw)
    if (seen.insert(lterm_key(s)).second) out.push_back(s);
  return out;
}

std::vector<LTermPtr> normal_forms(const Grammar& g, const LTermPtr& start,
                                   RewriteOrder order, EnumLimits limits) {
  ProdIndex ix(g);
  std::map<std::string, LTermPtr> nfs;
  std::set<std::string> visited;
  std::deque<LTermPtr> queue;
  LTermPtr s0 = beta_normalize(start);
  queue.push_back(s0);
  visited.insert(lterm_key(s0));
  size_t expanded = 0;
  while (!queue.empty()) {
    LTermPtr t = queue.front();
    queue.pop_front();
    if (++expanded > limits.max_states)
      throw LimitError("normal-form enumeration exceeded " +
                       std::to_string(limits.max_states) + " states");
    std::vector<LTermPtr> raw;
    bool stop = false;
    rewrites_rec(g, ix, t, [](const LTermPtr& r) { return r; }, order, raw,
                 stop);
    if (raw.empty()) {
      nfs.emplace(lterm_key(t), t);
      continue;
    }
    for (const auto& s : raw)
      if (visited.insert(lterm_key(s)).second) queue.push_back(s);
  }
  std::vector<LTermPtr> out;
  for (const auto& [k, v] : nfs) out.push_back(v);
  return out;
}

std::vector<LTermPtr> normal_forms_parallel(const Grammar& g,
                                            const LTermPtr& start,
                                            unsigned workers,
                                            RewriteOrder order,
                                            EnumLimits limits) {
  unsigned n =
      workers ? workers : std::max(2u, std::thread::hardware_concurrency());
  if (n < 2) return normal_forms(g, start, order, limits);
  ProdIndex ix(g);
  std::map<std::string, LTermPtr> nfs;
  std::set<std::string> visited;
  std::vector<LTermPtr> frontier;
  LTermPtr s0 = beta_normalize(start);
  frontier.push_back(s0);
  visited.insert(lterm_key(s0));
  size_t expanded = 0;
  while (!frontier.empty()) {
    expanded += frontier.size();
    if (expanded > limits.max_states)
      throw LimitError("normal-form enumeration exceeded " +
                       std::to_string(limits.max_states) + " states");
    // Per-slot successor lists, computed concurrently; each worker owns a
    // disjoint slice, all shared inputs are immutable.
    std::vector<std::vector<LTermPtr>> succ(frontier.size());
    size_t chunk = (frontier.size() + n - 1) / n;
    std::vector<std::future<void>> futs;
    for (size_t lo = 0; lo < frontier.size(); lo += chunk) {
      size_t hi = std::min(lo + chunk, frontier.size());
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (size_t i = lo; i < hi; ++i) {
          bool stop = false;
          rewrites_rec(g, ix, frontier[i],
                       [](const LTermPtr& r) { return r; }, order, succ[i],
                       stop);
        }
      }));
    }
    for (auto& f : futs) f.get();
    // The merge is a set union in slot order: the result cannot depend on
    // which worker finished first.
    std::vector<LTermPtr> next;
    for (size_t i = 0; i < frontier.size(); ++i) {
      if (succ[i].empty()) {
        nfs.emplace(lterm_key(frontier[i]), frontier[i]);
        continue;
      }
      for (const auto& s : succ[i])
        if (visited.insert(lterm_key(s)).second) next.push_back(s);
    }
    frontier = std::move(next);
  }
  std::vector<LTermPtr> out;
  out.reserve(nfs.size());
  for (const auto& [k, v] : nfs) out.push_back(v);
  return out;
}

LTermPtr sample_normal_form(const Grammar& g, LTermPtr t, std::mt19937_64& rng,
                            size_t max_steps) {
  t = beta_normalize(t);
  for (size_t step = 0; step < max_steps; ++step) {
    std::vector<LTermPtr> succ = rewrite_step(g, t, RewriteOrder::AllPositions);
    if (succ.empty()) return t;
    std::uniform_int_distribution<size_t> pick(0, succ.size() - 1);
    t = succ[pick(rng)];
  }
  throw LimitError("random derivation exceeded " + std::to_string(max_steps) +
                   " steps");
}

namespace {

LanguageResult language_from(
    const Grammar& g,
    const std::function<std::vector<LTermPtr>(const LTermPtr&)>& closure) {
  LanguageResult res;
  const NTInfo& info = g.nts.at(g.root);
  for (size_t i = 0; i < info.comps.size(); ++i) {
    LTermPtr start = start_term(g, static_cast<int>(i));
    for (const auto& nf : closure(start)) {
      if (lterm_contains_nt(nf)) {
        ++res.stuck;
        continue;
      }
      res.items.insert(
          make_witness_item(static_cast<int>(i), evaluate_substitutions(nf)));
    }
  }
  return res;
}

}  // namespace

LanguageResult language(const Grammar& g, RewriteOrder order,
                        EnumLimits limits) {
  return language_from(g, [&](const LTermPtr& s) {
    return normal_forms(g, s, order, limits);
  });
}

LanguageResult language_parallel(const Grammar& g, unsigned workers,
                                 RewriteOrder order, EnumLimits limits) {
  return language_from(g, [&](const LTermPtr& s) {
    return normal_forms_parallel(g, s, workers, order, limits);
  });
}

}  // namespace lkgram
