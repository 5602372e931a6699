// Structured lambda terms: construction, typing, normalization, evaluation.
#include "lkgram/lambda.hpp"

#include <optional>
#include <set>

namespace lkgram {

static LTermPtr mk(LTerm t) { return std::make_shared<LTerm>(std::move(t)); }

LTermPtr l_fo(const TermPtr& t) {
  LTerm x;
  x.kind = LKind::FO;
  x.fo = t;
  return mk(std::move(x));
}

LTermPtr l_unit() {
  static const LTermPtr u = [] {
    LTerm x;
    x.kind = LKind::Unit;
    return mk(std::move(x));
  }();
  return u;
}

LTermPtr l_pair(const LTermPtr& a, const LTermPtr& b) {
  LTerm x;
  x.kind = LKind::Pair;
  x.a = a;
  x.b = b;
  return mk(std::move(x));
}

LTermPtr l_subst(const LTermPtr& body, const std::string& eigen,
                 const LTermPtr& repl) {
  LTerm x;
  x.kind = LKind::Subst;
  x.a = body;
  x.b = repl;
  x.name = eigen;
  return mk(std::move(x));
}

LTermPtr l_lam(const std::string& var, const TypePtr& ty,
               const LTermPtr& body) {
  LTerm x;
  x.kind = LKind::Lam;
  x.a = body;
  x.name = var;
  x.ty = ty;
  return mk(std::move(x));
}

LTermPtr l_app(const LTermPtr& f, const LTermPtr& arg) {
  LTerm x;
  x.kind = LKind::App;
  x.a = f;
  x.b = arg;
  return mk(std::move(x));
}

LTermPtr l_tvar(const std::string& var, const TypePtr& ty) {
  LTerm x;
  x.kind = LKind::TVar;
  x.name = var;
  x.ty = ty;
  return mk(std::move(x));
}

LTermPtr l_nt(long node, int index) {
  LTerm x;
  x.kind = LKind::NT;
  x.node = node;
  x.index = index;
  return mk(std::move(x));
}

LTermPtr l_proj(int pidx, const LTermPtr& arg) {
  LTerm x;
  x.kind = LKind::Proj;
  x.a = arg;
  x.pidx = pidx;
  return mk(std::move(x));
}

LTermPtr l_tuple(const std::vector<LTermPtr>& parts) {
  LTermPtr t = l_unit();
  for (size_t i = parts.size(); i-- > 0;) t = l_pair(parts[i], t);
  return t;
}

LTermPtr l_apps(const LTermPtr& f, const std::vector<LTermPtr>& args) {
  LTermPtr t = f;
  for (const auto& a : args) t = l_app(t, a);
  return t;
}

bool lterm_equal(const LTermPtr& a, const LTermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LKind::FO:
      return term_equal(a->fo, b->fo);
    case LKind::Unit:
      return true;
    case LKind::Pair:
    case LKind::App:
      return lterm_equal(a->a, b->a) && lterm_equal(a->b, b->b);
    case LKind::Subst:
      return a->name == b->name && lterm_equal(a->a, b->a) &&
             lterm_equal(a->b, b->b);
    case LKind::Lam:
      return a->name == b->name && type_equal(a->ty, b->ty) &&
             lterm_equal(a->a, b->a);
    case LKind::TVar:
      return a->name == b->name;
    case LKind::NT:
      return a->node == b->node && a->index == b->index;
    case LKind::Proj:
      return a->pidx == b->pidx && lterm_equal(a->a, b->a);
  }
  throw InternalError("lterm_equal: bad kind");
}

static std::string show_rec(const LTermPtr& t,
                            const std::map<std::string, std::string>* rename) {
  auto var_name = [&](const std::string& n) {
    if (rename) {
      auto it = rename->find(n);
      if (it != rename->end()) return it->second;
    }
    return n;
  };
  switch (t->kind) {
    case LKind::FO:
      return show_term(t->fo);
    case LKind::Unit:
      return "<>";
    case LKind::Pair:
      return "(" + show_rec(t->a, rename) + " * " + show_rec(t->b, rename) +
             ")";
    case LKind::Subst:
      return show_rec(t->a, rename) + "[" + t->name +
             " := " + show_rec(t->b, rename) + "]";
    case LKind::Lam:
      return "(\\" + var_name(t->name) + ". " + show_rec(t->a, rename) + ")";
    case LKind::App:
      return "(" + show_rec(t->a, rename) + " " + show_rec(t->b, rename) + ")";
    case LKind::TVar:
      return var_name(t->name);
    case LKind::NT:
      return "s[" + std::to_string(t->node) + ":" + std::to_string(t->index) +
             "]";
    case LKind::Proj:
      return "p" + std::to_string(t->pidx) + "(" + show_rec(t->a, rename) +
             ")";
  }
  throw InternalError("show_rec: bad kind");
}

std::string show_lterm(const LTermPtr& t) { return show_rec(t, nullptr); }

static void key_rec(const LTermPtr& t, std::map<std::string, std::string>& ren,
                    int& counter, std::string& out) {
  switch (t->kind) {
    case LKind::FO:
      out += "t:" + show_term(t->fo);
      return;
    case LKind::Unit:
      out += "<>";
      return;
    case LKind::Pair:
      out += "P(";
      key_rec(t->a, ren, counter, out);
      out += ",";
      key_rec(t->b, ren, counter, out);
      out += ")";
      return;
    case LKind::Subst:
      out += "S[";
      key_rec(t->a, ren, counter, out);
      out += "/" + t->name + ":=";
      key_rec(t->b, ren, counter, out);
      out += "]";
      return;
    case LKind::Lam: {
      std::string fresh = "#" + std::to_string(counter++);
      auto saved = ren.find(t->name) != ren.end()
                       ? std::optional<std::string>(ren[t->name])
                       : std::nullopt;
      ren[t->name] = fresh;
      out += "L" + fresh + ".(";
      key_rec(t->a, ren, counter, out);
      out += ")";
      if (saved)
        ren[t->name] = *saved;
      else
        ren.erase(t->name);
      return;
    }
    case LKind::App:
      out += "A(";
      key_rec(t->a, ren, counter, out);
      out += " ";
      key_rec(t->b, ren, counter, out);
      out += ")";
      return;
    case LKind::TVar: {
      auto it = ren.find(t->name);
      out += "x" + (it != ren.end() ? it->second : ":" + t->name);
      return;
    }
    case LKind::NT:
      out += "s[" + std::to_string(t->node) + ":" + std::to_string(t->index) +
             "]";
      return;
    case LKind::Proj:
      out += "p" + std::to_string(t->pidx) + "(";
      key_rec(t->a, ren, counter, out);
      out += ")";
      return;
  }
}

std::string lterm_key(const LTermPtr& t) {
  std::map<std::string, std::string> ren;
  int counter = 0;
  std::string out;
  key_rec(t, ren, counter, out);
  return out;
}

bool lterm_contains_nt(const LTermPtr& t) {
  switch (t->kind) {
    case LKind::NT:
      return true;
    case LKind::FO:
    case LKind::Unit:
    case LKind::TVar:
      return false;
    case LKind::Pair:
    case LKind::App:
    case LKind::Subst:
      return lterm_contains_nt(t->a) || lterm_contains_nt(t->b);
    case LKind::Lam:
    case LKind::Proj:
      return lterm_contains_nt(t->a);
  }
  throw InternalError("lterm_contains_nt: bad kind");
}

void lterm_collect_nts(const LTermPtr& t,
                       std::vector<std::pair<long, int>>& out) {
  switch (t->kind) {
    case LKind::NT:
      out.emplace_back(t->node, t->index);
      return;
    case LKind::FO:
    case LKind::Unit:
    case LKind::TVar:
      return;
    case LKind::Pair:
    case LKind::App:
    case LKind::Subst:
      lterm_collect_nts(t->a, out);
      lterm_collect_nts(t->b, out);
      return;
    case LKind::Lam:
    case LKind::Proj:
      lterm_collect_nts(t->a, out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

static TypePtr type_rec(const LTermPtr& t, const NTTypeFn& nt_type,
                        std::map<std::string, TypePtr>& env) {
  switch (t->kind) {
    case LKind::FO:
      return ty_o();
    case LKind::Unit:
      return ty_eps();
    case LKind::Pair: {
      TypePtr a = type_rec(t->a, nt_type, env);
      TypePtr b = type_rec(t->b, nt_type, env);
      if (a->kind != TypeKind::O)
        throw InternalError("type: pair head must have base type, got " +
                            show_type(a));
      return ty_prod(a, b);
    }
    case LKind::Subst: {
      TypePtr r = type_rec(t->b, nt_type, env);
      if (r->kind != TypeKind::O)
        throw InternalError("type: substitution payload must have base type");
      return type_rec(t->a, nt_type, env);
    }
    case LKind::Lam: {
      auto saved = env.find(t->name) != env.end()
                       ? std::optional<TypePtr>(env[t->name])
                       : std::nullopt;
      env[t->name] = t->ty;
      TypePtr body = type_rec(t->a, nt_type, env);
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      return ty_arrow(t->ty, body);
    }
    case LKind::App: {
      TypePtr f = type_rec(t->a, nt_type, env);
      TypePtr x = type_rec(t->b, nt_type, env);
      if (f->kind != TypeKind::Arrow || !type_equal(f->a, x))
        throw InternalError("type: bad application of " + show_type(f) +
                            " to " + show_type(x) + " in " + show_lterm(t));
      return f->b;
    }
    case LKind::TVar: {
      auto it = env.find(t->name);
      if (it != env.end()) return it->second;
      if (t->ty) return t->ty;
      throw InternalError("type: unbound typed variable " + t->name);
    }
    case LKind::NT:
      return nt_type(t->node, t->index);
    case LKind::Proj: {
      TypePtr a = type_rec(t->a, nt_type, env);
      if (a->kind != TypeKind::Prod)
        throw InternalError("type: projection from non-product " +
                            show_type(a));
      return t->pidx == 0 ? a->a : a->b;
    }
  }
  throw InternalError("type_rec: bad kind");
}

TypePtr lterm_type(const LTermPtr& t, const NTTypeFn& nt_type) {
  std::map<std::string, TypePtr> env;
  return type_rec(t, nt_type, env);
}

// ---------------------------------------------------------------------------
// Substitution of typed variables, capture-avoiding
// ---------------------------------------------------------------------------

static void collect_free_tvars(const LTermPtr& t, std::set<std::string>& bound,
                               std::set<std::string>& out) {
  switch (t->kind) {
    case LKind::TVar:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case LKind::FO:
    case LKind::Unit:
    case LKind::NT:
      return;
    case LKind::Pair:
    case LKind::App:
    case LKind::Subst:
      collect_free_tvars(t->a, bound, out);
      collect_free_tvars(t->b, bound, out);
      return;
    case LKind::Proj:
      collect_free_tvars(t->a, bound, out);
      return;
    case LKind::Lam: {
      bool added = bound.insert(t->name).second;
      collect_free_tvars(t->a, bound, out);
      if (added) bound.erase(t->name);
      return;
    }
  }
}

static std::set<std::string> free_tvars(const LTermPtr& t) {
  std::set<std::string> bound, out;
  collect_free_tvars(t, bound, out);
  return out;
}

LTermPtr lsubst_tvar(const LTermPtr& t,
                     const std::map<std::string, LTermPtr>& sub) {
  if (sub.empty()) return t;
  switch (t->kind) {
    case LKind::FO:
    case LKind::Unit:
    case LKind::NT:
      return t;
    case LKind::TVar: {
      auto it = sub.find(t->name);
      return it != sub.end() ? it->second : t;
    }
    case LKind::Pair:
      return l_pair(lsubst_tvar(t->a, sub), lsubst_tvar(t->b, sub));
    case LKind::App:
      return l_app(lsubst_tvar(t->a, sub), lsubst_tvar(t->b, sub));
    case LKind::Subst:
      return l_subst(lsubst_tvar(t->a, sub), t->name,
                     lsubst_tvar(t->b, sub));
    case LKind::Proj:
      return l_proj(t->pidx, lsubst_tvar(t->a, sub));
    case LKind::Lam: {
      std::map<std::string, LTermPtr> inner = sub;
      inner.erase(t->name);
      if (inner.empty()) return t;
      // Rename the binder if any replacement captures it.
      std::set<std::string> avoid;
      for (const auto& [k, v] : inner) {
        (void)k;
        auto fv = free_tvars(v);
        avoid.insert(fv.begin(), fv.end());
      }
      std::string binder = t->name;
      LTermPtr body = t->a;
      if (avoid.count(binder)) {
        int k = 1;
        std::string fresh;
        do {
          fresh = binder + "~" + std::to_string(k++);
        } while (avoid.count(fresh));
        std::map<std::string, LTermPtr> ren{{binder, l_tvar(fresh, t->ty)}};
        body = lsubst_tvar(body, ren);
        binder = fresh;
      }
      return l_lam(binder, t->ty, lsubst_tvar(body, inner));
    }
  }
  throw InternalError("lsubst_tvar: bad kind");
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

LTermPtr beta_normalize(const LTermPtr& t) {
  switch (t->kind) {
    case LKind::FO:
    case LKind::Unit:
    case LKind::TVar:
    case LKind::NT:
      return t;
    case LKind::Pair: {
      LTermPtr a = beta_normalize(t->a);
      LTermPtr b = beta_normalize(t->b);
      return a == t->a && b == t->b ? t : l_pair(a, b);
    }
    case LKind::Lam: {
      LTermPtr body = beta_normalize(t->a);
      return body == t->a ? t : l_lam(t->name, t->ty, body);
    }
    case LKind::App: {
      LTermPtr f = beta_normalize(t->a);
      LTermPtr x = beta_normalize(t->b);
      if (f->kind == LKind::Lam) {
        std::map<std::string, LTermPtr> sub{{f->name, x}};
        return beta_normalize(lsubst_tvar(f->a, sub));
      }
      return f == t->a && x == t->b ? t : l_app(f, x);
    }
    case LKind::Proj: {
      LTermPtr a = beta_normalize(t->a);
      if (a->kind == LKind::Pair) return t->pidx == 0 ? a->a : a->b;
      return a == t->a ? t : l_proj(t->pidx, a);
    }
    case LKind::Subst: {
      LTermPtr body = beta_normalize(t->a);
      LTermPtr repl = beta_normalize(t->b);
      // Distribute over tuple structure; keep on other heads. Never pushed
      // under lambda.
      if (body->kind == LKind::Unit) return body;
      if (body->kind == LKind::Pair)
        return l_pair(beta_normalize(l_subst(body->a, t->name, repl)),
                      beta_normalize(l_subst(body->b, t->name, repl)));
      return body == t->a && repl == t->b ? t
                                          : l_subst(body, t->name, repl);
    }
  }
  throw InternalError("beta_normalize: bad kind");
}

// ---------------------------------------------------------------------------
// Evaluation of delayed substitutions
// ---------------------------------------------------------------------------

TermPtr evaluate_substitutions_o(const LTermPtr& t) {
  switch (t->kind) {
    case LKind::FO:
      return t->fo;
    case LKind::Subst: {
      TermPtr body = evaluate_substitutions_o(t->a);
      TermPtr repl = evaluate_substitutions_o(t->b);
      return term_subst_var(body, t->name, repl);
    }
    case LKind::NT:
      throw InputError("non-ground: residual non-terminal in " +
                       show_lterm(t));
    case LKind::TVar:
      throw InputError("non-ground: residual typed variable in " +
                       show_lterm(t));
    default:
      throw InputError("non-ground: unevaluable head in " + show_lterm(t));
  }
}

std::vector<TermPtr> evaluate_substitutions(const LTermPtr& t) {
  LTermPtr cur = beta_normalize(t);
  std::vector<TermPtr> out;
  while (cur->kind != LKind::Unit) {
    if (cur->kind != LKind::Pair)
      throw InputError("non-ground: expected a tuple, found " +
                       show_lterm(cur));
    out.push_back(evaluate_substitutions_o(cur->a));
    cur = cur->b;
  }
  return out;
}

}  // namespace lkgram
