// Implementation of first-order terms, formulas, prenex classification,
// sequents, and simple types.
#include "lkgram/term_core.hpp"

#include <map>
#include <sstream>

namespace lkgram {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

TermPtr mk_var(const std::string& name) {
  return std::make_shared<Term>(Term{TermKind::Var, name, {}});
}

TermPtr mk_bound(const std::string& name) {
  return std::make_shared<Term>(Term{TermKind::Bound, name, {}});
}

TermPtr mk_fun(const std::string& name, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{TermKind::Fun, name, std::move(args)});
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string show_term(const TermPtr& t) {
  if (t->kind != TermKind::Fun || t->args.empty()) return t->name;
  std::string out = t->name + "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ",";
    out += show_term(t->args[i]);
  }
  return out + ")";
}

bool term_contains_var(const TermPtr& t, const std::string& name) {
  if (t->kind == TermKind::Var) return t->name == name;
  for (const auto& a : t->args)
    if (term_contains_var(a, name)) return true;
  return false;
}

bool term_contains_bound(const TermPtr& t, const std::string& name) {
  if (t->kind == TermKind::Bound) return t->name == name;
  for (const auto& a : t->args)
    if (term_contains_bound(a, name)) return true;
  return false;
}

TermPtr term_subst_var(const TermPtr& t, const std::string& name,
                       const TermPtr& r) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == name ? r : t;
    case TermKind::Bound:
      return t;
    case TermKind::Fun: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) {
        args.push_back(term_subst_var(a, name, r));
        changed = changed || args.back() != a;
      }
      return changed ? mk_fun(t->name, std::move(args)) : t;
    }
  }
  throw InternalError("term_subst_var: bad kind");
}

TermPtr term_abstract(const TermPtr& t, const TermPtr& target,
                      const std::string& bname) {
  if (term_equal(t, target)) return mk_bound(bname);
  if (t->kind != TermKind::Fun) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(term_abstract(a, target, bname));
  return mk_fun(t->name, std::move(args));
}

bool term_ground(const TermPtr& t) {
  if (t->kind != TermKind::Fun) return false;
  for (const auto& a : t->args)
    if (!term_ground(a)) return false;
  return true;
}

void term_collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Var || t->kind == TermKind::Bound)
    out.insert(t->name);
  for (const auto& a : t->args) term_collect_vars(a, out);
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

static FormulaPtr mk_formula(Formula f) {
  return std::make_shared<Formula>(std::move(f));
}

FormulaPtr mk_atom(const std::string& pred, std::vector<TermPtr> args) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.pred = pred;
  f.args = std::move(args);
  return mk_formula(std::move(f));
}

FormulaPtr mk_negatom(const std::string& pred, std::vector<TermPtr> args) {
  Formula f;
  f.kind = FormulaKind::NegAtom;
  f.pred = pred;
  f.args = std::move(args);
  return mk_formula(std::move(f));
}

FormulaPtr mk_or(const FormulaPtr& a, const FormulaPtr& b) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.lhs = a;
  f.rhs = b;
  return mk_formula(std::move(f));
}

FormulaPtr mk_and(const FormulaPtr& a, const FormulaPtr& b) {
  Formula f;
  f.kind = FormulaKind::And;
  f.lhs = a;
  f.rhs = b;
  return mk_formula(std::move(f));
}

FormulaPtr mk_all(const std::string& var, const FormulaPtr& body) {
  Formula f;
  f.kind = FormulaKind::All;
  f.var = var;
  f.body = body;
  return mk_formula(std::move(f));
}

FormulaPtr mk_ex(const std::string& var, const FormulaPtr& body) {
  Formula f;
  f.kind = FormulaKind::Ex;
  f.var = var;
  f.body = body;
  return mk_formula(std::move(f));
}

FormulaPtr dual(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return mk_negatom(f->pred, f->args);
    case FormulaKind::NegAtom:
      return mk_atom(f->pred, f->args);
    case FormulaKind::Or:
      return mk_and(dual(f->lhs), dual(f->rhs));
    case FormulaKind::And:
      return mk_or(dual(f->lhs), dual(f->rhs));
    case FormulaKind::All:
      return mk_ex(f->var, dual(f->body));
    case FormulaKind::Ex:
      return mk_all(f->var, dual(f->body));
  }
  throw InternalError("dual: bad kind");
}

// Alpha equality via paired binder environments.
using BinderEnv = std::vector<std::pair<std::string, std::string>>;

static bool term_alpha(const TermPtr& a, const TermPtr& b,
                       const BinderEnv& env) {
  if (a->kind != b->kind) return false;
  if (a->kind == TermKind::Bound) {
    // Innermost binding wins.
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == a->name || it->second == b->name)
        return it->first == a->name && it->second == b->name;
    }
    return a->name == b->name;  // both unbound in the compared fragment
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_alpha(a->args[i], b->args[i], env)) return false;
  return true;
}

static bool formula_alpha(const FormulaPtr& a, const FormulaPtr& b,
                          BinderEnv& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_alpha(a->args[i], b->args[i], env)) return false;
      return true;
    }
    case FormulaKind::Or:
    case FormulaKind::And:
      return formula_alpha(a->lhs, b->lhs, env) &&
             formula_alpha(a->rhs, b->rhs, env);
    case FormulaKind::All:
    case FormulaKind::Ex: {
      env.emplace_back(a->var, b->var);
      bool ok = formula_alpha(a->body, b->body, env);
      env.pop_back();
      return ok;
    }
  }
  throw InternalError("formula_alpha: bad kind");
}

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  BinderEnv env;
  return formula_alpha(a, b, env);
}

static void term_key(const TermPtr& t,
                     const std::vector<std::string>& binders,
                     std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
      out += "v:" + t->name;
      return;
    case TermKind::Bound: {
      for (size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == t->name) {
          out += "b:" + std::to_string(binders.size() - 1 - i);
          return;
        }
      }
      out += "B:" + t->name;  // stray bound variable; keep distinguishable
      return;
    }
    case TermKind::Fun: {
      out += "f:" + t->name + "(";
      for (const auto& a : t->args) {
        term_key(a, binders, out);
        out += ",";
      }
      out += ")";
      return;
    }
  }
}

static void formula_key_rec(const FormulaPtr& f,
                            std::vector<std::string>& binders,
                            std::string& out) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      out += f->kind == FormulaKind::Atom ? "A:" : "N:";
      out += f->pred + "(";
      for (const auto& a : f->args) {
        term_key(a, binders, out);
        out += ",";
      }
      out += ")";
      return;
    }
    case FormulaKind::Or:
    case FormulaKind::And:
      out += f->kind == FormulaKind::Or ? "|(" : "&(";
      formula_key_rec(f->lhs, binders, out);
      out += ",";
      formula_key_rec(f->rhs, binders, out);
      out += ")";
      return;
    case FormulaKind::All:
    case FormulaKind::Ex: {
      out += f->kind == FormulaKind::All ? "!(" : "?(";
      binders.push_back(f->var);
      formula_key_rec(f->body, binders, out);
      binders.pop_back();
      out += ")";
      return;
    }
  }
}

std::string formula_key(const FormulaPtr& f) {
  std::string out;
  std::vector<std::string> binders;
  formula_key_rec(f, binders, out);
  return out;
}

std::string show_term_sexpr(const TermPtr& t) {
  if (t->kind != TermKind::Fun || t->args.empty()) return t->name;
  std::string out = "(fn " + t->name;
  for (const auto& a : t->args) out += " " + show_term_sexpr(a);
  return out + ")";
}

std::string show_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      std::string atom = "(atom " + f->pred;
      for (const auto& a : f->args) atom += " " + show_term_sexpr(a);
      atom += ")";
      return f->kind == FormulaKind::Atom ? atom : "(neg " + atom + ")";
    }
    case FormulaKind::Or:
      return "(or " + show_formula(f->lhs) + " " + show_formula(f->rhs) + ")";
    case FormulaKind::And:
      return "(and " + show_formula(f->lhs) + " " + show_formula(f->rhs) + ")";
    case FormulaKind::All:
      return "(all " + f->var + " " + show_formula(f->body) + ")";
    case FormulaKind::Ex:
      return "(ex " + f->var + " " + show_formula(f->body) + ")";
  }
  throw InternalError("show_formula: bad kind");
}

static TermPtr term_subst_bound(const TermPtr& t, const std::string& var,
                                const TermPtr& r) {
  if (t->kind == TermKind::Bound && t->name == var) return r;
  if (t->kind != TermKind::Fun) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(term_subst_bound(a, var, r));
  return mk_fun(t->name, std::move(args));
}

FormulaPtr instantiate(const FormulaPtr& f, const std::string& var,
                       const TermPtr& t) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(term_subst_bound(a, var, t));
      return f->kind == FormulaKind::Atom ? mk_atom(f->pred, std::move(args))
                                          : mk_negatom(f->pred, std::move(args));
    }
    case FormulaKind::Or:
      return mk_or(instantiate(f->lhs, var, t), instantiate(f->rhs, var, t));
    case FormulaKind::And:
      return mk_and(instantiate(f->lhs, var, t), instantiate(f->rhs, var, t));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      if (f->var == var) return f;  // shadowed
      FormulaPtr body = instantiate(f->body, var, t);
      return f->kind == FormulaKind::All ? mk_all(f->var, body)
                                         : mk_ex(f->var, body);
    }
  }
  throw InternalError("instantiate: bad kind");
}

FormulaPtr formula_subst_var(const FormulaPtr& f, const std::string& name,
                             const TermPtr& r) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(term_subst_var(a, name, r));
      return f->kind == FormulaKind::Atom ? mk_atom(f->pred, std::move(args))
                                          : mk_negatom(f->pred, std::move(args));
    }
    case FormulaKind::Or:
      return mk_or(formula_subst_var(f->lhs, name, r),
                   formula_subst_var(f->rhs, name, r));
    case FormulaKind::And:
      return mk_and(formula_subst_var(f->lhs, name, r),
                    formula_subst_var(f->rhs, name, r));
    case FormulaKind::All:
      return mk_all(f->var, formula_subst_var(f->body, name, r));
    case FormulaKind::Ex:
      return mk_ex(f->var, formula_subst_var(f->body, name, r));
  }
  throw InternalError("formula_subst_var: bad kind");
}

bool formula_contains_var(const FormulaPtr& f, const std::string& name) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      for (const auto& a : f->args)
        if (term_contains_var(a, name)) return true;
      return false;
    case FormulaKind::Or:
    case FormulaKind::And:
      return formula_contains_var(f->lhs, name) ||
             formula_contains_var(f->rhs, name);
    case FormulaKind::All:
    case FormulaKind::Ex:
      return formula_contains_var(f->body, name);
  }
  throw InternalError("formula_contains_var: bad kind");
}

void formula_collect_vars(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      for (const auto& a : f->args) term_collect_vars(a, out);
      return;
    case FormulaKind::Or:
    case FormulaKind::And:
      formula_collect_vars(f->lhs, out);
      formula_collect_vars(f->rhs, out);
      return;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out.insert(f->var);
      formula_collect_vars(f->body, out);
      return;
  }
}

bool quantifier_free(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return true;
    case FormulaKind::Or:
    case FormulaKind::And:
      return quantifier_free(f->lhs) && quantifier_free(f->rhs);
    case FormulaKind::All:
    case FormulaKind::Ex:
      return false;
  }
  throw InternalError("quantifier_free: bad kind");
}

// ---------------------------------------------------------------------------
// Prenex classification
// ---------------------------------------------------------------------------

PrenexShape classify(const FormulaPtr& f) {
  // Peel the quantifier prefix.
  std::vector<FormulaKind> prefix;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::All || cur->kind == FormulaKind::Ex) {
    prefix.push_back(cur->kind);
    cur = cur->body;
  }
  PrenexShape shape;
  if (!quantifier_free(cur)) return shape;  // Other: not prenex
  if (prefix.empty()) {
    shape.cls = PrenexClass::Qf;
    return shape;
  }
  size_t i = 0;
  FormulaKind first = prefix[0];
  while (i < prefix.size() && prefix[i] == first) ++i;
  size_t j = i;
  if (j < prefix.size()) {
    FormulaKind second = prefix[j];
    while (j < prefix.size() && prefix[j] == second) ++j;
  }
  if (j < prefix.size()) return shape;  // three alternations: Other
  shape.first_block = static_cast<int>(i);
  shape.second_block = static_cast<int>(prefix.size() - i);
  if (shape.second_block == 0) {
    shape.cls = first == FormulaKind::Ex ? PrenexClass::Sigma1 : PrenexClass::Pi1;
  } else {
    shape.cls = first == FormulaKind::Ex ? PrenexClass::Sigma2 : PrenexClass::Pi2;
  }
  return shape;
}

bool in_sigma2(const FormulaPtr& f) {
  PrenexClass c = classify(f).cls;
  return c == PrenexClass::Qf || c == PrenexClass::Sigma1 ||
         c == PrenexClass::Pi1 || c == PrenexClass::Sigma2;
}

bool in_pi2(const FormulaPtr& f) {
  PrenexClass c = classify(f).cls;
  return c == PrenexClass::Qf || c == PrenexClass::Sigma1 ||
         c == PrenexClass::Pi1 || c == PrenexClass::Pi2;
}

bool in_sigma1(const FormulaPtr& f) {
  PrenexClass c = classify(f).cls;
  return c == PrenexClass::Qf || c == PrenexClass::Sigma1;
}

bool genuine_pi2(const FormulaPtr& f) {
  return classify(f).cls == PrenexClass::Pi2;
}

bool genuine_sigma2(const FormulaPtr& f) {
  return classify(f).cls == PrenexClass::Sigma2;
}

std::vector<std::string> leading_exists(const FormulaPtr& f) {
  std::vector<std::string> vars;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::Ex) {
    vars.push_back(cur->var);
    cur = cur->body;
  }
  return vars;
}

// ---------------------------------------------------------------------------
// Sequents
// ---------------------------------------------------------------------------

bool sequent_equal(const Sequent& a, const Sequent& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!alpha_equal(a[i], b[i])) return false;
  return true;
}

std::string show_sequent(const Sequent& s) {
  std::string out = "(seq";
  for (const auto& f : s) out += " " + show_formula(f);
  return out + ")";
}

// ---------------------------------------------------------------------------
// Simple types
// ---------------------------------------------------------------------------

TypePtr ty_o() {
  static const TypePtr t = std::make_shared<SType>(SType{TypeKind::O, {}, {}});
  return t;
}

TypePtr ty_eps() {
  static const TypePtr t =
      std::make_shared<SType>(SType{TypeKind::Eps, {}, {}});
  return t;
}

TypePtr ty_prod(const TypePtr& a, const TypePtr& b) {
  return std::make_shared<SType>(SType{TypeKind::Prod, a, b});
}

TypePtr ty_arrow(const TypePtr& a, const TypePtr& b) {
  return std::make_shared<SType>(SType{TypeKind::Arrow, a, b});
}

TypePtr o_power(int k) {
  TypePtr t = ty_eps();
  for (int i = 0; i < k; ++i) t = ty_prod(ty_o(), t);
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::O:
    case TypeKind::Eps:
      return true;
    case TypeKind::Prod:
    case TypeKind::Arrow:
      return type_equal(a->a, b->a) && type_equal(a->b, b->b);
  }
  throw InternalError("type_equal: bad kind");
}

std::string show_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::O:
      return "o";
    case TypeKind::Eps:
      return "eps";
    case TypeKind::Prod: {
      // Print pure powers of o compactly.
      int k = 0;
      TypePtr cur = t;
      while (cur->kind == TypeKind::Prod && cur->a->kind == TypeKind::O) {
        ++k;
        cur = cur->b;
      }
      if (cur->kind == TypeKind::Eps) return "o^" + std::to_string(k);
      return "(" + show_type(t->a) + " x " + show_type(t->b) + ")";
    }
    case TypeKind::Arrow:
      return "(" + show_type(t->a) + " -> " + show_type(t->b) + ")";
  }
  throw InternalError("show_type: bad kind");
}

int type_order(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::O:
    case TypeKind::Eps:
      return 0;
    case TypeKind::Prod:
      return std::max(type_order(t->a), type_order(t->b));
    case TypeKind::Arrow:
      return std::max(type_order(t->a) + 1, type_order(t->b));
  }
  throw InternalError("type_order: bad kind");
}

int tuple_width(const TypePtr& t) {
  int k = 0;
  TypePtr cur = t;
  while (cur->kind == TypeKind::Prod) {
    ++k;
    cur = cur->b;
  }
  if (cur->kind != TypeKind::Eps)
    throw InternalError("tuple_width: not a finite product of o");
  return k;
}

TypePtr value_type(const FormulaPtr& f) {
  PrenexShape s = classify(f);
  switch (s.cls) {
    case PrenexClass::Qf:
      return ty_eps();
    case PrenexClass::Sigma1:
      return o_power(s.first_block);
    case PrenexClass::Pi1:
      return ty_eps();
    case PrenexClass::Pi2:
      return o_power(s.second_block);
    case PrenexClass::Sigma2:
      return o_power(s.first_block);
    case PrenexClass::Other:
      break;
  }
  throw InputError("value_type: formula outside the prenex two-quantifier "
                   "classes: " + show_formula(f));
}

TypePtr input_type(const FormulaPtr& f) {
  PrenexShape s = classify(f);
  switch (s.cls) {
    case PrenexClass::Qf:
      return ty_eps();
    case PrenexClass::Sigma1:
      return ty_eps();
    case PrenexClass::Pi1:
      return o_power(s.first_block);
    case PrenexClass::Pi2:
      return o_power(s.first_block);
    case PrenexClass::Sigma2: {
      TypePtr t = o_power(s.second_block);
      for (int i = 0; i < s.first_block; ++i) t = ty_arrow(ty_o(), t);
      return t;
    }
    case PrenexClass::Other:
      break;
  }
  throw InputError("input_type: formula outside the prenex two-quantifier "
                   "classes: " + show_formula(f));
}

}  // namespace lkgram
