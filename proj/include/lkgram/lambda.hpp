// Structured lambda terms: the right-hand-side language of the proof
// grammars. Simply typed over the base sort, with finite tuples, explicit
// (delayed) first-order substitutions, and non-terminal heads.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lkgram/term_core.hpp"

namespace lkgram {

// FO     embedded first-order term (type o)
// Unit   empty tuple ⟨⟩ (type eps)
// Pair   s ⋆ t (type o × ...)
// Subst  t[α := u], explicit substitution for the eigenvariable α
// Lam    λx:T. t
// App    s t
// TVar   typed variable bound by Lam (namespace disjoint from first-order
//        variables; those only occur inside FO leaves and Subst payloads)
// NT     non-terminal, identified by (proof node id, conclusion index)
// Proj   p0/p1, tuple projections (context-free extraction mode only)
enum class LKind { FO, Unit, Pair, Subst, Lam, App, TVar, NT, Proj };

struct LTerm;
using LTermPtr = std::shared_ptr<const LTerm>;

struct LTerm {
  LKind kind;
  TermPtr fo;        // FO
  LTermPtr a, b;     // Pair(a,b) App(fn=a,arg=b) Subst(body=a,repl=b)
                     // Lam(body=a) Proj(arg=a)
  std::string name;  // Subst: eigenvariable; Lam/TVar: variable name
  TypePtr ty;        // Lam: binder type; TVar: variable type
  long node = -1;    // NT
  int index = -1;    // NT
  int pidx = -1;     // Proj: 0 or 1
};

LTermPtr l_fo(const TermPtr& t);
LTermPtr l_unit();
LTermPtr l_pair(const LTermPtr& a, const LTermPtr& b);
LTermPtr l_subst(const LTermPtr& body, const std::string& eigen,
                 const LTermPtr& repl);
LTermPtr l_lam(const std::string& var, const TypePtr& ty,
               const LTermPtr& body);
LTermPtr l_app(const LTermPtr& f, const LTermPtr& arg);
LTermPtr l_tvar(const std::string& var, const TypePtr& ty);
LTermPtr l_nt(long node, int index);
LTermPtr l_proj(int pidx, const LTermPtr& arg);
// Right-nested tuple ⟨t0, ..., tk⟩ ending in Unit.
LTermPtr l_tuple(const std::vector<LTermPtr>& parts);
LTermPtr l_apps(const LTermPtr& f, const std::vector<LTermPtr>& args);

bool lterm_equal(const LTermPtr& a, const LTermPtr& b);
// Human-readable form, deterministic.
std::string show_lterm(const LTermPtr& t);
// Canonical key: lambda binders numbered by traversal order, so terms equal
// up to binder renaming get the same key.
std::string lterm_key(const LTermPtr& t);
bool lterm_contains_nt(const LTermPtr& t);
void lterm_collect_nts(const LTermPtr& t,
                       std::vector<std::pair<long, int>>& out);

// Type of a non-terminal, queried by (node id, index).
using NTTypeFn = std::function<TypePtr(long, int)>;

// Church-style type computation; throws InternalError on ill-typed input.
TypePtr lterm_type(const LTermPtr& t, const NTTypeFn& nt_type);

// Capture-avoiding substitution of typed variables (beta contraction).
LTermPtr lsubst_tvar(const LTermPtr& t,
                     const std::map<std::string, LTermPtr>& sub);

// Normalization: beta steps, tuple projections, and distribution of explicit
// substitutions over pairs and the empty tuple. Substitutions are never
// pushed under lambda; on other heads they stay in place.
LTermPtr beta_normalize(const LTermPtr& t);

// Evaluate the delayed substitutions of a normalized, non-terminal-free term
// of tuple type; innermost substitutions are applied first. Throws
// InputError("non-ground ...") if a typed variable, lambda, or non-terminal
// remains.
std::vector<TermPtr> evaluate_substitutions(const LTermPtr& t);
// Same for a single component of base type.
TermPtr evaluate_substitutions_o(const LTermPtr& t);

}  // namespace lkgram
