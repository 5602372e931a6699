// Input syntax: s-expression reader, term/formula/proof elaboration,
// canonical printing.
#include <cctype>
#include <functional>
#include <sstream>

#include "lkgram/lk_kernel.hpp"

namespace lkgram {

namespace {

// ---------------------------------------------------------------------------
// S-expressions
// ---------------------------------------------------------------------------

struct SExpr {
  bool is_atom = false;
  std::string text;         // atom payload
  std::vector<SExpr> items; // list payload
  int line = 0;

  const SExpr& at(size_t i) const {
    if (is_atom || i >= items.size())
      throw ParseError("line " + std::to_string(line) +
                       ": expected a longer list");
    return items[i];
  }
  std::string head() const {
    if (is_atom || items.empty() || !items[0].is_atom) return "";
    return items[0].text;
  }
  size_t size() const { return items.size(); }
};

struct Reader {
  const std::string& src;
  size_t pos = 0;
  int line = 1;

  explicit Reader(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ';') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line;
        ++pos;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_ws();
    if (pos >= src.size())
      throw ParseError("line " + std::to_string(line) + ": unexpected end");
    SExpr e;
    e.line = line;
    if (src[pos] == '(') {
      ++pos;
      while (true) {
        skip_ws();
        if (pos >= src.size())
          throw ParseError("line " + std::to_string(e.line) +
                           ": unclosed list");
        if (src[pos] == ')') {
          ++pos;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (src[pos] == ')')
      throw ParseError("line " + std::to_string(line) + ": stray ')'");
    e.is_atom = true;
    size_t start = pos;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != ';')
      ++pos;
    e.text = src.substr(start, pos - start);
    return e;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
};

// ---------------------------------------------------------------------------
// Terms and formulas
// ---------------------------------------------------------------------------

using Scope = std::vector<std::string>;  // bound variables, innermost last

bool in_scope(const Scope& sc, const std::string& n) {
  for (const auto& s : sc)
    if (s == n) return true;
  return false;
}

TermPtr parse_term(const SExpr& e, const Signature& sig, const Scope& sc) {
  if (e.is_atom) {
    const std::string& n = e.text;
    if (in_scope(sc, n)) return mk_bound(n);
    auto it = sig.funs.find(n);
    if (it != sig.funs.end()) {
      if (it->second != 0)
        throw ParseError("line " + std::to_string(e.line) + ": function " +
                         n + " expects " + std::to_string(it->second) +
                         " arguments");
      return mk_fun(n);
    }
    if (n == kWeakeningConst) return mk_fun(n);
    return mk_var(n);
  }
  if (e.head() != "fn" || e.size() < 2)
    throw ParseError("line " + std::to_string(e.line) +
                     ": expected a term, found " +
                     (e.head().empty() ? "a list" : "(" + e.head() + " ...)"));
  const std::string& f = e.at(1).is_atom
                             ? e.at(1).text
                             : throw ParseError("line " +
                                                std::to_string(e.line) +
                                                ": function name expected");
  auto it = sig.funs.find(f);
  if (it == sig.funs.end())
    throw ParseError("line " + std::to_string(e.line) +
                     ": undeclared function " + f);
  std::vector<TermPtr> args;
  for (size_t i = 2; i < e.size(); ++i)
    args.push_back(parse_term(e.at(i), sig, sc));
  if (static_cast<int>(args.size()) != it->second)
    throw ParseError("line " + std::to_string(e.line) + ": function " + f +
                     " expects " + std::to_string(it->second) + " arguments");
  return mk_fun(f, std::move(args));
}

FormulaPtr parse_formula(const SExpr& e, const Signature& sig, Scope& sc) {
  if (e.is_atom)
    throw ParseError("line " + std::to_string(e.line) +
                     ": expected a formula");
  const std::string h = e.head();
  if (h == "atom") {
    if (e.size() < 2 || !e.at(1).is_atom)
      throw ParseError("line " + std::to_string(e.line) + ": bad atom");
    const std::string& p = e.at(1).text;
    auto it = sig.preds.find(p);
    if (it == sig.preds.end())
      throw ParseError("line " + std::to_string(e.line) +
                       ": undeclared predicate " + p);
    std::vector<TermPtr> args;
    for (size_t i = 2; i < e.size(); ++i)
      args.push_back(parse_term(e.at(i), sig, sc));
    if (static_cast<int>(args.size()) != it->second)
      throw ParseError("line " + std::to_string(e.line) + ": predicate " + p +
                       " expects " + std::to_string(it->second) +
                       " arguments");
    return mk_atom(p, std::move(args));
  }
  if (h == "neg") {
    if (e.size() != 2)
      throw ParseError("line " + std::to_string(e.line) + ": bad negation");
    FormulaPtr inner = parse_formula(e.at(1), sig, sc);
    if (inner->kind != FormulaKind::Atom)
      throw ParseError("line " + std::to_string(e.line) +
                       ": negation applies to atoms only");
    return mk_negatom(inner->pred, inner->args);
  }
  if (h == "or" || h == "and") {
    if (e.size() != 3)
      throw ParseError("line " + std::to_string(e.line) + ": bad " + h);
    FormulaPtr a = parse_formula(e.at(1), sig, sc);
    FormulaPtr b = parse_formula(e.at(2), sig, sc);
    return h == "or" ? mk_or(a, b) : mk_and(a, b);
  }
  if (h == "all" || h == "ex") {
    if (e.size() != 3 || !e.at(1).is_atom)
      throw ParseError("line " + std::to_string(e.line) + ": bad " + h);
    const std::string& v = e.at(1).text;
    sc.push_back(v);
    FormulaPtr body = parse_formula(e.at(2), sig, sc);
    sc.pop_back();
    return h == "all" ? mk_all(v, body) : mk_ex(v, body);
  }
  throw ParseError("line " + std::to_string(e.line) +
                   ": unknown formula head '" + h + "'");
}

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

// Insert adjacent swaps that move position `from` to the front.
ProofPtr bring_to_front(const ProofPtr& p, int from, IdGen& ids) {
  ProofPtr cur = p;
  for (int i = from - 1; i >= 0; --i) cur = mk_perm(i, cur, ids);
  return cur;
}

ProofPtr parse_proof(const SExpr& e, const Signature& sig, IdGen& ids) {
  if (e.is_atom)
    throw ParseError("line " + std::to_string(e.line) + ": expected a proof");
  const std::string h = e.head();
  Scope sc;
  try {
    if (h == "ax") {
      if (e.size() != 2)
        throw ParseError("line " + std::to_string(e.line) + ": bad ax");
      FormulaPtr a = parse_formula(e.at(1), sig, sc);
      return mk_axiom(a, ids);
    }
    if (h == "or-intro") {
      if (e.size() != 2)
        throw ParseError("line " + std::to_string(e.line) + ": bad or-intro");
      return mk_or(parse_proof(e.at(1), sig, ids), ids);
    }
    if (h == "and-intro") {
      if (e.size() != 3)
        throw ParseError("line " + std::to_string(e.line) +
                         ": bad and-intro");
      ProofPtr l = parse_proof(e.at(1), sig, ids);
      ProofPtr r = parse_proof(e.at(2), sig, ids);
      return mk_and(l, r, ids);
    }
    if (h == "all-intro") {
      if (e.size() != 3 || !e.at(1).is_atom)
        throw ParseError("line " + std::to_string(e.line) +
                         ": bad all-intro");
      return mk_all(e.at(1).text, parse_proof(e.at(2), sig, ids), ids);
    }
    if (h == "ex-intro") {
      // (ex-intro t proof) or (ex-intro t formula proof)
      if (e.size() != 3 && e.size() != 4)
        throw ParseError("line " + std::to_string(e.line) + ": bad ex-intro");
      TermPtr t = parse_term(e.at(1), sig, sc);
      std::optional<FormulaPtr> result;
      const SExpr* proof_e = &e.at(2);
      if (e.size() == 4) {
        result = parse_formula(e.at(2), sig, sc);
        proof_e = &e.at(3);
      }
      return mk_ex(t, result, parse_proof(*proof_e, sig, ids), ids);
    }
    if (h == "cut") {
      if (e.size() != 3)
        throw ParseError("line " + std::to_string(e.line) + ": bad cut");
      ProofPtr l = parse_proof(e.at(1), sig, ids);
      ProofPtr r = parse_proof(e.at(2), sig, ids);
      // Find the first dual pair and permute both premises to front it.
      for (size_t i = 0; i < l->conclusion.size(); ++i) {
        FormulaPtr want = dual(l->conclusion[i]);
        for (size_t j = 0; j < r->conclusion.size(); ++j) {
          if (alpha_equal(r->conclusion[j], want)) {
            ProofPtr lf = bring_to_front(l, static_cast<int>(i), ids);
            ProofPtr rf = bring_to_front(r, static_cast<int>(j), ids);
            return mk_cut(lf, rf, ids);
          }
        }
      }
      throw InputError("line " + std::to_string(e.line) +
                       ": no dual pair between " + show_sequent(l->conclusion) +
                       " and " + show_sequent(r->conclusion));
    }
    if (h == "weak") {
      if (e.size() != 3)
        throw ParseError("line " + std::to_string(e.line) + ": bad weak");
      FormulaPtr f = parse_formula(e.at(1), sig, sc);
      return mk_weak(f, parse_proof(e.at(2), sig, ids), ids);
    }
    if (h == "contr") {
      if (e.size() != 2)
        throw ParseError("line " + std::to_string(e.line) + ": bad contr");
      return mk_contr(parse_proof(e.at(1), sig, ids), ids);
    }
    if (h == "perm") {
      if (e.size() != 3 || !e.at(1).is_atom)
        throw ParseError("line " + std::to_string(e.line) + ": bad perm");
      int pos = std::stoi(e.at(1).text);
      return mk_perm(pos, parse_proof(e.at(2), sig, ids), ids);
    }
  } catch (const InputError& err) {
    // Attach a position to rule-level failures raised by the constructors.
    std::string what = err.what();
    if (what.rfind("line ", 0) == 0) throw;
    throw InputError("line " + std::to_string(e.line) + ": " + what);
  }
  throw ParseError("line " + std::to_string(e.line) +
                   ": unknown proof head '" + h + "'");
}

}  // namespace

Problem parse_problem(const std::string& text, const std::string& name) {
  Reader rd(text);
  SExpr top = rd.read();
  if (!rd.at_end())
    throw ParseError("line " + std::to_string(rd.line) +
                     ": trailing content after the problem");
  if (top.head() != "problem")
    throw ParseError("expected (problem ...)");
  Problem prob;
  prob.name = name;
  const SExpr* proof_e = nullptr;
  const SExpr* expect_e = nullptr;
  for (size_t i = 1; i < top.size(); ++i) {
    const SExpr& sec = top.at(i);
    const std::string h = sec.head();
    if (h == "signature") {
      for (size_t j = 1; j < sec.size(); ++j) {
        const SExpr& d = sec.at(j);
        if ((d.head() != "fun" && d.head() != "pred") || d.size() != 3 ||
            !d.at(1).is_atom || !d.at(2).is_atom)
          throw ParseError("line " + std::to_string(d.line) +
                           ": bad signature entry");
        const std::string& n = d.at(1).text;
        if (n == kWeakeningConst)
          throw ParseError("line " + std::to_string(d.line) + ": '" +
                           std::string(kWeakeningConst) +
                           "' is reserved and cannot be declared");
        int arity = std::stoi(d.at(2).text);
        auto& table = d.head() == "fun" ? prob.sig.funs : prob.sig.preds;
        if (!table.emplace(n, arity).second)
          throw ParseError("line " + std::to_string(d.line) +
                           ": duplicate declaration of " + n);
      }
    } else if (h == "proof") {
      if (sec.size() != 2)
        throw ParseError("line " + std::to_string(sec.line) + ": bad proof");
      proof_e = &sec.at(1);
    } else if (h == "expect") {
      expect_e = &sec;
    } else {
      throw ParseError("line " + std::to_string(sec.line) +
                       ": unknown problem section '" + h + "'");
    }
  }
  if (!proof_e) throw ParseError("problem has no proof section");
  IdGen ids;
  prob.proof = renumber(parse_proof(*proof_e, prob.sig, ids));
  if (expect_e) {
    Sequent want;
    Scope sc;
    for (size_t i = 1; i < expect_e->size(); ++i)
      want.push_back(parse_formula(expect_e->at(i), prob.sig, sc));
    prob.expect = want;
    if (!sequent_equal(prob.proof->conclusion, want))
      throw InputError("end-sequent " + show_sequent(prob.proof->conclusion) +
                       " does not match the expected " + show_sequent(want));
  }
  return prob;
}

FormulaPtr parse_formula_text(const std::string& text, const Signature& sig) {
  Reader rd(text);
  SExpr e = rd.read();
  Scope sc;
  return parse_formula(e, sig, sc);
}

TermPtr parse_term_text(const std::string& text, const Signature& sig) {
  Reader rd(text);
  SExpr e = rd.read();
  Scope sc;
  return parse_term(e, sig, sc);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string print_proof(const ProofPtr& p, int indent) {
  std::string pad(indent, ' ');
  std::string inner_pad(indent + 2, ' ');
  auto child = [&](const ProofPtr& q) {
    return "\n" + inner_pad + print_proof(q, indent + 2);
  };
  switch (p->rule) {
    case Rule::Axiom:
      return "(ax " + show_formula(p->conclusion[0]) + ")";
    case Rule::Or:
      return "(or-intro" + child(p->premises[0]) + ")";
    case Rule::And:
      return "(and-intro" + child(p->premises[0]) + child(p->premises[1]) +
             ")";
    case Rule::All:
      return "(all-intro " + p->eigen + child(p->premises[0]) + ")";
    case Rule::Ex:
      // Always the explicit form; it is unambiguous.
      return "(ex-intro " + show_term_sexpr(p->witness) + " " +
             show_formula(p->conclusion[0]) + child(p->premises[0]) + ")";
    case Rule::Cut:
      return "(cut" + child(p->premises[0]) + child(p->premises[1]) + ")";
    case Rule::Weak:
      return "(weak " + show_formula(p->weak_f) + child(p->premises[0]) + ")";
    case Rule::Contr:
      return "(contr" + child(p->premises[0]) + ")";
    case Rule::Perm:
      return "(perm " + std::to_string(p->perm_pos) + child(p->premises[0]) +
             ")";
  }
  throw InternalError("print_proof: bad rule");
}

std::string print_problem(const Problem& p) {
  std::ostringstream out;
  out << "(problem\n  (signature";
  for (const auto& [n, a] : p.sig.funs) out << " (fun " << n << " " << a << ")";
  for (const auto& [n, a] : p.sig.preds)
    out << " (pred " << n << " " << a << ")";
  out << ")\n  (proof\n    " << print_proof(p.proof, 4) << ")\n";
  out << "  (expect";
  for (const auto& f : p.proof->conclusion) out << " " << show_formula(f);
  out << "))\n";
  return out.str();
}

}  // namespace lkgram
