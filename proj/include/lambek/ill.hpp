#pragma once

// Target ILL calculus and the (-)^e embeddings. ILL formulas and terms are
// represented as the sublanguage of the source ASTs with a single lambda/app
// pair (the l-forms), the !-constructs, and no exchange: this lets the
// rewriter act on images directly. Lolli is represented by the right
// implication constructor; both source implications collapse onto it with
// the argument on the left, so the embedding forgets order.

#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "lambek/rewrite.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

// invariant: Atom / Unit / Tensor / RImp (read as lolli) / Bang only
using ILLFormulaPtr = FormulaPtr;
// invariant: Var / Unit / Tensor / LamL / AppL / Let / Copy / Discard /
// PromoteBang / DerelictBang only
using ILLTermPtr = TermPtr;

inline bool is_ill_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Unit: return true;
    case FKind::Bang: return is_ill_formula(f->left);
    case FKind::Tensor:
    case FKind::RImp: return is_ill_formula(f->left) && is_ill_formula(f->right);
    default: return false;
  }
}

inline std::string ill_render(const ILLFormulaPtr& f, int prec = 0) {
  switch (f->kind) {
    case FKind::Atom: return f->atom;
    case FKind::Unit: return "I";
    case FKind::Bang: return "!" + ill_render(f->left, 3);
    case FKind::Tensor: {
      std::string s = ill_render(f->left, 2) + " * " + ill_render(f->right, 3);
      return prec >= 3 ? "(" + s + ")" : s;
    }
    case FKind::RImp: {
      std::string s = ill_render(f->left, 2) + " -o " + ill_render(f->right, 1);
      return prec >= 2 ? "(" + s + ")" : s;
    }
    default: return "?";
  }
}

inline ILLFormulaPtr embed_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Unit: return Formula::unit();
    case FKind::Tensor: return Formula::tensor(embed_formula(f->left), embed_formula(f->right));
    case FKind::RImp: return Formula::rimp(embed_formula(f->left), embed_formula(f->right));
    case FKind::LImp: // result / argument: the lolli takes the argument first
      return Formula::rimp(embed_formula(f->right), embed_formula(f->left));
    case FKind::Bang: return Formula::bang(embed_formula(f->left));
    case FKind::Kappa: return Formula::bang(embed_formula(f->left));
  }
  return f;
}

inline ILLTermPtr embed_term(const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var:
    case TKind::Unit: return t;
    case TKind::Tensor: return Term::tensor(embed_term(t->t1), embed_term(t->t2));
    case TKind::LamL:
    case TKind::LamR:
      return Term::lam(TKind::LamL, t->var, embed_formula(t->ann), embed_term(t->t1));
    case TKind::AppL:
    case TKind::AppR:
      return Term::app(TKind::AppL, embed_term(t->t1), embed_term(t->t2));
    case TKind::Let: return Term::let(embed_term(t->t1), t->pat, embed_term(t->t2));
    case TKind::Copy: return Term::copy(embed_term(t->t1), t->x, t->y, embed_term(t->t2));
    case TKind::Discard: return Term::discard(embed_term(t->t1), embed_term(t->t2));
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      std::vector<TermPtr> srcs;
      for (auto& s : t->srcs) srcs.push_back(embed_term(s));
      return Term::promote(TKind::PromoteBang, std::move(srcs), t->vars, embed_term(t->t1));
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa:
      return Term::derelict(TKind::DerelictBang, embed_term(t->t1));
    case TKind::ExchL:
    case TKind::ExchR: {
      // exchange is translated away completely
      std::unordered_map<std::string, TermPtr> m{{t->x, embed_term(t->t1)},
                                                 {t->y, embed_term(t->t2)}};
      return substitute(embed_term(t->t3), m);
    }
  }
  return t;
}

inline Context embed_context(const Context& ctx) {
  Context out;
  for (auto& e : ctx) out.push_back({e.var, embed_formula(e.formula)});
  return out;
}

// ---------------------------------------------------------------------------
// ILL typechecking with multiset contexts: splits are not positional, a
// hypothesis may be consumed anywhere, but still exactly once.

namespace detail {

struct IllError {
  std::string msg;
};

struct IllChecker {
  std::unordered_map<std::string, FormulaPtr> scope;
  std::unordered_set<std::string> used;

  [[noreturn]] void fail(const std::string& m) { throw IllError{m}; }

  void bind(const std::string& x, const FormulaPtr& a) {
    if (scope.count(x)) fail("shadowed variable " + x);
    scope[x] = a;
  }
  void unbind(const std::string& x, bool require_used) {
    if (require_used && !used.count(x)) fail("unused hypothesis " + x);
    scope.erase(x);
    used.erase(x);
  }

  void bind_pattern(const PatternPtr& p, const FormulaPtr& a,
                    std::vector<std::string>& out) {
    switch (p->kind) {
      case PKind::Wildcard:
      case PKind::UnitPat:
        if (a->kind != FKind::Unit) fail("unit pattern against " + ill_render(a));
        return;
      case PKind::Var:
        bind(p->var, a);
        out.push_back(p->var);
        return;
      case PKind::TensorPat:
        if (a->kind != FKind::Tensor) fail("tensor pattern against " + ill_render(a));
        bind_pattern(p->p1, a->left, out);
        bind_pattern(p->p2, a->right, out);
        return;
    }
  }

  FormulaPtr infer(const TermPtr& t) {
    switch (t->kind) {
      case TKind::Var: {
        auto it = scope.find(t->var);
        if (it == scope.end()) fail("unbound variable " + t->var);
        if (!used.insert(t->var).second) fail("variable used twice: " + t->var);
        return it->second;
      }
      case TKind::Unit: return Formula::unit();
      case TKind::Tensor: return Formula::tensor(infer(t->t1), infer(t->t2));
      case TKind::LamL: {
        if (!is_ill_formula(t->ann)) fail("annotation outside ILL: " + render(t->ann));
        bind(t->var, t->ann);
        FormulaPtr b = infer(t->t1);
        unbind(t->var, true);
        return Formula::rimp(t->ann, b);
      }
      case TKind::AppL: {
        FormulaPtr f = infer(t->t1);
        FormulaPtr a = infer(t->t2);
        if (f->kind != FKind::RImp || !formula_eq(f->left, a))
          fail("application of " + ill_render(f) + " to " + ill_render(a));
        return f->right;
      }
      case TKind::Let: {
        FormulaPtr a = infer(t->t1);
        std::vector<std::string> bound;
        bind_pattern(t->pat, a, bound);
        FormulaPtr b = infer(t->t2);
        for (auto& x : bound) unbind(x, true);
        return b;
      }
      case TKind::Copy: {
        FormulaPtr a = infer(t->t1);
        if (a->kind != FKind::Bang) fail("copy of " + ill_render(a));
        bind(t->x, a);
        bind(t->y, a);
        FormulaPtr b = infer(t->t2);
        unbind(t->x, true);
        unbind(t->y, true);
        return b;
      }
      case TKind::Discard: {
        FormulaPtr a = infer(t->t1);
        if (a->kind != FKind::Bang) fail("discard of " + ill_render(a));
        return infer(t->t2);
      }
      case TKind::PromoteBang: {
        if (t->srcs.size() != t->vars.size()) fail("promotion arity mismatch");
        std::vector<FormulaPtr> tys;
        for (auto& s : t->srcs) {
          FormulaPtr a = infer(s);
          if (a->kind != FKind::Bang) fail("promotion source of " + ill_render(a));
          tys.push_back(a);
        }
        // the body lives in a scope of exactly the bound variables
        IllChecker inner;
        for (size_t i = 0; i < t->vars.size(); ++i) inner.bind(t->vars[i], tys[i]);
        FormulaPtr b = inner.infer(t->t1);
        for (auto& x : t->vars) inner.unbind(x, true);
        return Formula::bang(b);
      }
      case TKind::DerelictBang: {
        FormulaPtr a = infer(t->t1);
        if (a->kind != FKind::Bang) fail("dereliction of " + ill_render(a));
        return a->left;
      }
      default: fail("not an ILL term form");
    }
  }
};

} // namespace detail

inline std::variant<ILLFormulaPtr, std::string> ill_typecheck(const Context& ctx,
                                                              const ILLTermPtr& t) {
  detail::IllChecker c;
  try {
    for (auto& e : ctx) {
      if (!is_ill_formula(e.formula))
        return "hypothesis outside ILL: " + render(e.formula);
      c.bind(e.var, e.formula);
    }
    FormulaPtr a = c.infer(t);
    for (auto& e : ctx)
      if (!c.used.count(e.var)) return "unused hypothesis " + e.var;
    return a;
  } catch (detail::IllError& e) {
    return e.msg;
  }
}

// ---------------------------------------------------------------------------
// Preservation checking

// Smallest number of ILL rewriting steps from `from` to (alpha-equal) `to`,
// exploring every redex, or -1 if none within `max_steps`.
inline int ill_step_distance(const ILLTermPtr& from, const ILLTermPtr& to,
                             int max_steps = 10) {
  if (alpha_eq(from, to)) return 0;
  std::deque<std::pair<TermPtr, int>> q{{from, 0}};
  std::unordered_set<std::string> seen{to_sexp(from)};
  while (!q.empty()) {
    auto [cur, d] = q.front();
    q.pop_front();
    if (d == max_steps) continue;
    for (auto& r : redexes(cur)) {
      TermPtr nxt = step(cur, r);
      if (alpha_eq(nxt, to)) return d + 1;
      if (seen.insert(to_sexp(nxt)).second) q.emplace_back(nxt, d + 1);
    }
  }
  return -1;
}

struct PreservationEntry {
  TermPtr term;
  bool type_ok = false;
  std::string type_error;
  size_t steps_checked = 0;
  size_t erased_steps = 0;   // source steps whose images are alpha-equal (0 target steps)
  size_t multi_steps = 0;    // source steps needing >= 2 target steps (audit)
  std::vector<std::string> violations;
};

struct PreservationReport {
  std::vector<PreservationEntry> entries;
  size_t type_failures = 0;
  size_t step_failures = 0;
  bool ok() const { return type_failures == 0 && step_failures == 0; }
};

// `judgments` must typecheck in the source calculus with the given types.
inline PreservationReport preservation_report(
    const std::vector<std::tuple<Context, TermPtr, FormulaPtr>>& judgments) {
  PreservationReport rep;
  for (auto& [ctx, t, a] : judgments) {
    PreservationEntry e;
    e.term = t;
    Context ictx = embed_context(ctx);
    ILLTermPtr it = embed_term(t);
    auto chk = ill_typecheck(ictx, it);
    if (auto* err = std::get_if<std::string>(&chk)) {
      e.type_error = *err;
      ++rep.type_failures;
    } else if (!formula_eq(std::get<ILLFormulaPtr>(chk), embed_formula(a))) {
      e.type_error = "image typed as " + ill_render(std::get<ILLFormulaPtr>(chk)) +
                     ", expected " + ill_render(embed_formula(a));
      ++rep.type_failures;
    } else {
      e.type_ok = true;
    }
    for (auto& r : redexes(t)) {
      TermPtr t2 = step(t, r);
      ++e.steps_checked;
      int d = ill_step_distance(it, embed_term(t2));
      bool erasing = r.rule == RewriteRule::NatEl || r.rule == RewriteRule::NatEr;
      if (d < 0) {
        e.violations.push_back(std::string(rewrite_rule_name(r.rule)) + " @ " +
                               path_str(r.path) + ": image not reached in 10 steps");
        ++rep.step_failures;
      } else if (d == 0) {
        ++e.erased_steps;
        if (!erasing) {
          e.violations.push_back(std::string(rewrite_rule_name(r.rule)) + " @ " +
                                 path_str(r.path) + ": non-exchange step erased");
          ++rep.step_failures;
        }
      } else if (d >= 2) {
        ++e.multi_steps; // flagged for audit, not a failure
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

inline std::string render_table(const PreservationReport& rep) {
  std::string out = "entry\ttype\tsteps\terased\tmulti\tviolations\n";
  for (size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& e = rep.entries[i];
    out += std::to_string(i) + "\t" + (e.type_ok ? "ok" : "FAIL") + "\t" +
           std::to_string(e.steps_checked) + "\t" + std::to_string(e.erased_steps) + "\t" +
           std::to_string(e.multi_steps) + "\t" + std::to_string(e.violations.size()) + "\n";
  }
  return out;
}

} // namespace lambek
