#pragma once

// Syntax-directed linear typing over ordered contexts, and elaboration of
// well-typed terms into sequent derivations (left rules plus Cut).
//
// Context splits for multi-premise rules are reconstructed from the
// left-to-right order of free-variable occurrences: each subterm must consume
// a contiguous slice of the context, in order. Nested let patterns are
// desugared into chained lets with fresh variables before typing.

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lambek/rewrite.hpp"
#include "lambek/sequent.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class TypeErrorKind {
  UnboundVar, OrderViolation, NonLinearUse, ConnectiveAtWrongLevel, Mismatch, PromoteArity
};

inline const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVar: return "unbound-var";
    case TypeErrorKind::OrderViolation: return "order-violation";
    case TypeErrorKind::NonLinearUse: return "non-linear-use";
    case TypeErrorKind::ConnectiveAtWrongLevel: return "connective-at-wrong-level";
    case TypeErrorKind::Mismatch: return "mismatch";
    case TypeErrorKind::PromoteArity: return "promote-arity";
  }
  return "?";
}

struct TypeError {
  TypeErrorKind kind;
  TermPath location;
  std::string detail;
};

namespace detail {

struct TypeErrorExc {
  TypeError err;
};

[[noreturn]] inline void type_fail(TypeErrorKind k, const TermPath& at, std::string detail) {
  throw TypeErrorExc{{k, at, std::move(detail)}};
}

// Free variables in *context* order, which differs from syntactic order:
// appr consumes its argument's context before the function's, and the
// binding forms place the scrutinee's context at the slot where their bound
// variables sit in the body (scrutinee-first when the form binds nothing).
inline void ctx_vars_rec(const TermPtr& t, std::vector<std::string>& out,
                         std::unordered_set<std::string>& bound);

inline void ctx_vars_at_slot(const TermPtr& body, const std::vector<std::string>& binders,
                             const std::vector<TermPtr>& slot,
                             std::vector<std::string>& out,
                             std::unordered_set<std::string>& bound) {
  std::unordered_set<std::string> marks;
  std::vector<std::string> added;
  for (auto& b : binders)
    if (bound.insert(b).second) {
      marks.insert(b);
      added.push_back(b);
    }
  if (marks.empty()) {
    for (auto& s : slot) ctx_vars_rec(s, out, bound);
    ctx_vars_rec(body, out, bound);
    for (auto& b : added) bound.erase(b);
    return;
  }
  // walk the body; splice the slot contexts in at the first bound occurrence
  std::vector<std::string> raw;
  {
    std::unordered_set<std::string> inner = bound;
    for (auto& b : binders) inner.erase(b); // binders stay visible as markers
    ctx_vars_rec(body, raw, inner);
  }
  bool spliced = false;
  for (auto& v : raw) {
    if (marks.count(v)) {
      if (!spliced) {
        for (auto& s : slot) ctx_vars_rec(s, out, bound);
        spliced = true;
      }
      continue;
    }
    if (!bound.count(v)) out.push_back(v);
  }
  if (!spliced)
    for (auto& s : slot) ctx_vars_rec(s, out, bound);
  for (auto& b : added) bound.erase(b);
}

inline void ctx_vars_rec(const TermPtr& t, std::vector<std::string>& out,
                         std::unordered_set<std::string>& bound) {
  switch (t->kind) {
    case TKind::Var:
      if (!bound.count(t->var)) out.push_back(t->var);
      return;
    case TKind::Unit: return;
    case TKind::Tensor:
    case TKind::AppL:
      ctx_vars_rec(t->t1, out, bound);
      ctx_vars_rec(t->t2, out, bound);
      return;
    case TKind::AppR: // argument context first
      ctx_vars_rec(t->t2, out, bound);
      ctx_vars_rec(t->t1, out, bound);
      return;
    case TKind::LamL:
    case TKind::LamR: {
      bool was = bound.count(t->var);
      bound.insert(t->var);
      ctx_vars_rec(t->t1, out, bound);
      if (!was) bound.erase(t->var);
      return;
    }
    case TKind::Let: {
      std::vector<std::string> pv;
      pattern_vars(t->pat, pv);
      ctx_vars_at_slot(t->t2, pv, {t->t1}, out, bound);
      return;
    }
    case TKind::Copy:
      ctx_vars_at_slot(t->t2, {t->x, t->y}, {t->t1}, out, bound);
      return;
    case TKind::Discard:
      ctx_vars_at_slot(t->t2, {}, {t->t1}, out, bound);
      return;
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      for (auto& s : t->srcs) ctx_vars_rec(s, out, bound);
      std::vector<std::string> added;
      for (auto& v : t->vars)
        if (bound.insert(v).second) added.push_back(v);
      ctx_vars_rec(t->t1, out, bound);
      for (auto& v : added) bound.erase(v);
      return;
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa:
      ctx_vars_rec(t->t1, out, bound);
      return;
    case TKind::ExchL: // slot order Γ1 (kappa resource) then Γ2
      ctx_vars_at_slot(t->t3, {t->y, t->x}, {t->t1, t->t2}, out, bound);
      return;
    case TKind::ExchR: // slot order Γ2 then Γ1
      ctx_vars_at_slot(t->t3, {t->x, t->y}, {t->t2, t->t1}, out, bound);
      return;
  }
}

inline std::vector<std::string> ctx_vars(const TermPtr& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> bound;
  ctx_vars_rec(t, out, bound);
  return out;
}

struct Typer {
  CalculusLevel level;

  // Strip variable names: typing contexts elaborate to logic-level contexts.
  static Context anon(const Context& c) {
    Context out;
    for (auto& e : c) out.push_back({"", e.formula});
    return out;
  }
  static Context anon(Context::const_iterator b, Context::const_iterator e) {
    Context out;
    for (; b != e; ++b) out.push_back({"", b->formula});
    return out;
  }

  static Derivation ax(const FormulaPtr& f) {
    return {RuleName::Ax, {{{"", f}}, f}, {}, {}, std::nullopt};
  }

  // Cut d1 : Γ |- A into position pos of d2's context (which must hold A).
  static Derivation cut(const Derivation& d1, const Derivation& d2, size_t pos) {
    const Context& g = d1.conclusion.antecedent;
    const Context& c = d2.conclusion.antecedent;
    Context ctx(c.begin(), c.begin() + pos);
    ctx.insert(ctx.end(), g.begin(), g.end());
    ctx.insert(ctx.end(), c.begin() + pos + 1, c.end());
    return {RuleName::Cut,
            {std::move(ctx), d2.conclusion.succedent},
            {d1, d2},
            {static_cast<int>(pos), static_cast<int>(pos + g.size())},
            std::nullopt};
  }

  void check_formula_level(const FormulaPtr& f, const TermPath& at) {
    if (!formula_legal_at(f, level))
      type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, render(f) + " not legal at this level");
  }

  // Splits ctx into one contiguous slice per subterm, matching each subterm's
  // free variables in order. `parts[i]` receives the slice for subterm i.
  static void split_by_fv(const Context& ctx, const std::vector<TermPtr>& subs,
                          std::vector<Context>& parts, const TermPath& at) {
    size_t k = 0;
    std::unordered_set<std::string> consumed;
    for (auto& s : subs) {
      auto fv = ctx_vars(s);
      Context slice;
      for (auto& v : fv) {
        if (consumed.count(v)) type_fail(TypeErrorKind::NonLinearUse, at, v);
        consumed.insert(v);
        if (k >= ctx.size()) {
          // distinguish: variable missing entirely vs consumed out of order
          type_fail(TypeErrorKind::OrderViolation, at,
                    "context exhausted while matching " + v);
        }
        if (ctx[k].var != v) {
          bool exists = false;
          for (auto& e : ctx) exists = exists || e.var == v;
          if (!exists) type_fail(TypeErrorKind::UnboundVar, at, v);
          type_fail(TypeErrorKind::OrderViolation, at,
                    "expected " + ctx[k].var + " but term uses " + v);
        }
        slice.push_back(ctx[k]);
        ++k;
      }
      parts.push_back(std::move(slice));
    }
    if (k != ctx.size())
      type_fail(TypeErrorKind::NonLinearUse, at, "unused hypothesis " + ctx[k].var);
  }

  // Locates the contiguous slice of ctx consumed by `s` when the rest of the
  // context flows to a second premise around it. Returns [i, j).
  static std::pair<size_t, size_t> locate_slice(const Context& ctx, const TermPtr& s,
                                                const TermPath& at) {
    auto fv = ctx_vars(s);
    {
      std::unordered_set<std::string> seen;
      for (auto& v : fv)
        if (!seen.insert(v).second) type_fail(TypeErrorKind::NonLinearUse, at, v);
    }
    if (fv.empty()) return {0, 0};
    size_t i = 0;
    while (i < ctx.size() && ctx[i].var != fv[0]) ++i;
    if (i == ctx.size()) type_fail(TypeErrorKind::UnboundVar, at, fv[0]);
    for (size_t r = 0; r < fv.size(); ++r) {
      if (i + r >= ctx.size() || ctx[i + r].var != fv[r])
        type_fail(TypeErrorKind::OrderViolation, at, fv[r]);
    }
    return {i, i + fv.size()};
  }

  static bool var_used(const TermPtr& t, const std::string& v) {
    for (auto& x : ctx_vars(t))
      if (x == v) return true;
    return false;
  }

  static void require_linear(const TermPtr& body, const std::vector<std::string>& binders,
                             const TermPath& at) {
    auto fv = ctx_vars(body);
    for (auto& b : binders) {
      size_t n = 0;
      for (auto& v : fv) n += v == b;
      if (n == 0) type_fail(TypeErrorKind::NonLinearUse, at, b + " unused");
      if (n > 1) type_fail(TypeErrorKind::NonLinearUse, at, b + " used " + std::to_string(n) + " times");
    }
  }

  // Main judgment: ctx |- t : A, returning A and the elaborated derivation.
  std::pair<FormulaPtr, Derivation> infer(const Context& ctx, const TermPtr& t, TermPath& at) {
    auto child = [&](int i, const Context& c, const TermPtr& s) {
      at.push_back(i);
      auto r = infer(c, s, at);
      at.pop_back();
      return r;
    };
    switch (t->kind) {
      case TKind::Var: {
        if (ctx.size() == 1 && ctx[0].var == t->var) return {ctx[0].formula, ax(ctx[0].formula)};
        bool exists = false;
        for (auto& e : ctx) exists = exists || e.var == t->var;
        if (!exists) type_fail(TypeErrorKind::UnboundVar, at, t->var);
        type_fail(TypeErrorKind::NonLinearUse, at, "context not fully consumed at " + t->var);
      }
      case TKind::Unit: {
        if (!ctx.empty()) type_fail(TypeErrorKind::NonLinearUse, at, "unit under nonempty context");
        return {Formula::unit(), {RuleName::Ur, {{}, Formula::unit()}, {}, {}, std::nullopt}};
      }
      case TKind::Tensor: {
        std::vector<Context> parts;
        split_by_fv(ctx, {t->t1, t->t2}, parts, at);
        auto [a, d1] = child(0, parts[0], t->t1);
        auto [b, d2] = child(1, parts[1], t->t2);
        Sequent concl{anon(ctx), Formula::tensor(a, b)};
        return {concl.succedent,
                {RuleName::Tr, concl, {d1, d2}, {static_cast<int>(parts[0].size())}, std::nullopt}};
      }
      case TKind::LamR: {
        check_formula_level(t->ann, at);
        Context inner{{t->var, t->ann}};
        inner.insert(inner.end(), ctx.begin(), ctx.end());
        require_linear(t->t1, {t->var}, at);
        auto [b, d] = child(0, inner, t->t1);
        FormulaPtr ty = Formula::rimp(t->ann, b);
        return {ty, {RuleName::IRr, {anon(ctx), ty}, {d}, {}, std::nullopt}};
      }
      case TKind::LamL: {
        check_formula_level(t->ann, at);
        Context inner = ctx;
        inner.push_back({t->var, t->ann});
        require_linear(t->t1, {t->var}, at);
        auto [a, d] = child(0, inner, t->t1);
        FormulaPtr ty = Formula::limp(a, t->ann);
        return {ty, {RuleName::IRl, {anon(ctx), ty}, {d}, {}, std::nullopt}};
      }
      case TKind::AppR: {
        // argument context precedes function context
        std::vector<Context> parts;
        split_by_fv(ctx, {t->t2, t->t1}, parts, at);
        auto [a, ds] = child(1, parts[0], t->t2);
        auto [f, dt] = child(0, parts[1], t->t1);
        if (f->kind != FKind::RImp || !formula_eq(f->left, a))
          type_fail(TypeErrorKind::Mismatch, at,
                    "appr wants " + render(a) + " \\ _, got " + render(f));
        // A, A\B |- B, then cut in the function and the argument
        Derivation base{RuleName::ILr,
                        {{{"", a}, {"", f}}, f->right},
                        {ax(a), ax(f->right)},
                        {0},
                        1};
        Derivation with_f = cut(dt, base, 1);
        return {f->right, cut(ds, with_f, 0)};
      }
      case TKind::AppL: {
        std::vector<Context> parts;
        split_by_fv(ctx, {t->t1, t->t2}, parts, at);
        auto [f, dt] = child(0, parts[0], t->t1);
        auto [b, ds] = child(1, parts[1], t->t2);
        if (f->kind != FKind::LImp || !formula_eq(f->right, b))
          type_fail(TypeErrorKind::Mismatch, at,
                    "appl wants _ / " + render(b) + ", got " + render(f));
        Derivation base{RuleName::ILl,
                        {{{"", f}, {"", b}}, f->left},
                        {ax(b), ax(f->left)},
                        {2},
                        0};
        Derivation with_f = cut(dt, base, 0);
        return {f->left, cut(ds, with_f, dt.conclusion.antecedent.size())};
      }
      case TKind::Let: return infer_let(ctx, t, at);
      case TKind::Copy: {
        if (!level_admits_bang(level))
          type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, "copy below LBang");
        auto [i, j] = locate_slice(ctx, t->t1, at);
        Context sl(ctx.begin() + i, ctx.begin() + j);
        auto [a, ds] = child(0, sl, t->t1);
        if (a->kind != FKind::Bang)
          type_fail(TypeErrorKind::Mismatch, at, "copy scrutinee must be !-typed, got " + render(a));
        require_linear(t->t2, {t->x, t->y}, at);
        Context inner(ctx.begin(), ctx.begin() + i);
        inner.push_back({t->x, a});
        inner.push_back({t->y, a});
        inner.insert(inner.end(), ctx.begin() + j, ctx.end());
        auto [b, dt] = child(1, inner, t->t2);
        Context cctx(anon(ctx.begin(), ctx.begin() + i));
        cctx.push_back({"", a});
        for (size_t r = j; r < ctx.size(); ++r) cctx.push_back({"", ctx[r].formula});
        Derivation c{RuleName::C, {cctx, b}, {dt}, {}, static_cast<int>(i)};
        return {b, cut(ds, c, i)};
      }
      case TKind::Discard: {
        if (!level_admits_bang(level))
          type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, "discard below LBang");
        auto [i, j] = locate_slice(ctx, t->t1, at);
        Context sl(ctx.begin() + i, ctx.begin() + j);
        auto [a, ds] = child(0, sl, t->t1);
        if (a->kind != FKind::Bang)
          type_fail(TypeErrorKind::Mismatch, at, "discard scrutinee must be !-typed");
        Context inner(ctx.begin(), ctx.begin() + i);
        inner.insert(inner.end(), ctx.begin() + j, ctx.end());
        auto [b, dt] = child(1, inner, t->t2);
        Context wctx(anon(ctx.begin(), ctx.begin() + i));
        wctx.push_back({"", a});
        for (size_t r = j; r < ctx.size(); ++r) wctx.push_back({"", ctx[r].formula});
        Derivation w{RuleName::W, {wctx, b}, {dt}, {}, static_cast<int>(i)};
        return {b, cut(ds, w, i)};
      }
      case TKind::PromoteBang:
      case TKind::PromoteKappa: {
        bool is_bang = t->kind == TKind::PromoteBang;
        if (is_bang ? !level_admits_bang(level) : !level_admits_kappa(level))
          type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, "promotion below its level");
        if (t->srcs.size() != t->vars.size())
          type_fail(TypeErrorKind::PromoteArity, at, "source/binder count mismatch");
        std::vector<Context> parts;
        split_by_fv(ctx, t->srcs, parts, at);
        std::vector<FormulaPtr> tys;
        std::vector<Derivation> ds;
        for (size_t r = 0; r < t->srcs.size(); ++r) {
          auto [a, d] = child(static_cast<int>(r), parts[r], t->srcs[r]);
          if (a->kind != (is_bang ? FKind::Bang : FKind::Kappa))
            type_fail(TypeErrorKind::Mismatch, at,
                      "promotion source " + std::to_string(r) + " has type " + render(a));
          tys.push_back(a);
          ds.push_back(std::move(d));
        }
        Context inner;
        for (size_t r = 0; r < t->vars.size(); ++r) inner.push_back({t->vars[r], tys[r]});
        require_linear(t->t1, t->vars, at);
        auto [b, dbody] = child(static_cast<int>(t->srcs.size()), inner, t->t1);
        FormulaPtr ty = is_bang ? Formula::bang(b) : Formula::kappa(b);
        Derivation d{is_bang ? RuleName::Br : RuleName::Er,
                     {anon(inner), ty},
                     {dbody},
                     {},
                     std::nullopt};
        size_t pos = 0;
        for (size_t r = 0; r < ds.size(); ++r) {
          d = cut(ds[r], d, pos);
          pos += parts[r].size();
        }
        return {ty, std::move(d)};
      }
      case TKind::DerelictBang:
      case TKind::DerelictKappa: {
        bool is_bang = t->kind == TKind::DerelictBang;
        if (is_bang ? !level_admits_bang(level) : !level_admits_kappa(level))
          type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, "dereliction below its level");
        auto [a, dt] = child(0, ctx, t->t1);
        if (a->kind != (is_bang ? FKind::Bang : FKind::Kappa))
          type_fail(TypeErrorKind::Mismatch, at, "dereliction of " + render(a));
        Derivation base{is_bang ? RuleName::Bl : RuleName::El,
                        {{{"", a}}, a->left},
                        {ax(a->left)},
                        {},
                        0};
        return {a->left, cut(dt, base, 0)};
      }
      case TKind::ExchL:
      case TKind::ExchR: {
        if (!level_admits_kappa(level))
          type_fail(TypeErrorKind::ConnectiveAtWrongLevel, at, "exchange below LKappa");
        bool is_l = t->kind == TKind::ExchL;
        // conclusion context: Δ1, Γ1, Γ2, Δ2 for exchl; Δ1, Γ2, Γ1, Δ2 for exchr
        const TermPtr& first = is_l ? t->t1 : t->t2;
        const TermPtr& second = is_l ? t->t2 : t->t1;
        TermPtr both = Term::tensor(first, second); // only for slice location
        auto [i, j] = locate_slice(ctx, both, at);
        auto fv1 = free_vars(first);
        size_t mid = i + fv1.size();
        Context c1(ctx.begin() + i, ctx.begin() + mid);
        Context c2(ctx.begin() + mid, ctx.begin() + j);
        auto [ta, d_first] = child(is_l ? 0 : 1, c1, first);
        auto [tb, d_second] = child(is_l ? 1 : 0, c2, second);
        // for exchl: first = t1 : kA, second = t2 : B; for exchr mirrored
        FormulaPtr ka = is_l ? ta : tb;
        FormulaPtr b = is_l ? tb : ta;
        if (ka->kind != FKind::Kappa)
          type_fail(TypeErrorKind::Mismatch, at, "exchange needs a k-typed resource, got " + render(ka));
        require_linear(t->t3, {t->x, t->y}, at);
        // premise 3: Δ1, y:B, x:kA, Δ2 for exchl; Δ1, x:kA, y:B, Δ2 for exchr
        Context inner(ctx.begin(), ctx.begin() + i);
        if (is_l) {
          inner.push_back({t->y, b});
          inner.push_back({t->x, ka});
        } else {
          inner.push_back({t->x, ka});
          inner.push_back({t->y, b});
        }
        inner.insert(inner.end(), ctx.begin() + j, ctx.end());
        auto [cres, d3] = child(2, inner, t->t3);
        // move the kappa formula across with E1/E2, then cut in both resources
        Context econc(anon(ctx.begin(), ctx.begin() + i));
        if (is_l) {
          econc.push_back({"", ka});
          econc.push_back({"", b});
        } else {
          econc.push_back({"", b});
          econc.push_back({"", ka});
        }
        for (size_t r = j; r < ctx.size(); ++r) econc.push_back({"", ctx[r].formula});
        Derivation e{is_l ? RuleName::E1 : RuleName::E2,
                     {econc, cres},
                     {d3},
                     {},
                     static_cast<int>(is_l ? i : i + 1)};
        if (is_l) {
          // slots: kA at i, B at i+1; Γ1 |- kA first, then Γ2 |- B
          Derivation with1 = cut(d_first, e, i);
          return {cres, cut(d_second, with1, i + c1.size())};
        }
        // exchr: B at i, kA at i+1; context order Γ2 (= c1 here? no: first=t2)
        // here first==t2 : B with slice c1, second==t1 : kA with slice c2
        Derivation with_b = cut(d_first, e, i);
        return {cres, cut(d_second, with_b, i + c1.size())};
      }
    }
    type_fail(TypeErrorKind::Mismatch, at, "unhandled term form");
  }

  std::pair<FormulaPtr, Derivation> infer_let(const Context& ctx, const TermPtr& t,
                                              TermPath& at) {
    const PatternPtr& p = t->pat;
    if (p->kind == PKind::Var)
      type_fail(TypeErrorKind::Mismatch, at, "variable pattern is not a let form");
    if (p->kind == PKind::TensorPat &&
        !(p->p1->kind == PKind::Var && p->p2->kind == PKind::Var)) {
      // desugar nested patterns into chained lets with fresh binders
      auto desugar_side = [&](const PatternPtr& q, TermPtr body,
                              auto&& rec) -> std::pair<PatternPtr, TermPtr> {
        if (q->kind == PKind::Var) return {q, body};
        std::string v = FreshNames::global().fresh("p");
        return {Pattern::mk_var(v), Term::let(Term::mk_var(v), q, body)};
      };
      auto [q2, body1] = desugar_side(p->p2, t->t2, desugar_side);
      auto [q1, body2] = desugar_side(p->p1, body1, desugar_side);
      TermPtr flat = Term::let(t->t1, Pattern::tensor(q1, q2), body2);
      return infer(ctx, flat, at);
    }
    auto [i, j] = locate_slice(ctx, t->t1, at);
    Context sl(ctx.begin() + i, ctx.begin() + j);
    auto [a, ds] = infer_child_let(sl, t->t1, at);
    if (p->kind == PKind::UnitPat || p->kind == PKind::Wildcard) {
      if (a->kind != FKind::Unit)
        type_fail(TypeErrorKind::Mismatch, at, "unit pattern against " + render(a));
      Context inner(ctx.begin(), ctx.begin() + i);
      inner.insert(inner.end(), ctx.begin() + j, ctx.end());
      at.push_back(1);
      auto [b, dt] = infer(inner, t->t2, at);
      at.pop_back();
      Context uctx(anon(ctx.begin(), ctx.begin() + i));
      uctx.push_back({"", a});
      for (size_t r = j; r < ctx.size(); ++r) uctx.push_back({"", ctx[r].formula});
      Derivation ul{RuleName::Ul, {uctx, b}, {dt}, {}, static_cast<int>(i)};
      return {b, cut(ds, ul, i)};
    }
    // flat tensor pattern x*y
    if (a->kind != FKind::Tensor)
      type_fail(TypeErrorKind::Mismatch, at, "tensor pattern against " + render(a));
    const std::string& x = p->p1->var;
    const std::string& y = p->p2->var;
    require_linear(t->t2, {x, y}, at);
    Context inner(ctx.begin(), ctx.begin() + i);
    inner.push_back({x, a->left});
    inner.push_back({y, a->right});
    inner.insert(inner.end(), ctx.begin() + j, ctx.end());
    at.push_back(1);
    auto [c, dt] = infer(inner, t->t2, at);
    at.pop_back();
    Context tctx(anon(ctx.begin(), ctx.begin() + i));
    tctx.push_back({"", a});
    for (size_t r = j; r < ctx.size(); ++r) tctx.push_back({"", ctx[r].formula});
    Derivation tl{RuleName::Tl, {tctx, c}, {dt}, {}, static_cast<int>(i)};
    return {c, cut(ds, tl, i)};
  }

  std::pair<FormulaPtr, Derivation> infer_child_let(const Context& c, const TermPtr& s,
                                                    TermPath& at) {
    at.push_back(0);
    auto r = infer(c, s, at);
    at.pop_back();
    return r;
  }
};

} // namespace detail

inline std::variant<FormulaPtr, TypeError> typecheck(const Context& ctx, const TermPtr& t,
                                                     CalculusLevel level) {
  if (!term_legal_at(t, level))
    return TypeError{TypeErrorKind::ConnectiveAtWrongLevel, {}, "term form above level"};
  for (auto& e : ctx)
    if (!formula_legal_at(e.formula, level))
      return TypeError{TypeErrorKind::ConnectiveAtWrongLevel, {}, "hypothesis " + e.var};
  detail::Typer ty{level};
  TermPath at;
  try {
    return ty.infer(ctx, t, at).first;
  } catch (detail::TypeErrorExc& e) {
    return e.err;
  }
}

inline std::variant<Derivation, TypeError> elaborate(const Context& ctx, const TermPtr& t,
                                                     CalculusLevel level) {
  if (!term_legal_at(t, level))
    return TypeError{TypeErrorKind::ConnectiveAtWrongLevel, {}, "term form above level"};
  for (auto& e : ctx)
    if (!formula_legal_at(e.formula, level))
      return TypeError{TypeErrorKind::ConnectiveAtWrongLevel, {}, "hypothesis " + e.var};
  detail::Typer ty{level};
  TermPath at;
  try {
    return ty.infer(ctx, t, at).second;
  } catch (detail::TypeErrorExc& e) {
    return e.err;
  }
}

// ---------------------------------------------------------------------------
// Subject reduction

struct SubjectReductionViolation {
  Redex redex;
  std::string detail; // reduct failed to type, or type changed
};

struct SubjectReductionReport {
  size_t reducts_checked = 0;
  std::vector<SubjectReductionViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline SubjectReductionReport subject_reduction_report(const Context& ctx, const TermPtr& t,
                                                       CalculusLevel level) {
  SubjectReductionReport rep;
  auto ty = typecheck(ctx, t, level);
  if (!std::holds_alternative<FormulaPtr>(ty)) {
    rep.violations.push_back({{}, "input does not typecheck"});
    return rep;
  }
  const FormulaPtr& a = std::get<FormulaPtr>(ty);
  for (auto& r : redexes(t)) {
    TermPtr t2 = step(t, r);
    ++rep.reducts_checked;
    auto ty2 = typecheck(ctx, t2, level);
    if (!std::holds_alternative<FormulaPtr>(ty2)) {
      rep.violations.push_back({r, "reduct fails: " + std::get<TypeError>(ty2).detail +
                                       " in " + render(t2)});
    } else if (!formula_eq(std::get<FormulaPtr>(ty2), a)) {
      rep.violations.push_back({r, "type changed to " + render(std::get<FormulaPtr>(ty2))});
    }
  }
  return rep;
}

} // namespace lambek
