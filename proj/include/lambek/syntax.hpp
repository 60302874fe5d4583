#pragma once

// Core ASTs shared by every module: formulas, contexts, sequents,
// patterns and terms of the four Lambek term calculi.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lambek {

// ---------------------------------------------------------------------------
// Formulas

enum class FKind { Atom, Unit, Tensor, RImp, LImp, Bang, Kappa };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  std::string atom;       // FKind::Atom only
  FormulaPtr left, right; // binary: Tensor/RImp/LImp; unary: left only

  static FormulaPtr mk_atom(std::string name) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Atom;
    f->atom = std::move(name);
    return f;
  }
  static FormulaPtr unit() {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Unit;
    return f;
  }
  static FormulaPtr binary(FKind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
  }
  static FormulaPtr tensor(FormulaPtr l, FormulaPtr r) { return binary(FKind::Tensor, std::move(l), std::move(r)); }
  // A ⇀ B : consumes an A on the left.
  static FormulaPtr rimp(FormulaPtr arg, FormulaPtr res) { return binary(FKind::RImp, std::move(arg), std::move(res)); }
  // A ↼ B : left = result A, right = argument B.
  static FormulaPtr limp(FormulaPtr res, FormulaPtr arg) { return binary(FKind::LImp, std::move(res), std::move(arg)); }
  static FormulaPtr unary(FKind k, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(b);
    return f;
  }
  static FormulaPtr bang(FormulaPtr b) { return unary(FKind::Bang, std::move(b)); }
  static FormulaPtr kappa(FormulaPtr b) { return unary(FKind::Kappa, std::move(b)); }
};

inline bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom: return a->atom == b->atom;
    case FKind::Unit: return true;
    case FKind::Bang:
    case FKind::Kappa: return formula_eq(a->left, b->left);
    default: return formula_eq(a->left, b->left) && formula_eq(a->right, b->right);
  }
}

inline int formula_size(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Unit: return 1;
    case FKind::Bang:
    case FKind::Kappa: return 1 + formula_size(f->left);
    default: return 1 + formula_size(f->left) + formula_size(f->right);
  }
}

inline bool formula_has(const FormulaPtr& f, FKind k) {
  if (f->kind == k) return true;
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Unit: return false;
    case FKind::Bang:
    case FKind::Kappa: return formula_has(f->left, k);
    default: return formula_has(f->left, k) || formula_has(f->right, k);
  }
}

inline void collect_atoms(const FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      out.push_back(f->atom);
      return;
    case FKind::Unit: return;
    case FKind::Bang:
    case FKind::Kappa: collect_atoms(f->left, out); return;
    default:
      collect_atoms(f->left, out);
      collect_atoms(f->right, out);
  }
}

// ---------------------------------------------------------------------------
// Contexts and sequents

struct CtxEntry {
  std::string var; // empty for logic-level contexts
  FormulaPtr formula;
};

using Context = std::vector<CtxEntry>;

inline Context logic_ctx(std::vector<FormulaPtr> fs) {
  Context c;
  for (auto& f : fs) c.push_back({"", std::move(f)});
  return c;
}

inline bool context_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!formula_eq(a[i].formula, b[i].formula)) return false;
  return true;
}

struct Sequent {
  Context antecedent;
  FormulaPtr succedent;
};

inline bool sequent_eq(const Sequent& a, const Sequent& b) {
  return context_eq(a.antecedent, b.antecedent) && formula_eq(a.succedent, b.succedent);
}

// ---------------------------------------------------------------------------
// Calculus levels

enum class CalculusLevel { L, LBang, LKappa, LBangKappa };

inline bool level_admits_bang(CalculusLevel l) {
  return l == CalculusLevel::LBang || l == CalculusLevel::LBangKappa;
}
inline bool level_admits_kappa(CalculusLevel l) {
  return l == CalculusLevel::LKappa || l == CalculusLevel::LBangKappa;
}

inline bool formula_legal_at(const FormulaPtr& f, CalculusLevel l) {
  if (!level_admits_bang(l) && formula_has(f, FKind::Bang)) return false;
  if (!level_admits_kappa(l) && formula_has(f, FKind::Kappa)) return false;
  return true;
}

inline const char* level_name(CalculusLevel l) {
  switch (l) {
    case CalculusLevel::L: return "l";
    case CalculusLevel::LBang: return "lbang";
    case CalculusLevel::LKappa: return "lkappa";
    default: return "lbangkappa";
  }
}

// ---------------------------------------------------------------------------
// Patterns

enum class PKind { Wildcard, Var, UnitPat, TensorPat };

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  PKind kind;
  std::string var;
  PatternPtr p1, p2;

  static PatternPtr wildcard() {
    auto p = std::make_shared<Pattern>();
    p->kind = PKind::Wildcard;
    return p;
  }
  static PatternPtr mk_var(std::string x) {
    auto p = std::make_shared<Pattern>();
    p->kind = PKind::Var;
    p->var = std::move(x);
    return p;
  }
  static PatternPtr unit() {
    auto p = std::make_shared<Pattern>();
    p->kind = PKind::UnitPat;
    return p;
  }
  static PatternPtr tensor(PatternPtr a, PatternPtr b) {
    auto p = std::make_shared<Pattern>();
    p->kind = PKind::TensorPat;
    p->p1 = std::move(a);
    p->p2 = std::move(b);
    return p;
  }
};

inline void pattern_vars(const PatternPtr& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case PKind::Var: out.push_back(p->var); return;
    case PKind::TensorPat:
      pattern_vars(p->p1, out);
      pattern_vars(p->p2, out);
      return;
    default: return;
  }
}

inline bool pattern_eq(const PatternPtr& a, const PatternPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case PKind::Var: return a->var == b->var;
    case PKind::TensorPat: return pattern_eq(a->p1, b->p1) && pattern_eq(a->p2, b->p2);
    default: return true;
  }
}

// ---------------------------------------------------------------------------
// Terms (λL_!κ superset)

enum class TKind {
  Var,
  Unit,
  Tensor,
  LamL,
  LamR,
  AppL,
  AppR,
  Let,
  Copy,
  Discard,
  PromoteBang,
  DerelictBang,
  ExchL,
  ExchR,
  PromoteKappa,
  DerelictKappa
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Field use by kind:
//   Var            var
//   Tensor         t1 t2
//   LamL/LamR      var ann t1(body)
//   AppL/AppR      t1(function) t2(argument)
//   Let            t1(scrutinee) pat t2(body)
//   Copy           t1(src) x y t2(body)
//   Discard        t1(src) t2(body)
//   Promote*       srcs vars t1(body)
//   Derelict*      t1
//   ExchL/ExchR    t1 t2 x y t3(body)
struct Term {
  TKind kind;
  std::string var, x, y;
  FormulaPtr ann;
  PatternPtr pat;
  TermPtr t1, t2, t3;
  std::vector<TermPtr> srcs;
  std::vector<std::string> vars;

  static TermPtr mk(TKind k) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    return t;
  }
  static TermPtr mk_var(std::string x) {
    auto t = mk(TKind::Var);
    const_cast<Term*>(t.get())->var = std::move(x);
    return t;
  }
  static TermPtr unit() { return mk(TKind::Unit); }
  static TermPtr tensor(TermPtr a, TermPtr b) {
    auto t = mk(TKind::Tensor);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(a);
    m->t2 = std::move(b);
    return t;
  }
  static TermPtr lam(TKind k, std::string x, FormulaPtr ann, TermPtr body) {
    auto t = mk(k);
    auto* m = const_cast<Term*>(t.get());
    m->var = std::move(x);
    m->ann = std::move(ann);
    m->t1 = std::move(body);
    return t;
  }
  static TermPtr app(TKind k, TermPtr f, TermPtr a) {
    auto t = mk(k);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(f);
    m->t2 = std::move(a);
    return t;
  }
  static TermPtr let(TermPtr scrut, PatternPtr p, TermPtr body) {
    auto t = mk(TKind::Let);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(scrut);
    m->pat = std::move(p);
    m->t2 = std::move(body);
    return t;
  }
  static TermPtr copy(TermPtr src, std::string x, std::string y, TermPtr body) {
    auto t = mk(TKind::Copy);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(src);
    m->x = std::move(x);
    m->y = std::move(y);
    m->t2 = std::move(body);
    return t;
  }
  static TermPtr discard(TermPtr src, TermPtr body) {
    auto t = mk(TKind::Discard);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(src);
    m->t2 = std::move(body);
    return t;
  }
  static TermPtr promote(TKind k, std::vector<TermPtr> srcs, std::vector<std::string> vars, TermPtr body) {
    if (srcs.size() != vars.size()) throw std::invalid_argument("promote: srcs/vars arity mismatch");
    auto t = mk(k);
    auto* m = const_cast<Term*>(t.get());
    m->srcs = std::move(srcs);
    m->vars = std::move(vars);
    m->t1 = std::move(body);
    return t;
  }
  static TermPtr derelict(TKind k, TermPtr body) {
    auto t = mk(k);
    const_cast<Term*>(t.get())->t1 = std::move(body);
    return t;
  }
  static TermPtr exch(TKind k, TermPtr a, TermPtr b, std::string x, std::string y, TermPtr body) {
    auto t = mk(k);
    auto* m = const_cast<Term*>(t.get());
    m->t1 = std::move(a);
    m->t2 = std::move(b);
    m->x = std::move(x);
    m->y = std::move(y);
    m->t3 = std::move(body);
    return t;
  }
};

inline bool term_legal_at(const TermPtr& t, CalculusLevel l);

// Structural (not alpha) equality.
inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  auto eq = [](const TermPtr& x, const TermPtr& y) { return (!x && !y) || (x && y && term_eq(x, y)); };
  auto feq = [](const FormulaPtr& x, const FormulaPtr& y) { return (!x && !y) || (x && y && formula_eq(x, y)); };
  if (a->var != b->var || a->x != b->x || a->y != b->y) return false;
  if (!feq(a->ann, b->ann)) return false;
  if ((a->pat != nullptr) != (b->pat != nullptr)) return false;
  if (a->pat && !pattern_eq(a->pat, b->pat)) return false;
  if (a->vars != b->vars) return false;
  if (a->srcs.size() != b->srcs.size()) return false;
  for (size_t i = 0; i < a->srcs.size(); ++i)
    if (!term_eq(a->srcs[i], b->srcs[i])) return false;
  return eq(a->t1, b->t1) && eq(a->t2, b->t2) && eq(a->t3, b->t3);
}

// ---------------------------------------------------------------------------
// Free variables

// Appends free variables in left-to-right occurrence order.
inline void free_vars_ordered(const TermPtr& t, std::vector<std::string>& out,
                              std::unordered_set<std::string>& bound) {
  switch (t->kind) {
    case TKind::Var:
      if (!bound.count(t->var)) out.push_back(t->var);
      return;
    case TKind::Unit: return;
    case TKind::Tensor:
      free_vars_ordered(t->t1, out, bound);
      free_vars_ordered(t->t2, out, bound);
      return;
    case TKind::LamL:
    case TKind::LamR: {
      bool was = bound.count(t->var);
      bound.insert(t->var);
      free_vars_ordered(t->t1, out, bound);
      if (!was) bound.erase(t->var);
      return;
    }
    case TKind::AppL:
    case TKind::AppR:
      free_vars_ordered(t->t1, out, bound);
      free_vars_ordered(t->t2, out, bound);
      return;
    case TKind::Let: {
      free_vars_ordered(t->t1, out, bound);
      std::vector<std::string> pv;
      pattern_vars(t->pat, pv);
      std::vector<std::string> added;
      for (auto& v : pv)
        if (bound.insert(v).second) added.push_back(v);
      free_vars_ordered(t->t2, out, bound);
      for (auto& v : added) bound.erase(v);
      return;
    }
    case TKind::Copy: {
      free_vars_ordered(t->t1, out, bound);
      std::vector<std::string> added;
      for (auto* v : {&t->x, &t->y})
        if (bound.insert(*v).second) added.push_back(*v);
      free_vars_ordered(t->t2, out, bound);
      for (auto& v : added) bound.erase(v);
      return;
    }
    case TKind::Discard:
      free_vars_ordered(t->t1, out, bound);
      free_vars_ordered(t->t2, out, bound);
      return;
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      for (auto& s : t->srcs) free_vars_ordered(s, out, bound);
      std::vector<std::string> added;
      for (auto& v : t->vars)
        if (bound.insert(v).second) added.push_back(v);
      free_vars_ordered(t->t1, out, bound);
      for (auto& v : added) bound.erase(v);
      return;
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa:
      free_vars_ordered(t->t1, out, bound);
      return;
    case TKind::ExchL:
    case TKind::ExchR: {
      free_vars_ordered(t->t1, out, bound);
      free_vars_ordered(t->t2, out, bound);
      std::vector<std::string> added;
      for (auto* v : {&t->x, &t->y})
        if (bound.insert(*v).second) added.push_back(*v);
      free_vars_ordered(t->t3, out, bound);
      for (auto& v : added) bound.erase(v);
      return;
    }
  }
}

inline std::vector<std::string> free_vars(const TermPtr& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> bound;
  free_vars_ordered(t, out, bound);
  return out;
}

inline std::unordered_set<std::string> free_var_set(const TermPtr& t) {
  auto v = free_vars(t);
  return {v.begin(), v.end()};
}

inline bool term_legal_at(const TermPtr& t, CalculusLevel l) {
  bool bang_ok = level_admits_bang(l);
  bool kappa_ok = level_admits_kappa(l);
  switch (t->kind) {
    case TKind::Copy:
    case TKind::Discard:
    case TKind::PromoteBang:
    case TKind::DerelictBang:
      if (!bang_ok) return false;
      break;
    case TKind::ExchL:
    case TKind::ExchR:
    case TKind::PromoteKappa:
    case TKind::DerelictKappa:
      if (!kappa_ok) return false;
      break;
    default: break;
  }
  if (t->ann && !formula_legal_at(t->ann, l)) return false;
  for (auto& s : t->srcs)
    if (!term_legal_at(s, l)) return false;
  for (auto& c : {t->t1, t->t2, t->t3})
    if (c && !term_legal_at(c, l)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fresh names and capture-avoiding substitution

// Deterministic fresh-name supply: x$0, x$1, ...
class FreshNames {
 public:
  std::string fresh(const std::string& base) {
    auto stem = base.substr(0, base.find('$'));
    return stem + "$" + std::to_string(counter_++);
  }
  void reset(std::uint64_t n = 0) { counter_ = n; }

  static FreshNames& global() {
    static thread_local FreshNames g;
    return g;
  }

 private:
  std::uint64_t counter_ = 0;
};

TermPtr substitute(const TermPtr& t, const std::unordered_map<std::string, TermPtr>& sub);

namespace detail {

inline TermPtr rename_binder(const TermPtr& body, const std::string& from, const std::string& to) {
  std::unordered_map<std::string, TermPtr> s{{from, Term::mk_var(to)}};
  return substitute(body, s);
}

// True if any substituted value could capture `x`.
inline bool capture_risk(const std::string& x, const std::unordered_map<std::string, TermPtr>& sub) {
  for (auto& [k, v] : sub) {
    (void)k;
    if (free_var_set(v).count(x)) return true;
  }
  return false;
}

} // namespace detail

inline TermPtr substitute(const TermPtr& t, const std::unordered_map<std::string, TermPtr>& sub) {
  if (sub.empty()) return t;
  auto go = [&](const TermPtr& s) { return s ? substitute(s, sub) : nullptr; };
  switch (t->kind) {
    case TKind::Var: {
      auto it = sub.find(t->var);
      return it == sub.end() ? t : it->second;
    }
    case TKind::Unit: return t;
    case TKind::Tensor: return Term::tensor(go(t->t1), go(t->t2));
    case TKind::LamL:
    case TKind::LamR: {
      auto inner = sub;
      inner.erase(t->var);
      std::string v = t->var;
      TermPtr body = t->t1;
      if (!inner.empty() && detail::capture_risk(v, inner)) {
        std::string nv = FreshNames::global().fresh(v);
        body = detail::rename_binder(body, v, nv);
        v = nv;
      }
      return Term::lam(t->kind, v, t->ann, substitute(body, inner));
    }
    case TKind::AppL:
    case TKind::AppR: return Term::app(t->kind, go(t->t1), go(t->t2));
    case TKind::Let: {
      auto scrut = go(t->t1);
      std::vector<std::string> pv;
      pattern_vars(t->pat, pv);
      auto inner = sub;
      for (auto& v : pv) inner.erase(v);
      PatternPtr pat = t->pat;
      TermPtr body = t->t2;
      if (!inner.empty()) {
        for (auto& v : pv) {
          if (detail::capture_risk(v, inner)) {
            std::string nv = FreshNames::global().fresh(v);
            body = detail::rename_binder(body, v, nv);
            // rebuild pattern with the renamed variable
            std::vector<std::pair<std::string, std::string>> ren{{v, nv}};
            std::function<PatternPtr(const PatternPtr&)> rp = [&](const PatternPtr& p) -> PatternPtr {
              switch (p->kind) {
                case PKind::Var: return p->var == v ? Pattern::mk_var(nv) : p;
                case PKind::TensorPat: return Pattern::tensor(rp(p->p1), rp(p->p2));
                default: return p;
              }
            };
            pat = rp(pat);
          }
        }
      }
      return Term::let(scrut, pat, substitute(body, inner));
    }
    case TKind::Copy: {
      auto src = go(t->t1);
      auto inner = sub;
      inner.erase(t->x);
      inner.erase(t->y);
      std::string x = t->x, y = t->y;
      TermPtr body = t->t2;
      if (!inner.empty() && detail::capture_risk(x, inner)) {
        auto nx = FreshNames::global().fresh(x);
        body = detail::rename_binder(body, x, nx);
        x = nx;
      }
      if (!inner.empty() && detail::capture_risk(y, inner)) {
        auto ny = FreshNames::global().fresh(y);
        body = detail::rename_binder(body, y, ny);
        y = ny;
      }
      return Term::copy(src, x, y, substitute(body, inner));
    }
    case TKind::Discard: return Term::discard(go(t->t1), go(t->t2));
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      std::vector<TermPtr> srcs;
      srcs.reserve(t->srcs.size());
      for (auto& s : t->srcs) srcs.push_back(go(s));
      auto inner = sub;
      for (auto& v : t->vars) inner.erase(v);
      std::vector<std::string> vars = t->vars;
      TermPtr body = t->t1;
      if (!inner.empty()) {
        for (auto& v : vars) {
          if (detail::capture_risk(v, inner)) {
            auto nv = FreshNames::global().fresh(v);
            body = detail::rename_binder(body, v, nv);
            v = nv;
          }
        }
      }
      return Term::promote(t->kind, std::move(srcs), std::move(vars), substitute(body, inner));
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa: return Term::derelict(t->kind, go(t->t1));
    case TKind::ExchL:
    case TKind::ExchR: {
      auto a = go(t->t1), b = go(t->t2);
      auto inner = sub;
      inner.erase(t->x);
      inner.erase(t->y);
      std::string x = t->x, y = t->y;
      TermPtr body = t->t3;
      if (!inner.empty() && detail::capture_risk(x, inner)) {
        auto nx = FreshNames::global().fresh(x);
        body = detail::rename_binder(body, x, nx);
        x = nx;
      }
      if (!inner.empty() && detail::capture_risk(y, inner)) {
        auto ny = FreshNames::global().fresh(y);
        body = detail::rename_binder(body, y, ny);
        y = ny;
      }
      return Term::exch(t->kind, a, b, x, y, substitute(body, inner));
    }
  }
  throw std::logic_error("substitute: unreachable");
}

inline TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s) {
  std::unordered_map<std::string, TermPtr> sub{{x, s}};
  return substitute(t, sub);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace detail {

inline bool alpha_eq_rec(const TermPtr& a, const TermPtr& b,
                         std::unordered_map<std::string, std::string>& l2r,
                         std::unordered_map<std::string, std::string>& r2l) {
  if (a->kind != b->kind) return false;
  auto bind = [&](const std::string& x, const std::string& y, auto&& k) {
    auto sl = l2r.count(x) ? std::optional(l2r[x]) : std::nullopt;
    auto sr = r2l.count(y) ? std::optional(r2l[y]) : std::nullopt;
    l2r[x] = y;
    r2l[y] = x;
    bool ok = k();
    if (sl) l2r[x] = *sl; else l2r.erase(x);
    if (sr) r2l[y] = *sr; else r2l.erase(y);
    return ok;
  };
  switch (a->kind) {
    case TKind::Var: {
      auto it = l2r.find(a->var);
      if (it != l2r.end()) return it->second == b->var && r2l.at(b->var) == a->var;
      return !r2l.count(b->var) && a->var == b->var;
    }
    case TKind::Unit: return true;
    case TKind::Tensor:
    case TKind::AppL:
    case TKind::AppR:
    case TKind::Discard:
      return alpha_eq_rec(a->t1, b->t1, l2r, r2l) && alpha_eq_rec(a->t2, b->t2, l2r, r2l);
    case TKind::LamL:
    case TKind::LamR:
      if (!formula_eq(a->ann, b->ann)) return false;
      return bind(a->var, b->var, [&] { return alpha_eq_rec(a->t1, b->t1, l2r, r2l); });
    case TKind::Let: {
      if (!alpha_eq_rec(a->t1, b->t1, l2r, r2l)) return false;
      std::vector<std::string> pa, pb;
      pattern_vars(a->pat, pa);
      pattern_vars(b->pat, pb);
      if (pa.size() != pb.size()) return false;
      // patterns must have the same shape
      std::function<bool(const PatternPtr&, const PatternPtr&)> shape = [&](const PatternPtr& p,
                                                                            const PatternPtr& q) {
        if (p->kind != q->kind) return false;
        if (p->kind == PKind::TensorPat) return shape(p->p1, q->p1) && shape(p->p2, q->p2);
        return true;
      };
      if (!shape(a->pat, b->pat)) return false;
      std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == pa.size()) return alpha_eq_rec(a->t2, b->t2, l2r, r2l);
        return bind(pa[i], pb[i], [&] { return rec(i + 1); });
      };
      return rec(0);
    }
    case TKind::Copy:
      if (!alpha_eq_rec(a->t1, b->t1, l2r, r2l)) return false;
      return bind(a->x, b->x, [&] {
        return bind(a->y, b->y, [&] { return alpha_eq_rec(a->t2, b->t2, l2r, r2l); });
      });
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      if (a->srcs.size() != b->srcs.size()) return false;
      for (size_t i = 0; i < a->srcs.size(); ++i)
        if (!alpha_eq_rec(a->srcs[i], b->srcs[i], l2r, r2l)) return false;
      std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == a->vars.size()) return alpha_eq_rec(a->t1, b->t1, l2r, r2l);
        return bind(a->vars[i], b->vars[i], [&] { return rec(i + 1); });
      };
      return rec(0);
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa: return alpha_eq_rec(a->t1, b->t1, l2r, r2l);
    case TKind::ExchL:
    case TKind::ExchR:
      if (!alpha_eq_rec(a->t1, b->t1, l2r, r2l)) return false;
      if (!alpha_eq_rec(a->t2, b->t2, l2r, r2l)) return false;
      return bind(a->x, b->x, [&] {
        return bind(a->y, b->y, [&] { return alpha_eq_rec(a->t3, b->t3, l2r, r2l); });
      });
  }
  return false;
}

} // namespace detail

inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  std::unordered_map<std::string, std::string> l2r, r2l;
  return detail::alpha_eq_rec(a, b, l2r, r2l);
}

} // namespace lambek
