#pragma once

// Reduction for the term calculi: beta rules, modal beta rules, and the
// commuting ("Nat") conversions that hoist an eliminator out of a let
// scrutinee. Strategy is leftmost-outermost; normal forms are compared
// modulo the commuting conversions by a bounded closure.

#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lambek/print.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class RewriteRule {
  BetaL, BetaR, BetaU, BetaT1, BetaT2, NatU, NatT, LetU,
  BetaDR, BetaDI, BetaC, NatD, NatC, BetaEDR, NatEl, NatEr
};

inline const char* rewrite_rule_name(RewriteRule r) {
  switch (r) {
    case RewriteRule::BetaL: return "beta_l";
    case RewriteRule::BetaR: return "beta_r";
    case RewriteRule::BetaU: return "beta_u";
    case RewriteRule::BetaT1: return "beta_t1";
    case RewriteRule::BetaT2: return "beta_t2";
    case RewriteRule::NatU: return "nat_u";
    case RewriteRule::NatT: return "nat_t";
    case RewriteRule::LetU: return "let_u";
    case RewriteRule::BetaDR: return "beta_dr";
    case RewriteRule::BetaDI: return "beta_di";
    case RewriteRule::BetaC: return "beta_c";
    case RewriteRule::NatD: return "nat_d";
    case RewriteRule::NatC: return "nat_c";
    case RewriteRule::BetaEDR: return "beta_edr";
    case RewriteRule::NatEl: return "nat_el";
    case RewriteRule::NatEr: return "nat_er";
  }
  return "?";
}

using TermPath = std::vector<int>;

inline std::string path_str(const TermPath& p) {
  if (p.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
  return s;
}

struct Redex {
  TermPath path;
  RewriteRule rule;
};

namespace detail {

// Children in traversal order. Promote lists sources first, then the body.
inline std::vector<TermPtr> children_of(const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var:
    case TKind::Unit: return {};
    case TKind::Tensor: return {t->t1, t->t2};
    case TKind::LamL:
    case TKind::LamR: return {t->t1};
    case TKind::AppL:
    case TKind::AppR: return {t->t1, t->t2};
    case TKind::Let: return {t->t1, t->t2};
    case TKind::Copy: return {t->t1, t->t2};
    case TKind::Discard: return {t->t1, t->t2};
    case TKind::PromoteBang:
    case TKind::PromoteKappa: {
      auto cs = t->srcs;
      cs.push_back(t->t1);
      return cs;
    }
    case TKind::DerelictBang:
    case TKind::DerelictKappa: return {t->t1};
    case TKind::ExchL:
    case TKind::ExchR: return {t->t1, t->t2, t->t3};
  }
  return {};
}

inline TermPtr with_child(const TermPtr& t, int idx, const TermPtr& c) {
  auto n = std::make_shared<Term>(*t);
  switch (t->kind) {
    case TKind::Tensor:
    case TKind::AppL:
    case TKind::AppR:
    case TKind::Let:
    case TKind::Copy:
    case TKind::Discard:
      (idx == 0 ? n->t1 : n->t2) = c;
      break;
    case TKind::LamL:
    case TKind::LamR:
    case TKind::DerelictBang:
    case TKind::DerelictKappa:
      n->t1 = c;
      break;
    case TKind::PromoteBang:
    case TKind::PromoteKappa:
      if (idx < static_cast<int>(t->srcs.size()))
        n->srcs[idx] = c;
      else
        n->t1 = c;
      break;
    case TKind::ExchL:
    case TKind::ExchR:
      (idx == 0 ? n->t1 : idx == 1 ? n->t2 : n->t3) = c;
      break;
    default: throw std::logic_error("with_child: leaf");
  }
  return n;
}

inline bool pattern_is_unitish(const PatternPtr& p) {
  return p->kind == PKind::UnitPat || p->kind == PKind::Wildcard;
}

// Renames the binders of `pat` that occur free in `avoid_fv` (a set of names),
// applying the renaming to body. Returns the new pattern.
inline PatternPtr freshen_pattern(const PatternPtr& pat, TermPtr& body,
                                  const std::unordered_set<std::string>& avoid) {
  switch (pat->kind) {
    case PKind::Wildcard:
    case PKind::UnitPat: return pat;
    case PKind::Var:
      if (avoid.count(pat->var)) {
        std::string nv = FreshNames::global().fresh(pat->var);
        body = substitute(body, pat->var, Term::mk_var(nv));
        return Pattern::mk_var(nv);
      }
      return pat;
    case PKind::TensorPat: {
      auto p1 = freshen_pattern(pat->p1, body, avoid);
      auto p2 = freshen_pattern(pat->p2, body, avoid);
      return Pattern::tensor(p1, p2);
    }
  }
  return pat;
}

inline void freshen_binder(std::string& x, TermPtr& body,
                           const std::unordered_set<std::string>& avoid) {
  if (!avoid.count(x)) return;
  std::string nv = FreshNames::global().fresh(x);
  body = substitute(body, x, Term::mk_var(nv));
  x = nv;
}

// Names that would be captured if `binders` started scoping over u, where u's
// occurrences of the outer-let pattern q stay bound by q.
inline std::unordered_set<std::string> hoist_avoid(const TermPtr& u, const PatternPtr& q) {
  auto s = free_var_set(u);
  std::vector<std::string> qv;
  pattern_vars(q, qv);
  for (auto& v : qv) s.erase(v);
  return s;
}

} // namespace detail

// Rules matching at the root of t, in enum order.
inline std::vector<RewriteRule> rules_at(const TermPtr& t) {
  std::vector<RewriteRule> out;
  switch (t->kind) {
    case TKind::AppL:
      if (t->t1->kind == TKind::LamL) out.push_back(RewriteRule::BetaL);
      break;
    case TKind::AppR:
      if (t->t1->kind == TKind::LamR) out.push_back(RewriteRule::BetaR);
      break;
    case TKind::Let: {
      const auto& s = t->t1;
      const auto& p = t->pat;
      if (s->kind == TKind::Unit && p->kind == PKind::UnitPat)
        out.push_back(RewriteRule::BetaU);
      if (s->kind == TKind::Tensor && p->kind == PKind::TensorPat) {
        if (p->p1->kind == PKind::Var && p->p2->kind == PKind::Var)
          out.push_back(RewriteRule::BetaT1);
        else
          out.push_back(RewriteRule::BetaT2);
      }
      if (s->kind == TKind::Let) {
        if (detail::pattern_is_unitish(s->pat)) out.push_back(RewriteRule::NatU);
        if (s->pat->kind == PKind::TensorPat) out.push_back(RewriteRule::NatT);
      }
      if (p->kind == PKind::Wildcard) out.push_back(RewriteRule::LetU);
      if (s->kind == TKind::Discard) out.push_back(RewriteRule::NatD);
      if (s->kind == TKind::Copy) out.push_back(RewriteRule::NatC);
      if (s->kind == TKind::ExchL) out.push_back(RewriteRule::NatEl);
      if (s->kind == TKind::ExchR) out.push_back(RewriteRule::NatEr);
      break;
    }
    case TKind::DerelictBang:
      if (t->t1->kind == TKind::PromoteBang) out.push_back(RewriteRule::BetaDR);
      break;
    case TKind::DerelictKappa:
      if (t->t1->kind == TKind::PromoteKappa) out.push_back(RewriteRule::BetaEDR);
      break;
    case TKind::Discard:
      if (t->t1->kind == TKind::PromoteBang) out.push_back(RewriteRule::BetaDI);
      break;
    case TKind::Copy:
      if (t->t1->kind == TKind::PromoteBang) out.push_back(RewriteRule::BetaC);
      break;
    default: break;
  }
  return out;
}

// Contracts the redex at the root.
inline TermPtr contract(const TermPtr& t, RewriteRule r) {
  using namespace detail;
  switch (r) {
    case RewriteRule::BetaL:
    case RewriteRule::BetaR:
      return substitute(t->t1->t1, t->t1->var, t->t2);
    case RewriteRule::BetaU:
      return t->t2;
    case RewriteRule::BetaT1: {
      std::unordered_map<std::string, TermPtr> m{{t->pat->p1->var, t->t1->t1},
                                                 {t->pat->p2->var, t->t1->t2}};
      return substitute(t->t2, m);
    }
    case RewriteRule::BetaT2:
      return Term::let(t->t1->t1, t->pat->p1, Term::let(t->t1->t2, t->pat->p2, t->t2));
    case RewriteRule::LetU:
      return Term::let(t->t1, Pattern::unit(), t->t2);
    case RewriteRule::NatU:
    case RewriteRule::NatT: {
      // let (let s be p in v) be q in u  ~>  let s be p in (let v be q in u)
      const auto& inner = t->t1;
      TermPtr v = inner->t2;
      PatternPtr p = freshen_pattern(inner->pat, v, hoist_avoid(t->t2, t->pat));
      return Term::let(inner->t1, p, Term::let(v, t->pat, t->t2));
    }
    case RewriteRule::NatD: {
      // let (discard s in v) be q in u  ~>  discard s in (let v be q in u)
      const auto& inner = t->t1;
      return Term::discard(inner->t1, Term::let(inner->t2, t->pat, t->t2));
    }
    case RewriteRule::NatC: {
      // let (copy s as x,y in v) be q in u  ~>  copy s as x,y in (let v be q in u)
      const auto& inner = t->t1;
      TermPtr v = inner->t2;
      std::string x = inner->x, y = inner->y;
      auto avoid = hoist_avoid(t->t2, t->pat);
      freshen_binder(x, v, avoid);
      freshen_binder(y, v, avoid);
      return Term::copy(inner->t1, x, y, Term::let(v, t->pat, t->t2));
    }
    case RewriteRule::NatEl:
    case RewriteRule::NatEr: {
      // let (exch t1,t2 with x,y in v) be q in u ~> exch t1,t2 with x,y in (let v be q in u)
      const auto& inner = t->t1;
      TermPtr v = inner->t3;
      std::string x = inner->x, y = inner->y;
      auto avoid = hoist_avoid(t->t2, t->pat);
      freshen_binder(x, v, avoid);
      freshen_binder(y, v, avoid);
      return Term::exch(inner->kind, inner->t1, inner->t2, x, y,
                        Term::let(v, t->pat, t->t2));
    }
    case RewriteRule::BetaDR:
    case RewriteRule::BetaEDR: {
      const auto& pr = t->t1;
      std::unordered_map<std::string, TermPtr> m;
      for (size_t i = 0; i < pr->vars.size(); ++i) m[pr->vars[i]] = pr->srcs[i];
      return substitute(pr->t1, m);
    }
    case RewriteRule::BetaDI: {
      // discard (promote! t~ for x~ in v) in s  ~>  discard t1 in ... tn in s
      const auto& pr = t->t1;
      TermPtr out = t->t2;
      for (auto it = pr->srcs.rbegin(); it != pr->srcs.rend(); ++it)
        out = Term::discard(*it, out);
      return out;
    }
    case RewriteRule::BetaC: {
      // copy (promote! t~ for x~ in v) as y,z in s
      //   ~>  copy t1 as x1',x1'' in ... [promote' / y][promote'' / z] s
      const auto& pr = t->t1;
      std::vector<std::string> v1, v2;
      std::vector<TermPtr> a1, a2;
      for (auto& x : pr->vars) {
        v1.push_back(FreshNames::global().fresh(x));
        v2.push_back(FreshNames::global().fresh(x));
        a1.push_back(Term::mk_var(v1.back()));
        a2.push_back(Term::mk_var(v2.back()));
      }
      TermPtr p1 = Term::promote(TKind::PromoteBang, a1, pr->vars, pr->t1);
      TermPtr p2 = Term::promote(TKind::PromoteBang, a2, pr->vars, pr->t1);
      std::unordered_map<std::string, TermPtr> m{{t->x, p1}, {t->y, p2}};
      TermPtr out = substitute(t->t2, m);
      for (size_t i = pr->srcs.size(); i-- > 0;)
        out = Term::copy(pr->srcs[i], v1[i], v2[i], out);
      return out;
    }
  }
  throw std::logic_error("contract: rule does not match");
}

namespace detail {

inline void collect_redexes(const TermPtr& t, TermPath& path, std::vector<Redex>& out) {
  for (auto r : rules_at(t)) out.push_back({path, r});
  auto cs = children_of(t);
  for (size_t i = 0; i < cs.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_redexes(cs[i], path, out);
    path.pop_back();
  }
}

} // namespace detail

// All redexes in leftmost-outermost order.
inline std::vector<Redex> redexes(const TermPtr& t) {
  std::vector<Redex> out;
  TermPath p;
  detail::collect_redexes(t, p, out);
  return out;
}

inline TermPtr subterm_at(const TermPtr& t, const TermPath& path) {
  TermPtr cur = t;
  for (int i : path) {
    auto cs = detail::children_of(cur);
    if (i < 0 || i >= static_cast<int>(cs.size()))
      throw std::invalid_argument("bad term path");
    cur = cs[i];
  }
  return cur;
}

// Applies one redex.
inline TermPtr step(const TermPtr& t, const Redex& r) {
  std::vector<TermPtr> spine{t};
  for (int i : r.path) spine.push_back(detail::children_of(spine.back()).at(i));
  TermPtr cur = contract(spine.back(), r.rule);
  for (size_t d = r.path.size(); d-- > 0;)
    cur = detail::with_child(spine[d], r.path[d], cur);
  return cur;
}

struct RewriteFuelExhausted {
  size_t steps_taken;
};

struct TraceLine {
  RewriteRule rule;
  TermPath path;
  TermPtr result;
};

inline std::string render(const TraceLine& l) {
  return std::string(rewrite_rule_name(l.rule)) + " @ " + path_str(l.path) + " : " +
         to_sexp(l.result);
}

// Leftmost-outermost normalization; optionally records a step trace.
inline std::variant<TermPtr, RewriteFuelExhausted> normalize(
    TermPtr t, size_t fuel = 10000, std::vector<TraceLine>* trace = nullptr) {
  for (size_t steps = 0;; ++steps) {
    auto rs = redexes(t);
    if (rs.empty()) return t;
    if (steps >= fuel) return RewriteFuelExhausted{steps};
    t = step(t, rs.front());
    if (trace) trace->push_back({rs.front().rule, rs.front().path, t});
  }
}

// ---------------------------------------------------------------------------
// Joinability modulo commuting conversions

namespace detail {

inline bool is_nat_rule(RewriteRule r) {
  switch (r) {
    case RewriteRule::NatU:
    case RewriteRule::NatT:
    case RewriteRule::NatD:
    case RewriteRule::NatC:
    case RewriteRule::NatEl:
    case RewriteRule::NatEr: return true;
    default: return false;
  }
}

// Inverse of a Nat hoist at the root: eliminator wrapped around a let whose
// scrutinee feeds it gets pushed back into scrutinee position.
inline std::vector<TermPtr> nat_unhoists(const TermPtr& t) {
  std::vector<TermPtr> out;
  switch (t->kind) {
    case TKind::Let:
      // let s be p in (let v be q in u)  <-  let (let s be p in v) be q in u
      if (t->t2->kind == TKind::Let)
        out.push_back(Term::let(Term::let(t->t1, t->pat, t->t2->t1), t->t2->pat, t->t2->t2));
      break;
    case TKind::Discard:
      if (t->t2->kind == TKind::Let)
        out.push_back(Term::let(Term::discard(t->t1, t->t2->t1), t->t2->pat, t->t2->t2));
      break;
    case TKind::Copy:
      if (t->t2->kind == TKind::Let)
        out.push_back(
            Term::let(Term::copy(t->t1, t->x, t->y, t->t2->t1), t->t2->pat, t->t2->t2));
      break;
    case TKind::ExchL:
    case TKind::ExchR:
      if (t->t3->kind == TKind::Let)
        out.push_back(Term::let(Term::exch(t->kind, t->t1, t->t2, t->x, t->y,
                                           t->t3->t1),
                                t->t3->pat, t->t3->t2));
      break;
    default: break;
  }
  // drop candidates that capture or free variables of the moved piece
  std::vector<TermPtr> ok;
  for (auto& c : out)
    if (free_vars(c) == free_vars(t)) ok.push_back(c);
  return ok;
}

inline std::vector<TermPtr> conversion_neighbors(const TermPtr& t) {
  std::vector<TermPtr> out;
  for (auto& r : redexes(t))
    if (is_nat_rule(r.rule)) out.push_back(step(t, r));
  // inverse steps, at every position
  std::vector<std::pair<TermPtr, TermPath>> stack{{t, {}}};
  while (!stack.empty()) {
    auto [cur, path] = stack.back();
    stack.pop_back();
    for (auto& u : nat_unhoists(cur)) {
      // rebuild the whole term with u at path
      TermPtr whole = u;
      std::vector<TermPtr> spine{t};
      for (int i : path) spine.push_back(children_of(spine.back()).at(i));
      for (size_t d = path.size(); d-- > 0;) whole = with_child(spine[d], path[d], whole);
      out.push_back(whole);
    }
    auto cs = children_of(cur);
    for (size_t i = 0; i < cs.size(); ++i) {
      auto p = path;
      p.push_back(static_cast<int>(i));
      stack.push_back({cs[i], p});
    }
  }
  return out;
}

} // namespace detail

enum class JoinResult { Yes, No, Indeterminate };

// Equality modulo the commuting-conversion congruence, by bounded BFS from a.
inline JoinResult conv_equal(const TermPtr& a, const TermPtr& b, size_t node_budget = 10000) {
  std::deque<TermPtr> queue{a};
  std::unordered_set<std::string> seen{to_sexp(a)};
  size_t visited = 0;
  while (!queue.empty()) {
    TermPtr cur = queue.front();
    queue.pop_front();
    if (alpha_eq(cur, b)) return JoinResult::Yes;
    if (++visited > node_budget) return JoinResult::Indeterminate;
    for (auto& n : detail::conversion_neighbors(cur)) {
      auto key = to_sexp(n);
      if (seen.insert(key).second) queue.push_back(n);
    }
  }
  return JoinResult::No;
}

inline JoinResult joinable(const TermPtr& t1, const TermPtr& t2, size_t fuel = 10000) {
  auto n1 = normalize(t1, fuel);
  auto n2 = normalize(t2, fuel);
  if (!std::holds_alternative<TermPtr>(n1) || !std::holds_alternative<TermPtr>(n2))
    return JoinResult::Indeterminate;
  return conv_equal(std::get<TermPtr>(n1), std::get<TermPtr>(n2));
}

} // namespace lambek
