#pragma once

// Rule set, derivation trees, and the derivation checker for L, L!, Lk, L!k.
//
// Split/principal conventions (all indices into the conclusion context):
//   Ax   --                         context is exactly [A], succedent A
//   Cut  splits=[i,j]               premise1 = ctx[i..j) |- A (A from premise1),
//                                   premise2 = ctx[0..i) + [A] + ctx[j..) |- B
//   Ur   --                         empty context, succedent I
//   Ul   principal=i (ctx[i]=I)     premise drops entry i
//   Tl   principal=i (ctx[i]=A*B)   premise replaces entry i by A,B
//   Tr   splits=[i]                 premise1 = ctx[0..i) |- A, premise2 = ctx[i..) |- B
//   IRl  --                         succ A/B, premise = ctx + [B] |- A
//   ILl  principal=k, splits=[j]    ctx[k]=A/B, premise1 = ctx[k+1..j) |- B,
//                                   premise2 = ctx[0..k) + [A] + ctx[j..) |- C
//   IRr  --                         succ A\B, premise = [A] + ctx |- B
//   ILr  principal=k, splits=[i]    ctx[k]=A\B, premise1 = ctx[i..k) |- A,
//                                   premise2 = ctx[0..i) + [B] + ctx[k+1..) |- C
//   C    principal=i (ctx[i]=!A)    premise duplicates entry i
//   W    principal=i (ctx[i]=!A)    premise drops entry i
//   Br   --                         succ !A, every entry !-prefixed, premise ctx |- A
//   Bl   principal=i (ctx[i]=!A)    premise replaces !A by A
//   Er   --                         succ kA, every entry k-prefixed, premise ctx |- A
//   El   principal=i (ctx[i]=kA)    premise replaces kA by A
//   E1   principal=i (ctx[i]=kA)    premise swaps entries i,i+1 (kA moved right over
//                                   its right neighbour going conclusion -> premise)
//   E2   principal=i (ctx[i]=kA)    premise swaps entries i-1,i

#include <optional>
#include <string>
#include <vector>

#include "lambek/parse.hpp"
#include "lambek/print.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class RuleName {
  Ax, Cut, Ur, Ul, Tl, Tr, IRl, ILl, IRr, ILr,
  C, W, Br, Bl, Er, El, E1, E2
};

inline const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::Ax: return "ax";
    case RuleName::Cut: return "cut";
    case RuleName::Ur: return "ur";
    case RuleName::Ul: return "ul";
    case RuleName::Tl: return "tl";
    case RuleName::Tr: return "tr";
    case RuleName::IRl: return "irl";
    case RuleName::ILl: return "ill";
    case RuleName::IRr: return "irr";
    case RuleName::ILr: return "ilr";
    case RuleName::C: return "c";
    case RuleName::W: return "w";
    case RuleName::Br: return "br";
    case RuleName::Bl: return "bl";
    case RuleName::Er: return "er";
    case RuleName::El: return "el";
    case RuleName::E1: return "e1";
    case RuleName::E2: return "e2";
  }
  return "?";
}

inline std::optional<RuleName> rule_from_name(const std::string& s) {
  static const std::pair<const char*, RuleName> table[] = {
      {"ax", RuleName::Ax}, {"cut", RuleName::Cut}, {"ur", RuleName::Ur}, {"ul", RuleName::Ul},
      {"tl", RuleName::Tl}, {"tr", RuleName::Tr},   {"irl", RuleName::IRl}, {"ill", RuleName::ILl},
      {"irr", RuleName::IRr}, {"ilr", RuleName::ILr}, {"c", RuleName::C}, {"w", RuleName::W},
      {"br", RuleName::Br}, {"bl", RuleName::Bl},   {"er", RuleName::Er}, {"el", RuleName::El},
      {"e1", RuleName::E1}, {"e2", RuleName::E2}};
  for (auto& [n, r] : table)
    if (s == n) return r;
  return std::nullopt;
}

inline std::vector<RuleName> rules_for(CalculusLevel level) {
  std::vector<RuleName> out = {RuleName::Ax, RuleName::Cut, RuleName::Ur, RuleName::Ul,
                               RuleName::Tl, RuleName::Tr,  RuleName::IRl, RuleName::ILl,
                               RuleName::IRr, RuleName::ILr};
  if (level_admits_bang(level))
    out.insert(out.end(), {RuleName::C, RuleName::W, RuleName::Br, RuleName::Bl});
  if (level_admits_kappa(level))
    out.insert(out.end(), {RuleName::Er, RuleName::El, RuleName::E1, RuleName::E2});
  return out;
}

inline bool rule_legal_at(RuleName r, CalculusLevel level) {
  switch (r) {
    case RuleName::C:
    case RuleName::W:
    case RuleName::Br:
    case RuleName::Bl: return level_admits_bang(level);
    case RuleName::Er:
    case RuleName::El:
    case RuleName::E1:
    case RuleName::E2: return level_admits_kappa(level);
    default: return true;
  }
}

struct Derivation {
  RuleName rule;
  Sequent conclusion;
  std::vector<Derivation> premises;
  std::vector<int> splits;
  std::optional<int> principal;
};

struct CheckError {
  std::string message;
};

using CheckResult = std::optional<CheckError>; // nullopt = ok

namespace detail {

inline Context slice(const Context& c, size_t lo, size_t hi) {
  return Context(c.begin() + lo, c.begin() + hi);
}
inline Context concat3(Context a, const Context& b, const Context& c) {
  a.insert(a.end(), b.begin(), b.end());
  a.insert(a.end(), c.begin(), c.end());
  return a;
}

} // namespace detail

// Validates one node given its (already checked) premise end-sequents.
inline CheckResult check_node(const Derivation& d, CalculusLevel level) {
  using detail::concat3;
  using detail::slice;
  auto err = [&](const std::string& m) -> CheckResult {
    return CheckError{std::string(rule_name(d.rule)) + ": " + m + " in " + render(d.conclusion)};
  };
  if (!rule_legal_at(d.rule, level)) return err("rule not available at this level");
  const Context& ctx = d.conclusion.antecedent;
  const FormulaPtr& succ = d.conclusion.succedent;
  const size_t n = ctx.size();
  auto need_prems = [&](size_t k) { return d.premises.size() == k; };
  auto prem = [&](size_t k) -> const Sequent& { return d.premises[k].conclusion; };
  auto principal_in = [&](size_t lo, size_t hi) -> std::optional<size_t> {
    if (!d.principal || *d.principal < static_cast<int>(lo) || *d.principal >= static_cast<int>(hi))
      return std::nullopt;
    return static_cast<size_t>(*d.principal);
  };
  auto match1 = [&](const Context& want_ctx, const FormulaPtr& want_succ) -> CheckResult {
    if (!context_eq(prem(0).antecedent, want_ctx) || !formula_eq(prem(0).succedent, want_succ))
      return err("premise mismatch");
    return std::nullopt;
  };

  switch (d.rule) {
    case RuleName::Ax:
      if (!need_prems(0)) return err("expects no premises");
      if (n != 1 || !formula_eq(ctx[0].formula, succ)) return err("conclusion is not A |- A");
      return std::nullopt;

    case RuleName::Cut: {
      if (!need_prems(2)) return err("expects two premises");
      if (d.splits.size() != 2) return err("expects splits (i j)");
      size_t i = static_cast<size_t>(d.splits[0]), j = static_cast<size_t>(d.splits[1]);
      if (d.splits[0] < 0 || d.splits[1] < d.splits[0] || j > n) return err("split indices out of range");
      const Sequent& p1 = prem(0);
      if (!context_eq(p1.antecedent, slice(ctx, i, j))) return err("premise 1 context mismatch");
      Context want = concat3(slice(ctx, 0, i), {{"", p1.succedent}}, slice(ctx, j, n));
      if (!context_eq(prem(1).antecedent, want) || !formula_eq(prem(1).succedent, succ))
        return err("premise 2 mismatch");
      return std::nullopt;
    }

    case RuleName::Ur:
      if (!need_prems(0)) return err("expects no premises");
      if (n != 0 || succ->kind != FKind::Unit) return err("conclusion is not |- I");
      return std::nullopt;

    case RuleName::Ul: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      if (ctx[*i].formula->kind != FKind::Unit) return err("principal formula is not I");
      return match1(concat3(slice(ctx, 0, *i), {}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::Tl: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      const auto& f = ctx[*i].formula;
      if (f->kind != FKind::Tensor) return err("principal formula is not a tensor");
      return match1(
          concat3(slice(ctx, 0, *i), {{"", f->left}, {"", f->right}}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::Tr: {
      if (!need_prems(2)) return err("expects two premises");
      if (d.splits.size() != 1 || d.splits[0] < 0 || static_cast<size_t>(d.splits[0]) > n)
        return err("expects split (i)");
      size_t i = static_cast<size_t>(d.splits[0]);
      if (succ->kind != FKind::Tensor) return err("succedent is not a tensor");
      if (!context_eq(prem(0).antecedent, slice(ctx, 0, i)) ||
          !formula_eq(prem(0).succedent, succ->left))
        return err("premise 1 mismatch");
      if (!context_eq(prem(1).antecedent, slice(ctx, i, n)) ||
          !formula_eq(prem(1).succedent, succ->right))
        return err("premise 2 mismatch");
      return std::nullopt;
    }

    case RuleName::IRr: {
      if (!need_prems(1)) return err("expects one premise");
      if (succ->kind != FKind::RImp) return err("succedent is not A \\ B");
      return match1(concat3({{"", succ->left}}, ctx, {}), succ->right);
    }

    case RuleName::IRl: {
      if (!need_prems(1)) return err("expects one premise");
      if (succ->kind != FKind::LImp) return err("succedent is not A / B");
      Context want = ctx;
      want.push_back({"", succ->right});
      return match1(want, succ->left);
    }

    case RuleName::ILr: {
      if (!need_prems(2)) return err("expects two premises");
      auto k = principal_in(0, n);
      if (!k) return err("principal index out of range");
      const auto& f = ctx[*k].formula;
      if (f->kind != FKind::RImp) return err("principal formula is not A \\ B");
      if (d.splits.size() != 1 || d.splits[0] < 0 || static_cast<size_t>(d.splits[0]) > *k)
        return err("expects split (i) with i <= principal");
      size_t i = static_cast<size_t>(d.splits[0]);
      if (!context_eq(prem(0).antecedent, slice(ctx, i, *k)) ||
          !formula_eq(prem(0).succedent, f->left))
        return err("premise 1 mismatch");
      Context want = concat3(slice(ctx, 0, i), {{"", f->right}}, slice(ctx, *k + 1, n));
      if (!context_eq(prem(1).antecedent, want) || !formula_eq(prem(1).succedent, succ))
        return err("premise 2 mismatch");
      return std::nullopt;
    }

    case RuleName::ILl: {
      if (!need_prems(2)) return err("expects two premises");
      auto k = principal_in(0, n);
      if (!k) return err("principal index out of range");
      const auto& f = ctx[*k].formula;
      if (f->kind != FKind::LImp) return err("principal formula is not A / B");
      if (d.splits.size() != 1 || static_cast<size_t>(d.splits[0]) < *k + 1 ||
          static_cast<size_t>(d.splits[0]) > n)
        return err("expects split (j) with j > principal");
      size_t j = static_cast<size_t>(d.splits[0]);
      if (!context_eq(prem(0).antecedent, slice(ctx, *k + 1, j)) ||
          !formula_eq(prem(0).succedent, f->right))
        return err("premise 1 mismatch");
      Context want = concat3(slice(ctx, 0, *k), {{"", f->left}}, slice(ctx, j, n));
      if (!context_eq(prem(1).antecedent, want) || !formula_eq(prem(1).succedent, succ))
        return err("premise 2 mismatch");
      return std::nullopt;
    }

    case RuleName::C: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      const auto& f = ctx[*i].formula;
      if (f->kind != FKind::Bang) return err("principal formula is not !A");
      return match1(
          concat3(slice(ctx, 0, *i), {{"", f}, {"", f}}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::W: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      if (ctx[*i].formula->kind != FKind::Bang) return err("principal formula is not !A");
      return match1(concat3(slice(ctx, 0, *i), {}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::Br: {
      if (!need_prems(1)) return err("expects one premise");
      if (succ->kind != FKind::Bang) return err("succedent is not !A");
      for (auto& e : ctx)
        if (e.formula->kind != FKind::Bang) return err("context entry not !-prefixed");
      return match1(ctx, succ->left);
    }

    case RuleName::Bl: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      const auto& f = ctx[*i].formula;
      if (f->kind != FKind::Bang) return err("principal formula is not !A");
      return match1(concat3(slice(ctx, 0, *i), {{"", f->left}}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::Er: {
      if (!need_prems(1)) return err("expects one premise");
      if (succ->kind != FKind::Kappa) return err("succedent is not kA");
      for (auto& e : ctx)
        if (e.formula->kind != FKind::Kappa) return err("context entry not k-prefixed");
      return match1(ctx, succ->left);
    }

    case RuleName::El: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i) return err("principal index out of range");
      const auto& f = ctx[*i].formula;
      if (f->kind != FKind::Kappa) return err("principal formula is not kA");
      return match1(concat3(slice(ctx, 0, *i), {{"", f->left}}, slice(ctx, *i + 1, n)), succ);
    }

    case RuleName::E1: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(0, n);
      if (!i || *i + 1 >= n) return err("principal index out of range");
      if (ctx[*i].formula->kind != FKind::Kappa) return err("principal formula is not kA");
      Context want = ctx;
      std::swap(want[*i], want[*i + 1]);
      return match1(want, succ);
    }

    case RuleName::E2: {
      if (!need_prems(1)) return err("expects one premise");
      auto i = principal_in(1, n);
      if (!i) return err("principal index out of range");
      if (ctx[*i].formula->kind != FKind::Kappa) return err("principal formula is not kA");
      Context want = ctx;
      std::swap(want[*i - 1], want[*i]);
      return match1(want, succ);
    }
  }
  return err("unknown rule");
}

struct CheckOutcome {
  bool ok;
  Sequent endsequent; // valid when ok
  std::string error;  // valid when !ok
};

inline CheckOutcome check_derivation(const Derivation& d, CalculusLevel level) {
  for (auto& p : d.premises) {
    auto sub = check_derivation(p, level);
    if (!sub.ok) return sub;
  }
  if (auto e = check_node(d, level)) return {false, {}, e->message};
  return {true, d.conclusion, ""};
}

inline bool derivation_uses(const Derivation& d, RuleName r) {
  if (d.rule == r) return true;
  for (auto& p : d.premises)
    if (derivation_uses(p, r)) return true;
  return false;
}

inline size_t count_rule(const Derivation& d, RuleName r) {
  size_t n = d.rule == r ? 1 : 0;
  for (auto& p : d.premises) n += count_rule(p, r);
  return n;
}

inline size_t derivation_size(const Derivation& d) {
  size_t n = 1;
  for (auto& p : d.premises) n += derivation_size(p);
  return n;
}

// ---------------------------------------------------------------------------
// Derivation file format

inline std::string to_sexp(const Derivation& d) {
  std::string s = "(rule ";
  s += rule_name(d.rule);
  s += " :concl " + to_sexp(d.conclusion);
  s += " :splits (";
  for (size_t i = 0; i < d.splits.size(); ++i) s += (i ? " " : "") + std::to_string(d.splits[i]);
  s += ")";
  s += " :principal ";
  s += d.principal ? std::to_string(*d.principal) : "-";
  s += " :prems (";
  for (size_t i = 0; i < d.premises.size(); ++i) s += (i ? " " : "") + to_sexp(d.premises[i]);
  s += "))";
  return s;
}

inline Derivation derivation_from_sexp(const Sexp& e) {
  if (e.head() != "rule") throw std::runtime_error("expected (rule ...)");
  Derivation d;
  auto r = rule_from_name(e.at(1).atom);
  if (!r) throw std::runtime_error("unknown rule name: " + e.at(1).atom);
  d.rule = *r;
  for (size_t i = 2; i + 1 < e.items.size(); i += 2) {
    const std::string& key = e.at(i).atom;
    const Sexp& val = e.at(i + 1);
    if (key == ":concl") {
      d.conclusion = sequent_from_sexp(val);
    } else if (key == ":splits") {
      for (auto& it : val.items) d.splits.push_back(std::stoi(it.atom));
    } else if (key == ":principal") {
      if (!(val.is_atom && val.atom == "-")) d.principal = std::stoi(val.atom);
    } else if (key == ":prems") {
      for (auto& it : val.items) d.premises.push_back(derivation_from_sexp(it));
    } else {
      throw std::runtime_error("unknown derivation key: " + key);
    }
  }
  return d;
}

inline Derivation parse_derivation(const std::string& text) {
  return derivation_from_sexp(parse_sexp(text));
}

} // namespace lambek
