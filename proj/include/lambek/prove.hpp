#pragma once

// Backward (cut-free) proof search. Deterministic: candidates are tried in a
// fixed rule order (cheap shrinking rules first, context-growing contraction
// last), and within a rule by principal index then split index, ascending.
//
// Soundness: every returned derivation passes check_derivation. Completeness
// is exact for plain L (every rule read bottom-up strictly shrinks the total
// formula size of the sequent, so the search space is finite); at the modal
// levels C/E1/E2 can grow or cycle, so a budget caps the search and an
// exhausted budget is reported as indeterminate rather than not-provable.

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambek/sequent.hpp"

namespace lambek {

struct SearchBudget {
  size_t max_depth = 64;
  size_t max_visited = 200000;
};

enum class ProveStatus { Found, NotProvable, BudgetExceeded };

struct ProveResult {
  ProveStatus status;
  std::optional<Derivation> derivation;
  size_t visited = 0;
};

namespace detail {

struct Searcher {
  CalculusLevel level;
  SearchBudget budget;
  size_t visited = 0;
  size_t max_ctx = 0; // cap on context growth through contraction
  bool depth_hit = false;
  bool visited_hit = false;
  bool cap_hit = false;
  // Memo of settled outcomes. Failures are cached only when "pure", i.e. not
  // influenced by a path-loop cutoff or the budget.
  std::unordered_map<std::string, bool> memo_provable;
  std::unordered_map<std::string, Derivation> memo_proof;
  std::unordered_set<std::string> on_path;

  struct Sub {
    bool proved;
    bool pure; // failure not caused by loop cutoff / budget
    Derivation deriv;
  };

  // Attempts one candidate application: premises already spelled out.
  Sub try_candidate(const Sequent& concl, RuleName rule, std::vector<Sequent> prems,
                    std::vector<int> splits, std::optional<int> principal, size_t depth) {
    Derivation d;
    d.rule = rule;
    d.conclusion = concl;
    d.splits = std::move(splits);
    d.principal = principal;
    bool pure = true;
    for (auto& p : prems) {
      Sub s = search(p, depth + 1);
      if (!s.proved) return {false, pure && s.pure, {}};
      pure = pure && s.pure;
      d.premises.push_back(std::move(s.deriv));
    }
    return {true, true, std::move(d)};
  }

  Sub search(const Sequent& seq, size_t depth) {
    std::string key = sequent_key(seq);
    if (auto it = memo_provable.find(key); it != memo_provable.end()) {
      if (it->second) return {true, true, memo_proof.at(key)};
      return {false, true, {}};
    }
    if (on_path.count(key)) return {false, false, {}}; // loop cutoff
    if (depth > budget.max_depth) {
      depth_hit = true;
      return {false, false, {}};
    }
    if (++visited > budget.max_visited) {
      visited_hit = true;
      return {false, false, {}};
    }
    on_path.insert(key);
    Sub out = expand(seq, depth);
    on_path.erase(key);
    if (out.proved) {
      memo_provable[key] = true;
      memo_proof[key] = out.deriv;
    } else if (out.pure) {
      memo_provable[key] = false;
    }
    return out;
  }

  Sub expand(const Sequent& seq, size_t depth) {
    const Context& ctx = seq.antecedent;
    const FormulaPtr& succ = seq.succedent;
    const int n = static_cast<int>(ctx.size());
    bool pure = true;
    auto attempt = [&](RuleName rule, std::vector<Sequent> prems, std::vector<int> splits,
                       std::optional<int> principal) -> std::optional<Sub> {
      Sub s = try_candidate(seq, rule, std::move(prems), std::move(splits), principal, depth);
      if (s.proved) return s;
      pure = pure && s.pure;
      return std::nullopt;
    };
    auto ctx_slice = [&](int lo, int hi) {
      return Context(ctx.begin() + lo, ctx.begin() + hi);
    };
    auto ctx_replace = [&](int i, std::vector<FormulaPtr> with) {
      Context out = ctx_slice(0, i);
      for (auto& f : with) out.push_back({"", f});
      out.insert(out.end(), ctx.begin() + i + 1, ctx.end());
      return out;
    };

    // Ax
    if (n == 1 && formula_eq(ctx[0].formula, succ)) {
      Derivation d{RuleName::Ax, seq, {}, {}, std::nullopt};
      return {true, true, std::move(d)};
    }
    // Ur
    if (n == 0 && succ->kind == FKind::Unit) {
      Derivation d{RuleName::Ur, seq, {}, {}, std::nullopt};
      return {true, true, std::move(d)};
    }
    // Ul
    for (int i = 0; i < n; ++i) {
      if (ctx[i].formula->kind != FKind::Unit) continue;
      if (auto s = attempt(RuleName::Ul, {{ctx_replace(i, {}), succ}}, {}, i)) return *s;
    }
    // Tl
    for (int i = 0; i < n; ++i) {
      const auto& f = ctx[i].formula;
      if (f->kind != FKind::Tensor) continue;
      if (auto s = attempt(RuleName::Tl, {{ctx_replace(i, {f->left, f->right}), succ}}, {}, i))
        return *s;
    }
    // Tr
    if (succ->kind == FKind::Tensor) {
      for (int i = 0; i <= n; ++i) {
        if (auto s = attempt(RuleName::Tr,
                             {{ctx_slice(0, i), succ->left}, {ctx_slice(i, n), succ->right}},
                             {i}, std::nullopt))
          return *s;
      }
    }
    // IRl
    if (succ->kind == FKind::LImp) {
      Context want = ctx;
      want.push_back({"", succ->right});
      if (auto s = attempt(RuleName::IRl, {{want, succ->left}}, {}, std::nullopt)) return *s;
    }
    // ILl
    for (int k = 0; k < n; ++k) {
      const auto& f = ctx[k].formula;
      if (f->kind != FKind::LImp) continue;
      for (int j = k + 1; j <= n; ++j) {
        Context c2 = ctx_slice(0, k);
        c2.push_back({"", f->left});
        c2.insert(c2.end(), ctx.begin() + j, ctx.end());
        if (auto s = attempt(RuleName::ILl, {{ctx_slice(k + 1, j), f->right}, {c2, succ}}, {j}, k))
          return *s;
      }
    }
    // IRr
    if (succ->kind == FKind::RImp) {
      Context want{{"", succ->left}};
      want.insert(want.end(), ctx.begin(), ctx.end());
      if (auto s = attempt(RuleName::IRr, {{want, succ->right}}, {}, std::nullopt)) return *s;
    }
    // ILr
    for (int k = 0; k < n; ++k) {
      const auto& f = ctx[k].formula;
      if (f->kind != FKind::RImp) continue;
      for (int i = 0; i <= k; ++i) {
        Context c2 = ctx_slice(0, i);
        c2.push_back({"", f->right});
        c2.insert(c2.end(), ctx.begin() + k + 1, ctx.end());
        if (auto s = attempt(RuleName::ILr, {{ctx_slice(i, k), f->left}, {c2, succ}}, {i}, k))
          return *s;
      }
    }
    if (level_admits_bang(level)) {
      // Br
      if (succ->kind == FKind::Bang) {
        bool all_bang = true;
        for (auto& e : ctx) all_bang = all_bang && e.formula->kind == FKind::Bang;
        if (all_bang)
          if (auto s = attempt(RuleName::Br, {{ctx, succ->left}}, {}, std::nullopt)) return *s;
      }
      // Bl
      for (int i = 0; i < n; ++i) {
        const auto& f = ctx[i].formula;
        if (f->kind != FKind::Bang) continue;
        if (auto s = attempt(RuleName::Bl, {{ctx_replace(i, {f->left}), succ}}, {}, i)) return *s;
      }
      // W
      for (int i = 0; i < n; ++i) {
        if (ctx[i].formula->kind != FKind::Bang) continue;
        if (auto s = attempt(RuleName::W, {{ctx_replace(i, {}), succ}}, {}, i)) return *s;
      }
    }
    if (level_admits_kappa(level)) {
      // Er
      if (succ->kind == FKind::Kappa) {
        bool all_k = true;
        for (auto& e : ctx) all_k = all_k && e.formula->kind == FKind::Kappa;
        if (all_k)
          if (auto s = attempt(RuleName::Er, {{ctx, succ->left}}, {}, std::nullopt)) return *s;
      }
      // E1
      for (int i = 0; i + 1 < n; ++i) {
        if (ctx[i].formula->kind != FKind::Kappa) continue;
        Context want = ctx;
        std::swap(want[i], want[i + 1]);
        if (auto s = attempt(RuleName::E1, {{want, succ}}, {}, i)) return *s;
      }
      // E2
      for (int i = 1; i < n; ++i) {
        if (ctx[i].formula->kind != FKind::Kappa) continue;
        Context want = ctx;
        std::swap(want[i - 1], want[i]);
        if (auto s = attempt(RuleName::E2, {{want, succ}}, {}, i)) return *s;
      }
      // El
      for (int i = 0; i < n; ++i) {
        const auto& f = ctx[i].formula;
        if (f->kind != FKind::Kappa) continue;
        if (auto s = attempt(RuleName::El, {{ctx_replace(i, {f->left}), succ}}, {}, i)) return *s;
      }
    }
    if (level_admits_bang(level)) {
      // C grows the context; cap it so the space stays finite. A pruned
      // application taints the verdict (indeterminate, not "no").
      for (int i = 0; i < n; ++i) {
        const auto& f = ctx[i].formula;
        if (f->kind != FKind::Bang) continue;
        if (static_cast<size_t>(n) >= max_ctx) {
          cap_hit = true;
          pure = false;
          break;
        }
        if (auto s = attempt(RuleName::C, {{ctx_replace(i, {f, f}), succ}}, {}, i)) return *s;
      }
    }
    return {false, pure, {}};
  }
};

} // namespace detail

// Iterative deepening: contraction makes failing subproblems explosive, so a
// single deep DFS can drown before it reaches a small proof further right in
// the candidate order. Shallow passes find small proofs first; a pass that
// finishes without hitting any cutoff is a definitive "not provable" (loop
// cutoffs do not taint the root verdict: a minimal proof never repeats a
// sequent along a branch). The visited budget is shared across passes.
inline ProveResult prove(const Sequent& goal, CalculusLevel level, SearchBudget budget = {}) {
  size_t total = formula_size(goal.succedent);
  for (auto& e : goal.antecedent) total += formula_size(e.formula);
  size_t used = 0;
  // Every plain-L rule strictly shrinks the sequent, so proofs are depth-bounded
  // by the connective count and the shallow deepening passes are pure overhead.
  size_t start = 1;
  if (!level_admits_bang(level) && !level_admits_kappa(level))
    start = std::min(total + 1, budget.max_depth);
  for (size_t d = start; d <= budget.max_depth; ++d) {
    detail::Searcher s;
    s.level = level;
    s.budget = {d, budget.max_visited};
    s.visited = used;
    s.max_ctx = total + 4;
    auto sub = s.search(goal, 0);
    used = s.visited;
    if (sub.proved) return {ProveStatus::Found, std::move(sub.deriv), used};
    if (!s.depth_hit && !s.visited_hit && !s.cap_hit)
      return {ProveStatus::NotProvable, std::nullopt, used};
    if (s.visited_hit) break;                 // global budget exhausted
    if (!s.depth_hit && s.cap_hit) break;     // deepening cannot reach past the cap
  }
  return {ProveStatus::BudgetExceeded, std::nullopt, used};
}

} // namespace lambek
