#pragma once

// Seeded random generation of well-typed terms (with their contexts and
// types). Deterministic for a fixed seed; each production tracks the type of
// what it builds so no checker round-trip is needed during generation.

#include <random>
#include <string>
#include <vector>

#include "lambek/syntax.hpp"

namespace lambek {

struct GenJudgment {
  Context ctx;
  TermPtr term;
  FormulaPtr type;
};

class TermGen {
 public:
  TermGen(uint64_t seed, CalculusLevel level) : rng_(seed), level_(level) {}

  GenJudgment judgment(int depth) { return gen(depth); }

 private:
  std::mt19937_64 rng_;
  CalculusLevel level_;
  size_t counter_ = 0;

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }
  std::string fresh() { return "v" + std::to_string(counter_++); }

  FormulaPtr atom() {
    static const char* names[] = {"a", "b", "c", "e"};
    return Formula::mk_atom(names[pick(4)]);
  }

  GenJudgment hyp(FormulaPtr a) {
    std::string x = fresh();
    return {{{x, a}}, Term::mk_var(x), a};
  }

  GenJudgment gen(int depth) {
    if (depth <= 0) {
      if (pick(4) == 0) return {{}, Term::unit(), Formula::unit()};
      return hyp(atom());
    }
    size_t n_choices = 9;
    if (level_admits_bang(level_)) n_choices += 4;
    if (level_admits_kappa(level_)) n_choices += 4;
    size_t c = pick(n_choices);
    if (c >= 9 && !level_admits_bang(level_)) c += 4; // skip the ! block
    switch (c) {
      case 0: return gen(depth - 1);
      case 1: { // tensor
        auto l = gen(depth - 1);
        auto r = gen(depth - 1);
        Context ctx = l.ctx;
        ctx.insert(ctx.end(), r.ctx.begin(), r.ctx.end());
        return {std::move(ctx), Term::tensor(l.term, r.term),
                Formula::tensor(l.type, r.type)};
      }
      case 2: { // lam_r binds the leftmost hypothesis
        auto b = gen(depth - 1);
        if (b.ctx.empty()) {
          auto h = hyp(atom());
          b.ctx.insert(b.ctx.begin(), h.ctx[0]);
          b.term = Term::tensor(h.term, b.term);
          b.type = Formula::tensor(h.type, b.type);
        }
        CtxEntry e = b.ctx.front();
        b.ctx.erase(b.ctx.begin());
        return {std::move(b.ctx), Term::lam(TKind::LamR, e.var, e.formula, b.term),
                Formula::rimp(e.formula, b.type)};
      }
      case 3: { // lam_l binds the rightmost hypothesis
        auto b = gen(depth - 1);
        if (b.ctx.empty()) {
          auto h = hyp(atom());
          b.ctx.push_back(h.ctx[0]);
          b.term = Term::tensor(b.term, h.term);
          b.type = Formula::tensor(b.type, h.type);
        }
        CtxEntry e = b.ctx.back();
        b.ctx.pop_back();
        return {std::move(b.ctx), Term::lam(TKind::LamL, e.var, e.formula, b.term),
                Formula::limp(b.type, e.formula)};
      }
      case 4: { // app_r against a fresh function hypothesis
        auto arg = gen(depth - 1);
        FormulaPtr res = atom();
        auto f = hyp(Formula::rimp(arg.type, res));
        Context ctx = arg.ctx;
        ctx.push_back(f.ctx[0]);
        return {std::move(ctx), Term::app(TKind::AppR, f.term, arg.term), res};
      }
      case 5: { // app_l against a fresh function hypothesis
        auto arg = gen(depth - 1);
        FormulaPtr res = atom();
        auto f = hyp(Formula::limp(res, arg.type));
        Context ctx = f.ctx;
        ctx.insert(ctx.end(), arg.ctx.begin(), arg.ctx.end());
        return {std::move(ctx), Term::app(TKind::AppL, f.term, arg.term), res};
      }
      case 6: { // let-unit
        GenJudgment s =
            coin() ? GenJudgment{{}, Term::unit(), Formula::unit()} : hyp(Formula::unit());
        auto b = gen(depth - 1);
        // scrutinee context leads: a unit pattern leaves no marker in the
        // body, so nested splitting assumes the scrutinee-first layout
        Context ctx = s.ctx;
        ctx.insert(ctx.end(), b.ctx.begin(), b.ctx.end());
        PatternPtr p = pick(4) == 0 ? Pattern::wildcard() : Pattern::unit();
        return {std::move(ctx), Term::let(s.term, p, b.term), b.type};
      }
      case 7: { // let-tensor: pattern variables consumed at the front of the body
        auto l = gen(depth - 1);
        auto r = gen(depth - 1);
        Context ctx = l.ctx;
        ctx.insert(ctx.end(), r.ctx.begin(), r.ctx.end());
        TermPtr scrut = Term::tensor(l.term, r.term);
        auto b = gen(depth - 1);
        std::string x = fresh(), y = fresh();
        TermPtr body = Term::tensor(Term::tensor(Term::mk_var(x), Term::mk_var(y)), b.term);
        ctx.insert(ctx.end(), b.ctx.begin(), b.ctx.end());
        return {std::move(ctx),
                Term::let(scrut, Pattern::tensor(Pattern::mk_var(x), Pattern::mk_var(y)), body),
                Formula::tensor(Formula::tensor(l.type, r.type), b.type)};
      }
      case 8: { // a beta redex on an identity
        auto arg = gen(depth - 1);
        std::string x = fresh();
        TermPtr id = Term::lam(TKind::LamL, x, arg.type, Term::mk_var(x));
        return {std::move(arg.ctx), Term::app(TKind::AppL, id, arg.term), arg.type};
      }
      case 9: { // derelict!
        auto s = bang_source(depth - 1);
        return {std::move(s.ctx), Term::derelict(TKind::DerelictBang, s.term), s.type->left};
      }
      case 10: { // discard
        auto s = bang_source(depth - 1);
        auto b = gen(depth - 1);
        Context ctx = s.ctx;
        ctx.insert(ctx.end(), b.ctx.begin(), b.ctx.end());
        return {std::move(ctx), Term::discard(s.term, b.term), b.type};
      }
      case 11: { // copy
        auto s = bang_source(depth - 1);
        auto b = gen(depth - 1);
        std::string x = fresh(), y = fresh();
        TermPtr body = Term::tensor(Term::tensor(Term::mk_var(x), Term::mk_var(y)), b.term);
        Context ctx = s.ctx;
        ctx.insert(ctx.end(), b.ctx.begin(), b.ctx.end());
        return {std::move(ctx), Term::copy(s.term, x, y, body),
                Formula::tensor(Formula::tensor(s.type, s.type), b.type)};
      }
      case 12: { // promote!
        size_t n = 1 + pick(2);
        std::vector<TermPtr> srcs;
        std::vector<std::string> vars;
        Context ctx;
        TermPtr body;
        FormulaPtr bty;
        for (size_t r = 0; r < n; ++r) {
          auto s = hyp(Formula::bang(atom()));
          ctx.insert(ctx.end(), s.ctx.begin(), s.ctx.end());
          srcs.push_back(s.term);
          std::string x = fresh();
          vars.push_back(x);
          bool bare = coin();
          TermPtr use = bare ? Term::mk_var(x)
                             : Term::derelict(TKind::DerelictBang, Term::mk_var(x));
          FormulaPtr uty = bare ? s.type : s.type->left;
          body = r == 0 ? use : Term::tensor(body, use);
          bty = r == 0 ? uty : Formula::tensor(bty, uty);
        }
        return {std::move(ctx), Term::promote(TKind::PromoteBang, srcs, vars, body),
                Formula::bang(bty)};
      }
      case 13: { // derelictk
        auto s = hyp(Formula::kappa(atom()));
        return {std::move(s.ctx), Term::derelict(TKind::DerelictKappa, s.term), s.type->left};
      }
      case 14: { // promotek
        auto s = hyp(Formula::kappa(atom()));
        std::string x = fresh();
        bool bare = coin();
        TermPtr body =
            bare ? Term::mk_var(x) : Term::derelict(TKind::DerelictKappa, Term::mk_var(x));
        FormulaPtr bty = bare ? s.type : s.type->left;
        return {std::move(s.ctx), Term::promote(TKind::PromoteKappa, {s.term}, {x}, body),
                Formula::kappa(bty)};
      }
      case 15:
      case 16: { // exchl / exchr
        bool left = c == 15;
        auto s1 = hyp(Formula::kappa(atom()));
        auto s2 = gen(depth - 1);
        auto b = gen(depth - 1);
        std::string x = fresh(), y = fresh();
        TermPtr pair = left ? Term::tensor(Term::mk_var(y), Term::mk_var(x))
                            : Term::tensor(Term::mk_var(x), Term::mk_var(y));
        FormulaPtr pty = left ? Formula::tensor(s2.type, s1.type)
                              : Formula::tensor(s1.type, s2.type);
        TermPtr body = Term::tensor(pair, b.term);
        Context ctx;
        if (left) {
          ctx = s1.ctx;
          ctx.insert(ctx.end(), s2.ctx.begin(), s2.ctx.end());
        } else {
          ctx = s2.ctx;
          ctx.insert(ctx.end(), s1.ctx.begin(), s1.ctx.end());
        }
        ctx.insert(ctx.end(), b.ctx.begin(), b.ctx.end());
        return {std::move(ctx),
                Term::exch(left ? TKind::ExchL : TKind::ExchR, s1.term, s2.term, x, y, body),
                Formula::tensor(pty, b.type)};
      }
    }
    return hyp(atom());
  }

  // !-typed scrutinee: usually a fresh hypothesis, sometimes a single-source
  // promotion (kept to one source so the duplicated form stays derivable by
  // adjacent contraction)
  GenJudgment bang_source(int depth) {
    if (depth > 0 && pick(3) == 0) {
      auto s = hyp(Formula::bang(atom()));
      std::string x = fresh();
      return {std::move(s.ctx),
              Term::promote(TKind::PromoteBang, {s.term}, {x},
                            Term::derelict(TKind::DerelictBang, Term::mk_var(x))),
              s.type};
    }
    return hyp(Formula::bang(atom()));
  }
};

} // namespace lambek
