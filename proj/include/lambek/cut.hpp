#pragma once

// Cut elimination: standard principal-cut and permutation steps, fuel-bounded.
//
// reduce(d1, d2, pos) takes cut-free d1 : Γ |- A and d2 : Δ1, A, Δ2 |- B with
// A at index pos, and produces a cut-free derivation of Δ1, Γ, Δ2 |- B.
// Order of cases: axioms; permute into d1 while it ends in a left/structural
// rule; then d2's last rule either consumes A principally (key reductions) or
// is permuted above the cut. By the time we look at d2, d1 ends in a right
// rule, so its succedent's outermost connective matches its last rule and the
// Br/Er side conditions (all-modal contexts) carry over automatically.
//
// Known hole: the Br-vs-C principal case duplicates the promotion context, and
// with adjacent-only contraction and no exchange for ! the doubled block can
// only be re-contracted when it has at most one formula. Larger blocks make
// the procedure stop; that is reported through FuelExhausted.

#include <stdexcept>
#include <variant>

#include "lambek/sequent.hpp"

namespace lambek {

struct FuelExhausted {
  size_t remaining_cuts;
};

namespace detail {

struct CutFuelOut {};
struct CutStuck {};

struct CutEliminator {
  size_t fuel;

  static Context splice(const Context& outer, size_t pos, const Context& inner) {
    Context out(outer.begin(), outer.begin() + pos);
    out.insert(out.end(), inner.begin(), inner.end());
    out.insert(out.end(), outer.begin() + pos + 1, outer.end());
    return out;
  }

  // Moves the kappa-block ctx[pos..pos+len) of d's conclusion left by one
  // slot, i.e. builds the derivation whose conclusion swaps the block with
  // its left neighbour, using one E1 per block element.
  static Derivation block_left(Derivation d, size_t pos, size_t len) {
    // conclusion of d: ..., X@pos-1, K1..Kn, ... ; want ..., K1..Kn, X, ...
    for (size_t r = 0; r < len; ++r) {
      // move K_{r+1} (currently at pos-1+r+1 = pos+r) left over X
      Context c = d.conclusion.antecedent;
      std::swap(c[pos - 1 + r], c[pos + r]);
      Derivation up = std::move(d);
      d = Derivation{RuleName::E1, {std::move(c), up.conclusion.succedent}, {std::move(up)},
                     {}, static_cast<int>(pos - 1 + r)};
    }
    return d;
  }

  // Mirror: moves the kappa-block right by one slot using one E2 per element.
  static Derivation block_right(Derivation d, size_t pos, size_t len) {
    // conclusion of d: ..., K1..Kn@pos, X, ... ; want ..., X, K1..Kn, ...
    for (size_t r = 0; r < len; ++r) {
      // move K_n-r (currently at pos+len-1-r) right over X
      Context c = d.conclusion.antecedent;
      size_t at = pos + len - 1 - r;
      std::swap(c[at], c[at + 1]);
      Derivation up = std::move(d);
      d = Derivation{RuleName::E2, {std::move(c), up.conclusion.succedent}, {std::move(up)},
                     {}, static_cast<int>(at + 1)};
    }
    return d;
  }

  Derivation reduce(const Derivation& d1, const Derivation& d2, size_t pos) {
    if (fuel == 0) throw CutFuelOut{};
    --fuel;
    const FormulaPtr A = d1.conclusion.succedent;
    const Context& G = d1.conclusion.antecedent; // Γ
    const size_t g = G.size();
    const Context& D = d2.conclusion.antecedent; // Δ1, A, Δ2
    Sequent result{splice(D, pos, G), d2.conclusion.succedent};

    // --- axioms
    if (d1.rule == RuleName::Ax) return d2;
    if (d2.rule == RuleName::Ax) return d1;

    // --- permute the cut into d1 while d1 ends in a left/structural rule
    switch (d1.rule) {
      case RuleName::Ul:
      case RuleName::Tl:
      case RuleName::C:
      case RuleName::W:
      case RuleName::Bl:
      case RuleName::El:
      case RuleName::E1:
      case RuleName::E2: {
        Derivation inner = reduce(d1.premises[0], d2, pos);
        Derivation out{d1.rule, result, {std::move(inner)}, {},
                       static_cast<int>(pos) + *d1.principal};
        return out;
      }
      case RuleName::ILr: {
        // premise 2 carries the succedent
        Derivation inner = reduce(d1.premises[1], d2, pos);
        return Derivation{RuleName::ILr, result, {d1.premises[0], std::move(inner)},
                          {static_cast<int>(pos) + d1.splits[0]},
                          static_cast<int>(pos) + *d1.principal};
      }
      case RuleName::ILl: {
        Derivation inner = reduce(d1.premises[1], d2, pos);
        return Derivation{RuleName::ILl, result, {d1.premises[0], std::move(inner)},
                          {static_cast<int>(pos) + d1.splits[0]},
                          static_cast<int>(pos) + *d1.principal};
      }
      default: break; // right rule: Ur, Tr, IRr, IRl, Br, Er
    }

    // --- d2's last rule
    const int p = d2.principal.value_or(-1);
    const int ipos = static_cast<int>(pos);
    const int shift = static_cast<int>(g) - 1;
    auto shift_ge = [&](int idx) { return idx > ipos ? idx + shift : idx; };

    switch (d2.rule) {
      // ---- principal consumption of A at pos
      case RuleName::Ul:
        if (p == ipos) return d2.premises[0]; // A = I, Γ empty (d1 ends in Ur)
        break;
      case RuleName::Tl:
        if (p == ipos) {
          // A = A1*A2, d1 = Tr(q1: Γ1|-A1, q2: Γ2|-A2); premise has A1,A2 at pos
          const Derivation& q1 = d1.premises[0];
          const Derivation& q2 = d1.premises[1];
          Derivation r1 = reduce(q1, d2.premises[0], pos);
          return reduce(q2, r1, pos + q1.conclusion.antecedent.size());
        }
        break;
      case RuleName::ILr:
        if (p == ipos) {
          // A = A1 \ A2, d1 = IRr with premise q : A1,Γ |- A2
          const Derivation& s1 = d2.premises[0]; // ctx[s..pos) |- A1
          const Derivation& s2 = d2.premises[1]; // Δ1', A2, Δ2 |- B
          Derivation r1 = reduce(s1, d1.premises[0], 0); // Δm, Γ |- A2
          return reduce(r1, s2, d2.splits[0]);
        }
        break;
      case RuleName::ILl:
        if (p == ipos) {
          // A = A1 / A2, d1 = IRl with premise q : Γ, A2 |- A1
          const Derivation& s1 = d2.premises[0]; // ctx(pos..j) |- A2
          const Derivation& s2 = d2.premises[1]; // Δ1, A1, Δ2(j..) |- B
          Derivation r1 = reduce(s1, d1.premises[0], g); // Γ, Δm |- A1
          return reduce(r1, s2, pos);
        }
        break;
      case RuleName::Bl:
        if (p == ipos) // A = !A1, d1 = Br over !Γ with premise q : !Γ |- A1
          return reduce(d1.premises[0], d2.premises[0], pos);
        break;
      case RuleName::El:
        if (p == ipos) // A = kA1, d1 = Er over kΓ
          return reduce(d1.premises[0], d2.premises[0], pos);
        break;
      case RuleName::W:
        if (p == ipos) {
          // weaken each element of Γ in place (Γ is all-! since d1 = Br)
          Derivation out = d2.premises[0]; // Δ1, Δ2 |- B
          for (size_t r = 0; r < g; ++r) {
            Context c = out.conclusion.antecedent;
            c.insert(c.begin() + pos + r, G[r]);
            Derivation up = std::move(out);
            out = Derivation{RuleName::W, {std::move(c), up.conclusion.succedent},
                             {std::move(up)}, {}, static_cast<int>(pos + r)};
          }
          return out;
        }
        break;
      case RuleName::C:
        if (p == ipos) {
          // duplicate the cut, then re-contract the doubled block
          Derivation r1 = reduce(d1, d2.premises[0], pos + 1); // Δ1, A, Γ, Δ2
          Derivation r2 = reduce(d1, r1, pos);                 // Δ1, Γ, Γ, Δ2
          if (g == 0) return r2;
          if (g > 1) throw CutStuck{}; // block contraction underivable here
          Context c = r2.conclusion.antecedent;
          c.erase(c.begin() + pos);
          return Derivation{RuleName::C, {std::move(c), r2.conclusion.succedent},
                            {std::move(r2)}, {}, ipos};
        }
        break;
      case RuleName::E1:
        if (p == ipos) {
          // A = kA1 is the mover; premise has A at pos+1
          Derivation r1 = reduce(d1, d2.premises[0], pos + 1); // Δ1, B0, kΓ, Δ2
          return block_left(std::move(r1), pos + 1, g);
        }
        if (p + 1 == ipos) {
          // A is the formula being jumped; premise has A at p
          Derivation r1 = reduce(d1, d2.premises[0], p); // Δ1, Γ, kX, Δ2
          // conclusion wants kX first, then Γ: move kX left over the block,
          // one E1 per element of Γ
          Derivation out = std::move(r1);
          for (size_t r = 0; r < g; ++r) {
            Context c = out.conclusion.antecedent;
            size_t at = p + g - 1 - r; // position of kX's left neighbour
            std::swap(c[at], c[at + 1]);
            Derivation up = std::move(out);
            out = Derivation{RuleName::E1, {std::move(c), up.conclusion.succedent},
                             {std::move(up)}, {}, static_cast<int>(at)};
          }
          return out;
        }
        break;
      case RuleName::E2:
        if (p == ipos) {
          // A = kA1 is the mover; premise has A at pos-1
          Derivation r1 = reduce(d1, d2.premises[0], pos - 1); // Δ1, kΓ, B0, Δ2
          return block_right(std::move(r1), pos - 1, g);
        }
        if (p - 1 == ipos) {
          // A is the jumped formula; premise has A at p
          Derivation r1 = reduce(d1, d2.premises[0], p); // Δ1, kX, Γ, Δ2
          // conclusion wants Γ first, then kX: move kX right over the block
          Derivation out = std::move(r1);
          for (size_t r = 0; r < g; ++r) {
            Context c = out.conclusion.antecedent;
            size_t at = pos + r; // kX sits at pos+r before this step... swap right
            std::swap(c[at], c[at + 1]);
            Derivation up = std::move(out);
            out = Derivation{RuleName::E2, {std::move(c), up.conclusion.succedent},
                             {std::move(up)}, {}, static_cast<int>(at + 1)};
          }
          return out;
        }
        break;
      default: break;
    }

    // ---- permute the cut above d2's last rule (A not principal there)
    switch (d2.rule) {
      case RuleName::Ul:
      case RuleName::Tl:
      case RuleName::C:
      case RuleName::W:
      case RuleName::Bl:
      case RuleName::El: {
        // single premise; A's index in the premise shifts around principal p
        int delta = d2.rule == RuleName::Tl || d2.rule == RuleName::C ? 1
                    : d2.rule == RuleName::W                          ? -1
                    : d2.rule == RuleName::Ul                         ? -1
                                                                      : 0;
        int ppos = ipos > p ? ipos + delta : ipos;
        Derivation inner = reduce(d1, d2.premises[0], ppos);
        return Derivation{d2.rule, result, {std::move(inner)}, {}, shift_ge(p)};
      }
      case RuleName::E1: {
        // A outside {p, p+1}
        int ppos = ipos; // swap of p,p+1 does not move other indices
        Derivation inner = reduce(d1, d2.premises[0], ppos);
        return Derivation{RuleName::E1, result, {std::move(inner)}, {}, shift_ge(p)};
      }
      case RuleName::E2: {
        Derivation inner = reduce(d1, d2.premises[0], ipos);
        return Derivation{RuleName::E2, result, {std::move(inner)}, {}, shift_ge(p)};
      }
      case RuleName::Tr: {
        int s = d2.splits[0];
        if (ipos < s) {
          Derivation inner = reduce(d1, d2.premises[0], pos);
          return Derivation{RuleName::Tr, result, {std::move(inner), d2.premises[1]},
                            {s + shift}, std::nullopt};
        }
        Derivation inner = reduce(d1, d2.premises[1], pos - s);
        return Derivation{RuleName::Tr, result, {d2.premises[0], std::move(inner)}, {s},
                          std::nullopt};
      }
      case RuleName::IRr: { // premise: A1, ctx |- B2; A shifts by +1
        Derivation inner = reduce(d1, d2.premises[0], pos + 1);
        return Derivation{RuleName::IRr, result, {std::move(inner)}, {}, std::nullopt};
      }
      case RuleName::IRl: { // premise: ctx, B2 |- A1; A keeps its index
        Derivation inner = reduce(d1, d2.premises[0], pos);
        return Derivation{RuleName::IRl, result, {std::move(inner)}, {}, std::nullopt};
      }
      case RuleName::ILr: {
        // premises: ctx[s..k) |- A1 and ctx[0..s) + [B1] + ctx[k+1..) |- B
        int s = d2.splits[0], k = p;
        if (ipos >= s && ipos < k) {
          Derivation inner = reduce(d1, d2.premises[0], pos - s);
          return Derivation{RuleName::ILr, result, {std::move(inner), d2.premises[1]},
                            {s}, k + shift};
        }
        int ppos = ipos < s ? ipos : ipos - (k - s); // B1 replaces segment [s..k]
        Derivation inner = reduce(d1, d2.premises[1], ppos);
        return Derivation{RuleName::ILr, result, {d2.premises[0], std::move(inner)},
                          {shift_ge(s)}, shift_ge(k)};
      }
      case RuleName::ILl: {
        // premises: ctx(k..j) |- A2 and ctx[0..k) + [B1] + ctx[j..) |- B
        int j = d2.splits[0], k = p;
        if (ipos > k && ipos < j) {
          Derivation inner = reduce(d1, d2.premises[0], pos - (k + 1));
          return Derivation{RuleName::ILl, result, {std::move(inner), d2.premises[1]},
                            {j + shift}, k};
        }
        int ppos = ipos < k ? ipos : ipos - (j - k - 1);
        Derivation inner = reduce(d1, d2.premises[1], ppos);
        return Derivation{RuleName::ILl, result, {d2.premises[0], std::move(inner)},
                          {shift_ge(j)}, shift_ge(k)};
      }
      case RuleName::Br: { // all of d2's context is !-prefixed, so A is, and
                           // d1 ends in Br, so Γ is all-! too
        Derivation inner = reduce(d1, d2.premises[0], pos);
        return Derivation{RuleName::Br, result, {std::move(inner)}, {}, std::nullopt};
      }
      case RuleName::Er: {
        Derivation inner = reduce(d1, d2.premises[0], pos);
        return Derivation{RuleName::Er, result, {std::move(inner)}, {}, std::nullopt};
      }
      default:
        throw std::logic_error("cut reduction: unhandled configuration");
    }
  }

  Derivation eliminate(const Derivation& d) {
    Derivation out;
    out.rule = d.rule;
    out.conclusion = d.conclusion;
    out.splits = d.splits;
    out.principal = d.principal;
    for (auto& pr : d.premises) out.premises.push_back(eliminate(pr));
    if (out.rule != RuleName::Cut) return out;
    return reduce(out.premises[0], out.premises[1], out.splits[0]);
  }
};

} // namespace detail

// Returns a cut-free derivation with the same endsequent, or FuelExhausted
// when the step budget runs out (or a Br-vs-C block contraction is required
// that the adjacent-contraction calculus cannot express).
inline std::variant<Derivation, FuelExhausted> eliminate_cut(const Derivation& d,
                                                             size_t fuel = 10000) {
  detail::CutEliminator ce{fuel};
  try {
    return ce.eliminate(d);
  } catch (detail::CutFuelOut&) {
    return FuelExhausted{count_rule(d, RuleName::Cut)};
  } catch (detail::CutStuck&) {
    return FuelExhausted{count_rule(d, RuleName::Cut)};
  }
}

} // namespace lambek
