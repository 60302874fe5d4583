#pragma once

// Concrete-syntax rendering (minimal parenthesization) and canonical
// S-expression output. parse(render(x)) == x structurally.

#include <sstream>
#include <string>

#include "lambek/syntax.hpp"

namespace lambek {

namespace detail {

// Formula precedence: 1 = implications, 2 = tensor, 3 = prefix modality.
inline void render_formula_rec(const FormulaPtr& f, int min_prec, std::ostringstream& os) {
  auto paren = [&](auto&& body) {
    os << '(';
    body();
    os << ')';
  };
  switch (f->kind) {
    case FKind::Atom: os << f->atom; return;
    case FKind::Unit: os << 'I'; return;
    case FKind::Bang:
    case FKind::Kappa: {
      auto body = [&] {
        os << (f->kind == FKind::Bang ? "!" : "k ");
        render_formula_rec(f->left, 3, os);
      };
      if (min_prec > 3) paren(body); else body();
      return;
    }
    case FKind::Tensor: {
      auto body = [&] {
        render_formula_rec(f->left, 2, os);
        os << " * ";
        render_formula_rec(f->right, 3, os);
      };
      if (min_prec > 2) paren(body); else body();
      return;
    }
    case FKind::RImp: {
      // right-associative; a LImp child always needs parens (mixing is an error)
      auto body = [&] {
        render_formula_rec(f->left, 2, os);
        os << " \\ ";
        if (f->right->kind == FKind::LImp) {
          os << '(';
          render_formula_rec(f->right, 0, os);
          os << ')';
        } else {
          render_formula_rec(f->right, 1, os);
        }
      };
      if (min_prec > 1) paren(body); else body();
      return;
    }
    case FKind::LImp: {
      // left-associative
      auto body = [&] {
        if (f->left->kind == FKind::RImp) {
          os << '(';
          render_formula_rec(f->left, 0, os);
          os << ')';
        } else {
          render_formula_rec(f->left, 1, os);
        }
        os << " / ";
        // divisor side shows its grouping explicitly
        render_formula_rec(f->right, 3, os);
      };
      if (min_prec > 1) paren(body); else body();
      return;
    }
  }
}

} // namespace detail

inline std::string render(const FormulaPtr& f) {
  std::ostringstream os;
  detail::render_formula_rec(f, 0, os);
  return os.str();
}

inline std::string render(const PatternPtr& p) {
  switch (p->kind) {
    case PKind::Wildcard: return "-";
    case PKind::Var: return p->var;
    case PKind::UnitPat: return "unit";
    case PKind::TensorPat: {
      auto side = [](const PatternPtr& q) {
        auto s = render(q);
        return q->kind == PKind::TensorPat ? "(" + s + ")" : s;
      };
      // left-associative in the concrete syntax
      auto l = p->p1->kind == PKind::TensorPat ? render(p->p1) : side(p->p1);
      return l + " * " + side(p->p2);
    }
  }
  return {};
}

namespace detail {

// Term contexts: 0 = anywhere, 2 = tensor operand, 3 = app/derelict argument.
inline void render_term_rec(const TermPtr& t, int min_prec, std::ostringstream& os) {
  auto paren = [&](auto&& body) {
    os << '(';
    body();
    os << ')';
  };
  auto atom_arg = [&](const TermPtr& s) {
    if (s->kind == TKind::Var || s->kind == TKind::Unit) {
      render_term_rec(s, 0, os);
    } else {
      os << '(';
      render_term_rec(s, 0, os);
      os << ')';
    }
  };
  auto keyword_form = [&](auto&& body) {
    if (min_prec > 0) paren(body); else body();
  };
  switch (t->kind) {
    case TKind::Var: os << t->var; return;
    case TKind::Unit: os << "unit"; return;
    case TKind::Tensor: {
      auto body = [&] {
        render_term_rec(t->t1, 2, os);
        os << " * ";
        render_term_rec(t->t2, 3, os);
      };
      if (min_prec > 2) paren(body); else body();
      return;
    }
    case TKind::LamL:
    case TKind::LamR:
      keyword_form([&] {
        os << (t->kind == TKind::LamL ? "\\l " : "\\r ") << t->var << ':' << render(t->ann) << ". ";
        render_term_rec(t->t1, 0, os);
      });
      return;
    case TKind::AppL:
    case TKind::AppR: {
      auto body = [&] {
        os << (t->kind == TKind::AppL ? "appl " : "appr ");
        atom_arg(t->t1);
        os << ' ';
        atom_arg(t->t2);
      };
      if (min_prec > 2) paren(body); else body();
      return;
    }
    case TKind::Let:
      keyword_form([&] {
        os << "let ";
        render_term_rec(t->t1, 0, os);
        os << " be " << render(t->pat) << " in ";
        render_term_rec(t->t2, 0, os);
      });
      return;
    case TKind::Copy:
      keyword_form([&] {
        os << "copy ";
        render_term_rec(t->t1, 0, os);
        os << " as " << t->x << ',' << t->y << " in ";
        render_term_rec(t->t2, 0, os);
      });
      return;
    case TKind::Discard:
      keyword_form([&] {
        os << "discard ";
        render_term_rec(t->t1, 0, os);
        os << " in ";
        render_term_rec(t->t2, 0, os);
      });
      return;
    case TKind::PromoteBang:
    case TKind::PromoteKappa:
      keyword_form([&] {
        os << (t->kind == TKind::PromoteBang ? "promote!" : "promotek");
        if (!t->srcs.empty()) {
          os << ' ';
          for (size_t i = 0; i < t->srcs.size(); ++i) {
            if (i) os << ',';
            render_term_rec(t->srcs[i], 1, os);
          }
          os << " for ";
          for (size_t i = 0; i < t->vars.size(); ++i) {
            if (i) os << ',';
            os << t->vars[i];
          }
        }
        os << " in ";
        render_term_rec(t->t1, 0, os);
      });
      return;
    case TKind::DerelictBang:
    case TKind::DerelictKappa: {
      auto body = [&] {
        os << (t->kind == TKind::DerelictBang ? "derelict! " : "derelictk ");
        atom_arg(t->t1);
      };
      if (min_prec > 2) paren(body); else body();
      return;
    }
    case TKind::ExchL:
    case TKind::ExchR:
      keyword_form([&] {
        os << (t->kind == TKind::ExchL ? "exchl " : "exchr ");
        render_term_rec(t->t1, 1, os);
        os << ',';
        render_term_rec(t->t2, 1, os);
        os << " with " << t->x << ',' << t->y << " in ";
        render_term_rec(t->t3, 0, os);
      });
      return;
  }
}

} // namespace detail

inline std::string render(const TermPtr& t) {
  std::ostringstream os;
  detail::render_term_rec(t, 0, os);
  return os.str();
}

inline std::string render(const Context& ctx, bool with_vars) {
  std::ostringstream os;
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) os << ", ";
    if (with_vars && !ctx[i].var.empty()) os << ctx[i].var << ':';
    os << render(ctx[i].formula);
  }
  return os.str();
}

inline std::string render(const Sequent& s) {
  std::string lhs = render(s.antecedent, false);
  return lhs.empty() ? "|- " + render(s.succedent) : lhs + " |- " + render(s.succedent);
}

// ---------------------------------------------------------------------------
// Canonical S-expressions

inline std::string to_sexp(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom: return "(atom " + f->atom + ")";
    case FKind::Unit: return "(unit)";
    case FKind::Tensor: return "(tensor " + to_sexp(f->left) + " " + to_sexp(f->right) + ")";
    case FKind::RImp: return "(rimp " + to_sexp(f->left) + " " + to_sexp(f->right) + ")";
    case FKind::LImp: return "(limp " + to_sexp(f->left) + " " + to_sexp(f->right) + ")";
    case FKind::Bang: return "(bang " + to_sexp(f->left) + ")";
    case FKind::Kappa: return "(kappa " + to_sexp(f->left) + ")";
  }
  return {};
}

inline std::string to_sexp(const PatternPtr& p) {
  switch (p->kind) {
    case PKind::Wildcard: return "(wild)";
    case PKind::Var: return "(pvar " + p->var + ")";
    case PKind::UnitPat: return "(punit)";
    case PKind::TensorPat: return "(ptensor " + to_sexp(p->p1) + " " + to_sexp(p->p2) + ")";
  }
  return {};
}

inline std::string to_sexp(const TermPtr& t) {
  auto join_srcs = [&] {
    std::string s = "(";
    for (size_t i = 0; i < t->srcs.size(); ++i) s += (i ? " " : "") + to_sexp(t->srcs[i]);
    s += ") (";
    for (size_t i = 0; i < t->vars.size(); ++i) s += (i ? " " : "") + t->vars[i];
    return s + ")";
  };
  switch (t->kind) {
    case TKind::Var: return "(var " + t->var + ")";
    case TKind::Unit: return "(tunit)";
    case TKind::Tensor: return "(pair " + to_sexp(t->t1) + " " + to_sexp(t->t2) + ")";
    case TKind::LamL: return "(laml " + t->var + " " + to_sexp(t->ann) + " " + to_sexp(t->t1) + ")";
    case TKind::LamR: return "(lamr " + t->var + " " + to_sexp(t->ann) + " " + to_sexp(t->t1) + ")";
    case TKind::AppL: return "(appl " + to_sexp(t->t1) + " " + to_sexp(t->t2) + ")";
    case TKind::AppR: return "(appr " + to_sexp(t->t1) + " " + to_sexp(t->t2) + ")";
    case TKind::Let: return "(let " + to_sexp(t->t1) + " " + to_sexp(t->pat) + " " + to_sexp(t->t2) + ")";
    case TKind::Copy: return "(copy " + to_sexp(t->t1) + " " + t->x + " " + t->y + " " + to_sexp(t->t2) + ")";
    case TKind::Discard: return "(discard " + to_sexp(t->t1) + " " + to_sexp(t->t2) + ")";
    case TKind::PromoteBang: return "(promote! " + join_srcs() + " " + to_sexp(t->t1) + ")";
    case TKind::PromoteKappa: return "(promotek " + join_srcs() + " " + to_sexp(t->t1) + ")";
    case TKind::DerelictBang: return "(derelict! " + to_sexp(t->t1) + ")";
    case TKind::DerelictKappa: return "(derelictk " + to_sexp(t->t1) + ")";
    case TKind::ExchL:
      return "(exchl " + to_sexp(t->t1) + " " + to_sexp(t->t2) + " " + t->x + " " + t->y + " " +
             to_sexp(t->t3) + ")";
    case TKind::ExchR:
      return "(exchr " + to_sexp(t->t1) + " " + to_sexp(t->t2) + " " + t->x + " " + t->y + " " +
             to_sexp(t->t3) + ")";
  }
  return {};
}

inline std::string to_sexp(const Sequent& s) {
  std::string ctx = "(ctx";
  for (auto& e : s.antecedent) ctx += " " + to_sexp(e.formula);
  ctx += ")";
  return "(seq " + ctx + " " + to_sexp(s.succedent) + ")";
}

// Sequent-style key for visited sets and memo tables.
inline std::string sequent_key(const Sequent& s) { return to_sexp(s); }

} // namespace lambek
