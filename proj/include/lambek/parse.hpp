#pragma once

// Lexer and recursive-descent parsers for the concrete syntax, plus a
// reader for the canonical S-expression form used in derivation files.

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambek/syntax.hpp"

namespace lambek {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t at)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

namespace detail {

struct Token {
  enum Kind {
    Ident,    // lowercase identifier (may contain $ digits from fresh names)
    UnitF,    // I
    Star,
    Backslash,
    Slash,
    BangTok,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Dash,
    Turnstile, // |-
    LamL,      // \l
    LamR,      // \r
    End
  } kind;
  std::string text;
  size_t pos;
};

inline bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)); }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\'';
}

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t at = i;
    switch (c) {
      case '*': out.push_back({Token::Star, "*", at}); ++i; continue;
      case '/': out.push_back({Token::Slash, "/", at}); ++i; continue;
      case '!': out.push_back({Token::BangTok, "!", at}); ++i; continue;
      case '(': out.push_back({Token::LParen, "(", at}); ++i; continue;
      case ')': out.push_back({Token::RParen, ")", at}); ++i; continue;
      case ':': out.push_back({Token::Colon, ":", at}); ++i; continue;
      case ',': out.push_back({Token::Comma, ",", at}); ++i; continue;
      case '.': out.push_back({Token::Dot, ".", at}); ++i; continue;
      case '-': out.push_back({Token::Dash, "-", at}); ++i; continue;
      case 'I': out.push_back({Token::UnitF, "I", at}); ++i; continue;
      case '\\':
        if (i + 1 < s.size() && (s[i + 1] == 'l' || s[i + 1] == 'r') &&
            (i + 2 >= s.size() || !ident_char(s[i + 2]))) {
          out.push_back({s[i + 1] == 'l' ? Token::LamL : Token::LamR, s.substr(i, 2), at});
          i += 2;
          continue;
        }
        out.push_back({Token::Backslash, "\\", at});
        ++i;
        continue;
      case '|':
        if (i + 1 < s.size() && s[i + 1] == '-') {
          out.push_back({Token::Turnstile, "|-", at});
          i += 2;
          continue;
        }
        throw ParseError("unexpected '|'", at);
      default:
        if (ident_start(c)) {
          size_t j = i + 1;
          while (j < s.size() && ident_char(s[j])) ++j;
          std::string word = s.substr(i, j - i);
          // "promote!" / "derelict!" absorb a trailing bang
          if (j < s.size() && s[j] == '!' && (word == "promote" || word == "derelict")) {
            word += '!';
            ++j;
          }
          out.push_back({Token::Ident, word, at});
          i = j;
          continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

// Keywords that terminate an open-ended term.
inline bool is_term_keyword(const std::string& w) {
  return w == "be" || w == "in" || w == "as" || w == "for" || w == "with" || w == "let" ||
         w == "copy" || w == "discard" || w == "unit" || w == "promote!" || w == "promotek" ||
         w == "derelict!" || w == "derelictk" || w == "exchl" || w == "exchr" || w == "appl" ||
         w == "appr" || w == "k";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  // ---- formulas -----------------------------------------------------------

  FormulaPtr formula() {
    auto head = tensor_formula();
    if (peek().kind == Token::Backslash) {
      // right-associative chain of '\'
      next();
      auto rest = imp_tail_r();
      return Formula::rimp(head, rest);
    }
    if (peek().kind == Token::Slash) {
      // left-associative chain of '/'
      auto acc = head;
      while (peek().kind == Token::Slash) {
        next();
        auto rhs = tensor_formula();
        acc = Formula::limp(acc, rhs);
      }
      if (peek().kind == Token::Backslash)
        throw ParseError("mixing '\\' and '/' requires parentheses", peek().pos);
      return acc;
    }
    return head;
  }

  PatternPtr pattern() {
    auto acc = pattern_atom();
    while (peek().kind == Token::Star) {
      next();
      acc = Pattern::tensor(acc, pattern_atom());
    }
    return acc;
  }

  TermPtr term() {
    switch (peek().kind) {
      case Token::LamL:
      case Token::LamR: {
        bool left = peek().kind == Token::LamL;
        next();
        auto x = expect_ident();
        expect(Token::Colon, "':'");
        auto ann = formula();
        expect(Token::Dot, "'.'");
        auto body = term();
        return Term::lam(left ? TKind::LamL : TKind::LamR, x, ann, body);
      }
      default: break;
    }
    if (peek().kind == Token::Ident) {
      const std::string& w = peek().text;
      if (w == "let") {
        next();
        auto scrut = term();
        expect_kw("be");
        auto p = pattern();
        expect_kw("in");
        auto body = term();
        return Term::let(scrut, p, body);
      }
      if (w == "copy") {
        next();
        auto src = term();
        expect_kw("as");
        auto x = expect_ident();
        expect(Token::Comma, "','");
        auto y = expect_ident();
        expect_kw("in");
        auto body = term();
        return Term::copy(src, x, y, body);
      }
      if (w == "discard") {
        next();
        auto src = term();
        expect_kw("in");
        auto body = term();
        return Term::discard(src, body);
      }
      if (w == "promote!" || w == "promotek") {
        bool bang = w == "promote!";
        next();
        std::vector<TermPtr> srcs;
        std::vector<std::string> vars;
        if (!(peek().kind == Token::Ident && peek().text == "in")) {
          srcs.push_back(term());
          while (peek().kind == Token::Comma) {
            next();
            srcs.push_back(term());
          }
          expect_kw("for");
          vars.push_back(expect_ident());
          while (peek().kind == Token::Comma) {
            next();
            vars.push_back(expect_ident());
          }
          if (srcs.size() != vars.size())
            throw ParseError("promote: source/variable arity mismatch", peek().pos);
        }
        expect_kw("in");
        auto body = term();
        return Term::promote(bang ? TKind::PromoteBang : TKind::PromoteKappa, std::move(srcs),
                             std::move(vars), body);
      }
      if (w == "exchl" || w == "exchr") {
        bool left = w == "exchl";
        next();
        auto t1 = term();
        expect(Token::Comma, "','");
        auto t2 = term();
        expect_kw("with");
        auto x = expect_ident();
        expect(Token::Comma, "','");
        auto y = expect_ident();
        expect_kw("in");
        auto body = term();
        return Term::exch(left ? TKind::ExchL : TKind::ExchR, t1, t2, x, y, body);
      }
    }
    return tensor_term();
  }

  Sequent sequent() {
    Context ctx;
    if (peek().kind != Token::Turnstile) {
      ctx.push_back({"", formula()});
      while (peek().kind == Token::Comma) {
        next();
        ctx.push_back({"", formula()});
      }
    }
    expect(Token::Turnstile, "'|-'");
    auto s = formula();
    return {std::move(ctx), s};
  }

  // `x:a, y:b` (possibly empty -> caller checks End)
  Context typing_context() {
    Context ctx;
    if (peek().kind == Token::End) return ctx;
    for (;;) {
      auto x = expect_ident();
      expect(Token::Colon, "':'");
      ctx.push_back({x, formula()});
      if (peek().kind != Token::Comma) break;
      next();
    }
    return ctx;
  }

  void expect_end() {
    if (peek().kind != Token::End) throw ParseError("trailing input", peek().pos);
  }

 private:
  std::vector<Token> toks_;
  size_t idx_ = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(idx_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[idx_++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    next();
  }
  void expect_kw(const char* kw) {
    if (peek().kind != Token::Ident || peek().text != kw)
      throw ParseError(std::string("expected '") + kw + "'", peek().pos);
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Token::Ident || is_term_keyword(peek().text))
      throw ParseError("expected identifier", peek().pos);
    return next().text;
  }

  FormulaPtr imp_tail_r() {
    auto head = tensor_formula();
    if (peek().kind == Token::Backslash) {
      next();
      return Formula::rimp(head, imp_tail_r());
    }
    if (peek().kind == Token::Slash)
      throw ParseError("mixing '\\' and '/' requires parentheses", peek().pos);
    return head;
  }

  FormulaPtr tensor_formula() {
    auto acc = prefix_formula();
    while (peek().kind == Token::Star) {
      next();
      acc = Formula::tensor(acc, prefix_formula());
    }
    return acc;
  }

  FormulaPtr prefix_formula() {
    if (peek().kind == Token::BangTok) {
      next();
      return Formula::bang(prefix_formula());
    }
    if (peek().kind == Token::Ident && peek().text == "k") {
      next();
      return Formula::kappa(prefix_formula());
    }
    return atom_formula();
  }

  FormulaPtr atom_formula() {
    switch (peek().kind) {
      case Token::UnitF: next(); return Formula::unit();
      case Token::Ident: {
        if (is_term_keyword(peek().text) && peek().text != "k")
          throw ParseError("expected formula", peek().pos);
        return Formula::mk_atom(next().text);
      }
      case Token::LParen: {
        next();
        auto f = formula();
        expect(Token::RParen, "')'");
        return f;
      }
      default: throw ParseError("expected formula", peek().pos);
    }
  }

  PatternPtr pattern_atom() {
    switch (peek().kind) {
      case Token::Dash: next(); return Pattern::wildcard();
      case Token::Ident:
        if (peek().text == "unit") {
          next();
          return Pattern::unit();
        }
        if (is_term_keyword(peek().text)) throw ParseError("expected pattern", peek().pos);
        return Pattern::mk_var(next().text);
      case Token::LParen: {
        next();
        auto p = pattern();
        expect(Token::RParen, "')'");
        return p;
      }
      default: throw ParseError("expected pattern", peek().pos);
    }
  }

  TermPtr tensor_term() {
    auto acc = app_term();
    while (peek().kind == Token::Star) {
      next();
      acc = Term::tensor(acc, app_term());
    }
    return acc;
  }

  TermPtr app_term() {
    if (peek().kind == Token::Ident) {
      const std::string& w = peek().text;
      if (w == "appl" || w == "appr") {
        bool left = w == "appl";
        next();
        auto f = atom_term();
        auto a = atom_term();
        return Term::app(left ? TKind::AppL : TKind::AppR, f, a);
      }
      if (w == "derelict!" || w == "derelictk") {
        bool bang = w == "derelict!";
        next();
        return Term::derelict(bang ? TKind::DerelictBang : TKind::DerelictKappa, atom_term());
      }
    }
    return atom_term();
  }

  TermPtr atom_term() {
    switch (peek().kind) {
      case Token::Ident:
        if (peek().text == "unit") {
          next();
          return Term::unit();
        }
        if (is_term_keyword(peek().text)) throw ParseError("expected term", peek().pos);
        return Term::mk_var(next().text);
      case Token::LParen: {
        next();
        auto t = term();
        expect(Token::RParen, "')'");
        return t;
      }
      default: throw ParseError("expected term", peek().pos);
    }
  }
};

} // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  detail::Parser p(text);
  auto f = p.formula();
  p.expect_end();
  return f;
}

inline TermPtr parse_term(const std::string& text) {
  detail::Parser p(text);
  auto t = p.term();
  p.expect_end();
  return t;
}

inline Sequent parse_sequent(const std::string& text) {
  detail::Parser p(text);
  auto s = p.sequent();
  p.expect_end();
  return s;
}

inline Context parse_typing_context(const std::string& text) {
  detail::Parser p(text);
  auto c = p.typing_context();
  p.expect_end();
  return c;
}

inline PatternPtr parse_pattern(const std::string& text) {
  detail::Parser p(text);
  auto pt = p.pattern();
  p.expect_end();
  return pt;
}

// ---------------------------------------------------------------------------
// S-expressions

struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;

  const Sexp& at(size_t i) const {
    if (is_atom || i >= items.size()) throw std::runtime_error("sexp: index out of range");
    return items[i];
  }
  const std::string& head() const {
    if (is_atom || items.empty() || !items[0].is_atom) throw std::runtime_error("sexp: no head");
    return items[0].atom;
  }
};

namespace detail {

inline Sexp parse_sexp_rec(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size()) throw ParseError("unexpected end of sexp", i);
  if (s[i] == '(') {
    ++i;
    Sexp out;
    for (;;) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) throw ParseError("unterminated sexp list", i);
      if (s[i] == ')') {
        ++i;
        return out;
      }
      out.items.push_back(parse_sexp_rec(s, i));
    }
  }
  size_t j = i;
  while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')')
    ++j;
  Sexp out;
  out.is_atom = true;
  out.atom = s.substr(i, j - i);
  i = j;
  return out;
}

} // namespace detail

inline Sexp parse_sexp(const std::string& s) {
  size_t i = 0;
  auto e = detail::parse_sexp_rec(s, i);
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i != s.size()) throw ParseError("trailing input after sexp", i);
  return e;
}

inline FormulaPtr formula_from_sexp(const Sexp& e) {
  const auto& h = e.head();
  if (h == "atom") return Formula::mk_atom(e.at(1).atom);
  if (h == "unit") return Formula::unit();
  if (h == "tensor") return Formula::tensor(formula_from_sexp(e.at(1)), formula_from_sexp(e.at(2)));
  if (h == "rimp") return Formula::rimp(formula_from_sexp(e.at(1)), formula_from_sexp(e.at(2)));
  if (h == "limp") return Formula::limp(formula_from_sexp(e.at(1)), formula_from_sexp(e.at(2)));
  if (h == "bang") return Formula::bang(formula_from_sexp(e.at(1)));
  if (h == "kappa") return Formula::kappa(formula_from_sexp(e.at(1)));
  throw std::runtime_error("unknown formula sexp head: " + h);
}

inline Sequent sequent_from_sexp(const Sexp& e) {
  if (e.head() != "seq") throw std::runtime_error("expected (seq ...)");
  Context ctx;
  const auto& c = e.at(1);
  if (c.head() != "ctx") throw std::runtime_error("expected (ctx ...)");
  for (size_t i = 1; i < c.items.size(); ++i) ctx.push_back({"", formula_from_sexp(c.at(i))});
  return {std::move(ctx), formula_from_sexp(e.at(2))};
}

inline PatternPtr pattern_from_sexp(const Sexp& e) {
  const auto& h = e.head();
  if (h == "wild") return Pattern::wildcard();
  if (h == "pvar") return Pattern::mk_var(e.at(1).atom);
  if (h == "punit") return Pattern::unit();
  if (h == "ptensor") return Pattern::tensor(pattern_from_sexp(e.at(1)), pattern_from_sexp(e.at(2)));
  throw std::runtime_error("unknown pattern sexp head: " + h);
}

inline TermPtr term_from_sexp(const Sexp& e) {
  const auto& h = e.head();
  if (h == "var") return Term::mk_var(e.at(1).atom);
  if (h == "tunit") return Term::unit();
  if (h == "pair") return Term::tensor(term_from_sexp(e.at(1)), term_from_sexp(e.at(2)));
  if (h == "laml" || h == "lamr")
    return Term::lam(h == "laml" ? TKind::LamL : TKind::LamR, e.at(1).atom,
                     formula_from_sexp(e.at(2)), term_from_sexp(e.at(3)));
  if (h == "appl" || h == "appr")
    return Term::app(h == "appl" ? TKind::AppL : TKind::AppR, term_from_sexp(e.at(1)),
                     term_from_sexp(e.at(2)));
  if (h == "let")
    return Term::let(term_from_sexp(e.at(1)), pattern_from_sexp(e.at(2)), term_from_sexp(e.at(3)));
  if (h == "copy")
    return Term::copy(term_from_sexp(e.at(1)), e.at(2).atom, e.at(3).atom, term_from_sexp(e.at(4)));
  if (h == "discard") return Term::discard(term_from_sexp(e.at(1)), term_from_sexp(e.at(2)));
  if (h == "promote!" || h == "promotek") {
    std::vector<TermPtr> srcs;
    std::vector<std::string> vars;
    for (auto& s : e.at(1).items) srcs.push_back(term_from_sexp(s));
    for (auto& v : e.at(2).items) vars.push_back(v.atom);
    return Term::promote(h == "promote!" ? TKind::PromoteBang : TKind::PromoteKappa, std::move(srcs),
                         std::move(vars), term_from_sexp(e.at(3)));
  }
  if (h == "derelict!" || h == "derelictk")
    return Term::derelict(h == "derelict!" ? TKind::DerelictBang : TKind::DerelictKappa,
                          term_from_sexp(e.at(1)));
  if (h == "exchl" || h == "exchr")
    return Term::exch(h == "exchl" ? TKind::ExchL : TKind::ExchR, term_from_sexp(e.at(1)),
                      term_from_sexp(e.at(2)), e.at(3).atom, e.at(4).atom, term_from_sexp(e.at(5)));
  throw std::runtime_error("unknown term sexp head: " + h);
}

} // namespace lambek
