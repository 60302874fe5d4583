#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lambek/parse.hpp"
#include "lambek/print.hpp"
#include "lambek/syntax.hpp"

using namespace lambek;

TEST_CASE("formula parsing fixed points") {
  auto a = Formula::mk_atom("a");
  auto b = Formula::mk_atom("b");
  auto c = Formula::mk_atom("c");

  CHECK(formula_eq(parse_formula("a"), a));
  CHECK(formula_eq(parse_formula("I"), Formula::unit()));
  CHECK(formula_eq(parse_formula("!a * b"),
                   Formula::tensor(Formula::bang(a), b)));
  // right-slash implication is right-associative
  CHECK(formula_eq(parse_formula("a \\ b \\ c"),
                   Formula::rimp(a, Formula::rimp(b, c))));
  // left-slash is left-associative
  CHECK(formula_eq(parse_formula("a / b / c"),
                   Formula::limp(Formula::limp(a, b), c)));
  CHECK(formula_eq(parse_formula("k (a * b)"),
                   Formula::kappa(Formula::tensor(a, b))));
  CHECK(formula_eq(parse_formula("k a * b"),
                   Formula::tensor(Formula::kappa(a), b)));
  CHECK(formula_eq(parse_formula("!!a"), Formula::bang(Formula::bang(a))));
  // tensor binds tighter than implications
  CHECK(formula_eq(parse_formula("a * b \\ c"),
                   Formula::rimp(Formula::tensor(a, b), c)));
}

TEST_CASE("formula rendering minimal parens") {
  auto a = Formula::mk_atom("a");
  auto b = Formula::mk_atom("b");
  auto c = Formula::mk_atom("c");
  CHECK(render(Formula::limp(a, Formula::tensor(b, c))) == "a / (b * c)");
  CHECK(render(Formula::tensor(Formula::bang(a), b)) == "!a * b");
  CHECK(render(Formula::rimp(a, Formula::rimp(b, c))) == "a \\ b \\ c");
  CHECK(render(Formula::rimp(Formula::rimp(a, b), c)) == "(a \\ b) \\ c");
  CHECK(render(Formula::kappa(Formula::tensor(a, b))) == "k (a * b)");
  CHECK(render(Formula::tensor(a, Formula::tensor(b, c))) == "a * (b * c)");
  CHECK(render(Formula::tensor(Formula::tensor(a, b), c)) == "a * b * c");
}

TEST_CASE("mixed implications without parens are rejected") {
  CHECK_THROWS_AS(parse_formula("a \\ b / c"), ParseError);
  CHECK_THROWS_AS(parse_formula("a / b \\ c"), ParseError);
  CHECK(formula_eq(parse_formula("(a \\ b) / c"),
                   Formula::limp(Formula::rimp(Formula::mk_atom("a"), Formula::mk_atom("b")),
                                 Formula::mk_atom("c"))));
}

namespace {

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0: {
      const char* names[] = {"a", "b", "c", "d"};
      return Formula::mk_atom(names[rng() % 4]);
    }
    case 1: return Formula::unit();
    case 2: return Formula::tensor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3: return Formula::rimp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return Formula::limp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return Formula::bang(random_formula(rng, depth - 1));
    default: return Formula::kappa(random_formula(rng, depth - 1));
  }
}

} // namespace

TEST_CASE("formula render/parse round trip") {
  std::mt19937 rng(20260823);
  for (int i = 0; i < 500; ++i) {
    auto f = random_formula(rng, 4);
    auto back = parse_formula(render(f));
    INFO(render(f));
    REQUIRE(formula_eq(back, f));
    // sexp round trip too
    auto back2 = formula_from_sexp(parse_sexp(to_sexp(f)));
    REQUIRE(formula_eq(back2, f));
  }
}

TEST_CASE("sequent parsing") {
  auto s = parse_sequent("a, a \\ b |- b");
  REQUIRE(s.antecedent.size() == 2);
  CHECK(formula_eq(s.succedent, Formula::mk_atom("b")));
  auto s2 = parse_sequent("|- I");
  CHECK(s2.antecedent.empty());
  auto back = sequent_from_sexp(parse_sexp(to_sexp(s)));
  CHECK(sequent_eq(back, s));
}

TEST_CASE("term parsing and round trips") {
  const char* samples[] = {
      "x",
      "unit",
      "x * y",
      "\\r x:a. x",
      "\\l x:a. x",
      "appr (\\r x:a. x) y",
      "appl (\\l x:a. x) y",
      "let p be x * y in y * x",
      "let u be unit in x",
      "let u be - in x",
      "copy z as x,y in x * y",
      "discard z in x",
      "promote! z for w in derelict! w",
      "promote! y,z for v,w in v * w",
      "promote! in unit",
      "promotek z for w in derelictk w",
      "derelict! x",
      "exchl x,y with x',y' in y' * x'",
      "exchr x,y with x',y' in y' * x'",
  };
  for (auto* s : samples) {
    INFO(s);
    auto t = parse_term(s);
    auto back = parse_term(render(t));
    REQUIRE(term_eq(back, t));
    auto back2 = term_from_sexp(parse_sexp(to_sexp(t)));
    REQUIRE(term_eq(back2, t));
  }
}

TEST_CASE("free variables in occurrence order") {
  auto t = parse_term("appr (\\r x:a. x * y) z");
  auto fv = free_vars(t);
  REQUIRE(fv == std::vector<std::string>{"y", "z"});
  auto t2 = parse_term("let p be x * y in y * q");
  CHECK(free_vars(t2) == std::vector<std::string>{"p", "q"});
}

TEST_CASE("substitution is capture avoiding") {
  // [y := x] in \r x:a. x * y must not capture the free x
  auto t = parse_term("\\r x:a. x * y");
  auto r = substitute(t, "y", Term::mk_var("x"));
  REQUIRE(r->kind == TKind::LamR);
  CHECK(r->var != "x");
  CHECK(alpha_eq(r, r));
  // body is <fresh> * x
  REQUIRE(r->t1->kind == TKind::Tensor);
  CHECK(r->t1->t1->var == r->var);
  CHECK(r->t1->t2->var == "x");
}

TEST_CASE("substitution respects shadowing") {
  auto t = parse_term("\\r x:a. x");
  auto r = substitute(t, "x", Term::mk_var("z"));
  CHECK(alpha_eq(r, t));
  auto t2 = parse_term("let p be x * y in x");
  auto r2 = substitute(t2, "x", Term::unit());
  // the binder x shadows inside the body; only the scrutinee is free
  CHECK(term_eq(r2, t2));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("\\r x:a. x"), parse_term("\\r y:a. y")));
  CHECK_FALSE(alpha_eq(parse_term("\\r x:a. x"), parse_term("\\r y:b. y")));
  CHECK_FALSE(alpha_eq(parse_term("\\r x:a. x"), parse_term("\\l y:a. y")));
  CHECK(alpha_eq(parse_term("let p be x * y in y * x"), parse_term("let p be u * v in v * u")));
  CHECK(alpha_eq(parse_term("copy z as x,y in x * y"), parse_term("copy z as u,v in u * v")));
  CHECK_FALSE(alpha_eq(parse_term("copy z as x,y in x * y"),
                       parse_term("copy z as u,v in v * u")));
  CHECK(alpha_eq(parse_term("exchl s,t with x,y in y * x"),
                 parse_term("exchl s,t with u,v in v * u")));
}

TEST_CASE("level legality") {
  auto f = parse_formula("!a");
  auto g = parse_formula("k a");
  CHECK_FALSE(formula_legal_at(f, CalculusLevel::L));
  CHECK(formula_legal_at(f, CalculusLevel::LBang));
  CHECK_FALSE(formula_legal_at(f, CalculusLevel::LKappa));
  CHECK(formula_legal_at(g, CalculusLevel::LKappa));
  CHECK_FALSE(formula_legal_at(g, CalculusLevel::LBang));
  CHECK(formula_legal_at(g, CalculusLevel::LBangKappa));
  CHECK_FALSE(term_legal_at(parse_term("derelict! x"), CalculusLevel::L));
  CHECK(term_legal_at(parse_term("derelict! x"), CalculusLevel::LBang));
  CHECK_FALSE(term_legal_at(parse_term("exchl x,y with u,v in v * u"), CalculusLevel::LBang));
}

TEST_CASE("typing context parsing") {
  auto ctx = parse_typing_context("x:a, y:!b");
  REQUIRE(ctx.size() == 2);
  CHECK(ctx[0].var == "x");
  CHECK(formula_eq(ctx[1].formula, Formula::bang(Formula::mk_atom("b"))));
  CHECK(parse_typing_context("").empty());
}
