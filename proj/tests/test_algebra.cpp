#include <catch2/catch_amalgamated.hpp>

#include "lambek/algebra.hpp"
#include "lambek/parse.hpp"
#include "lambek/print.hpp"
#include "lambek/prove.hpp"

using namespace lambek;

namespace {

// relation masks on {0,1}: bit (i*2+j) set iff (i,j) in the relation
int rel_transpose(int r) {
  return (r & 0b1001) | ((r & 0b0010) << 1) | ((r & 0b0100) >> 1);
}

bool eval_true(const FinBiclosedPoset& m, const Valuation& v, const Sequent& s) {
  auto r = eval_sequent(m, v, s);
  REQUIRE(std::holds_alternative<bool>(r));
  return std::get<bool>(r);
}

// run f over every valuation of the given atoms into m
template <typename F>
void for_all_valuations(const FinBiclosedPoset& m, const std::vector<std::string>& atoms, F f) {
  const int n = m.size();
  std::vector<int> idx(atoms.size(), 0);
  for (;;) {
    Valuation v;
    for (size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = idx[i];
    f(v);
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
    if (i == idx.size()) break;
  }
}

} // namespace

TEST_CASE("library models validate") {
  for (auto& m : {trivial_model(), two(), rel_quantale2()}) {
    auto rep = validate(m);
    for (auto& f : rep.failures) INFO(m.name + ": " + f);
    CHECK(rep.ok());
  }
  CHECK(trivial_model().size() == 1);
  CHECK(two().size() == 2);
  CHECK(rel_quantale2().size() == 16);
}

TEST_CASE("two-element chain residuals are classical implication") {
  auto m = two();
  // min-monoid on 0 < 1: a -> b is 0 only when a = 1, b = 0
  CHECK(m.rres[1][0] == 0);
  CHECK(m.rres[0][0] == 1);
  CHECK(m.rres[0][1] == 1);
  CHECK(m.rres[1][1] == 1);
  // commutative, so both residuals agree and kappa is the identity
  CHECK(m.rres == m.lres);
  REQUIRE(m.kappa);
  REQUIRE(m.bang);
  for (int a = 0; a < 2; ++a) {
    CHECK((*m.kappa)[a] == a);
    CHECK((*m.bang)[a] == a);
  }
}

TEST_CASE("relation quantale tables") {
  auto m = rel_quantale2();
  CHECK(m.unit == 0b1001);
  CHECK(m.elems[m.unit] == "r1001");
  // {(0,1)} ; {(1,0)} = {(0,0)} while the reverse composite is {(1,1)}
  CHECK(m.op[0b0010][0b0100] == 0b0001);
  CHECK(m.op[0b0100][0b0010] == 0b1000);
  // closed forms: a\b = ~(a^T ; ~b), b/a = ~(~b ; a^T)
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      CHECK(m.rres[a][b] == (~m.op[rel_transpose(a)][~b & 15] & 15));
      CHECK(m.lres[a][b] == (~m.op[~b & 15][rel_transpose(a)] & 15));
    }
  // kappa projects onto the centre, below the argument
  REQUIRE(m.kappa);
  for (int a = 0; a < 16; ++a) {
    int k = (*m.kappa)[a];
    CHECK(m.leq[k][a]);
    for (int b = 0; b < 16; ++b) CHECK(m.op[k][b] == m.op[b][k]);
  }
  CHECK((*m.kappa)[m.unit] == m.unit);
  REQUIRE(m.bang);
  // !a is the sub-identity part of a
  for (int a = 0; a < 16; ++a) CHECK((*m.bang)[a] == (a & m.unit));
}

TEST_CASE("validate reports broken axioms with witnesses") {
  auto m = two();
  m.op[0][1] = 1; // breaks both the unit law and monotonicity coherence
  auto rep = validate(m);
  CHECK_FALSE(rep.ok());
  bool saw_unit = false;
  for (auto& f : rep.failures)
    if (f.find("unit") != std::string::npos) saw_unit = true;
  CHECK(saw_unit);

  auto k = two();
  (*k.kappa)[0] = 1; // kappa no longer below the argument
  auto krep = validate(k);
  CHECK_FALSE(krep.ok());
  CHECK(krep.failures.front().find("kappa") != std::string::npos);
}

TEST_CASE("residuals can fail to exist") {
  // discrete order on {e, x}, op idempotent: {y : x.y <= x} = {e, x} has no max
  FinBiclosedPoset m;
  m.name = "discrete";
  m.elems = {"e", "x"};
  m.leq = {{true, false}, {false, true}};
  m.op = {{0, 1}, {1, 1}};
  m.unit = 0;
  auto r = compute_residuals(m);
  REQUIRE(std::holds_alternative<NoMaximum>(r));
  auto nm = std::get<NoMaximum>(r);
  CHECK(nm.a == 1);
}

TEST_CASE("countermodel for commuted tensor") {
  auto m = rel_quantale2();
  auto s = parse_sequent("a, b |- b * a");
  // v(a) = {(0,1)}, v(b) = {(1,0)}: the composites land on incomparable atoms
  Valuation v{{"a", 0b0010}, {"b", 0b0100}};
  CHECK_FALSE(eval_true(m, v, s));
  // the chain cannot refute it (commutative), the quantale can
  for_all_valuations(two(), {"a", "b"},
                     [&](const Valuation& w) { CHECK(eval_true(two(), w, s)); });
  auto cm = find_countermodel(s, CalculusLevel::L, library_models(CalculusLevel::L));
  REQUIRE(cm);
  CHECK_FALSE(eval_true(cm->model, cm->valuation, s));
  // and the proof search agrees that it is unprovable
  CHECK(prove(s, CalculusLevel::L).status == ProveStatus::NotProvable);
}

TEST_CASE("kappa licenses the exchange the plain calculus refutes") {
  auto m = rel_quantale2();
  auto s = parse_sequent("k a, b |- b * k a");
  for_all_valuations(m, {"a", "b"}, [&](const Valuation& v) { CHECK(eval_true(m, v, s)); });
  CHECK_FALSE(find_countermodel(s, CalculusLevel::LKappa,
                                library_models(CalculusLevel::LKappa)));
  CHECK(prove(s, CalculusLevel::LKappa).status == ProveStatus::Found);
}

TEST_CASE("soundness against proof search") {
  const char* provable[] = {
      "a |- a",
      "|- I",
      "a, a \\ b |- b",
      "b / a, a |- b",
      "a, b |- a * b",
      "a |- b / (a \\ b)",
      "a * (b * c) |- (a * b) * c",
      "a \\ b, b \\ c |- a \\ c",
      "!a |- a",
      "!a |- !a * !a",
      "k a |- a",
      "k a, b |- b * k a",
      "a, k b |- k b * a",
  };
  auto models = library_models(CalculusLevel::LBangKappa);
  for (auto* txt : provable) {
    auto s = parse_sequent(txt);
    auto pr = prove(s, CalculusLevel::LBangKappa);
    INFO(txt);
    REQUIRE(pr.status == ProveStatus::Found);
    REQUIRE(check_derivation(*pr.derivation, CalculusLevel::LBangKappa).ok);
    std::vector<std::string> atoms;
    for (auto& e : s.antecedent) collect_atoms(e.formula, atoms);
    collect_atoms(s.succedent, atoms);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    for (auto& m : models) {
      if (m.size() > 2 && atoms.size() > 2) continue; // keep it exhaustive but quick
      for_all_valuations(m, atoms, [&](const Valuation& v) {
        INFO(std::string(txt) + " in " + m.name);
        CHECK(eval_true(m, v, s));
      });
    }
    CHECK_FALSE(find_countermodel(s, CalculusLevel::LBangKappa, models, 500));
  }
}

TEST_CASE("countermodels for the hallmark non-theorems") {
  const char* refutable[] = {
      "a, b |- b * a",
      "a |- a * a",
      "a |- I",
      "|- a",
      "a, a \\ b |- a",
      "a |- !a",
  };
  auto models = library_models(CalculusLevel::LBangKappa);
  for (auto* txt : refutable) {
    auto s = parse_sequent(txt);
    INFO(txt);
    CHECK(prove(s, CalculusLevel::LBangKappa).status == ProveStatus::NotProvable);
    auto cm = find_countermodel(s, CalculusLevel::LBangKappa, models);
    REQUIRE(cm);
    CHECK_FALSE(eval_true(cm->model, cm->valuation, s));
  }
}

TEST_CASE("enumeration at small sizes") {
  auto ones = enumerate_biclosed(1);
  REQUIRE(ones.size() == 1);
  CHECK(detail::isomorphic(ones[0], trivial_model()));

  auto twos = enumerate_biclosed(2);
  CHECK(twos.size() >= 2); // at least the discrete group and the chain
  bool found_two = false;
  for (auto& m : twos) {
    auto rep = validate(m);
    for (auto& f : rep.failures) INFO(m.name + ": " + f);
    CHECK(rep.ok());
    if (detail::isomorphic(m, two())) found_two = true;
  }
  CHECK(found_two);
  for (size_t i = 0; i < twos.size(); ++i)
    for (size_t j = i + 1; j < twos.size(); ++j)
      CHECK_FALSE(detail::isomorphic(twos[i], twos[j]));

  auto threes = enumerate_biclosed(3);
  CHECK(threes.size() > twos.size());
  for (auto& m : threes) CHECK(validate(m).ok());
  for (size_t i = 0; i < threes.size(); ++i)
    for (size_t j = i + 1; j < threes.size(); ++j)
      CHECK_FALSE(detail::isomorphic(threes[i], threes[j]));
}

TEST_CASE("model files round-trip and reject garbage") {
  for (auto& m : {two(), rel_quantale2()}) {
    auto back = parse_model(render_model(m));
    REQUIRE(std::holds_alternative<FinBiclosedPoset>(back));
    auto& r = std::get<FinBiclosedPoset>(back);
    CHECK(r.name == m.name);
    CHECK(r.leq == m.leq);
    CHECK(r.op == m.op);
    CHECK(r.unit == m.unit);
    CHECK(r.rres == m.rres);
    CHECK(r.kappa == m.kappa);
    CHECK(r.bang == m.bang);
  }
  CHECK(std::holds_alternative<std::string>(parse_model("")));
  CHECK(std::holds_alternative<std::string>(
      parse_model("model m\nelems a b\nunit c\nleq 1 0\nleq 0 1\nop a a\nop a a\n")));
  // non-monotone table is refused
  CHECK(std::holds_alternative<std::string>(parse_model(
      "model m\nelems 0 1\nunit 1\nleq 1 1\nleq 0 1\nop 1 0\nop 0 1\n")));
  // missing tables surface as MissingTable on modal formulas
  auto plain = parse_model(
      "model m\nelems 0 1\nunit 1\nleq 1 1\nleq 0 1\nop 0 0\nop 0 1\n");
  REQUIRE(std::holds_alternative<FinBiclosedPoset>(plain));
  auto r = eval_sequent(std::get<FinBiclosedPoset>(plain), {{"a", 0}},
                        parse_sequent("!a |- a"));
  REQUIRE(std::holds_alternative<MissingTable>(r));
  CHECK(std::get<MissingTable>(r).which == "bang");
}
