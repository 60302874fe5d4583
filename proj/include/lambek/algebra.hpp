#pragma once

// Finite biclosed posets: validation, residual computation, library models,
// exhaustive enumeration at desk scale, sequent evaluation, and countermodel
// search. Elements are indices; tables are dense.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lambek/syntax.hpp"

namespace lambek {

struct FinBiclosedPoset {
  std::string name;
  std::vector<std::string> elems;
  std::vector<std::vector<bool>> leq;  // leq[a][b]  <=>  a <= b
  std::vector<std::vector<int>> op;
  int unit = 0;
  std::vector<std::vector<int>> rres;  // rres[a][b] = max{x : a∘x <= b}
  std::vector<std::vector<int>> lres;  // lres[a][b] = max{x : x∘a <= b}
  std::optional<std::vector<int>> kappa;
  std::optional<std::vector<int>> bang;

  int size() const { return static_cast<int>(elems.size()); }
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::string w3(const FinBiclosedPoset& m, int a, int b, int c) {
  return "(" + m.elems[a] + ", " + m.elems[b] + ", " + m.elems[c] + ")";
}

} // namespace detail

inline ValidationReport validate(const FinBiclosedPoset& m) {
  ValidationReport rep;
  auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
  const int n = m.size();
  for (int a = 0; a < n; ++a)
    if (!m.leq[a][a]) fail("reflexivity at " + m.elems[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && m.leq[a][b] && m.leq[b][a])
        fail("antisymmetry at (" + m.elems[a] + ", " + m.elems[b] + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.leq[a][b] && m.leq[b][c] && !m.leq[a][c])
          fail("transitivity at " + detail::w3(m, a, b, c));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.op[m.op[a][b]][c] != m.op[a][m.op[b][c]])
          fail("associativity at " + detail::w3(m, a, b, c));
  for (int a = 0; a < n; ++a) {
    if (m.op[m.unit][a] != a) fail("left unit at " + m.elems[a]);
    if (m.op[a][m.unit] != a) fail("right unit at " + m.elems[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.leq[a][b]) {
          if (!m.leq[m.op[a][c]][m.op[b][c]])
            fail("monotonicity (right arg fixed) at " + detail::w3(m, a, b, c));
          if (!m.leq[m.op[c][a]][m.op[c][b]])
            fail("monotonicity (left arg fixed) at " + detail::w3(m, a, b, c));
        }
  // residuation adjunctions, exhaustively
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < n; ++x) {
        if (m.leq[m.op[a][x]][b] != m.leq[x][m.rres[a][b]])
          fail("right residual adjunction at " + detail::w3(m, a, b, x));
        if (m.leq[m.op[x][a]][b] != m.leq[x][m.lres[a][b]])
          fail("left residual adjunction at " + detail::w3(m, a, b, x));
      }
  if (m.kappa) {
    const auto& k = *m.kappa;
    for (int a = 0; a < n; ++a) {
      if (!m.leq[k[a]][a]) fail("kappa minimality at " + m.elems[a]);
      if (!m.leq[k[a]][k[k[a]]]) fail("kappa duplication at " + m.elems[a]);
      for (int b = 0; b < n; ++b) {
        if (m.leq[a][b] && !m.leq[k[a]][k[b]])
          fail("kappa compatibility at (" + m.elems[a] + ", " + m.elems[b] + ")");
        if (!m.leq[m.op[k[a]][b]][m.op[b][k[a]]])
          fail("kappa left exchange at (" + m.elems[a] + ", " + m.elems[b] + ")");
        if (!m.leq[m.op[a][k[b]]][m.op[k[b]][a]])
          fail("kappa right exchange at (" + m.elems[a] + ", " + m.elems[b] + ")");
      }
    }
  }
  if (m.bang) {
    const auto& g = *m.bang;
    if (!m.leq[m.unit][g[m.unit]]) fail("bang unit axiom (e <= !e)");
    for (int a = 0; a < n; ++a) {
      if (!m.leq[g[a]][a]) fail("bang dereliction at " + m.elems[a]);
      if (!m.leq[g[a]][g[g[a]]]) fail("bang digging at " + m.elems[a]);
      if (!m.leq[g[a]][m.unit]) fail("bang weakening at " + m.elems[a]);
      if (!m.leq[g[a]][m.op[g[a]][g[a]]]) fail("bang contraction at " + m.elems[a]);
      for (int b = 0; b < n; ++b) {
        if (m.leq[a][b] && !m.leq[g[a]][g[b]])
          fail("bang monotonicity at (" + m.elems[a] + ", " + m.elems[b] + ")");
        if (!m.leq[m.op[g[a]][g[b]]][g[m.op[a][b]]])
          fail("bang promotion at (" + m.elems[a] + ", " + m.elems[b] + ")");
      }
    }
  }
  return rep;
}

struct NoMaximum {
  int a, b;
  char side; // 'r' or 'l'
};

// Brute-force residuals for a validated order/monoid pair.
inline std::variant<std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>,
                    NoMaximum>
compute_residuals(const FinBiclosedPoset& m) {
  const int n = m.size();
  auto find_max = [&](auto member) -> int {
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (!member(x)) continue;
      bool is_max = true;
      for (int y = 0; y < n; ++y)
        if (member(y) && !m.leq[y][x]) is_max = false;
      if (is_max) {
        best = x;
        break;
      }
    }
    return best;
  };
  std::vector<std::vector<int>> rr(n, std::vector<int>(n)), lr(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int r = find_max([&](int x) { return m.leq[m.op[a][x]][b]; });
      if (r < 0) return NoMaximum{a, b, 'r'};
      rr[a][b] = r;
      int l = find_max([&](int x) { return m.leq[m.op[x][a]][b]; });
      if (l < 0) return NoMaximum{a, b, 'l'};
      lr[a][b] = l;
    }
  return std::make_pair(std::move(rr), std::move(lr));
}

struct NotConstructible {
  int at; // first element without a suitable maximum / failing validation
};

// kappa from the centre: κa = max{c central : c <= a}.
inline std::variant<std::vector<int>, NotConstructible> center_kappa(
    const FinBiclosedPoset& m) {
  const int n = m.size();
  std::vector<bool> central(n, true);
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b)
      if (m.op[c][b] != m.op[b][c]) central[c] = false;
  std::vector<int> k(n);
  for (int a = 0; a < n; ++a) {
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (!central[x] || !m.leq[x][a]) continue;
      bool is_max = true;
      for (int y = 0; y < n; ++y)
        if (central[y] && m.leq[y][a] && !m.leq[y][x]) is_max = false;
      if (is_max) {
        best = x;
        break;
      }
    }
    if (best < 0) return NotConstructible{a};
    k[a] = best;
  }
  FinBiclosedPoset probe = m;
  probe.kappa = k;
  probe.bang.reset();
  if (!validate(probe).ok()) return NotConstructible{-1};
  return k;
}

// !a = max{x : x <= a, x <= e, x <= x∘x}, when every such maximum exists and
// the resulting table passes the bang axioms.
inline std::variant<std::vector<int>, NotConstructible> construct_bang(
    const FinBiclosedPoset& m) {
  const int n = m.size();
  std::vector<int> g(n);
  for (int a = 0; a < n; ++a) {
    auto member = [&](int x) {
      return m.leq[x][a] && m.leq[x][m.unit] && m.leq[x][m.op[x][x]];
    };
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (!member(x)) continue;
      bool is_max = true;
      for (int y = 0; y < n; ++y)
        if (member(y) && !m.leq[y][x]) is_max = false;
      if (is_max) {
        best = x;
        break;
      }
    }
    if (best < 0) return NotConstructible{a};
    g[a] = best;
  }
  FinBiclosedPoset probe = m;
  probe.bang = g;
  probe.kappa.reset();
  if (!validate(probe).ok()) return NotConstructible{-1};
  return g;
}

// ---------------------------------------------------------------------------
// Library models

inline FinBiclosedPoset trivial_model() {
  FinBiclosedPoset m;
  m.name = "trivial";
  m.elems = {"*"};
  m.leq = {{true}};
  m.op = {{0}};
  m.unit = 0;
  m.rres = {{0}};
  m.lres = {{0}};
  m.kappa = std::vector<int>{0};
  m.bang = std::vector<int>{0};
  return m;
}

// the two-element chain 0 < 1 with meet, unit 1
inline FinBiclosedPoset two() {
  FinBiclosedPoset m;
  m.name = "two";
  m.elems = {"0", "1"};
  m.leq = {{true, true}, {false, true}};
  m.op = {{0, 0}, {0, 1}};
  m.unit = 1;
  auto r = compute_residuals(m);
  auto& [rr, lr] = std::get<0>(r);
  m.rres = rr;
  m.lres = lr;
  m.kappa = std::get<std::vector<int>>(center_kappa(m));
  m.bang = std::get<std::vector<int>>(construct_bang(m));
  return m;
}

// all 16 binary relations on a 2-set under composition and inclusion;
// element i is the 4-bit mask with bit (row*2+col) for the pair (row, col)
inline FinBiclosedPoset rel_quantale2() {
  FinBiclosedPoset m;
  m.name = "rel2";
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    std::string s = "r";
    for (int b = 0; b < 4; ++b) s += (i >> b & 1) ? '1' : '0';
    m.elems.push_back(s);
  }
  m.leq.assign(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.leq[a][b] = (a & b) == a;
  m.op.assign(n, std::vector<int>(n));
  auto bit = [](int r, int i, int j) { return r >> (i * 2 + j) & 1; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int out = 0;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j)
            if (bit(a, i, j) && bit(b, j, k)) out |= 1 << (i * 2 + k);
      m.op[a][b] = out;
    }
  m.unit = 0b1001; // identity relation {(0,0),(1,1)}
  auto r = compute_residuals(m);
  auto& [rr, lr] = std::get<0>(r);
  m.rres = rr;
  m.lres = lr;
  m.kappa = std::get<std::vector<int>>(center_kappa(m));
  m.bang = std::get<std::vector<int>>(construct_bang(m));
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration of all biclosed posets on n <= 3 elements, up to isomorphism

namespace detail {

inline bool isomorphic(const FinBiclosedPoset& a, const FinBiclosedPoset& b) {
  const int n = a.size();
  if (b.size() != n) return false;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    if (perm[a.unit] != b.unit) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (a.leq[i][j] != b.leq[perm[i]][perm[j]]) ok = false;
        if (perm[a.op[i][j]] != b.op[perm[i]][perm[j]]) ok = false;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

} // namespace detail

inline std::vector<FinBiclosedPoset> enumerate_biclosed(int n) {
  std::vector<FinBiclosedPoset> out;
  if (n < 1 || n > 3) return out;
  // all reflexive order matrices, filtered to partial orders
  std::vector<std::vector<std::vector<bool>>> orders;
  const int offdiag = n * n - n;
  for (int mask = 0; mask < (1 << offdiag); ++mask) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j)
          leq[i][j] = true;
        else
          leq[i][j] = mask >> k++ & 1;
      }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) ok = false;
        for (int l = 0; l < n && ok; ++l)
          if (leq[i][j] && leq[j][l] && !leq[i][l]) ok = false;
      }
    if (ok) orders.push_back(std::move(leq));
  }
  // all op tables (n^(n*n)), each unit candidate
  int cells = n * n;
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= n;
  for (auto& leq : orders) {
    for (long code = 0; code < total; ++code) {
      FinBiclosedPoset m;
      m.leq = leq;
      m.op.assign(n, std::vector<int>(n));
      long c = code;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          m.op[i][j] = static_cast<int>(c % n);
          c /= n;
        }
      int unit = -1;
      for (int u = 0; u < n && unit < 0; ++u) {
        bool is_unit = true;
        for (int a = 0; a < n; ++a)
          if (m.op[u][a] != a || m.op[a][u] != a) is_unit = false;
        if (is_unit) unit = u;
      }
      if (unit < 0) continue;
      m.unit = unit;
      for (int i = 0; i < n; ++i) m.elems.push_back("e" + std::to_string(i));
      auto rs = compute_residuals(m);
      if (std::holds_alternative<NoMaximum>(rs)) continue;
      auto& [rr, lr] = std::get<0>(rs);
      m.rres = rr;
      m.lres = lr;
      if (!validate(m).ok()) continue;
      bool dup = false;
      for (auto& prev : out)
        if (detail::isomorphic(m, prev)) dup = true;
      if (dup) continue;
      m.name = "enum" + std::to_string(n) + "_" + std::to_string(out.size());
      out.push_back(std::move(m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and countermodel search

using Valuation = std::map<std::string, int>;

struct MissingTable {
  std::string which;
};

namespace detail {

inline int eval_formula(const FinBiclosedPoset& m, const Valuation& v, const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom: {
      auto it = v.find(f->atom);
      if (it == v.end()) throw MissingTable{"valuation for " + f->atom};
      return it->second;
    }
    case FKind::Unit: return m.unit;
    case FKind::Tensor:
      return m.op[eval_formula(m, v, f->left)][eval_formula(m, v, f->right)];
    case FKind::RImp: // largest x with a∘x <= b
      return m.rres[eval_formula(m, v, f->left)][eval_formula(m, v, f->right)];
    case FKind::LImp: // A↼B: largest x with x∘⟦B⟧ <= ⟦A⟧
      return m.lres[eval_formula(m, v, f->right)][eval_formula(m, v, f->left)];
    case FKind::Bang:
      if (!m.bang) throw MissingTable{"bang"};
      return (*m.bang)[eval_formula(m, v, f->left)];
    case FKind::Kappa:
      if (!m.kappa) throw MissingTable{"kappa"};
      return (*m.kappa)[eval_formula(m, v, f->left)];
  }
  throw MissingTable{"formula"};
}

} // namespace detail

inline std::variant<bool, MissingTable> eval_sequent(const FinBiclosedPoset& m,
                                                     const Valuation& v, const Sequent& s) {
  try {
    int acc = m.unit;
    bool first = true;
    for (auto& e : s.antecedent) {
      int x = detail::eval_formula(m, v, e.formula);
      acc = first ? x : m.op[acc][x];
      first = false;
    }
    return m.leq[acc][detail::eval_formula(m, v, s.succedent)];
  } catch (MissingTable& e) {
    return e;
  }
}

struct Countermodel {
  FinBiclosedPoset model;
  Valuation valuation;
};

inline std::vector<FinBiclosedPoset> library_models(CalculusLevel level) {
  std::vector<FinBiclosedPoset> out{trivial_model(), two(), rel_quantale2()};
  for (auto& m : enumerate_biclosed(2)) {
    FinBiclosedPoset e = m;
    if (auto k = center_kappa(e); std::holds_alternative<std::vector<int>>(k))
      e.kappa = std::get<std::vector<int>>(k);
    if (auto g = construct_bang(e); std::holds_alternative<std::vector<int>>(g))
      e.bang = std::get<std::vector<int>>(g);
    out.push_back(std::move(e));
  }
  // keep only models carrying the tables the level needs
  std::vector<FinBiclosedPoset> fit;
  for (auto& m : out) {
    if (level_admits_bang(level) && !m.bang) continue;
    if (level_admits_kappa(level) && !m.kappa) continue;
    fit.push_back(m);
  }
  return fit;
}

inline std::optional<Countermodel> find_countermodel(const Sequent& s, CalculusLevel level,
                                                     const std::vector<FinBiclosedPoset>& models,
                                                     size_t sample = 100000,
                                                     uint64_t seed = 20260823) {
  std::vector<std::string> atoms;
  {
    std::vector<std::string> raw;
    for (auto& e : s.antecedent) collect_atoms(e.formula, raw);
    collect_atoms(s.succedent, raw);
    for (auto& a : raw)
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  }
  std::mt19937_64 rng(seed);
  for (auto& m : models) {
    const size_t n = static_cast<size_t>(m.size());
    double space = 1;
    for (size_t i = 0; i < atoms.size(); ++i) space *= static_cast<double>(n);
    auto try_val = [&](const Valuation& v) -> bool {
      auto r = eval_sequent(m, v, s);
      return std::holds_alternative<bool>(r) && !std::get<bool>(r);
    };
    if (space <= static_cast<double>(sample)) {
      // exhaustive
      std::vector<size_t> idx(atoms.size(), 0);
      for (;;) {
        Valuation v;
        for (size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = static_cast<int>(idx[i]);
        if (try_val(v)) return Countermodel{m, v};
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
        if (i == idx.size()) break;
        if (atoms.empty()) break;
      }
    } else {
      for (size_t t = 0; t < sample; ++t) {
        Valuation v;
        for (auto& a : atoms) v[a] = static_cast<int>(rng() % n);
        if (try_val(v)) return Countermodel{m, v};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model files: name, elements, leq rows as 0/1 strings, op rows, optional
// kappa/bang rows.

inline std::string render_model(const FinBiclosedPoset& m) {
  std::ostringstream o;
  o << "model " << m.name << "\n" << "elems";
  for (auto& e : m.elems) o << " " << e;
  o << "\nunit " << m.elems[m.unit] << "\n";
  for (int i = 0; i < m.size(); ++i) {
    o << "leq";
    for (int j = 0; j < m.size(); ++j) o << " " << (m.leq[i][j] ? 1 : 0);
    o << "\n";
  }
  for (int i = 0; i < m.size(); ++i) {
    o << "op";
    for (int j = 0; j < m.size(); ++j) o << " " << m.elems[m.op[i][j]];
    o << "\n";
  }
  if (m.kappa) {
    o << "kappa";
    for (int x : *m.kappa) o << " " << m.elems[x];
    o << "\n";
  }
  if (m.bang) {
    o << "bang";
    for (int x : *m.bang) o << " " << m.elems[x];
    o << "\n";
  }
  return o.str();
}

inline std::variant<FinBiclosedPoset, std::string> parse_model(const std::string& text) {
  FinBiclosedPoset m;
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> leq_rows, op_rows;
  std::vector<std::string> kappa_row, bang_row, unit_row;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head.empty() || head[0] == '#') continue;
    std::vector<std::string> rest;
    for (std::string w; ls >> w;) rest.push_back(w);
    if (head == "model" && !rest.empty()) m.name = rest[0];
    else if (head == "elems") m.elems = rest;
    else if (head == "unit") unit_row = rest;
    else if (head == "leq") leq_rows.push_back(rest);
    else if (head == "op") op_rows.push_back(rest);
    else if (head == "kappa") kappa_row = rest;
    else if (head == "bang") bang_row = rest;
    else return "unknown line: " + head;
  }
  const int n = m.size();
  if (n == 0) return std::string("no elements");
  auto index_of = [&](const std::string& e) {
    for (int i = 0; i < n; ++i)
      if (m.elems[i] == e) return i;
    return -1;
  };
  if (unit_row.size() != 1 || index_of(unit_row[0]) < 0) return std::string("bad unit");
  m.unit = index_of(unit_row[0]);
  if (static_cast<int>(leq_rows.size()) != n || static_cast<int>(op_rows.size()) != n)
    return std::string("wrong number of table rows");
  m.leq.assign(n, std::vector<bool>(n));
  m.op.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(leq_rows[i].size()) != n || static_cast<int>(op_rows[i].size()) != n)
      return std::string("short table row");
    for (int j = 0; j < n; ++j) {
      m.leq[i][j] = leq_rows[i][j] == "1";
      int x = index_of(op_rows[i][j]);
      if (x < 0) return "unknown element " + op_rows[i][j];
      m.op[i][j] = x;
    }
  }
  auto read_unary = [&](const std::vector<std::string>& row,
                        std::optional<std::vector<int>>& slot) -> std::string {
    if (row.empty()) return "";
    if (static_cast<int>(row.size()) != n) return "short unary row";
    std::vector<int> t;
    for (auto& e : row) {
      int x = index_of(e);
      if (x < 0) return "unknown element " + e;
      t.push_back(x);
    }
    slot = std::move(t);
    return "";
  };
  if (auto e = read_unary(kappa_row, m.kappa); !e.empty()) return e;
  if (auto e = read_unary(bang_row, m.bang); !e.empty()) return e;
  auto rs = compute_residuals(m);
  if (auto* nm = std::get_if<NoMaximum>(&rs))
    return "residual maximum missing at (" + m.elems[nm->a] + ", " + m.elems[nm->b] + ")";
  auto& [rr, lr] = std::get<0>(rs);
  m.rres = rr;
  m.lres = lr;
  auto rep = validate(m);
  if (!rep.ok()) return "invalid model: " + rep.failures.front();
  return m;
}

} // namespace lambek
