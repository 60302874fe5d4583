// Command-line front end.  Exit codes: 0 affirmative, 1 definite negative,
// 2 indeterminate (budget/fuel/bound exceeded), 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lambek/corpus.hpp"
#include "lambek/cut.hpp"
#include "lambek/dialectica.hpp"
#include "lambek/ill.hpp"

using namespace lambek;

namespace {

constexpr int kOk = 0, kNegative = 1, kIndeterminate = 2, kInputError = 3;

struct Out {
  bool machine = false;
  std::ostringstream text;
  std::vector<std::pair<std::string, std::string>> kv;

  void put(const std::string& key, const std::string& val, const std::string& line) {
    kv.emplace_back(key, val);
    if (!line.empty()) text << line << "\n";
  }
  void flush() {
    if (machine)
      for (auto& [k, v] : kv) std::cout << k << "=" << v << "\n";
    else
      std::cout << text.str();
  }
};

int fail_input(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kInputError;
}

std::string slurp_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CalculusLevel parse_level(const std::string& s) {
  auto l = lambek::detail::level_from_name(s);
  if (!l) throw std::runtime_error("unknown level " + s);
  return *l;
}

FinBiclosedPoset load_model(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (name == "trivial") return trivial_model();
    if (name == "two") return two();
    if (name == "rel2") return rel_quantale2();
    throw std::runtime_error("unknown builtin model " + name +
                             " (have: trivial, two, rel2)");
  }
  auto m = parse_model(slurp_or_throw(spec));
  if (auto* err = std::get_if<std::string>(&m))
    throw std::runtime_error("model file: " + *err);
  return std::get<FinBiclosedPoset>(m);
}

std::pair<Context, TermPtr> split_judgment(const std::string& payload) {
  return lambek::detail::parse_judgment_payload(payload);
}

std::string render_valuation(const Valuation& v, const FinBiclosedPoset& m) {
  std::string s;
  for (auto& [a, e] : v) s += (s.empty() ? "" : " ") + a + "=" + m.elems[e];
  return s;
}

int cmd_parse(const std::string& text, const std::string& as, Out& out) {
  if (as == "sequent") {
    Sequent s = parse_sequent(text);
    out.put("kind", "sequent", "sequent: " + render(s));
    out.put("text", render(s), "");
    out.put("sexp", to_sexp(s), to_sexp(s));
  } else if (as == "formula") {
    FormulaPtr f = parse_formula(text);
    out.put("kind", "formula", "formula: " + render(f));
    out.put("text", render(f), "");
    out.put("sexp", to_sexp(f), to_sexp(f));
  } else {
    TermPtr t = parse_term(text);
    out.put("kind", "term", "term: " + render(t));
    out.put("text", render(t), "");
    out.put("sexp", to_sexp(t), to_sexp(t));
  }
  return kOk;
}

int cmd_check(const std::string& file, CalculusLevel level, Out& out) {
  Derivation d = parse_derivation(slurp_or_throw(file));
  auto chk = check_derivation(d, level);
  out.put("endsequent", to_sexp(d.conclusion), "endsequent: " + render(d.conclusion));
  out.put("rules", std::to_string(derivation_size(d)),
          "rules: " + std::to_string(derivation_size(d)));
  if (chk.ok) {
    out.put("ok", "true", "ok");
    return kOk;
  }
  out.put("ok", "false", "invalid: " + chk.error);
  out.put("error", chk.error, "");
  return kNegative;
}

int cmd_prove(const std::string& text, CalculusLevel level, size_t budget, Out& out) {
  Sequent s = parse_sequent(text);
  auto pr = prove(s, level, SearchBudget{64, budget});
  out.put("visited", std::to_string(pr.visited), "visited: " + std::to_string(pr.visited));
  switch (pr.status) {
    case ProveStatus::Found:
      out.put("status", "found", "provable");
      out.put("derivation", to_sexp(*pr.derivation), to_sexp(*pr.derivation));
      return kOk;
    case ProveStatus::NotProvable:
      out.put("status", "not-provable", "not provable");
      return kNegative;
    default:
      out.put("status", "budget-exceeded", "budget exceeded");
      return kIndeterminate;
  }
}

int cmd_typecheck(const std::string& payload, CalculusLevel level, Out& out) {
  auto [ctx, t] = split_judgment(payload);
  auto ty = typecheck(ctx, t, level);
  if (auto* err = std::get_if<TypeError>(&ty)) {
    out.put("status", "ill-typed", "ill-typed: " + err->detail);
    out.put("error", err->detail, "");
    return kNegative;
  }
  out.put("status", "typed", "type: " + render(std::get<FormulaPtr>(ty)));
  out.put("type", render(std::get<FormulaPtr>(ty)), "");
  return kOk;
}

int cmd_normalize(const std::string& text, size_t fuel, Out& out) {
  TermPtr t = parse_term(text);
  std::vector<TraceLine> trace;
  auto r = normalize(t, fuel, &trace);
  for (auto& l : trace) out.put("step", render(l), render(l));
  if (std::holds_alternative<RewriteFuelExhausted>(r)) {
    out.put("status", "fuel-exhausted", "fuel exhausted after " +
                                            std::to_string(fuel) + " steps");
    return kIndeterminate;
  }
  out.put("status", "normal", "normal form: " + render(std::get<TermPtr>(r)));
  out.put("normal-form", render(std::get<TermPtr>(r)), "");
  return kOk;
}

int cmd_embed(const std::string& payload, Out& out) {
  auto [ctx, t] = split_judgment(payload);
  Context ictx = embed_context(ctx);
  ILLTermPtr it = embed_term(t);
  out.put("context", render(ictx, true), "context: " + render(ictx, true));
  out.put("term", render(it), "term: " + render(it));
  auto ty = ill_typecheck(ictx, it);
  if (auto* err = std::get_if<std::string>(&ty)) {
    out.put("status", "ill-typed", "image does not typecheck: " + *err);
    return kNegative;
  }
  out.put("status", "typed", "type: " + ill_render(std::get<ILLFormulaPtr>(ty)));
  out.put("type", ill_render(std::get<ILLFormulaPtr>(ty)), "");
  return kOk;
}

int cmd_eval(const std::string& text, const std::string& model, uint64_t seed, Out& out) {
  Sequent s = parse_sequent(text);
  FinBiclosedPoset m = load_model(model);
  std::vector<std::string> atoms;
  {
    std::vector<std::string> raw;
    for (auto& e : s.antecedent) collect_atoms(e.formula, raw);
    collect_atoms(s.succedent, raw);
    for (auto& a : raw)
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  }
  const size_t n = static_cast<size_t>(m.size());
  double space = 1;
  for (size_t i = 0; i < atoms.size(); ++i) space *= static_cast<double>(n);
  const bool exhaustive = space <= 100000.0;
  size_t tried = 0;
  std::mt19937_64 rng(seed);
  auto check = [&](const Valuation& v) -> std::optional<int> {
    ++tried;
    auto r = eval_sequent(m, v, s);
    if (auto* mt = std::get_if<MissingTable>(&r))
      throw std::runtime_error("model " + m.name + " lacks a " + mt->which + " table");
    if (!std::get<bool>(r)) {
      out.put("status", "refuted", "refuted at " + render_valuation(v, m));
      out.put("valuation", render_valuation(v, m), "");
      return kNegative;
    }
    return std::nullopt;
  };
  if (exhaustive) {
    std::vector<size_t> idx(atoms.size(), 0);
    for (;;) {
      Valuation v;
      for (size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = static_cast<int>(idx[i]);
      if (auto rc = check(v)) return *rc;
      size_t i = 0;
      while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
      if (i == idx.size() || atoms.empty()) break;
    }
  } else {
    for (size_t t = 0; t < 100000; ++t) {
      Valuation v;
      for (auto& a : atoms) v[a] = static_cast<int>(rng() % n);
      if (auto rc = check(v)) return *rc;
    }
  }
  out.put("status", exhaustive ? "holds" : "holds-sampled",
          std::string("holds in ") + m.name + " (" + std::to_string(tried) +
              (exhaustive ? " valuations, exhaustive)" : " sampled valuations)"));
  out.put("valuations", std::to_string(tried), "");
  return kOk;
}

int cmd_countermodel(const std::string& text, CalculusLevel level,
                     const std::string& model, uint64_t seed, Out& out) {
  Sequent s = parse_sequent(text);
  std::vector<FinBiclosedPoset> models =
      model.empty() ? library_models(level) : std::vector<FinBiclosedPoset>{load_model(model)};
  auto cm = find_countermodel(s, level, models, 100000, seed);
  if (cm) {
    out.put("status", "countermodel", "countermodel: " + cm->model.name + " with " +
                                          render_valuation(cm->valuation, cm->model));
    out.put("model", cm->model.name, "");
    out.put("valuation", render_valuation(cm->valuation, cm->model), "");
    return kNegative;
  }
  out.put("status", "none", "no countermodel found");
  return kOk;
}

int cmd_laws(const std::string& model, int bound, int samples, uint64_t seed, Out& out) {
  FinBiclosedPoset m = load_model(model);
  auto host = std::make_shared<FinBiclosedPoset>(std::move(m));
  auto rep = check_laws(host, samples, bound, seed);
  int failed = 0, bounded = 0;
  for (auto& l : rep.laws) {
    failed += l.failed;
    bounded += l.bound_exceeded;
    out.put("law." + l.name,
            l.failed || l.bound_exceeded ? "FAIL" : "ok", "");
  }
  out.text << render_law_report(rep);
  out.put("failed", std::to_string(failed), "");
  out.put("bound_exceeded", std::to_string(bounded), "");
  if (failed) return kNegative;
  if (bounded) return kIndeterminate;
  return kOk;
}

int cmd_corpus(const std::string& file, size_t budget, size_t fuel, Out& out) {
  auto p = parse_corpus(slurp_or_throw(file));
  if (auto* err = std::get_if<std::string>(&p)) throw std::runtime_error(*err);
  auto sum = run_corpus(std::get<std::vector<CorpusEntry>>(p), SearchBudget{64, budget}, fuel);
  out.text << render_corpus_summary(sum, false);
  for (size_t i = 0; i < sum.entries.size(); ++i)
    out.kv.emplace_back("entry." + sum.entries[i].id,
                        entry_status_name(sum.results[i].status));
  out.kv.emplace_back("passed", std::to_string(sum.passed));
  out.kv.emplace_back("failed", std::to_string(sum.failed));
  out.kv.emplace_back("indeterminate", std::to_string(sum.indeterminate));
  if (sum.failed) return kNegative;
  if (sum.indeterminate) return kIndeterminate;
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the Lambek calculus and its modal extensions"};
  app.require_subcommand(1);

  std::string level_s = "l", format = "text", model, as = "sequent", arg, file;
  size_t budget = 200000, fuel = 10000;
  int bound = 2, samples = 50;
  uint64_t seed = 7;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));
  };
  auto add_level = [&](CLI::App* c) {
    c->add_option("--level", level_s)
        ->check(CLI::IsMember({"l", "lbang", "lkappa", "lbangkappa"}));
  };

  auto* cparse = app.add_subcommand("parse", "parse and round-trip input text");
  cparse->add_option("text", arg)->required();
  cparse->add_option("--as", as)->check(CLI::IsMember({"sequent", "formula", "term"}));
  add_common(cparse);

  auto* ccheck = app.add_subcommand("check", "check a derivation file");
  ccheck->add_option("file", file)->required();
  add_level(ccheck);
  add_common(ccheck);

  auto* cprove = app.add_subcommand("prove", "search for a derivation");
  cprove->add_option("sequent", arg)->required();
  add_level(cprove);
  cprove->add_option("--budget", budget);
  add_common(cprove);

  auto* ctype = app.add_subcommand("typecheck", "infer the type of `ctx ; term`");
  ctype->add_option("judgment", arg)->required();
  add_level(ctype);
  add_common(ctype);

  auto* cnorm = app.add_subcommand("normalize", "normalize a term, printing the trace");
  cnorm->add_option("term", arg)->required();
  cnorm->add_option("--fuel", fuel);
  add_common(cnorm);

  auto* cembed = app.add_subcommand("embed", "translate `ctx ; term` into ILL");
  cembed->add_option("judgment", arg)->required();
  add_common(cembed);

  auto* ceval = app.add_subcommand("eval", "evaluate a sequent in a poset model");
  ceval->add_option("sequent", arg)->required();
  ceval->add_option("--model", model)->required();
  ceval->add_option("--seed", seed);
  add_common(ceval);

  auto* ccm = app.add_subcommand("countermodel", "search the model library for a refutation");
  ccm->add_option("sequent", arg)->required();
  add_level(ccm);
  ccm->add_option("--model", model);
  ccm->add_option("--seed", seed);
  add_common(ccm);

  auto* claws = app.add_subcommand("laws", "run the dialectica law suite over a host model");
  claws->add_option("--model", model)->required();
  claws->add_option("--bound", bound);
  claws->add_option("--samples", samples);
  claws->add_option("--seed", seed);
  add_common(claws);

  auto* ccorpus = app.add_subcommand("corpus", "run a corpus file");
  ccorpus->add_option("file", file)->required();
  ccorpus->add_option("--budget", budget);
  ccorpus->add_option("--fuel", fuel);
  add_common(ccorpus);

  CLI11_PARSE(app, argc, argv);

  Out out;
  out.machine = format == "machine";
  int rc = kInputError;
  try {
    CalculusLevel level = parse_level(level_s);
    if (cparse->parsed()) rc = cmd_parse(arg, as, out);
    else if (ccheck->parsed()) rc = cmd_check(file, level, out);
    else if (cprove->parsed()) rc = cmd_prove(arg, level, budget, out);
    else if (ctype->parsed()) rc = cmd_typecheck(arg, level, out);
    else if (cnorm->parsed()) rc = cmd_normalize(arg, fuel, out);
    else if (cembed->parsed()) rc = cmd_embed(arg, out);
    else if (ceval->parsed()) rc = cmd_eval(arg, model, seed, out);
    else if (ccm->parsed()) rc = cmd_countermodel(arg, level, model, seed, out);
    else if (claws->parsed()) rc = cmd_laws(model, bound, samples, seed, out);
    else if (ccorpus->parsed()) rc = cmd_corpus(file, budget, fuel, out);
  } catch (const ParseError& e) {
    return fail_input(e.what());
  } catch (const DialError& e) {
    return fail_input(e.kind + ": " + e.detail);
  } catch (const std::exception& e) {
    return fail_input(e.what());
  }
  out.flush();
  return rc;
}
