// Batch corpus runner.
//
// Corpus file: one entry per line,
//   <id> <level> <kind> <payload...> => <expectation>
// kinds:
//   seq    payload `G |- A`           expects `provable` or `not-provable`
//   judge  payload `ctx ; term`       expects `type <formula>`
//   norm   payload `ctx ; term`       expects `normal-form <term>`
//   step   payload `ctx ; term`       expects `preserved`
// Blank lines and lines starting with # are skipped.  Entries run in
// parallel; results come back in corpus order.

#pragma once

#include <future>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lambek/ill.hpp"
#include "lambek/parse.hpp"
#include "lambek/print.hpp"
#include "lambek/prove.hpp"
#include "lambek/rewrite.hpp"
#include "lambek/typecheck.hpp"

namespace lambek {

struct CorpusEntry {
  std::string id;
  CalculusLevel level = CalculusLevel::L;
  std::string kind;        // seq | judge | norm | step
  std::string payload;
  std::string expect_kind; // provable | not-provable | type | normal-form | preserved
  std::string expect_arg;  // formula / term text when the expectation carries one
  int line = 0;
};

enum class EntryStatus { Pass, Fail, Indeterminate };

inline const char* entry_status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Pass: return "pass";
    case EntryStatus::Fail: return "FAIL";
    default: return "indeterminate";
  }
}

struct EntryResult {
  EntryStatus status = EntryStatus::Fail;
  std::string detail;
};

struct CorpusSummary {
  std::vector<CorpusEntry> entries;
  std::vector<EntryResult> results;
  size_t passed = 0, failed = 0, indeterminate = 0;
  bool ok() const { return failed == 0 && indeterminate == 0; }
};

namespace detail {

inline std::optional<CalculusLevel> level_from_name(const std::string& s) {
  for (auto l : {CalculusLevel::L, CalculusLevel::LBang, CalculusLevel::LKappa,
                 CalculusLevel::LBangKappa})
    if (s == level_name(l)) return l;
  return std::nullopt;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ctx ; term
inline std::pair<Context, TermPtr> parse_judgment_payload(const std::string& payload) {
  size_t semi = payload.find(';');
  if (semi == std::string::npos)
    throw ParseError("judgment payload needs `ctx ; term`", 0);
  std::string ctxt = trim(payload.substr(0, semi));
  Context ctx = ctxt.empty() ? Context{} : parse_typing_context(ctxt);
  return {std::move(ctx), parse_term(payload.substr(semi + 1))};
}

} // namespace detail

// Structural parse only; payloads are parsed when the entry runs.
inline std::variant<std::vector<CorpusEntry>, std::string> parse_corpus(
    const std::string& text) {
  std::vector<CorpusEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto bad = [&](const std::string& why) {
      return "line " + std::to_string(lineno) + ": " + why;
    };
    size_t arrow = t.find("=>");
    if (arrow == std::string::npos) return bad("missing `=>`");
    std::string head = detail::trim(t.substr(0, arrow));
    std::string expect = detail::trim(t.substr(arrow + 2));
    std::istringstream hs(head);
    CorpusEntry e;
    std::string lvl;
    if (!(hs >> e.id >> lvl >> e.kind)) return bad("expected `<id> <level> <kind>`");
    auto l = detail::level_from_name(lvl);
    if (!l) return bad("unknown level " + lvl);
    e.level = *l;
    std::getline(hs, e.payload);
    e.payload = detail::trim(e.payload);
    e.line = lineno;
    std::istringstream es(expect);
    es >> e.expect_kind;
    std::getline(es, e.expect_arg);
    e.expect_arg = detail::trim(e.expect_arg);
    bool shape_ok =
        (e.kind == "seq" &&
         (e.expect_kind == "provable" || e.expect_kind == "not-provable") &&
         e.expect_arg.empty()) ||
        (e.kind == "judge" && e.expect_kind == "type" && !e.expect_arg.empty()) ||
        (e.kind == "norm" && e.expect_kind == "normal-form" && !e.expect_arg.empty()) ||
        (e.kind == "step" && e.expect_kind == "preserved" && e.expect_arg.empty());
    if (!shape_ok) return bad("expectation `" + expect + "` does not fit kind " + e.kind);
    if (e.payload.empty()) return bad("empty payload");
    out.push_back(std::move(e));
  }
  return out;
}

inline EntryResult run_entry(const CorpusEntry& e, const SearchBudget& budget = {},
                             size_t fuel = 10000) {
  try {
    if (e.kind == "seq") {
      Sequent s = parse_sequent(e.payload);
      auto pr = prove(s, e.level, budget);
      bool want = e.expect_kind == "provable";
      switch (pr.status) {
        case ProveStatus::Found: {
          auto chk = check_derivation(*pr.derivation, e.level);
          if (!chk.ok) return {EntryStatus::Fail, "derivation failed recheck: " + chk.error};
          return want ? EntryResult{EntryStatus::Pass, "proved"}
                      : EntryResult{EntryStatus::Fail, "unexpected derivation found"};
        }
        case ProveStatus::NotProvable:
          return want ? EntryResult{EntryStatus::Fail, "search exhausted, no proof"}
                      : EntryResult{EntryStatus::Pass, "refuted by exhaustive search"};
        default:
          return {EntryStatus::Indeterminate, "budget exceeded"};
      }
    }
    auto [ctx, t] = detail::parse_judgment_payload(e.payload);
    if (e.kind == "judge") {
      auto ty = typecheck(ctx, t, e.level);
      if (auto* err = std::get_if<TypeError>(&ty))
        return {EntryStatus::Fail, "ill-typed: " + err->detail};
      FormulaPtr want = parse_formula(e.expect_arg);
      const FormulaPtr& got = std::get<FormulaPtr>(ty);
      if (!formula_eq(got, want))
        return {EntryStatus::Fail, "typed as " + render(got)};
      return {EntryStatus::Pass, "type " + render(got)};
    }
    if (e.kind == "norm") {
      auto r = normalize(t, fuel);
      if (std::holds_alternative<RewriteFuelExhausted>(r))
        return {EntryStatus::Indeterminate, "fuel exhausted"};
      TermPtr nf = std::get<TermPtr>(r);
      TermPtr want = parse_term(e.expect_arg);
      if (!alpha_eq(nf, want))
        return {EntryStatus::Fail, "normalized to " + render(nf)};
      return {EntryStatus::Pass, "normal form reached"};
    }
    if (e.kind == "step") {
      auto ty = typecheck(ctx, t, e.level);
      if (auto* err = std::get_if<TypeError>(&ty))
        return {EntryStatus::Fail, "ill-typed: " + err->detail};
      auto sr = subject_reduction_report(ctx, t, e.level);
      if (!sr.ok())
        return {EntryStatus::Fail, "subject reduction: " + sr.violations.front().detail};
      auto pr = preservation_report({{ctx, t, std::get<FormulaPtr>(ty)}});
      if (!pr.ok()) {
        const auto& en = pr.entries.front();
        std::string why = !en.type_ok ? en.type_error : en.violations.front();
        return {EntryStatus::Fail, "embedding: " + why};
      }
      return {EntryStatus::Pass,
              std::to_string(sr.reducts_checked) + " reducts preserved"};
    }
    return {EntryStatus::Fail, "unknown kind " + e.kind};
  } catch (const ParseError& ex) {
    return {EntryStatus::Fail, std::string("payload parse error: ") + ex.what()};
  }
}

inline CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries,
                                const SearchBudget& budget = {}, size_t fuel = 10000) {
  CorpusSummary sum;
  sum.entries = entries;
  std::vector<std::future<EntryResult>> futs;
  futs.reserve(entries.size());
  for (const auto& e : entries)
    futs.push_back(std::async(std::launch::async,
                              [&e, budget, fuel] { return run_entry(e, budget, fuel); }));
  for (auto& f : futs) sum.results.push_back(f.get());
  for (const auto& r : sum.results) {
    if (r.status == EntryStatus::Pass) ++sum.passed;
    else if (r.status == EntryStatus::Fail) ++sum.failed;
    else ++sum.indeterminate;
  }
  return sum;
}

inline std::string render_corpus_summary(const CorpusSummary& sum, bool machine) {
  std::ostringstream os;
  for (size_t i = 0; i < sum.entries.size(); ++i) {
    const auto& e = sum.entries[i];
    const auto& r = sum.results[i];
    if (machine) {
      os << "entry=" << e.id << " status=" << entry_status_name(r.status) << "\n";
    } else {
      os << entry_status_name(r.status) << "\t" << e.id << "\t" << e.kind << "\t"
         << e.payload << " => " << e.expect_kind
         << (e.expect_arg.empty() ? "" : " " + e.expect_arg);
      if (r.status != EntryStatus::Pass) os << "\t[" << r.detail << "]";
      os << "\n";
    }
  }
  if (machine)
    os << "passed=" << sum.passed << " failed=" << sum.failed
       << " indeterminate=" << sum.indeterminate << "\n";
  else
    os << sum.passed << " passed, " << sum.failed << " failed, " << sum.indeterminate
       << " indeterminate\n";
  return os.str();
}

} // namespace lambek
