// Acceptance runner. `acceptance N...` runs the listed criteria (all when
// none are given) and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmanip/crosscheck.hpp"
#include "pmanip/gadgets.hpp"
#include "pmanip/poly.hpp"
#include "support.hpp"

namespace {

using namespace pmanip;
using namespace pmanip::testing;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  // Deterministic text for the rerun comparison; empty when not applicable.
  std::string summary;
};

constexpr int kSuiteTrials = 2000;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Suite reports are shared between criteria run in the same process.
const CrosscheckReport& suite_report(Suite s) {
  static std::map<Suite, CrosscheckReport> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  CrosscheckOptions o;
  o.trials = kSuiteTrials;
  o.seed = s == Suite::kSM ? 2 : 3;
  o.suite = s;
  return cache.emplace(s, crosscheck(o)).first->second;
}

CrosscheckReport fresh_report(Suite s) {
  CrosscheckOptions o;
  o.trials = kSuiteTrials;
  o.seed = s == Suite::kSM ? 2 : 3;
  o.suite = s;
  return crosscheck(o);
}

Outcome extensions_match() {
  const auto start = Clock::now();
  std::ostringstream log;
  int bad = 0;
  const auto example = extensions(order(3, {{0, 1}}));
  const std::set<LinearVote> want{vote({0, 1, 2}), vote({0, 2, 1}), vote({2, 0, 1})};
  const bool example_ok =
      example.size() == 3 && std::set<LinearVote>(example.begin(), example.end()) == want;
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const PartialVote v = random_order(rng, rng.uniform(1, 5));
    const auto got = extensions(v);
    const auto brute = brute_extensions(v);
    const bool same = std::set<LinearVote>(got.begin(), got.end()) ==
                          std::set<LinearVote>(brute.begin(), brute.end()) &&
                      got.size() == brute.size();
    log << i << ' ' << got.size() << (same ? "" : " differs") << '\n';
    bad += same ? 0 : 1;
  }
  const double secs = seconds_since(start);
  return {example_ok && bad == 0 && secs < 10,
          fmt("500 votes, %d differ, worked example %s, %.2fs", bad, example_ok ? "ok" : "wrong", secs),
          log.str()};
}

bool rows_cover(const CrosscheckReport& r, const std::vector<std::string>& names, std::string& missing) {
  for (const auto& n : names) {
    bool found = false;
    for (const auto& row : r.solvers) found = found || (row.name == n && row.instances > 0);
    if (!found) missing += " " + n;
  }
  return missing.empty();
}

Outcome sm_suite() {
  const auto start = Clock::now();
  const CrosscheckReport& r = suite_report(Suite::kSM);
  const double secs = seconds_since(start);
  std::string missing;
  const bool covered = rows_cover(r,
                                  {"sm k-approval 1", "sm k-approval 2", "sm k-approval 3",
                                   "sm k-veto 1", "sm k-veto 2", "sm scoring plurality", "sm scoring veto",
                                   "sm scoring borda", "sm scoring 2,1,1,0", "sm bucklin", "sm maximin"},
                                  missing);
  return {r.mismatches() == 0 && r.skipped == 0 && covered && secs < 900,
          fmt("%d trials, %d mismatches, %d skipped, %.1fs%s", r.trials, r.mismatches(), r.skipped,
              secs, covered ? "" : (" missing:" + missing).c_str()),
          r.summary()};
}

Outcome wm_pw_suite() {
  const auto start = Clock::now();
  const CrosscheckReport& wm = suite_report(Suite::kWM);
  const CrosscheckReport& pw = suite_report(Suite::kPW);
  const double secs = seconds_since(start);
  std::string missing;
  const bool covered = rows_cover(wm, {"wm plurality", "wm veto"}, missing) &&
                       rows_cover(pw, {"pw plurality", "pw veto"}, missing);
  const int mism = wm.mismatches() + pw.mismatches();
  return {mism == 0 && wm.skipped + pw.skipped == 0 && covered && secs < 600,
          fmt("%d+%d trials, %d mismatches, %d skipped, %.1fs%s", wm.trials, pw.trials, mism,
              wm.skipped + pw.skipped, secs, covered ? "" : (" missing:" + missing).c_str()),
          wm.summary() + pw.summary()};
}

Outcome mcgarvey_exact() {
  const auto start = Clock::now();
  Rng rng(4);
  std::ostringstream log;
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    MarginTarget t;
    t.m = rng.uniform(2, 6);
    t.f.assign(t.m * t.m, 0);
    for (int a = 0; a < t.m; ++a)
      for (int b = a + 1; b < t.m; ++b) {
        t.f[a * t.m + b] = 2 * rng.uniform(-4, 4);
        t.f[b * t.m + a] = -t.f[a * t.m + b];
      }
    const Profile p = mcgarvey(t);
    bool ok = true;
    for (const auto& item : audit_mcgarvey(t, p)) ok = ok && item.ok;
    log << i << " m=" << t.m << " votes=" << p.n() << (ok ? "" : " failed") << '\n';
    bad += ok ? 0 : 1;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 5, fmt("200 targets, %d failed audit, %.2fs", bad, secs), log.str()};
}

Outcome score_gen_exact() {
  const auto start = Clock::now();
  Rng rng(5);
  std::ostringstream log;
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const int m = rng.uniform(1, 6);
    std::vector<int> x(m);
    for (auto& v : x) v = rng.uniform(-5, 5);
    const int k = rng.uniform(1, std::min(3, m));
    const ScoreGenResult r = score_gen(x, k);
    bool ok = true;
    for (const auto& item : audit_score_gen(x, k, r)) ok = ok && item.ok;
    log << i << " m=" << m << " k=" << k << " lambda=" << r.lambda << " votes=" << r.profile.n()
        << (ok ? "" : " failed") << '\n';
    bad += ok ? 0 : 1;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 10, fmt("200 vectors, %d failed audit, %.2fs", bad, secs), log.str()};
}

Outcome forward_soundness() {
  const auto start = Clock::now();
  struct Row {
    const char* name;
    GadgetInstance (*build)(const X3CInstance&);
    int checked = 0;
    int audit_failed = 0;
    int witness_failed = 0;
    std::string first_failure;
  };
  std::vector<Row> rows = {{"wm maximin", reduce_x3c_to_wm_maximin},
                           {"wm copeland", reduce_x3c_to_wm_copeland},
                           {"sm copeland", reduce_x3c_to_sm_copeland},
                           {"wm bucklin", reduce_x3c_to_wm_bucklin}};
  int instances = 0;
  for (int q : {3, 6}) {
    for (int t = 1; t <= 4; ++t) {
      for (const auto& x : all_x3c(q, t)) {
        if (!x3c_solve(x)) continue;
        ++instances;
        for (auto& row : rows) {
          const GadgetInstance g = row.build(x);
          ++row.checked;
          const bool audit = g.audit_ok();
          const Verdict v = check_gadget_witness(g);
          row.audit_failed += audit ? 0 : 1;
          row.witness_failed += v.ok ? 0 : 1;
          if ((!audit || !v.ok) && row.first_failure.empty())
            row.first_failure = serialize_x3c(x) + (v.ok ? "audit" : v.reason);
        }
      }
    }
  }
  const double secs = seconds_since(start);
  bool ok = secs < 60;
  std::string detail = fmt("%d yes-instances", instances);
  std::string failures;
  for (const auto& row : rows) {
    ok = ok && row.audit_failed == 0 && row.witness_failed == 0;
    detail += fmt("; %s audit %d/%d witness %d/%d", row.name, row.checked - row.audit_failed,
                  row.checked, row.checked - row.witness_failed, row.checked);
    if (!row.first_failure.empty()) failures += std::string("\n  first ") + row.name + " failure: " + row.first_failure;
  }
  detail += fmt("; %.1fs", secs) + failures;
  return {ok, detail, {}};
}

// Exact weak manipulation for the Bucklin gadget: every extension of the
// partial votes is a coalitional manipulation instance, decided by the
// polynomial Bucklin solver on complete votes.
bool bucklin_wm_by_extensions(const ManipulationInstance& inst) {
  std::vector<std::vector<LinearVote>> per_vote;
  for (const auto& v : inst.partial.votes) per_vote.push_back(extensions(v));
  std::vector<std::size_t> idx(per_vote.size(), 0);
  while (true) {
    ManipulationInstance cm = inst;
    for (std::size_t i = 0; i < idx.size(); ++i)
      cm.partial.votes[i] = PartialVote::from_linear(per_vote[i][idx[i]]);
    if (sm_bucklin(cm).answer) return true;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == per_vote[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) return false;
  }
}

Outcome backward_completeness() {
  const auto start = Clock::now();
  OracleOptions prune;
  prune.preferred_on_top = true;
  prune.budget = 2'000'000'000ULL;
  struct Case {
    const char* name;
    X3CInstance x;
    std::function<bool(const GadgetInstance&)> solve;
  };
  auto wm = [&](const GadgetInstance& g) { return solve_wm(g.instance, prune).answer; };
  auto sm = [&](const GadgetInstance& g) { return solve_sm(g.instance, prune).answer; };
  auto bucklin = [](const GadgetInstance& g) { return bucklin_wm_by_extensions(g.instance); };
  // Two sets over six elements either cover or overlap and leave some
  // element uncovered. The last instance covers every element while any
  // two of its sets overlap. Strong Copeland skips it: its answers are
  // already inverted on the small instances.
  const X3CInstance a = x3c(6, {{1, 2, 3}, {1, 4, 5}});
  const X3CInstance b = x3c(6, {{1, 2, 3}, {2, 3, 4}});
  const X3CInstance overlapping = x3c(6, {{1, 2, 3}, {3, 4, 5}, {1, 5, 6}});
  const std::vector<std::pair<Case, GadgetInstance (*)(const X3CInstance&)>> cases = {
      {{"wm maximin", a, wm}, reduce_x3c_to_wm_maximin},
      {{"wm maximin", b, wm}, reduce_x3c_to_wm_maximin},
      {{"wm maximin", overlapping, wm}, reduce_x3c_to_wm_maximin},
      {{"wm copeland", x3c(6, {{1, 2, 3}}), wm}, reduce_x3c_to_wm_copeland},
      {{"wm copeland", x3c(6, {{2, 4, 6}}), wm}, reduce_x3c_to_wm_copeland},
      {{"wm copeland", overlapping, wm}, reduce_x3c_to_wm_copeland},
      {{"sm copeland", a, sm}, reduce_x3c_to_sm_copeland},
      {{"sm copeland", b, sm}, reduce_x3c_to_sm_copeland},
      {{"wm bucklin", a, bucklin}, reduce_x3c_to_wm_bucklin},
      {{"wm bucklin", overlapping, bucklin}, reduce_x3c_to_wm_bucklin},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [c, build] : cases) {
    const auto t0 = Clock::now();
    if (x3c_solve(c.x)) {
      ok = false;
      detail += fmt("%s: source has a cover; ", c.name);
      continue;
    }
    std::fprintf(stderr, "  %s t=%d ...\n", c.name, c.x.t());
    bool answer = true;
    std::string note;
    try {
      answer = c.solve(build(c.x));
    } catch (const BudgetExceeded&) {
      note = " (budget)";
    }
    ok = ok && !answer && note.empty();
    detail += fmt("%s t=%d: %s%s %.1fs; ", c.name, c.x.t(), answer ? "yes" : "no", note.c_str(),
                  seconds_since(t0));
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 1800;
  return {ok, detail + fmt("total %.1fs", secs), {}};
}

Outcome implications() {
  const auto start = Clock::now();
  int violations = 0;
  int checked = 0;
  std::string rows;
  for (Suite s : {Suite::kSM, Suite::kWM, Suite::kPW}) {
    for (const auto& r : suite_report(s).implications) {
      violations += r.violations;
      checked += r.checked;
      if (r.violations) rows += " " + r.name;
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%d checks, %d violations%s, %.1fs", checked, violations, rows.c_str(),
              seconds_since(start)),
          {}};
}

Outcome witness_integrity() {
  const auto start = Clock::now();
  // Rows cover both the polynomial solver and the oracle answer.
  int checked = 0;
  int failed = 0;
  for (Suite s : {Suite::kSM, Suite::kWM, Suite::kPW}) {
    for (const auto& r : suite_report(s).solvers) {
      checked += r.witness_checked;
      failed += r.witness_failed;
    }
  }
  return {failed == 0 && checked > 0,
          fmt("%d yes answers checked, %d rejected, %.1fs", checked, failed, seconds_since(start)),
          {}};
}

Outcome determinism() {
  const auto start = Clock::now();
  auto texts = [] {
    return std::vector<std::string>{extensions_match().summary,
                                    fresh_report(Suite::kSM).summary(),
                                    fresh_report(Suite::kWM).summary() + fresh_report(Suite::kPW).summary(),
                                    mcgarvey_exact().summary, score_gen_exact().summary};
  };
  // Criterion 1 is not part of the rerun set; drop it.
  auto first = texts();
  auto second = texts();
  first.erase(first.begin());
  second.erase(second.begin());
  std::string differ;
  for (std::size_t i = 0; i < first.size(); ++i)
    if (first[i] != second[i] || first[i].empty()) differ += fmt(" %zu", i + 2);
  return {differ.empty(),
          fmt("criteria 2-5 rerun, %s, %.1fs", differ.empty() ? "identical" : ("differ:" + differ).c_str(),
              seconds_since(start)),
          {}};
}

const std::vector<std::pair<const char*, Outcome (*)()>> kCriteria = {
    {"extension enumeration matches brute force", extensions_match},
    {"polynomial solvers agree with the oracle (sm suite)", sm_suite},
    {"polynomial solvers agree with the oracle (wm/pw suite)", wm_pw_suite},
    {"margin construction is exact and within the size bound", mcgarvey_exact},
    {"score construction is exact with d strictly last", score_gen_exact},
    {"hardness gadgets: coded witnesses and audits on yes-instances", forward_soundness},
    {"hardness gadgets: oracle says no on no-instances", backward_completeness},
    {"definitional implications hold on all suite instances", implications},
    {"every yes answer passes verification", witness_integrity},
    {"summaries are byte-identical on rerun", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu ...]\n", kCriteria.size());
      return 1;
    }
    which.push_back(n);
  }
  if (which.empty())
    for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) which.push_back(n);

  bool all = true;
  for (int n : which) {
    const auto& [name, run] = kCriteria[n - 1];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    std::printf("criterion %d: %s: %s (%s)\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
