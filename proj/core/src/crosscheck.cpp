#include "pmanip/crosscheck.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "pmanip/gadgets.hpp"
#include "pmanip/poly.hpp"

namespace pmanip {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

int Rng::uniform(int lo, int hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<int>(x % range);
}

PartialVote random_partial_vote(Rng& rng, int m) {
  std::vector<Candidate> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
  const Candidate forgotten = rng.coin() ? rng.uniform(0, m - 1) : -1;
  std::vector<std::pair<Candidate, Candidate>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (order[i] != forgotten && order[j] != forgotten) pairs.emplace_back(order[i], order[j]);
  return transitive_close(pairs, m);
}

ManipulationInstance random_instance(Rng& rng, const RuleSpec& rule, int m, int votes,
                                     int manipulators) {
  ManipulationInstance inst{rule, {CandidateSet::anonymous(m), {}}, manipulators, 0};
  for (int i = 0; i < votes; ++i) inst.partial.votes.push_back(random_partial_vote(rng, m));
  inst.preferred = rng.uniform(0, m - 1);
  return inst;
}

Suite parse_suite(const std::string& name) {
  if (name == "sm") return Suite::kSM;
  if (name == "wm") return Suite::kWM;
  if (name == "pw") return Suite::kPW;
  throw ParameterError("unknown suite '" + name + "' (expected sm, wm or pw)");
}

int CrosscheckReport::mismatches() const {
  int total = 0;
  for (const auto& r : solvers) total += r.mismatch;
  return total;
}

int CrosscheckReport::witness_failures() const {
  int total = 0;
  for (const auto& r : solvers) total += r.witness_failed;
  return total;
}

int CrosscheckReport::violations() const {
  int total = 0;
  for (const auto& r : implications) total += r.violations;
  return total;
}

std::string CrosscheckReport::summary() const {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %9s %9s %9s %9s %9s %9s\n", "solver", "instances",
                "agree", "mismatch", "yes", "verified", "rejected");
  os << buf;
  // Polynomial solvers first, then the oracle's own witness checks.
  std::vector<const SolverRow*> order;
  for (const auto& r : solvers)
    if (r.name.rfind("oracle", 0) != 0) order.push_back(&r);
  for (const auto& r : solvers)
    if (r.name.rfind("oracle", 0) == 0) order.push_back(&r);
  for (const SolverRow* row : order) {
    const SolverRow& r = *row;
    std::snprintf(buf, sizeof buf, "%-28s %9d %9d %9d %9d %9d %9d\n", r.name.c_str(), r.instances,
                  r.agree, r.mismatch, r.yes, r.witness_checked - r.witness_failed,
                  r.witness_failed);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "\n%-28s %9s %9s\n", "implication", "checked", "violated");
  os << buf;
  for (const auto& r : implications) {
    std::snprintf(buf, sizeof buf, "%-28s %9d %9d\n", r.name.c_str(), r.checked, r.violations);
    os << buf;
  }
  os << "\ntrials: " << trials << "  skipped: " << skipped << "  mismatches: " << mismatches()
     << "  rejected witnesses: " << witness_failures() << "  violations: " << violations()
     << '\n';
  return os.str();
}

Verdict verify_via_record(Problem problem, const ManipulationInstance& inst,
                          const SolveResult& result, std::uint64_t budget) {
  const ElectionFile file = election_from(inst);
  const std::string text =
      to_json(make_record(problem, inst.rule, result, inst.partial.candidates, 0, ""));
  ElectionFile reparsed = parse_election(serialize_election(file));
  return verify_record(reparsed, parse_record(text), budget);
}

namespace {

struct Config {
  std::string name;
  Problem problem;
  RuleSpec rule;
  bool single = false;  // algorithm needs exactly one manipulator
  std::function<SolveResult(const ManipulationInstance&)> poly;
};

std::vector<Config> sm_configs(int m) {
  std::vector<Config> out;
  for (int k = 1; k <= 3 && k < m; ++k)
    out.push_back({"sm k-approval " + std::to_string(k), Problem::kSM, RuleSpec::k_approval(k),
                   false, [k](const ManipulationInstance& i) { return sm_kapproval(i, k); }});
  for (int k = 1; k <= 2 && k < m; ++k)
    out.push_back({"sm k-veto " + std::to_string(k), Problem::kSM, RuleSpec::k_veto(k), false,
                   [k](const ManipulationInstance& i) { return sm_kveto(i, k); }});
  std::vector<std::pair<std::string, RuleSpec>> scoring = {
      {"plurality", RuleSpec::plurality()},
      {"veto", RuleSpec::veto()},
      {"borda", RuleSpec::borda()}};
  if (m == 4) scoring.emplace_back("2,1,1,0", RuleSpec::positional(ScoreVector({2, 1, 1, 0})));
  for (auto& [label, rule] : scoring) {
    out.push_back({"sm scoring " + label, Problem::kSM, rule, true,
                   [sv = rule.score_vector(m)](const ManipulationInstance& i) {
                     return sm_scoring_single(i, sv);
                   }});
  }
  out.push_back({"sm bucklin", Problem::kSM, RuleSpec::bucklin(), false,
                 [](const ManipulationInstance& i) { return sm_bucklin(i); }});
  out.push_back({"sm maximin", Problem::kSM, RuleSpec::maximin(), true,
                 [](const ManipulationInstance& i) { return sm_maximin_single(i); }});
  return out;
}

std::vector<Config> wm_configs() {
  return {{"wm plurality", Problem::kWM, RuleSpec::plurality(), false, wm_plurality_veto},
          {"wm veto", Problem::kWM, RuleSpec::veto(), false, wm_plurality_veto}};
}

std::vector<Config> pw_configs() {
  return {{"pw plurality", Problem::kPW, RuleSpec::plurality(), false,
           [](const ManipulationInstance& i) { return pw_plurality(i.partial, i.preferred); }},
          {"pw veto", Problem::kPW, RuleSpec::veto(), false,
           [](const ManipulationInstance& i) { return pw_veto(i.partial, i.preferred); }}};
}

SolveResult run_oracle(Problem problem, const ManipulationInstance& inst,
                       const OracleOptions& o) {
  switch (problem) {
    case Problem::kPW: return solve_pw(inst.rule, inst.partial, inst.preferred, o);
    case Problem::kNW: return solve_nw(inst.rule, inst.partial, inst.preferred, o);
    case Problem::kCM: break;
    case Problem::kWM: return solve_wm(inst, o);
    case Problem::kSM: return solve_sm(inst, o);
  }
  throw ParameterError("no oracle comparison for coalitional manipulation");
}

class Runner {
 public:
  explicit Runner(const CrosscheckOptions& opts) : opts_(opts) { oracle_.budget = opts.budget; }

  CrosscheckReport run() {
    Rng rng(opts_.seed);
    for (int trial = 0; trial < opts_.trials; ++trial) {
      const int m = rng.uniform(2, opts_.max_candidates);
      const int n = rng.uniform(0, opts_.max_votes);
      const int manipulators = rng.uniform(1, opts_.max_manipulators);
      // One base instance per trial; every configuration re-labels its rule.
      const ManipulationInstance base =
          random_instance(rng, RuleSpec::plurality(), m, n, manipulators);
      try {
        run_trial(trial, base);
      } catch (const BudgetExceeded&) {
        ++report_.skipped;
      }
      ++report_.trials;
    }
    return std::move(report_);
  }

 private:
  SolverRow& row(const std::string& name) {
    for (auto& r : report_.solvers)
      if (r.name == name) return r;
    report_.solvers.push_back({name});
    return report_.solvers.back();
  }

  ImplicationRow& implication(const std::string& name) {
    for (auto& r : report_.implications)
      if (r.name == name) return r;
    report_.implications.push_back({name});
    return report_.implications.back();
  }

  void imply(const std::string& name, bool holds, int trial, const ManipulationInstance& inst) {
    auto& r = implication(name);
    ++r.checked;
    if (!holds) {
      ++r.violations;
      dump(trial, name, inst, "implication violated");
    }
  }

  void witness(SolverRow& r, Problem problem, const ManipulationInstance& inst,
               const SolveResult& res, int trial) {
    // NW "yes" has no certificate; every other yes must verify.
    if (!res.answer || problem == Problem::kNW) return;
    ++r.witness_checked;
    const Verdict v = verify_via_record(problem, inst, res, opts_.budget);
    if (!v.ok) {
      ++r.witness_failed;
      dump(trial, r.name, inst, "witness rejected: " + v.reason);
    }
  }

  void dump(int trial, const std::string& what, const ManipulationInstance& inst,
            const std::string& why) {
    std::string slug = what;
    for (char& ch : slug)
      if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '-';
    const std::string file = "trial" + std::to_string(trial) + "-" + slug + ".txt";
    report_.dumps.push_back(file);
    if (opts_.dump_dir.empty()) return;
    std::ofstream out(opts_.dump_dir + "/" + file);
    out << "# " << what << ": " << why << " (seed " << opts_.seed << ", trial " << trial
        << ")\n"
        << serialize_election(election_from(inst));
  }

  void compare(const Config& cfg, const ManipulationInstance& inst, int trial) {
    const SolveResult expected = run_oracle(cfg.problem, inst, oracle_);
    SolveResult got = cfg.poly(inst);
    if (opts_.inject_fault && trial == 0) got.answer = !got.answer;
    auto& r = row(cfg.name);
    ++r.instances;
    if (expected.answer) ++r.yes;
    if (got.answer == expected.answer) {
      ++r.agree;
    } else {
      ++r.mismatch;
      dump(trial, cfg.name, inst,
           std::string("oracle ") + (expected.answer ? "yes" : "no") + ", poly " +
               (got.answer ? "yes" : "no"));
    }
    witness(r, cfg.problem, inst, got, trial);
    witness(row("oracle " + problem_name(cfg.problem)), cfg.problem, inst, expected, trial);
    implications(cfg, inst, expected, trial);
  }

  void implications(const Config& cfg, const ManipulationInstance& inst,
                    const SolveResult& answer, int trial) {
    const auto& p = inst.partial;
    const Candidate c = inst.preferred;
    if (cfg.problem == Problem::kSM && answer.answer)
      imply("sm => wm", solve_wm(inst, oracle_).answer, trial, inst);
    if (cfg.problem == Problem::kWM) {
      auto [pw_profile, pc] = wm_to_pw(inst);
      const bool pw = solve_pw(inst.rule, pw_profile, pc, oracle_).answer;
      imply("wm = pw(wm_to_pw)", pw == answer.answer, trial, inst);
    }
    const bool nw = solve_nw(inst.rule, p, c, oracle_).answer;
    if (nw) imply("nw => pw", solve_pw(inst.rule, p, c, oracle_).answer, trial, inst);

    // Coalitional manipulation on one extension, embedded both ways.
    Profile complete{p.candidates, {}};
    for (const auto& v : p.votes) complete.votes.push_back(first_extension(v));
    const bool cm = solve_cm(inst.rule, complete, inst.manipulators, c, oracle_).answer;
    const bool wm = solve_wm(embed_cm_as(Problem::kWM, inst.rule, complete, inst.manipulators, c),
                             oracle_).answer;
    const bool sm = solve_sm(embed_cm_as(Problem::kSM, inst.rule, complete, inst.manipulators, c),
                             oracle_).answer;
    imply("cm = wm(embedded)", cm == wm, trial, inst);
    imply("cm = sm(embedded)", cm == sm, trial, inst);

    const Complexity cx = classify(Problem::kCM, inst.rule, inst.manipulators);
    if (cfg.problem == Problem::kSM && cx.poly) {
      ManipulationInstance cm_inst{inst.rule, PartialProfile::from_profile(complete),
                                   inst.manipulators, c};
      auto& r = row("cm" + cfg.name.substr(2));
      SolveResult got = solve_poly(Problem::kCM, cm_inst);
      if (opts_.inject_fault && trial == 0) got.answer = !got.answer;
      ++r.instances;
      if (cm) ++r.yes;
      if (got.answer == cm) {
        ++r.agree;
      } else {
        ++r.mismatch;
        dump(trial, r.name, cm_inst, "oracle and poly disagree");
      }
      witness(r, Problem::kCM, cm_inst, got, trial);
    }
  }

  void run_trial(int trial, const ManipulationInstance& base) {
    const int m = base.partial.m();
    std::vector<Config> configs;
    switch (opts_.suite) {
      case Suite::kSM: configs = sm_configs(m); break;
      case Suite::kWM:
        configs = wm_configs();
        for (auto& c : pw_configs()) configs.push_back(std::move(c));
        break;
      case Suite::kPW: configs = pw_configs(); break;
    }
    for (const auto& cfg : configs) {
      ManipulationInstance inst = base;
      inst.rule = cfg.rule;
      if (cfg.single) inst.manipulators = 1;
      compare(cfg, inst, trial);
    }
  }

  CrosscheckOptions opts_;
  OracleOptions oracle_;
  CrosscheckReport report_;
};

}  // namespace

CrosscheckReport crosscheck(const CrosscheckOptions& opts) {
  if (opts.trials < 0) throw ParameterError("trials must be non-negative");
  if (opts.max_candidates < 2 || opts.max_candidates > 5)
    throw ParameterError("max-candidates must be in [2, 5]");
  if (opts.max_votes < 0 || opts.max_votes > 3)
    throw ParameterError("max-votes must be in [0, 3]");
  if (opts.max_manipulators < 1 || opts.max_manipulators > 2)
    throw ParameterError("max-manipulators must be in [1, 2]");
  return Runner(opts).run();
}

}  // namespace pmanip
