// pmanip: solve, generate, verify and cross-check manipulation instances.
//
// Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 no polynomial
// algorithm for a forced --algo poly, 4 rejected witness / failed audit /
// cross-check disagreement.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pmanip/crosscheck.hpp"
#include "pmanip/io.hpp"
#include "pmanip/poly.hpp"

namespace {

using namespace pmanip;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kBudget = 2;
constexpr int kHard = 3;
constexpr int kRejected = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
  try {
    return parse(slurp(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.what());
  }
}

struct SolveFlags {
  std::string problem;
  std::string rule;
  std::optional<int> k;
  std::vector<int> scores;
  std::string algo = "auto";
  std::string input = "-";
  std::uint64_t budget = kDefaultBudget;
  bool prune = false;
};

int cmd_solve(const SolveFlags& f) {
  const Problem problem = parse_problem(f.problem);
  ElectionFile file = parse_file(f.input, parse_election);
  if (!f.rule.empty()) {
    std::optional<std::vector<int>> scores;
    if (!f.scores.empty()) scores = f.scores;
    file.rule = parse_rule(f.rule, f.k, scores);
  }
  if (problem == Problem::kPW || problem == Problem::kNW) file.manipulators = 1;
  const ManipulationInstance inst = file.instance();

  const Complexity cx = classify(problem, inst.rule, inst.manipulators);
  bool use_poly = cx.poly;
  if (f.algo == "oracle") use_poly = false;
  if (f.algo == "poly" && !cx.poly) {
    std::cerr << "no polynomial algorithm for " << problem_name(problem) << " under "
              << inst.rule.describe() << ": " << cx.note << '\n';
    return kHard;
  }

  OracleOptions opts;
  opts.budget = f.budget;
  opts.preferred_on_top = f.prune;
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  if (use_poly) {
    result = solve_poly(problem, inst);
  } else {
    switch (problem) {
      case Problem::kPW: result = solve_pw(inst.rule, inst.partial, inst.preferred, opts); break;
      case Problem::kNW: result = solve_nw(inst.rule, inst.partial, inst.preferred, opts); break;
      case Problem::kCM:
        result = solve_cm(inst.rule, file.profile(), inst.manipulators, inst.preferred, opts);
        break;
      case Problem::kWM: result = solve_wm(inst, opts); break;
      case Problem::kSM: result = solve_sm(inst, opts); break;
    }
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cout << to_json(make_record(problem, inst.rule, result, inst.partial.candidates, ms,
                                   use_poly ? cx.note : "oracle"))
            << '\n';
  return kOk;
}

struct GenFlags {
  std::string gadget;
  std::string x3c;
  std::string target;
  std::string input;
  std::optional<int> k;
  std::vector<int> x;
  bool audit = false;
  std::string witness;
};

void print_audit(const std::vector<AuditItem>& audit) {
  bool ok = true;
  for (const auto& a : audit) {
    std::cout << "# audit: " << a.what << ": intended " << a.intended << ", achieved "
              << a.achieved << (a.ok ? "" : "  FAIL") << '\n';
    ok = ok && a.ok;
  }
  std::cout << "# audit: " << (ok ? "pass" : "fail") << '\n';
}

int finish_gen(const GenFlags& f, const ElectionFile& out, const std::vector<AuditItem>& audit) {
  std::cout << serialize_election(out);
  if (!f.audit) return kOk;
  print_audit(audit);
  for (const auto& a : audit)
    if (!a.ok) return kRejected;
  return kOk;
}

int cmd_gen(const GenFlags& f) {
  auto need = [&](const std::string& value, const char* flag) {
    if (value.empty()) throw InputError("gadget '" + f.gadget + "' needs " + flag);
  };
  if (f.gadget == "mcgarvey") {
    need(f.target, "--target");
    const MarginTarget target = parse_file(f.target, parse_margin_target);
    const Profile p = mcgarvey(target);
    ElectionFile out{p.candidates, PartialProfile::from_profile(p).votes, {}, {}, {}};
    return finish_gen(f, out, audit_mcgarvey(target, p));
  }
  if (f.gadget == "scoregen") {
    if (f.x.empty()) throw InputError("gadget 'scoregen' needs --x");
    if (!f.k) throw InputError("gadget 'scoregen' needs --k");
    const ScoreGenResult r = score_gen(f.x, *f.k);
    ElectionFile out{r.profile.candidates, PartialProfile::from_profile(r.profile).votes, {}, {},
                     RuleSpec::k_approval(*f.k)};
    if (f.audit) std::cout << "# lambda: " << r.lambda << '\n';
    return finish_gen(f, out, audit_score_gen(f.x, *f.k, r));
  }

  GadgetInstance g;
  if (f.gadget == "pw2wm-kapproval" || f.gadget == "pw2wm-kveto") {
    need(f.input, "--input");
    if (!f.k) throw InputError("gadget '" + f.gadget + "' needs --k");
    const ElectionFile src = parse_file(f.input, parse_election);
    if (!src.preferred) throw InputError("source file has no 'preferred:' line");
    g = f.gadget == "pw2wm-kapproval" ? reduce_pw_to_wm_kapproval(src.partial(), *src.preferred, *f.k)
                                      : reduce_pw_to_wm_kveto(src.partial(), *src.preferred, *f.k);
  } else if (f.gadget.rfind("x3c2", 0) == 0) {
    need(f.x3c, "--x3c");
    const X3CInstance x = parse_file(f.x3c, parse_x3c);
    if (f.gadget == "x3c2wm-maximin") g = reduce_x3c_to_wm_maximin(x);
    else if (f.gadget == "x3c2wm-copeland") g = reduce_x3c_to_wm_copeland(x);
    else if (f.gadget == "x3c2sm-copeland") g = reduce_x3c_to_sm_copeland(x);
    else g = reduce_x3c_to_wm_bucklin(x);
  }
  if (!f.witness.empty()) {
    std::ofstream out(f.witness);
    if (!out) throw InputError("cannot write '" + f.witness + "'");
    SolveResult r;
    r.answer = g.witness.has_value();
    r.witness = g.witness;
    out << to_json(make_record(g.problem, g.instance.rule, r, g.instance.partial.candidates, 0,
                               f.gadget))
        << '\n';
  }
  if (f.audit) std::cout << "# problem: " << problem_name(g.problem) << '\n';
  return finish_gen(f, election_from(g.instance), g.audit);
}

int cmd_verify(const std::string& input, const std::string& witness, std::uint64_t budget) {
  const ElectionFile file = parse_file(input, parse_election);
  const ResultRecord record = parse_record(slurp(witness));
  const Verdict v = verify_record(file, record, budget);
  if (v.ok) {
    std::cout << "verified: " << record.problem << " " << record.answer << '\n';
    return kOk;
  }
  std::cout << "rejected: " << v.reason << '\n';
  return kRejected;
}

int cmd_crosscheck(const CrosscheckOptions& opts) {
  if (!opts.dump_dir.empty()) std::filesystem::create_directories(opts.dump_dir);
  const CrosscheckReport report = crosscheck(opts);
  std::cout << report.summary();
  for (const auto& d : report.dumps)
    std::cout << "mismatch: " << (opts.dump_dir.empty() ? d : opts.dump_dir + "/" + d) << '\n';
  return report.ok() ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manipulation and winner problems over partial votes"};
  app.require_subcommand(1);

  const std::vector<std::string> problems{"pw", "nw", "cm", "wm", "sm"};
  const std::vector<std::string> rules{"plurality", "veto",   "k-approval", "k-veto", "borda",
                                       "scoring",   "bucklin", "maximin",   "copeland"};

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Answer a PW/NW/CM/WM/SM question for an election file");
  s->add_option("--problem", solve.problem)->required()->check(CLI::IsMember(problems));
  s->add_option("--rule", solve.rule, "Overrides the file's rule line")
      ->check(CLI::IsMember(rules));
  s->add_option("--k", solve.k, "k for k-approval / k-veto");
  s->add_option("--scores", solve.scores, "Score vector for 'scoring'")->delimiter(',');
  s->add_option("--algo", solve.algo)->check(CLI::IsMember({"auto", "poly", "oracle"}));
  s->add_option("--input", solve.input, "Election file, '-' for stdin");
  s->add_option("--budget", solve.budget, "Oracle limit on enumerated profiles");
  s->add_flag("--prune", solve.prune, "Oracle: only manipulator votes with the preferred candidate on top");

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a gadget instance");
  g->add_option("--gadget", gen.gadget)
      ->required()
      ->check(CLI::IsMember({"mcgarvey", "scoregen", "pw2wm-kapproval", "pw2wm-kveto",
                             "x3c2wm-maximin", "x3c2wm-copeland", "x3c2sm-copeland",
                             "x3c2wm-bucklin"}));
  g->add_option("--x3c", gen.x3c, "X3C file");
  g->add_option("--target", gen.target, "Margin table file");
  g->add_option("--input", gen.input, "Source election file (pw2wm-*)");
  g->add_option("--k", gen.k);
  g->add_option("--x", gen.x, "Score offsets for scoregen")->delimiter(',');
  g->add_flag("--audit", gen.audit, "Append the audit record; exit 4 when it fails");
  g->add_option("--witness", gen.witness, "Write the construction's own witness record here");

  std::string v_input, v_witness;
  std::uint64_t v_budget = kDefaultBudget;
  auto* v = app.add_subcommand("verify", "Check a result record against an election file");
  v->add_option("--input", v_input)->required();
  v->add_option("--witness", v_witness)->required();
  v->add_option("--budget", v_budget);

  CrosscheckOptions cc;
  std::string suite = "sm";
  auto* c = app.add_subcommand("crosscheck", "Compare polynomial solvers with the oracle");
  c->add_option("--trials", cc.trials);
  c->add_option("--seed", cc.seed);
  c->add_option("--max-candidates", cc.max_candidates)->check(CLI::Range(2, 5));
  c->add_option("--max-votes", cc.max_votes)->check(CLI::Range(0, 3));
  c->add_option("--max-manipulators", cc.max_manipulators)->check(CLI::Range(1, 2));
  c->add_option("--suite", suite)->check(CLI::IsMember({"sm", "wm", "pw"}));
  c->add_option("--dump-dir", cc.dump_dir, "Write mismatching instances here");
  c->add_option("--budget", cc.budget);
  c->add_flag("--inject-fault", cc.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*g) return cmd_gen(gen);
    if (*v) return cmd_verify(v_input, v_witness, v_budget);
    cc.suite = parse_suite(suite);
    return cmd_crosscheck(cc);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
