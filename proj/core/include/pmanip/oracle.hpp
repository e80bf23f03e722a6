#pragma once

// Exhaustive solvers for the possible/necessary winner, coalitional, weak and
// strong manipulation problems. They enumerate everything the definitions
// quantify over and serve as ground truth for the polynomial algorithms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmanip/prefs.hpp"
#include "pmanip/rules.hpp"

namespace pmanip {

enum class Problem { kPW, kNW, kCM, kWM, kSM };

std::string problem_name(Problem p);
Problem parse_problem(const std::string& name);

struct ManipulationInstance {
  RuleSpec rule;
  PartialProfile partial;  // non-manipulators
  int manipulators = 1;
  Candidate preferred = 0;

  /// Throws ParameterError on an empty coalition, unknown preferred
  /// candidate, mismatched vote sizes or an invalid rule.
  void validate() const;
};

struct Witness {
  std::vector<LinearVote> manipulator_votes;
  /// The extension of the non-manipulator votes (WM, PW, NW counterexample).
  std::optional<std::vector<LinearVote>> extension;
};

struct SolveStats {
  std::uint64_t nodes = 0;  // profiles evaluated
};

struct SolveResult {
  bool answer = false;
  std::optional<Witness> witness;
  /// NW only: an extension where the candidate is not the unique winner.
  std::optional<std::vector<LinearVote>> counterexample;
  SolveStats stats;
};

struct OracleOptions {
  std::uint64_t budget = kDefaultBudget;
  /// Only try manipulator votes that rank the preferred candidate first.
  /// Sound for every rule implemented here since all are monotone.
  bool preferred_on_top = false;
};

SolveResult solve_pw(const RuleSpec& r, const PartialProfile& p, Candidate c,
                     const OracleOptions& opts = {});
SolveResult solve_nw(const RuleSpec& r, const PartialProfile& p, Candidate c,
                     const OracleOptions& opts = {});
SolveResult solve_cm(const RuleSpec& r, const Profile& p, int manipulators, Candidate c,
                     const OracleOptions& opts = {});
SolveResult solve_wm(const ManipulationInstance& inst, const OracleOptions& opts = {});
SolveResult solve_sm(const ManipulationInstance& inst, const OracleOptions& opts = {});

struct Verdict {
  bool ok = false;
  std::string reason;
};

/// Checks that `result` certifies a yes answer (or, for NW, its
/// counterexample certifies a no). For PW/NW the instance's manipulator
/// count is ignored; for CM every partial vote must be complete. SM
/// certificates are re-checked with solve_nw, so `opts.budget` applies.
Verdict verify_result(Problem problem, const ManipulationInstance& inst,
                      const SolveResult& result, const OracleOptions& opts = {});

}  // namespace pmanip
