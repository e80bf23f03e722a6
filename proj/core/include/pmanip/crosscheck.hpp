#pragma once

// Randomised agreement checks between the polynomial solvers and the
// exhaustive oracle on tiny instances.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmanip/io.hpp"

namespace pmanip {

/// Deterministic across platforms, unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Random permutation, then with probability 1/2 one uniformly chosen
/// candidate loses all its relations.
PartialVote random_partial_vote(Rng& rng, int m);
ManipulationInstance random_instance(Rng& rng, const RuleSpec& rule, int m, int votes,
                                     int manipulators);

enum class Suite { kSM, kWM, kPW };
Suite parse_suite(const std::string& name);

struct CrosscheckOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  int max_candidates = 5;
  int max_votes = 3;
  int max_manipulators = 2;
  Suite suite = Suite::kSM;
  /// Test hook: flips every polynomial answer on trial 0.
  bool inject_fault = false;
  /// Where mismatching instances are written; nothing is written when empty.
  std::string dump_dir;
  std::uint64_t budget = kDefaultBudget;
};

struct SolverRow {
  std::string name;
  int instances = 0;
  int agree = 0;
  int mismatch = 0;
  int yes = 0;
  int witness_checked = 0;
  int witness_failed = 0;
};

struct ImplicationRow {
  std::string name;
  int checked = 0;
  int violations = 0;
};

struct CrosscheckReport {
  std::vector<SolverRow> solvers;
  std::vector<ImplicationRow> implications;
  int trials = 0;
  int skipped = 0;  // oracle ran out of budget
  std::vector<std::string> dumps;

  int mismatches() const;
  int witness_failures() const;
  int violations() const;
  bool ok() const { return mismatches() == 0 && witness_failures() == 0 && violations() == 0; }
  /// Fixed-width table; contains no timings so equal seeds give equal text.
  std::string summary() const;
};

CrosscheckReport crosscheck(const CrosscheckOptions& opts);

/// Round-trips `result` through its JSON record and checks it against the
/// instance the way the verify command does.
Verdict verify_via_record(Problem problem, const ManipulationInstance& inst,
                          const SolveResult& result, std::uint64_t budget = kDefaultBudget);

}  // namespace pmanip
