#pragma once

// Polynomial-time algorithms for the tractable manipulation and winner
// problems. Each solver returns the same answer as the matching oracle call
// and a witness in the oracle's format.

#include <string>
#include <vector>

#include "pmanip/oracle.hpp"

namespace pmanip {

/// Pessimistic and optimistic pairwise counts over a partial profile.
struct PairwiseBounds {
  int m = 0;
  int n = 0;
  std::vector<int> nmin;  // nmin[a*m+b]: votes forcing a > b
  std::vector<int> nmax;  // nmax[a*m+b]: votes allowing a > b

  int min_count(Candidate a, Candidate b) const { return nmin[a * m + b]; }
  int max_count(Candidate a, Candidate b) const { return nmax[a * m + b]; }
};

PairwiseBounds pairwise_bounds(const PartialProfile& p);

/// smax_nm[x]: largest possible score(x) - score(c) from the partial votes,
/// maximised vote by vote. smax_nm[c] is 0.
struct ScoreGap {
  std::vector<int> smax_nm;
};

ScoreGap score_gap(const ScoreVector& sv, const PartialProfile& p, Candidate c);

SolveResult sm_kapproval(const ManipulationInstance& inst, int k);
SolveResult sm_kveto(const ManipulationInstance& inst, int k);
/// Throws ParameterError unless there is exactly one manipulator.
SolveResult sm_scoring_single(const ManipulationInstance& inst, const ScoreVector& sv);
SolveResult sm_bucklin(const ManipulationInstance& inst);
/// Throws ParameterError unless there is exactly one manipulator.
SolveResult sm_maximin_single(const ManipulationInstance& inst);
SolveResult pw_plurality(const PartialProfile& p, Candidate c);
SolveResult pw_veto(const PartialProfile& p, Candidate c);
SolveResult wm_plurality_veto(const ManipulationInstance& inst);

struct Complexity {
  bool poly = false;
  /// Name of the polynomial algorithm, or the known hardness status.
  std::string note;
};

/// Which polynomial algorithm (if any) handles the combination. CM is
/// routed through the strong manipulation solvers on complete votes.
Complexity classify(Problem problem, const RuleSpec& rule, int manipulators);

/// Runs the polynomial algorithm picked by classify(). Throws
/// ParameterError when there is none.
SolveResult solve_poly(Problem problem, const ManipulationInstance& inst);

}  // namespace pmanip
