#pragma once

// Instance generators for the hardness reductions and the profile
// constructions they use. Each records intended against achieved values.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmanip/oracle.hpp"

namespace pmanip {

class ParityError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ScopeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class InfeasibleError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Exact cover by 3-sets. Elements are 0-based internally.
struct X3CInstance {
  int universe_size = 0;
  std::vector<std::array<int, 3>> sets;

  /// Throws ParameterError unless q is a positive multiple of 3, there is at
  /// least one set and every set has 3 distinct in-range elements.
  void validate() const;
  int t() const { return static_cast<int>(sets.size()); }
};

/// Indices of an exact cover (first found by element-driven search).
/// Throws ScopeError when q > 12 or t > 12.
std::optional<std::vector<int>> x3c_cover(const X3CInstance& x);
bool x3c_solve(const X3CInstance& x);

/// Antisymmetric integer matrix of target margins.
struct MarginTarget {
  int m = 0;
  std::vector<int> f;  // f[a*m+b]

  int operator()(Candidate a, Candidate b) const { return f[a * m + b]; }
  /// Throws ParameterError on asymmetry or a non-zero diagonal, ParityError
  /// on an odd entry.
  void validate() const;
};

/// Profile over `candidates` (size must equal target.m) whose margins are
/// exactly the target, with at most sum |f(a,b)| votes over pairs a < b.
Profile mcgarvey(const MarginTarget& target, const CandidateSet& candidates);
Profile mcgarvey(const MarginTarget& target);

struct ScoreGenResult {
  Profile profile;  // candidates c1..cm then d (last index)
  int lambda = 0;
};

/// k-approval profile where c_i scores lambda + x[i] and d scores strictly
/// less than every c_i. Needs 1 <= k <= m.
ScoreGenResult score_gen(const std::vector<int>& x, int k);

struct AuditItem {
  std::string what;
  long long intended = 0;
  long long achieved = 0;
  bool ok = false;
};

struct GadgetInstance {
  Problem problem = Problem::kWM;
  ManipulationInstance instance;
  std::vector<AuditItem> audit;
  /// The construction's own certificate when the source instance is a yes
  /// instance (X3C reductions only). No extension for strong manipulation.
  std::optional<Witness> witness;

  bool audit_ok() const;
};

/// Tally checks for the two profile constructions, in the same format as
/// the reduction audits.
std::vector<AuditItem> audit_mcgarvey(const MarginTarget& target, const Profile& p);
std::vector<AuditItem> audit_score_gen(const std::vector<int>& x, int k,
                                       const ScoreGenResult& result);

GadgetInstance reduce_pw_to_wm_kapproval(const PartialProfile& p, Candidate c, int k);
GadgetInstance reduce_pw_to_wm_kveto(const PartialProfile& p, Candidate c, int k);
GadgetInstance reduce_x3c_to_wm_maximin(const X3CInstance& x);
GadgetInstance reduce_x3c_to_wm_copeland(const X3CInstance& x);
GadgetInstance reduce_x3c_to_sm_copeland(const X3CInstance& x);
GadgetInstance reduce_x3c_to_wm_bucklin(const X3CInstance& x);

/// A coalitional manipulation instance as weak or strong manipulation with
/// complete non-manipulator votes.
ManipulationInstance embed_cm_as(Problem kind, const RuleSpec& rule, const Profile& p,
                                 int manipulators, Candidate c);

/// The non-manipulator votes plus one empty vote per manipulator.
std::pair<PartialProfile, Candidate> wm_to_pw(const ManipulationInstance& inst);

}  // namespace pmanip
