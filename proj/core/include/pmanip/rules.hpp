#pragma once

// Winner determination for positional scoring rules, Bucklin, maximin and
// Copeland over complete profiles. All scores are integers; every rule is
// resolved in the unique-winner sense.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmanip/prefs.hpp"

namespace pmanip {

class ScoreVector {
 public:
  ScoreVector() = default;
  /// Throws ParameterError unless non-increasing with alpha_1 > alpha_m (m >= 2).
  explicit ScoreVector(std::vector<int> alphas);

  static ScoreVector plurality(int m);
  static ScoreVector veto(int m);
  static ScoreVector k_approval(int m, int k);
  static ScoreVector k_veto(int m, int k);
  static ScoreVector borda(int m);

  int size() const { return static_cast<int>(alphas_.size()); }
  int operator[](int position) const { return alphas_[position]; }
  const std::vector<int>& alphas() const { return alphas_; }
  /// Some unit step alpha_j - alpha_{j+1} = 1 followed only by zeros.
  bool normalized() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;

 private:
  std::vector<int> alphas_;
};

enum class RuleKind {
  kPositional,
  kPlurality,
  kVeto,
  kKApproval,
  kKVeto,
  kBorda,
  kBucklin,
  kMaximin,
  kCopeland,
};

struct RuleSpec {
  RuleKind kind = RuleKind::kPlurality;
  std::optional<int> k;
  std::optional<ScoreVector> scores;

  static RuleSpec plurality() { return {RuleKind::kPlurality, {}, {}}; }
  static RuleSpec veto() { return {RuleKind::kVeto, {}, {}}; }
  static RuleSpec k_approval(int k) { return {RuleKind::kKApproval, k, {}}; }
  static RuleSpec k_veto(int k) { return {RuleKind::kKVeto, k, {}}; }
  static RuleSpec borda() { return {RuleKind::kBorda, {}, {}}; }
  static RuleSpec positional(ScoreVector sv) { return {RuleKind::kPositional, {}, std::move(sv)}; }
  static RuleSpec bucklin() { return {RuleKind::kBucklin, {}, {}}; }
  static RuleSpec maximin() { return {RuleKind::kMaximin, {}, {}}; }
  static RuleSpec copeland() { return {RuleKind::kCopeland, {}, {}}; }

  bool is_positional() const;
  /// Throws ParameterError when the rule is not valid for m candidates.
  void validate(int m) const;
  /// The integer score vector of a positional rule for m candidates.
  ScoreVector score_vector(int m) const;
  /// Lower score wins (Bucklin) instead of higher.
  bool lower_is_better() const { return kind == RuleKind::kBucklin; }

  /// Canonical name: plurality, veto, k-approval, k-veto, borda, scoring,
  /// bucklin, maximin, copeland.
  std::string name() const;
  /// Name plus parameters, e.g. "k-approval 2" or "scoring 2,1,1,0".
  std::string describe() const;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

/// Parses a canonical rule name; `k` / `scores` supply parameters.
RuleSpec parse_rule(const std::string& name, std::optional<int> k,
                    const std::optional<std::vector<int>>& scores);

class MarginMatrix {
 public:
  MarginMatrix(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int operator()(Candidate x, Candidate y) const { return d_[x * m_ + y]; }
  int& at(Candidate x, Candidate y) { return d_[x * m_ + y]; }
  const std::vector<int>& data() const { return d_; }
  /// Zero diagonal, antisymmetry, |d| <= n and d = n (mod 2).
  bool well_formed() const;

  friend bool operator==(const MarginMatrix&, const MarginMatrix&) = default;

 private:
  int m_;
  int n_;
  std::vector<int> d_;
};

std::vector<int> positional_scores(const ScoreVector& sv, const Profile& p);
MarginMatrix margins(const Profile& p);
std::vector<int> rule_scores(const RuleSpec& r, const Profile& p);
std::optional<Candidate> unique_winner(const RuleSpec& r, const Profile& p);

/// Additive per-vote statistics for one rule over m candidates. Any profile
/// reduces to the sum of its votes' contributions, so solvers can enumerate
/// extensions by adding vectors instead of re-tallying whole profiles.
///
/// Positional rules store a score per candidate, Bucklin stores per-position
/// counts and the pairwise rules store the margin matrix.
class Evaluator {
 public:
  Evaluator(const RuleSpec& rule, int m);

  int m() const { return m_; }
  int dimension() const { return dim_; }
  const RuleSpec& rule() const { return rule_; }

  void accumulate(std::span<int> acc, const LinearVote& v) const;
  std::vector<int> contribution(const LinearVote& v) const;

  /// Rule scores of the aggregated statistics over `votes` ballots.
  std::vector<int> scores(std::span<const int> acc, int votes) const;
  std::optional<Candidate> winner(std::span<const int> acc, int votes) const;
  bool wins(std::span<const int> acc, int votes, Candidate c) const;

 private:
  enum class Mode { kPositional, kBucklin, kMaximin, kCopeland };

  int score_of(std::span<const int> acc, int votes, Candidate x) const;

  RuleSpec rule_;
  int m_;
  int dim_;
  Mode mode_;
  std::vector<int> alphas_;
};

}  // namespace pmanip
