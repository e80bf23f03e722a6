#pragma once

// Candidates, linear votes, strict partial votes and the order-ideal
// primitives every solver is built on.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pmanip {

/// Candidate identity is its index into CandidateSet::labels().
using Candidate = int;

/// Bit set of candidates, bit i <=> candidate i. Limits elections to 64 candidates.
using Mask = std::uint64_t;

inline constexpr int kMaxCandidates = 64;
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

constexpr Mask bit(Candidate c) { return Mask{1} << c; }
constexpr bool has(Mask m, Candidate c) { return (m >> c) & 1U; }
int popcount(Mask m);
Mask full_mask(int m);

class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<std::string> labels);
  /// Labels c0..c{m-1}.
  static CandidateSet anonymous(int m);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(Candidate c) const { return labels_.at(c); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Candidate> find(const std::string& label) const;

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Candidate> index_;
};

/// A complete ranking, most preferred first.
struct LinearVote {
  std::vector<Candidate> ranking;

  int size() const { return static_cast<int>(ranking.size()); }
  /// Inverse permutation: position (0-based) of each candidate.
  std::vector<int> positions() const;
  bool is_permutation_of(int m) const;

  friend auto operator<=>(const LinearVote&, const LinearVote&) = default;
};

/// Strict partial order over m candidates, always transitively closed.
class PartialVote {
 public:
  PartialVote() = default;
  static PartialVote empty(int m);
  static PartialVote from_linear(const LinearVote& v);

  int m() const { return m_; }
  bool prefers(Candidate a, Candidate b) const { return has(below_[a], b); }
  bool comparable(Candidate a, Candidate b) const {
    return prefers(a, b) || prefers(b, a);
  }
  /// Candidates strictly preferred to x.
  Mask ancestors(Candidate x) const { return above_[x]; }
  /// Candidates x is strictly preferred to.
  Mask descendants(Candidate x) const { return below_[x]; }

  std::vector<std::pair<Candidate, Candidate>> pairs() const;
  /// Transitive reduction (cover relation), useful for compact output.
  std::vector<std::pair<Candidate, Candidate>> cover_pairs() const;
  int pair_count() const;
  bool is_complete() const;
  /// True when every pair of v holds in the linear vote.
  bool admits(const LinearVote& v) const;

  friend bool operator==(const PartialVote& a, const PartialVote& b) {
    return a.m_ == b.m_ && a.below_ == b.below_;
  }

 private:
  friend PartialVote transitive_close(
      const std::vector<std::pair<Candidate, Candidate>>& pairs, int m);

  int m_ = 0;
  std::vector<Mask> below_;  // below_[a] has b  <=>  a > b
  std::vector<Mask> above_;  // above_[b] has a  <=>  a > b
};

struct Profile {
  CandidateSet candidates;
  std::vector<LinearVote> votes;

  int m() const { return candidates.size(); }
  int n() const { return static_cast<int>(votes.size()); }
};

struct PartialProfile {
  CandidateSet candidates;
  std::vector<PartialVote> votes;

  int m() const { return candidates.size(); }
  int n() const { return static_cast<int>(votes.size()); }
  static PartialProfile from_profile(const Profile& p);
};

/// Closure of raw preference pairs; throws CycleError on (a,a) or a cycle.
PartialVote transitive_close(const std::vector<std::pair<Candidate, Candidate>>& pairs,
                             int m);

/// Visits extensions in lexicographic order of their rankings. The visitor
/// returns false to stop. Returns the number of extensions visited.
std::uint64_t for_each_extension(const PartialVote& v,
                                 const std::function<bool(const LinearVote&)>& visit);

/// All linear extensions, lexicographically ordered. Throws BudgetExceeded
/// when there are more than `budget`.
std::vector<LinearVote> extensions(const PartialVote& v,
                                   std::uint64_t budget = kDefaultBudget);

/// Number of extensions, by enumeration. Throws BudgetExceeded past `budget`.
std::uint64_t count_extensions(const PartialVote& v,
                               std::uint64_t budget = kDefaultBudget);

/// Whether some extension puts all of `include` in the top k positions and
/// none of `exclude` there.
bool placement_feasible(const PartialVote& v, Mask include, Mask exclude, int k);

/// Whether some extension puts x at position px and y at position py
/// (1-based, x != y, px != py).
bool position_pair_feasible(const PartialVote& v, Candidate x, int px, Candidate y,
                            int py);

/// The extension that ranks `hi` as early as possible and then `lo` as late
/// as possible; remaining ties go to the smaller index.
LinearVote extend_extreme(const PartialVote& v, Candidate hi, Candidate lo);

/// Greedy extension: repeatedly emits the available candidate with the best
/// (lowest) priority, ties by index.
LinearVote extend_by_priority(const PartialVote& v, const std::vector<int>& priority);

/// Smallest extension in lexicographic order.
LinearVote first_extension(const PartialVote& v);

}  // namespace pmanip
