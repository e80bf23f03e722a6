#include "pmanip/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace pmanip {

std::string problem_name(Problem p) {
  switch (p) {
    case Problem::kPW: return "pw";
    case Problem::kNW: return "nw";
    case Problem::kCM: return "cm";
    case Problem::kWM: return "wm";
    case Problem::kSM: return "sm";
  }
  return "unknown";
}

Problem parse_problem(const std::string& name) {
  if (name == "pw") return Problem::kPW;
  if (name == "nw") return Problem::kNW;
  if (name == "cm") return Problem::kCM;
  if (name == "wm") return Problem::kWM;
  if (name == "sm") return Problem::kSM;
  throw ParameterError("unknown problem '" + name + "'");
}

void ManipulationInstance::validate() const {
  const int m = partial.m();
  if (m < 1) throw ParameterError("instance has no candidates");
  if (manipulators < 1) throw ParameterError("the manipulator coalition must be non-empty");
  if (preferred < 0 || preferred >= m) throw ParameterError("preferred candidate out of range");
  for (const auto& v : partial.votes)
    if (v.m() != m) throw ParameterError("partial vote over a different candidate count");
  rule.validate(m);
}

namespace {

// Enumerates joint extensions of a partial profile in lexicographic order
// (first vote most significant), maintaining running statistic sums so each
// step costs one vector update.
class JointExtensions {
 public:
  JointExtensions(const Evaluator& ev, const PartialProfile& p, std::uint64_t budget)
      : ev_(ev), dim_(ev.dimension()), base_(dim_, 0) {
    std::uint64_t total = 1;
    for (const auto& v : p.votes) {
      auto exts = extensions(v, budget);
      if (exts.size() == 1) {
        ev_.accumulate(base_, exts.front());
        fixed_.push_back(exts.front());
        slot_.push_back(-1);
        continue;
      }
      total = exts.size() > budget / std::max<std::uint64_t>(total, 1) + 1
                  ? budget + 1
                  : total * exts.size();
      if (total > budget) throw BudgetExceeded("joint extension budget exceeded");
      Level level;
      level.exts = std::move(exts);
      level.contrib.resize(level.exts.size() * dim_, 0);
      for (std::size_t i = 0; i < level.exts.size(); ++i)
        ev_.accumulate(std::span<int>(level.contrib.data() + i * dim_, dim_), level.exts[i]);
      slot_.push_back(static_cast<int>(levels_.size()));
      fixed_.push_back({});
      levels_.push_back(std::move(level));
    }
    count_ = total;
    index_.assign(levels_.size(), 0);
    prefix_.assign((levels_.size() + 1) * dim_, 0);
  }

  std::uint64_t count() const { return count_; }

  /// Calls visit(acc) for every joint extension, acc = offset + extension
  /// statistics. Stops early when visit returns false; returns false then.
  template <typename Visit>
  bool for_each(std::span<const int> offset, Visit&& visit) {
    const std::size_t levels = levels_.size();
    for (int i = 0; i < dim_; ++i) prefix_[i] = base_[i] + offset[i];
    std::fill(index_.begin(), index_.end(), 0);
    rebuild(0);
    while (true) {
      if (!visit(std::span<const int>(prefix_.data() + levels * dim_, dim_))) return false;
      std::size_t j = levels;
      while (j > 0) {
        --j;
        if (++index_[j] < levels_[j].exts.size()) {
          rebuild(j);
          break;
        }
        index_[j] = 0;
        if (j == 0) return true;
      }
      if (levels == 0) return true;
    }
  }

  std::vector<LinearVote> current() const {
    std::vector<LinearVote> out;
    out.reserve(slot_.size());
    for (std::size_t v = 0; v < slot_.size(); ++v) {
      if (slot_[v] < 0) out.push_back(fixed_[v]);
      else out.push_back(levels_[slot_[v]].exts[index_[slot_[v]]]);
    }
    return out;
  }

 private:
  struct Level {
    std::vector<LinearVote> exts;
    std::vector<int> contrib;
  };

  void rebuild(std::size_t from) {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const int* src = prefix_.data() + l * dim_;
      int* dst = prefix_.data() + (l + 1) * dim_;
      const int* add = levels_[l].contrib.data() + index_[l] * dim_;
      for (int i = 0; i < dim_; ++i) dst[i] = src[i] + add[i];
    }
  }

  const Evaluator& ev_;
  int dim_;
  std::vector<int> base_;
  std::vector<Level> levels_;
  std::vector<LinearVote> fixed_;
  std::vector<int> slot_;
  std::vector<std::size_t> index_;
  std::vector<int> prefix_;
  std::uint64_t count_ = 1;
};

std::uint64_t multiset_count(std::uint64_t kinds, int size, std::uint64_t cap) {
  // C(kinds + size - 1, size), saturating at cap + 1.
  long double value = 1;
  for (int i = 1; i <= size; ++i) {
    value = value * static_cast<long double>(kinds + i - 1) / i;
    if (value > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(value + 0.5L);
}

std::uint64_t factorial_capped(int n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

// Multisets of manipulator votes in lexicographic order of their sorted
// permutation-index sequences.
class Coalitions {
 public:
  Coalitions(const Evaluator& ev, int size, Candidate preferred, bool preferred_on_top,
             std::uint64_t budget)
      : ev_(ev), dim_(ev.dimension()), size_(size) {
    const int m = ev.m();
    std::vector<Candidate> start(m);
    std::iota(start.begin(), start.end(), 0);
    if (preferred_on_top) {
      start.erase(start.begin() + preferred);
      start.insert(start.begin(), preferred);
      fixed_prefix_ = 1;
    }
    const std::uint64_t perms = factorial_capped(m - fixed_prefix_, budget);
    if (perms > budget || multiset_count(perms, size, budget) > budget)
      throw BudgetExceeded("manipulator vote budget exceeded");
    perm_count_ = perms;
    start_ = std::move(start);
    if (size_ > 1) {
      perms_.reserve(perms * m);
      std::vector<Candidate> cur = start_;
      do {
        perms_.insert(perms_.end(), cur.begin(), cur.end());
      } while (std::next_permutation(cur.begin() + fixed_prefix_, cur.end()));
    }
    prefix_.assign((size_ + 1) * dim_, 0);
    chosen_.assign(size_, LinearVote{});
  }

  template <typename Visit>
  bool for_each(Visit&& visit) {
    if (size_ == 1) {
      std::vector<Candidate> cur = start_;
      do {
        chosen_[0].ranking = cur;
        std::fill(prefix_.begin() + dim_, prefix_.end(), 0);
        ev_.accumulate(std::span<int>(prefix_.data() + dim_, dim_), chosen_[0]);
        if (!visit(std::span<const int>(prefix_.data() + dim_, dim_))) return false;
      } while (std::next_permutation(cur.begin() + fixed_prefix_, cur.end()));
      return true;
    }
    std::vector<std::uint64_t> idx(size_, 0);
    return recurse(0, 0, idx, visit);
  }

  const std::vector<LinearVote>& current() const { return chosen_; }

 private:
  template <typename Visit>
  bool recurse(int level, std::uint64_t from, std::vector<std::uint64_t>& idx, Visit& visit) {
    const int m = ev_.m();
    if (level == size_) return visit(std::span<const int>(prefix_.data() + size_ * dim_, dim_));
    for (std::uint64_t p = from; p < perm_count_; ++p) {
      idx[level] = p;
      chosen_[level].ranking.assign(perms_.begin() + p * m, perms_.begin() + (p + 1) * m);
      int* dst = prefix_.data() + (level + 1) * dim_;
      std::copy(prefix_.data() + level * dim_, prefix_.data() + (level + 1) * dim_, dst);
      ev_.accumulate(std::span<int>(dst, dim_), chosen_[level]);
      if (!recurse(level + 1, p, idx, visit)) return false;
    }
    return true;
  }

  const Evaluator& ev_;
  int dim_;
  int size_;
  int fixed_prefix_ = 0;
  std::uint64_t perm_count_ = 0;
  std::vector<Candidate> start_;
  std::vector<Candidate> perms_;
  std::vector<int> prefix_;
  std::vector<LinearVote> chosen_;
};

void check_candidate(const PartialProfile& p, Candidate c) {
  if (c < 0 || c >= p.m()) throw ParameterError("candidate out of range");
}

}  // namespace

SolveResult solve_pw(const RuleSpec& r, const PartialProfile& p, Candidate c,
                     const OracleOptions& opts) {
  check_candidate(p, c);
  Evaluator ev(r, p.m());
  JointExtensions joint(ev, p, opts.budget);
  const std::vector<int> zero(ev.dimension(), 0);
  SolveResult res;
  joint.for_each(zero, [&](std::span<const int> acc) {
    ++res.stats.nodes;
    if (!ev.wins(acc, p.n(), c)) return true;
    res.answer = true;
    res.witness = Witness{{}, joint.current()};
    return false;
  });
  return res;
}

SolveResult solve_nw(const RuleSpec& r, const PartialProfile& p, Candidate c,
                     const OracleOptions& opts) {
  check_candidate(p, c);
  Evaluator ev(r, p.m());
  JointExtensions joint(ev, p, opts.budget);
  const std::vector<int> zero(ev.dimension(), 0);
  SolveResult res;
  res.answer = true;
  joint.for_each(zero, [&](std::span<const int> acc) {
    ++res.stats.nodes;
    if (ev.wins(acc, p.n(), c)) return true;
    res.answer = false;
    res.counterexample = joint.current();
    return false;
  });
  return res;
}

SolveResult solve_cm(const RuleSpec& r, const Profile& p, int manipulators, Candidate c,
                     const OracleOptions& opts) {
  ManipulationInstance inst{r, PartialProfile::from_profile(p), manipulators, c};
  inst.validate();
  // Complete votes have exactly one extension, so this is the weak problem.
  SolveResult res = solve_wm(inst, opts);
  if (res.witness) res.witness->extension.reset();
  return res;
}

SolveResult solve_wm(const ManipulationInstance& inst, const OracleOptions& opts) {
  inst.validate();
  const int voters = inst.partial.n() + inst.manipulators;
  Evaluator ev(inst.rule, inst.partial.m());
  JointExtensions joint(ev, inst.partial, opts.budget);
  Coalitions coalitions(ev, inst.manipulators, inst.preferred, opts.preferred_on_top,
                        opts.budget);
  SolveResult res;
  coalitions.for_each([&](std::span<const int> qacc) {
    const bool exhausted = joint.for_each(qacc, [&](std::span<const int> acc) {
      ++res.stats.nodes;
      return !ev.wins(acc, voters, inst.preferred);
    });
    if (exhausted) return true;
    res.answer = true;
    res.witness = Witness{coalitions.current(), joint.current()};
    return false;
  });
  return res;
}

SolveResult solve_sm(const ManipulationInstance& inst, const OracleOptions& opts) {
  inst.validate();
  const int voters = inst.partial.n() + inst.manipulators;
  Evaluator ev(inst.rule, inst.partial.m());
  JointExtensions joint(ev, inst.partial, opts.budget);
  Coalitions coalitions(ev, inst.manipulators, inst.preferred, opts.preferred_on_top,
                        opts.budget);
  SolveResult res;
  coalitions.for_each([&](std::span<const int> qacc) {
    const bool all_win = joint.for_each(qacc, [&](std::span<const int> acc) {
      ++res.stats.nodes;
      return ev.wins(acc, voters, inst.preferred);
    });
    if (!all_win) return true;
    res.answer = true;
    res.witness = Witness{coalitions.current(), std::nullopt};
    return false;
  });
  return res;
}

namespace {

Verdict reject(std::string why) { return {false, std::move(why)}; }

std::optional<std::string> check_extension(const PartialProfile& p,
                                           const std::vector<LinearVote>& ext) {
  if (static_cast<int>(ext.size()) != p.n())
    return "extension has " + std::to_string(ext.size()) + " votes, expected " +
           std::to_string(p.n());
  for (int i = 0; i < p.n(); ++i)
    if (!p.votes[i].admits(ext[i]))
      return "extension vote " + std::to_string(i + 1) + " contradicts its partial vote";
  return std::nullopt;
}

std::optional<std::string> check_coalition(const ManipulationInstance& inst,
                                           const std::vector<LinearVote>& q) {
  if (static_cast<int>(q.size()) != inst.manipulators)
    return "expected " + std::to_string(inst.manipulators) + " manipulator votes, got " +
           std::to_string(q.size());
  for (const auto& v : q)
    if (!v.is_permutation_of(inst.partial.m())) return "manipulator vote is not a ranking";
  return std::nullopt;
}

bool wins_with(const ManipulationInstance& inst, const std::vector<LinearVote>& ext,
               const std::vector<LinearVote>& q) {
  Profile prof{inst.partial.candidates, ext};
  prof.votes.insert(prof.votes.end(), q.begin(), q.end());
  return unique_winner(inst.rule, prof) == inst.preferred;
}

}  // namespace

Verdict verify_result(Problem problem, const ManipulationInstance& inst,
                      const SolveResult& result, const OracleOptions& opts) {
  const Candidate c = inst.preferred;
  if (problem == Problem::kNW) {
    if (result.answer) {
      auto again = solve_nw(inst.rule, inst.partial, c, opts);
      return again.answer ? Verdict{true, "necessary winner confirmed by enumeration"}
                          : reject("found an extension where the candidate does not win");
    }
    if (!result.counterexample) return reject("missing counterexample extension");
    if (auto bad = check_extension(inst.partial, *result.counterexample)) return reject(*bad);
    if (wins_with(inst, *result.counterexample, {}))
      return reject("candidate wins the claimed counterexample");
    return {true, "counterexample checked"};
  }

  if (!result.answer) return reject("a 'no' answer carries no certificate");
  if (!result.witness) return reject("yes answer without witness");
  const Witness& w = *result.witness;

  switch (problem) {
    case Problem::kPW: {
      if (!w.extension) return reject("missing extension");
      if (auto bad = check_extension(inst.partial, *w.extension)) return reject(*bad);
      if (!w.manipulator_votes.empty()) return reject("possible winner takes no manipulators");
      return wins_with(inst, *w.extension, {}) ? Verdict{true, "winner recomputed"}
                                               : reject("candidate is not the unique winner");
    }
    case Problem::kCM: {
      for (const auto& v : inst.partial.votes)
        if (!v.is_complete()) return reject("coalitional manipulation needs complete votes");
      if (auto bad = check_coalition(inst, w.manipulator_votes)) return reject(*bad);
      std::vector<LinearVote> ext;
      for (const auto& v : inst.partial.votes) ext.push_back(first_extension(v));
      return wins_with(inst, ext, w.manipulator_votes)
                 ? Verdict{true, "winner recomputed"}
                 : reject("candidate is not the unique winner");
    }
    case Problem::kWM: {
      if (!w.extension) return reject("missing extension");
      if (auto bad = check_extension(inst.partial, *w.extension)) return reject(*bad);
      if (auto bad = check_coalition(inst, w.manipulator_votes)) return reject(*bad);
      return wins_with(inst, *w.extension, w.manipulator_votes)
                 ? Verdict{true, "winner recomputed"}
                 : reject("candidate is not the unique winner");
    }
    case Problem::kSM: {
      if (auto bad = check_coalition(inst, w.manipulator_votes)) return reject(*bad);
      PartialProfile joined = inst.partial;
      for (const auto& v : w.manipulator_votes)
        joined.votes.push_back(PartialVote::from_linear(v));
      auto nw = solve_nw(inst.rule, joined, c, opts);
      return nw.answer ? Verdict{true, "necessary winner after manipulation"}
                       : reject("some extension defeats the candidate");
    }
    case Problem::kNW:
      break;
  }
  return reject("unsupported problem");
}

}  // namespace pmanip
