#include "pmanip/prefs.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace pmanip {

int popcount(Mask m) { return std::popcount(m); }

Mask full_mask(int m) {
  return m >= 64 ? ~Mask{0} : (Mask{1} << m) - 1;
}

CandidateSet::CandidateSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ParameterError("candidate set must not be empty");
  if (static_cast<int>(labels_.size()) > kMaxCandidates)
    throw ParameterError("at most 64 candidates are supported");
  for (int i = 0; i < size(); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw ParameterError("duplicate candidate label '" + labels_[i] + "'");
  }
}

CandidateSet CandidateSet::anonymous(int m) {
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int i = 0; i < m; ++i) labels.push_back("c" + std::to_string(i));
  return CandidateSet(std::move(labels));
}

std::optional<Candidate> CandidateSet::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> LinearVote::positions() const {
  std::vector<int> pos(ranking.size());
  for (int i = 0; i < size(); ++i) pos[ranking[i]] = i;
  return pos;
}

bool LinearVote::is_permutation_of(int m) const {
  if (size() != m) return false;
  Mask seen = 0;
  for (Candidate c : ranking) {
    if (c < 0 || c >= m || has(seen, c)) return false;
    seen |= bit(c);
  }
  return true;
}

PartialVote PartialVote::empty(int m) { return transitive_close({}, m); }

PartialVote PartialVote::from_linear(const LinearVote& v) {
  const int m = v.size();
  if (!v.is_permutation_of(m)) throw ParameterError("vote is not a permutation");
  PartialVote out;
  out.m_ = m;
  out.below_.assign(m, 0);
  out.above_.assign(m, 0);
  Mask seen = 0;
  for (Candidate c : v.ranking) {
    out.above_[c] = seen;
    for (Candidate a = 0; a < m; ++a)
      if (has(seen, a)) out.below_[a] |= bit(c);
    seen |= bit(c);
  }
  return out;
}

std::vector<std::pair<Candidate, Candidate>> PartialVote::pairs() const {
  std::vector<std::pair<Candidate, Candidate>> out;
  for (Candidate a = 0; a < m_; ++a)
    for (Candidate b = 0; b < m_; ++b)
      if (prefers(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<Candidate, Candidate>> PartialVote::cover_pairs() const {
  std::vector<std::pair<Candidate, Candidate>> out;
  for (Candidate a = 0; a < m_; ++a) {
    for (Candidate b = 0; b < m_; ++b) {
      if (!prefers(a, b)) continue;
      // a covers b when nothing sits strictly between them.
      if ((below_[a] & above_[b]) == 0) out.emplace_back(a, b);
    }
  }
  return out;
}

int PartialVote::pair_count() const {
  int total = 0;
  for (Mask row : below_) total += popcount(row);
  return total;
}

bool PartialVote::is_complete() const { return pair_count() == m_ * (m_ - 1) / 2; }

bool PartialVote::admits(const LinearVote& v) const {
  if (!v.is_permutation_of(m_)) return false;
  Mask seen = 0;
  for (Candidate c : v.ranking) {
    // Every ancestor of c must already have been placed.
    if ((above_[c] & ~seen) != 0) return false;
    seen |= bit(c);
  }
  return true;
}

PartialProfile PartialProfile::from_profile(const Profile& p) {
  PartialProfile out{p.candidates, {}};
  out.votes.reserve(p.votes.size());
  for (const auto& v : p.votes) out.votes.push_back(PartialVote::from_linear(v));
  return out;
}

PartialVote transitive_close(const std::vector<std::pair<Candidate, Candidate>>& pairs,
                             int m) {
  if (m < 1 || m > kMaxCandidates)
    throw ParameterError("candidate count must be in [1, 64]");
  PartialVote out;
  out.m_ = m;
  out.below_.assign(m, 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= m || b >= m)
      throw ParameterError("preference pair references an unknown candidate");
    if (a == b) throw CycleError("reflexive pair in partial vote");
    out.below_[a] |= bit(b);
  }
  // Warshall over bit rows.
  for (Candidate k = 0; k < m; ++k)
    for (Candidate a = 0; a < m; ++a)
      if (has(out.below_[a], k)) out.below_[a] |= out.below_[k];
  out.above_.assign(m, 0);
  for (Candidate a = 0; a < m; ++a) {
    if (has(out.below_[a], a)) throw CycleError("preference pairs contain a cycle");
    for (Candidate b = 0; b < m; ++b)
      if (has(out.below_[a], b)) out.above_[b] |= bit(a);
  }
  return out;
}

namespace {

// Depth-first over "which available candidate comes next", smallest index
// first, which yields extensions in lexicographic order.
bool extend_rec(const PartialVote& v, Mask placed, LinearVote& cur, std::uint64_t& visited,
                const std::function<bool(const LinearVote&)>& visit) {
  const int m = v.m();
  if (cur.size() == m) {
    ++visited;
    return visit(cur);
  }
  for (Candidate c = 0; c < m; ++c) {
    if (has(placed, c) || (v.ancestors(c) & ~placed) != 0) continue;
    cur.ranking.push_back(c);
    bool keep_going = extend_rec(v, placed | bit(c), cur, visited, visit);
    cur.ranking.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

std::uint64_t for_each_extension(const PartialVote& v,
                                 const std::function<bool(const LinearVote&)>& visit) {
  LinearVote cur;
  cur.ranking.reserve(v.m());
  std::uint64_t visited = 0;
  extend_rec(v, 0, cur, visited, visit);
  return visited;
}

std::vector<LinearVote> extensions(const PartialVote& v, std::uint64_t budget) {
  std::vector<LinearVote> out;
  bool exceeded = false;
  for_each_extension(v, [&](const LinearVote& ext) {
    if (out.size() >= budget) {
      exceeded = true;
      return false;
    }
    out.push_back(ext);
    return true;
  });
  if (exceeded) throw BudgetExceeded("extension budget exceeded");
  return out;
}

std::uint64_t count_extensions(const PartialVote& v, std::uint64_t budget) {
  std::uint64_t count = 0;
  bool exceeded = false;
  for_each_extension(v, [&](const LinearVote&) {
    if (count >= budget) {
      exceeded = true;
      return false;
    }
    ++count;
    return true;
  });
  if (exceeded) throw BudgetExceeded("extension budget exceeded");
  return count;
}

namespace {

Mask ancestor_closure(const PartialVote& v, Mask set) {
  Mask out = set;
  for (Candidate c = 0; c < v.m(); ++c)
    if (has(set, c)) out |= v.ancestors(c);
  return out;
}

Mask descendant_closure(const PartialVote& v, Mask set) {
  Mask out = set;
  for (Candidate c = 0; c < v.m(); ++c)
    if (has(set, c)) out |= v.descendants(c);
  return out;
}

}  // namespace

bool placement_feasible(const PartialVote& v, Mask include, Mask exclude, int k) {
  const int m = v.m();
  if ((include & exclude) != 0) return false;
  if (k < 0 || k > m) return false;
  // The top-k set of any extension is a down-set of size k. `allowed` is the
  // largest down-set avoiding `exclude`, `required` the smallest containing
  // `include`; every size in between is realised.
  const Mask allowed = full_mask(m) & ~descendant_closure(v, exclude);
  const Mask required = ancestor_closure(v, include);
  if ((required & ~allowed) != 0) return false;
  return popcount(required) <= k && k <= popcount(allowed);
}

bool position_pair_feasible(const PartialVote& v, Candidate x, int px, Candidate y,
                            int py) {
  const int m = v.m();
  if (x == y || px == py || px < 1 || py < 1 || px > m || py > m) return false;
  if (px > py) return position_pair_feasible(v, y, py, x, px);
  // x comes first. The prefix before x is a down-set A with anc(x) in A and
  // x, y, and their descendants outside; the prefix before y is a down-set
  // B containing A, x and anc(y) while avoiding y and its descendants.
  if (v.prefers(y, x)) return false;
  const Mask all = full_mask(m);
  const Mask anc_x = v.ancestors(x);
  const Mask anc_y = v.ancestors(y);
  const Mask below_y = v.descendants(y) | bit(y);
  const Mask f1 = all & ~(v.descendants(x) | bit(x) | below_y);
  const Mask f2 = all & ~below_y;
  const int a_size = px - 1;
  if (popcount(anc_x) > a_size || a_size > popcount(f1)) return false;

  // A should soak up as much of anc(y) as possible.
  const Mask g = anc_y & f1;
  const int forced_outside_g = popcount(anc_x & ~g);
  const int overlap = std::min(a_size - forced_outside_g, popcount(g));
  const int b_min = a_size + 1 + popcount(anc_y) - overlap - (has(anc_y, x) ? 1 : 0);
  return b_min <= py - 1 && py - 1 <= popcount(f2);
}

namespace {

template <typename Pick>
LinearVote greedy_extension(const PartialVote& v, Pick pick) {
  const int m = v.m();
  LinearVote out;
  out.ranking.reserve(m);
  Mask placed = 0;
  while (out.size() < m) {
    Mask available = 0;
    for (Candidate c = 0; c < m; ++c)
      if (!has(placed, c) && (v.ancestors(c) & ~placed) == 0) available |= bit(c);
    Candidate c = pick(available, placed);
    out.ranking.push_back(c);
    placed |= bit(c);
  }
  return out;
}

Candidate lowest(Mask m) { return std::countr_zero(m); }

}  // namespace

LinearVote extend_extreme(const PartialVote& v, Candidate hi, Candidate lo) {
  if (hi == lo) throw ParameterError("extend_extreme needs distinct candidates");
  const Mask hi_up = v.ancestors(hi);
  return greedy_extension(v, [&](Mask available, Mask placed) {
    // Until hi is out, only its ancestors (then hi) may go.
    Mask pool = available;
    if (!has(placed, hi)) {
      pool = available & hi_up;
      if (pool == 0) return hi;
    }
    Mask without_lo = pool & ~bit(lo);
    return lowest(without_lo != 0 ? without_lo : pool);
  });
}

LinearVote extend_by_priority(const PartialVote& v, const std::vector<int>& priority) {
  return greedy_extension(v, [&](Mask available, Mask) {
    Candidate best = -1;
    for (Candidate c = 0; c < v.m(); ++c) {
      if (!has(available, c)) continue;
      if (best < 0 || priority[c] < priority[best]) best = c;
    }
    return best;
  });
}

LinearVote first_extension(const PartialVote& v) {
  return greedy_extension(v, [](Mask available, Mask) { return lowest(available); });
}

}  // namespace pmanip
