#include "pmanip/poly.hpp"

#include <algorithm>
#include <numeric>

#include "pmanip/flow.hpp"

namespace pmanip {

namespace {

// `front` in order, then everything else ascending, then `back` ascending.
LinearVote assemble(int m, const std::vector<Candidate>& front, Mask back) {
  LinearVote v;
  v.ranking = front;
  Mask used = back;
  for (Candidate x : front) used |= bit(x);
  for (Candidate x = 0; x < m; ++x)
    if (!has(used, x)) v.ranking.push_back(x);
  for (Candidate x = 0; x < m; ++x)
    if (has(back, x) && std::find(front.begin(), front.end(), x) == front.end())
      v.ranking.push_back(x);
  return v;
}

SolveResult yes_with(std::vector<LinearVote> votes) {
  SolveResult r;
  r.answer = true;
  std::sort(votes.begin(), votes.end());
  r.witness = Witness{std::move(votes), std::nullopt};
  return r;
}

SolveResult lone_candidate(const ManipulationInstance& inst) {
  return yes_with(std::vector<LinearVote>(inst.manipulators, LinearVote{{0}}));
}

void require_single(const ManipulationInstance& inst, const char* what) {
  if (inst.manipulators != 1)
    throw ParameterError(std::string(what) + " needs exactly one manipulator");
}

// Best adversarial score difference of x over c inside one vote.
int vote_gap(const ScoreVector& sv, const PartialVote& v, Candidate x, Candidate c) {
  const int m = v.m();
  if (v.is_complete()) {
    const auto pos = first_extension(v).positions();
    return sv[pos[x]] - sv[pos[c]];
  }
  int best = std::numeric_limits<int>::min();
  for (int px = 1; px <= m; ++px) {
    // sv is non-increasing, so the first feasible pc from the top gives the max.
    if (best != std::numeric_limits<int>::min() && sv[px - 1] - sv[m - 1] <= best) continue;
    for (int pc = m; pc >= 1; --pc) {
      if (pc == px) continue;
      const int value = sv[px - 1] - sv[pc - 1];
      if (value <= best) break;
      if (position_pair_feasible(v, x, px, c, pc)) {
        best = value;
        break;
      }
    }
  }
  return best;
}

}  // namespace

PairwiseBounds pairwise_bounds(const PartialProfile& p) {
  PairwiseBounds b;
  b.m = p.m();
  b.n = p.n();
  b.nmin.assign(b.m * b.m, 0);
  b.nmax.assign(b.m * b.m, 0);
  for (const auto& v : p.votes) {
    for (Candidate a = 0; a < b.m; ++a) {
      for (Candidate c = 0; c < b.m; ++c) {
        if (a == c) continue;
        if (v.prefers(a, c)) b.nmin[a * b.m + c] += 1;
        if (!v.prefers(c, a)) b.nmax[a * b.m + c] += 1;
      }
    }
  }
  return b;
}

ScoreGap score_gap(const ScoreVector& sv, const PartialProfile& p, Candidate c) {
  const int m = p.m();
  if (sv.size() != m) throw ParameterError("score vector length differs from m");
  ScoreGap g;
  g.smax_nm.assign(m, 0);
  for (Candidate x = 0; x < m; ++x) {
    if (x == c) continue;
    for (const auto& v : p.votes) g.smax_nm[x] += vote_gap(sv, v, x, c);
  }
  return g;
}

SolveResult sm_kapproval(const ManipulationInstance& inst, int k) {
  inst.validate();
  const int m = inst.partial.m();
  if (m == 1) return lone_candidate(inst);
  if (k < 1 || k >= m) throw ParameterError("k must satisfy 1 <= k < m");
  const int M = inst.manipulators;
  const Candidate c = inst.preferred;
  const ScoreGap gap = score_gap(ScoreVector::k_approval(m, k), inst.partial, c);

  // c approved by every manipulator; the other k-1 approvals per vote are
  // spread so no candidate reaches c's worst-case score.
  FlowNetwork net(M + m + 2);
  const int source = M + m;
  const int sink = source + 1;
  std::vector<std::vector<int>> edge(M, std::vector<int>(m, -1));
  for (int i = 0; i < M; ++i) net.add_edge(source, i, k - 1);
  for (Candidate x = 0; x < m; ++x) {
    if (x == c) continue;
    const int cap = M - 1 - gap.smax_nm[x];
    if (cap < 0) return {};
    net.add_edge(M + x, sink, std::min(cap, M));
    for (int i = 0; i < M; ++i) edge[i][x] = net.add_edge(i, M + x, 1);
  }
  if (net.max_flow(source, sink) != static_cast<long long>(k - 1) * M) return {};
  std::vector<LinearVote> votes;
  for (int i = 0; i < M; ++i) {
    std::vector<Candidate> front{c};
    for (Candidate x = 0; x < m; ++x)
      if (x != c && net.flow(edge[i][x]) > 0) front.push_back(x);
    votes.push_back(assemble(m, front, 0));
  }
  return yes_with(std::move(votes));
}

SolveResult sm_kveto(const ManipulationInstance& inst, int k) {
  inst.validate();
  const int m = inst.partial.m();
  if (m == 1) return lone_candidate(inst);
  if (k < 1 || k >= m) throw ParameterError("k must satisfy 1 <= k < m");
  const int M = inst.manipulators;
  const Candidate c = inst.preferred;
  const ScoreGap gap = score_gap(ScoreVector::k_veto(m, k), inst.partial, c);

  BoundedFlow net(M + m + 2);
  const int source = M + m;
  const int sink = source + 1;
  std::vector<std::vector<int>> edge(M, std::vector<int>(m, -1));
  for (int i = 0; i < M; ++i) net.add_edge(source, i, k, k);
  for (Candidate x = 0; x < m; ++x) {
    if (x == c) continue;
    const int need = std::max(0, gap.smax_nm[x] + 1);
    if (need > M) return {};
    net.add_edge(M + x, sink, need, M);
    for (int i = 0; i < M; ++i) edge[i][x] = net.add_edge(i, M + x, 0, 1);
  }
  if (!net.feasible(source, sink)) return {};
  std::vector<LinearVote> votes;
  for (int i = 0; i < M; ++i) {
    Mask vetoed = 0;
    for (Candidate x = 0; x < m; ++x)
      if (x != c && net.flow(edge[i][x]) > 0) vetoed |= bit(x);
    votes.push_back(assemble(m, {c}, vetoed));
  }
  return yes_with(std::move(votes));
}

SolveResult sm_scoring_single(const ManipulationInstance& inst, const ScoreVector& sv) {
  inst.validate();
  require_single(inst, "sm_scoring_single");
  const int m = inst.partial.m();
  if (m == 1) return lone_candidate(inst);
  const Candidate c = inst.preferred;
  const ScoreGap gap = score_gap(sv, inst.partial, c);

  // Left: candidates other than c. Right: positions 2..m.
  std::vector<Candidate> others;
  for (Candidate x = 0; x < m; ++x)
    if (x != c) others.push_back(x);
  std::vector<std::vector<int>> adj(others.size());
  for (std::size_t i = 0; i < others.size(); ++i)
    for (int pos = 1; pos < m; ++pos)
      if (gap.smax_nm[others[i]] + sv[pos] - sv[0] < 0) adj[i].push_back(pos - 1);
  auto match = perfect_matching(adj, m - 1);
  if (!match) return {};
  LinearVote v;
  v.ranking.assign(m, c);
  for (std::size_t i = 0; i < others.size(); ++i) v.ranking[(*match)[i] + 1] = others[i];
  return yes_with({v});
}

SolveResult sm_bucklin(const ManipulationInstance& inst) {
  inst.validate();
  const int m = inst.partial.m();
  if (m == 1) return lone_candidate(inst);
  const int M = inst.manipulators;
  const int N = inst.partial.n() + M;
  const Candidate c = inst.preferred;

  // cap[w][l]: how many manipulators may rank w within the top l.
  std::vector<std::vector<int>> cap(m, std::vector<int>(m + 1, M));
  for (Candidate w = 0; w < m; ++w) {
    if (w == c) continue;
    for (int l = 2; l <= m; ++l) {
      int dw = 0;
      int dc = 0;
      int t = 0;
      for (const auto& v : inst.partial.votes) {
        const Mask anc_c = v.ancestors(c);
        const Mask anc_w = v.ancestors(w);
        const bool w_in_c_out = placement_feasible(v, bit(w), bit(c), l) ||
                                placement_feasible(v, bit(w) | anc_c, bit(c), l - 1);
        if (w_in_c_out) {
          ++dw;
          continue;
        }
        const bool both_in = placement_feasible(v, bit(w) | bit(c), 0, l - 1) ||
                             placement_feasible(v, bit(c) | anc_w, bit(w), l - 1);
        const bool both_out = placement_feasible(v, 0, bit(w) | bit(c), l) ||
                              placement_feasible(v, anc_c, bit(c) | bit(w), l - 1);
        if (both_in && both_out) {
          ++t;
        } else if (both_in) {
          ++dw;
          ++dc;
        } else if (!both_out) {
          ++dc;  // only c in
        }
      }
      const int DC = dc + M;
      if (2 * DC > N) continue;
      const int eta = std::max(N / 2 - t - dw, DC - dw);
      if (eta < 0) return {};
      cap[w][l] = std::min(eta, M);
    }
  }

  // Unit j of w (its j-th earliest appearance) may not sit at or above any
  // level l whose cap is below j.
  struct Unit {
    Candidate w;
    int release;
  };
  std::vector<Unit> units;
  for (Candidate w = 0; w < m; ++w) {
    if (w == c) continue;
    for (int j = 1; j <= M; ++j) {
      int release = 2;
      for (int l = 2; l <= m; ++l)
        if (cap[w][l] < j) release = l + 1;
      if (release > m) return {};
      units.push_back({w, release});
    }
  }
  std::vector<char> used(units.size(), 0);
  std::vector<std::vector<int>> count(m, std::vector<int>(m + 1, 0));
  for (int pos = 2; pos <= m; ++pos) {
    int filled = 0;
    for (std::size_t u = 0; u < units.size() && filled < M; ++u) {
      if (used[u] || units[u].release > pos) continue;
      used[u] = 1;
      ++count[units[u].w][pos];
      ++filled;
    }
    if (filled < M) return {};
  }

  // The count matrix is M-regular, so it splits into M perfect matchings.
  std::vector<LinearVote> votes;
  for (int r = 0; r < M; ++r) {
    std::vector<std::vector<int>> adj(m - 1);
    for (int pos = 2; pos <= m; ++pos)
      for (Candidate w = 0; w < m; ++w)
        if (count[w][pos] > 0) adj[pos - 2].push_back(w);
    auto match = perfect_matching(adj, m);
    if (!match) throw std::logic_error("regular count matrix without perfect matching");
    LinearVote v;
    v.ranking.push_back(c);
    for (int pos = 2; pos <= m; ++pos) {
      const Candidate w = (*match)[pos - 2];
      v.ranking.push_back(w);
      --count[w][pos];
    }
    votes.push_back(std::move(v));
  }
  return yes_with(std::move(votes));
}

SolveResult sm_maximin_single(const ManipulationInstance& inst) {
  inst.validate();
  require_single(inst, "sm_maximin_single");
  const int m = inst.partial.m();
  if (m == 1) return lone_candidate(inst);
  const Candidate c = inst.preferred;

  // For every w and opponent w' of c, the adversary ranks w as high as it
  // can while pushing w' above c when that is not forced the other way.
  // beat[w][w'][d] is the resulting margin of w over d, floor[w'] the
  // guaranteed margin of c over w'.
  std::vector<int> floor(m, 0);
  std::vector<int> beat(static_cast<std::size_t>(m) * m * m, 0);
  auto at = [m](Candidate w, Candidate w2, Candidate d) {
    return (static_cast<std::size_t>(w) * m + w2) * m + d;
  };
  for (const auto& v : inst.partial.votes) {
    for (Candidate w2 = 0; w2 < m; ++w2) {
      if (w2 == c) continue;
      const bool c_over = v.prefers(c, w2);
      floor[w2] += c_over ? 1 : -1;
      for (Candidate w = 0; w < m; ++w) {
        if (w == c) continue;
        Mask upset = v.ancestors(w);
        if (!c_over && has(upset, c)) upset |= v.ancestors(w2) | bit(w2);
        for (Candidate d = 0; d < m; ++d)
          if (d != w) beat[at(w, w2, d)] += has(upset, d) ? -1 : 1;
      }
    }
  }

  LinearVote vote;
  vote.ranking.push_back(c);
  Mask above = bit(c);
  while (vote.size() < m) {
    Candidate chosen = -1;
    for (Candidate w = 0; w < m && chosen < 0; ++w) {
      if (has(above, w)) continue;
      bool safe = true;
      for (Candidate w2 = 0; w2 < m && safe; ++w2) {
        if (w2 == c) continue;
        bool weak_spot = false;
        for (Candidate d = 0; d < m && !weak_spot; ++d) {
          if (d == w) continue;
          const int margin = beat[at(w, w2, d)] + (has(above, d) ? -1 : 1);
          weak_spot = margin < floor[w2] + 1;
        }
        safe = weak_spot;
      }
      if (safe) chosen = w;
    }
    if (chosen < 0) return {};
    vote.ranking.push_back(chosen);
    above |= bit(chosen);
  }
  return yes_with({vote});
}

namespace {

std::vector<int> index_priority(int m) {
  std::vector<int> pr(m);
  std::iota(pr.begin(), pr.end(), 0);
  return pr;
}

LinearVote with_top(const PartialVote& v, Candidate top) {
  auto pr = index_priority(v.m());
  pr[top] = -1;
  return extend_by_priority(v, pr);
}

LinearVote with_bottom(const PartialVote& v, Candidate bottom) {
  auto pr = index_priority(v.m());
  pr[bottom] = v.m();
  return extend_by_priority(v, pr);
}

SolveResult pw_yes(std::vector<LinearVote> ext) {
  SolveResult r;
  r.answer = true;
  r.witness = Witness{{}, std::move(ext)};
  return r;
}

std::vector<LinearVote> trivial_extension(const PartialProfile& p) {
  return std::vector<LinearVote>(p.n(), LinearVote{{0}});
}

}  // namespace

SolveResult pw_plurality(const PartialProfile& p, Candidate c) {
  const int m = p.m();
  if (c < 0 || c >= m) throw ParameterError("candidate out of range");
  if (m == 1) return pw_yes(trivial_extension(p));
  const int n = p.n();
  std::vector<int> rest;
  int score_c = 0;
  for (int i = 0; i < n; ++i) {
    if (p.votes[i].ancestors(c) == 0) ++score_c;
    else rest.push_back(i);
  }
  const int R = static_cast<int>(rest.size());
  FlowNetwork net(R + m + 2);
  const int source = R + m;
  const int sink = source + 1;
  std::vector<std::vector<std::pair<Candidate, int>>> edges(R);
  for (int r = 0; r < R; ++r) {
    net.add_edge(source, r, 1);
    const auto& v = p.votes[rest[r]];
    for (Candidate x = 0; x < m; ++x)
      if (x != c && v.ancestors(x) == 0) edges[r].emplace_back(x, net.add_edge(r, R + x, 1));
  }
  for (Candidate x = 0; x < m; ++x)
    if (x != c) net.add_edge(R + x, sink, std::max(0, score_c - 1));
  if (score_c < 1 || net.max_flow(source, sink) != R) return {};
  std::vector<LinearVote> ext(n);
  for (int i = 0; i < n; ++i)
    if (p.votes[i].ancestors(c) == 0) ext[i] = with_top(p.votes[i], c);
  for (int r = 0; r < R; ++r)
    for (auto [x, id] : edges[r])
      if (net.flow(id) > 0) ext[rest[r]] = with_top(p.votes[rest[r]], x);
  return pw_yes(std::move(ext));
}

SolveResult pw_veto(const PartialProfile& p, Candidate c) {
  const int m = p.m();
  if (c < 0 || c >= m) throw ParameterError("candidate out of range");
  if (m == 1) return pw_yes(trivial_extension(p));
  const int n = p.n();
  // c is vetoed exactly where it is the only minimal candidate.
  std::vector<int> rest;
  int forced = 0;
  for (int i = 0; i < n; ++i) {
    const auto& v = p.votes[i];
    bool other_minimal = false;
    for (Candidate x = 0; x < m; ++x)
      if (x != c && v.descendants(x) == 0) other_minimal = true;
    if (other_minimal) rest.push_back(i);
    else ++forced;
  }
  const int R = static_cast<int>(rest.size());
  BoundedFlow net(R + m + 2);
  const int source = R + m;
  const int sink = source + 1;
  std::vector<std::vector<std::pair<Candidate, int>>> edges(R);
  for (int r = 0; r < R; ++r) {
    net.add_edge(source, r, 1, 1);
    const auto& v = p.votes[rest[r]];
    for (Candidate x = 0; x < m; ++x)
      if (x != c && v.descendants(x) == 0)
        edges[r].emplace_back(x, net.add_edge(r, R + x, 0, 1));
  }
  for (Candidate x = 0; x < m; ++x)
    if (x != c) net.add_edge(R + x, sink, forced + 1, n);
  if (!net.feasible(source, sink)) return {};
  std::vector<LinearVote> ext(n);
  for (int i = 0; i < n; ++i) ext[i] = with_bottom(p.votes[i], c);
  for (int r = 0; r < R; ++r)
    for (auto [x, id] : edges[r])
      if (net.flow(id) > 0) ext[rest[r]] = with_bottom(p.votes[rest[r]], x);
  return pw_yes(std::move(ext));
}

SolveResult wm_plurality_veto(const ManipulationInstance& inst) {
  inst.validate();
  const bool plurality = inst.rule.kind == RuleKind::kPlurality ||
                         (inst.rule.kind == RuleKind::kKApproval && inst.rule.k == 1);
  const bool veto = inst.rule.kind == RuleKind::kVeto ||
                    (inst.rule.kind == RuleKind::kKVeto && inst.rule.k == 1);
  if (!plurality && !veto) throw ParameterError("wm_plurality_veto needs plurality or veto");
  PartialProfile joined = inst.partial;
  for (int i = 0; i < inst.manipulators; ++i)
    joined.votes.push_back(PartialVote::empty(inst.partial.m()));
  SolveResult pw = plurality ? pw_plurality(joined, inst.preferred)
                             : pw_veto(joined, inst.preferred);
  if (!pw.answer) return pw;
  auto& all = *pw.witness->extension;
  const auto split = all.begin() + inst.partial.n();
  std::vector<LinearVote> q(split, all.end());
  std::sort(q.begin(), q.end());
  std::vector<LinearVote> ext(all.begin(), split);
  SolveResult r;
  r.answer = true;
  r.witness = Witness{std::move(q), std::move(ext)};
  return r;
}

namespace {

bool is_plurality(const RuleSpec& r) {
  return r.kind == RuleKind::kPlurality || (r.kind == RuleKind::kKApproval && r.k == 1);
}

bool is_veto(const RuleSpec& r) {
  return r.kind == RuleKind::kVeto || (r.kind == RuleKind::kKVeto && r.k == 1);
}

Complexity sm_class(const RuleSpec& r, int manipulators, const std::string& problem) {
  switch (r.kind) {
    case RuleKind::kPlurality:
    case RuleKind::kKApproval:
      return {true, "sm_kapproval"};
    case RuleKind::kVeto:
    case RuleKind::kKVeto:
      return {true, "sm_kveto"};
    case RuleKind::kBucklin:
      return {true, "sm_bucklin"};
    case RuleKind::kBorda:
    case RuleKind::kPositional:
      if (manipulators == 1) return {true, "sm_scoring_single"};
      return {false, r.kind == RuleKind::kBorda
                         ? problem + " for Borda is NP-hard with two or more manipulators"
                         : "no polynomial algorithm known for " + problem +
                               " under a general scoring rule with two or more manipulators"};
    case RuleKind::kMaximin:
      if (manipulators == 1) return {true, "sm_maximin_single"};
      return {false, problem + " for maximin is NP-hard with two or more manipulators"};
    case RuleKind::kCopeland:
      return {false, problem + " for Copeland is NP-hard, even with one manipulator"};
  }
  return {false, "unknown rule"};
}

}  // namespace

Complexity classify(Problem problem, const RuleSpec& rule, int manipulators) {
  switch (problem) {
    case Problem::kPW:
      if (is_plurality(rule)) return {true, "pw_plurality"};
      if (is_veto(rule)) return {true, "pw_veto"};
      return {false, "PW for " + rule.name() +
                         " is NP-complete in general; no polynomial algorithm is implemented"};
    case Problem::kNW:
      return {false, "no polynomial NW algorithm is implemented"};
    case Problem::kCM:
      return sm_class(rule, manipulators, "CM");
    case Problem::kSM:
      return sm_class(rule, manipulators, "SM");
    case Problem::kWM:
      if (is_plurality(rule) || is_veto(rule)) return {true, "wm_plurality_veto"};
      switch (rule.kind) {
        case RuleKind::kKApproval:
          return {false, "WM for k-approval is NP-complete for constant k > 1, even with one "
                         "manipulator"};
        case RuleKind::kKVeto:
          return {false, "WM for k-veto is NP-complete for constant k > 1, even with one "
                         "manipulator"};
        case RuleKind::kBorda:
          return {false, manipulators == 1
                             ? "WM for Borda with one manipulator is an open problem"
                             : "WM for Borda is NP-complete with two or more manipulators"};
        case RuleKind::kMaximin:
          return {false, "WM for maximin is NP-complete, even with one manipulator"};
        case RuleKind::kCopeland:
          return {false, "WM for Copeland is NP-complete, even with one manipulator"};
        case RuleKind::kBucklin:
          return {false, "WM for Bucklin is NP-complete, even with one manipulator"};
        default:
          return {false, "no polynomial WM algorithm is known for this scoring rule"};
      }
  }
  return {false, "unknown problem"};
}

SolveResult solve_poly(Problem problem, const ManipulationInstance& inst) {
  const Complexity cls = classify(problem, inst.rule, inst.manipulators);
  if (!cls.poly) throw ParameterError(cls.note);
  const int m = inst.partial.m();
  const auto& name = cls.note;
  if (name == "pw_plurality") return pw_plurality(inst.partial, inst.preferred);
  if (name == "pw_veto") return pw_veto(inst.partial, inst.preferred);
  if (name == "wm_plurality_veto") return wm_plurality_veto(inst);
  if (problem == Problem::kCM)
    for (const auto& v : inst.partial.votes)
      if (!v.is_complete()) throw ParameterError("CM needs complete non-manipulator votes");
  if (name == "sm_kapproval") return sm_kapproval(inst, inst.rule.k.value_or(1));
  if (name == "sm_kveto") return sm_kveto(inst, inst.rule.k.value_or(1));
  if (name == "sm_bucklin") return sm_bucklin(inst);
  if (name == "sm_maximin_single") return sm_maximin_single(inst);
  if (name == "sm_scoring_single") return sm_scoring_single(inst, inst.rule.score_vector(m));
  throw ParameterError("no solver named " + name);
}

}  // namespace pmanip
