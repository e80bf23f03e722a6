#include "pmanip/gadgets.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>

namespace pmanip {

void X3CInstance::validate() const {
  if (universe_size < 3 || universe_size % 3 != 0)
    throw ParameterError("universe size must be a positive multiple of 3");
  if (sets.empty()) throw ParameterError("X3C instance needs at least one set");
  for (const auto& s : sets) {
    for (int e : s)
      if (e < 0 || e >= universe_size) throw ParameterError("set element outside the universe");
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
      throw ParameterError("set elements must be distinct");
  }
}

std::optional<std::vector<int>> x3c_cover(const X3CInstance& x) {
  x.validate();
  if (x.universe_size > 12 || x.t() > 12)
    throw ScopeError("brute-force X3C is limited to q <= 12 and t <= 12");
  const int q = x.universe_size;
  std::vector<Mask> masks;
  for (const auto& s : x.sets) masks.push_back(bit(s[0]) | bit(s[1]) | bit(s[2]));
  std::vector<int> chosen;
  std::function<bool(Mask)> search = [&](Mask covered) {
    if (covered == full_mask(q)) return true;
    int first = 0;
    while (has(covered, first)) ++first;
    for (int i = 0; i < x.t(); ++i) {
      if (!has(masks[i], first) || (masks[i] & covered) != 0) continue;
      chosen.push_back(i);
      if (search(covered | masks[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool x3c_solve(const X3CInstance& x) { return x3c_cover(x).has_value(); }

void MarginTarget::validate() const {
  if (m < 1 || static_cast<int>(f.size()) != m * m)
    throw ParameterError("margin target must be an m x m matrix");
  for (Candidate a = 0; a < m; ++a) {
    if ((*this)(a, a) != 0) throw ParameterError("margin target diagonal must be zero");
    for (Candidate b = 0; b < m; ++b) {
      if ((*this)(a, b) != -(*this)(b, a))
        throw ParameterError("margin target must be antisymmetric");
      if ((*this)(a, b) % 2 != 0)
        throw ParityError("margin target entries must be even");
    }
  }
}

Profile mcgarvey(const MarginTarget& target, const CandidateSet& candidates) {
  target.validate();
  const int m = target.m;
  if (candidates.size() != m) throw ParameterError("candidate count differs from target");
  Profile p{candidates, {}};
  for (Candidate a = 0; a < m; ++a) {
    for (Candidate b = a + 1; b < m; ++b) {
      const int f = target(a, b);
      if (f == 0) continue;
      const Candidate x = f > 0 ? a : b;
      const Candidate y = f > 0 ? b : a;
      // x > y > rest and reversed(rest) > x > y cancel everywhere but (x, y).
      LinearVote up{{x, y}};
      LinearVote down;
      for (Candidate r = 0; r < m; ++r)
        if (r != x && r != y) up.ranking.push_back(r);
      for (Candidate r = m - 1; r >= 0; --r)
        if (r != x && r != y) down.ranking.push_back(r);
      down.ranking.push_back(x);
      down.ranking.push_back(y);
      for (int i = 0; i < std::abs(f) / 2; ++i) {
        p.votes.push_back(up);
        p.votes.push_back(down);
      }
    }
  }
  return p;
}

Profile mcgarvey(const MarginTarget& target) {
  return mcgarvey(target, CandidateSet::anonymous(target.m));
}

ScoreGenResult score_gen(const std::vector<int>& x, int k) {
  const int m = static_cast<int>(x.size());
  if (m < 1) throw ParameterError("score_gen needs at least one candidate");
  if (k < 1 || k > m) throw ParameterError("score_gen needs 1 <= k <= m");
  const int lo = *std::min_element(x.begin(), x.end());
  std::vector<long long> shifted(m);
  long long total = 0;
  long long top = 0;
  for (int i = 0; i < m; ++i) {
    shifted[i] = x[i] - lo;
    total += shifted[i];
    top = std::max(top, shifted[i]);
  }
  // Each c_i needs L + shifted[i] approvals and d gets the leftover T < L.
  // Approvals are dealt round-robin over V votes, so nobody is approved
  // twice in a vote as long as every count is at most V.
  for (long long L = std::max({k, 1, lo}); L < 1'000'000; ++L) {
    const long long need = m * L + total;
    const long long V = std::max((need + k - 1) / k, L + top);
    const long long T = k * V - need;
    if (T < 0 || T >= L || T > V) continue;
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i) labels.push_back("c" + std::to_string(i + 1));
    labels.push_back("d");
    ScoreGenResult out{{CandidateSet(labels), {}}, static_cast<int>(L - lo)};
    std::vector<Mask> approved(V, 0);
    long long slot = 0;
    auto deal = [&](Candidate who, long long count) {
      for (long long j = 0; j < count; ++j, ++slot) approved[slot % V] |= bit(who);
    };
    for (int i = 0; i < m; ++i) deal(i, L + shifted[i]);
    deal(m, T);
    for (Mask a : approved) {
      LinearVote v;
      for (Candidate c = 0; c <= m; ++c)
        if (has(a, c)) v.ranking.push_back(c);
      for (Candidate c = 0; c <= m; ++c)
        if (!has(a, c)) v.ranking.push_back(c);
      out.profile.votes.push_back(std::move(v));
    }
    return out;
  }
  throw InfeasibleError("score_gen found no profile");
}

bool GadgetInstance::audit_ok() const {
  return std::all_of(audit.begin(), audit.end(), [](const AuditItem& a) { return a.ok; });
}

namespace {

using Pair = std::pair<Candidate, Candidate>;

void check(std::vector<AuditItem>& audit, std::string what, long long intended,
           long long achieved) {
  audit.push_back({std::move(what), intended, achieved, intended == achieved});
}

// The chain `order` as a partial vote with the pairs in `removed` (either
// orientation) dropped. Records whether closure kept them out.
PartialVote chain_minus(const std::vector<Candidate>& order, const std::vector<Pair>& removed,
                        int m, std::vector<AuditItem>& audit, const std::string& name) {
  std::set<Pair> gone;
  for (auto [a, b] : removed) {
    gone.insert({a, b});
    gone.insert({b, a});
  }
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (!gone.count({order[i], order[j]})) pairs.emplace_back(order[i], order[j]);
  PartialVote v = transitive_close(pairs, m);
  int restored = 0;
  for (auto [a, b] : removed) restored += v.comparable(a, b) ? 1 : 0;
  check(audit, name + ": removed pairs restored by closure", 0, restored);
  return v;
}

std::vector<Candidate> concat(std::initializer_list<std::vector<Candidate>> parts) {
  std::vector<Candidate> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Candidate> range(int from, int count) {
  std::vector<Candidate> out(count);
  for (int i = 0; i < count; ++i) out[i] = from + i;
  return out;
}

std::string fresh_label(const CandidateSet& taken, std::vector<std::string>& extra,
                        const std::string& base) {
  std::string label = base;
  auto clash = [&](const std::string& s) {
    return taken.find(s) || std::find(extra.begin(), extra.end(), s) != extra.end();
  };
  while (clash(label)) label = "_" + label;
  extra.push_back(label);
  return label;
}

int k_approval_score(const Profile& p, Candidate x, int k) {
  int s = 0;
  for (const auto& v : p.votes)
    for (int i = 0; i < k; ++i) s += v.ranking[i] == x ? 1 : 0;
  return s;
}

X3CInstance with_parity(const X3CInstance& x, bool want_even) {
  X3CInstance out = x;
  if ((out.t() % 2 == 0) != want_even) out.sets.push_back(out.sets.front());
  return out;
}

std::vector<std::string> universe_labels(int q) {
  std::vector<std::string> out;
  for (int i = 0; i < q; ++i) out.push_back("u" + std::to_string(i + 1));
  return out;
}

Mask set_mask(const std::array<int, 3>& s) { return bit(s[0]) | bit(s[1]) | bit(s[2]); }

std::vector<Candidate> members(Mask set, int q, bool inside) {
  std::vector<Candidate> out;
  for (int u = 0; u < q; ++u)
    if (has(set, u) == inside) out.push_back(u);
  return out;
}

// Margins realised by complete votes, given intended complete-vote margins.
Profile install_margins(const CandidateSet& cands, const std::vector<int>& f,
                        std::vector<AuditItem>& audit) {
  const int m = cands.size();
  Profile prof = mcgarvey(MarginTarget{m, f}, cands);
  const MarginMatrix got = margins(prof);
  int wrong = 0;
  for (Candidate a = 0; a < m; ++a)
    for (Candidate b = 0; b < m; ++b) wrong += got(a, b) != f[a * m + b] ? 1 : 0;
  check(audit, "complete-vote margins differing from the target", 0, wrong);
  return prof;
}

void set_margin(std::vector<int>& f, int m, Candidate a, Candidate b, int value) {
  f[a * m + b] = value;
  f[b * m + a] = -value;
}

ManipulationInstance assemble(const RuleSpec& rule, const CandidateSet& cands,
                              const std::vector<PartialVote>& partial, const Profile& complete,
                              Candidate preferred) {
  ManipulationInstance inst{rule, {cands, partial}, 1, preferred};
  for (const auto& v : complete.votes) inst.partial.votes.push_back(PartialVote::from_linear(v));
  return inst;
}

}  // namespace

GadgetInstance reduce_pw_to_wm_kapproval(const PartialProfile& p, Candidate c, int k) {
  const int m0 = p.m();
  if (c < 0 || c >= m0) throw ParameterError("candidate out of range");
  if (k < 2 || k >= m0) throw ParameterError("needs 2 <= k < m");
  const int others = m0 - 1;
  const int block = k - 1;
  const int dummies = (others + 1) * block;
  const int m = m0 + dummies;

  std::vector<std::string> extra;
  std::vector<std::string> labels = p.candidates.labels();
  for (int i = 0; i < dummies; ++i)
    labels.push_back(fresh_label(p.candidates, extra, "x" + std::to_string(i + 1)));
  CandidateSet cands(labels);

  GadgetInstance g;
  g.problem = Problem::kWM;
  auto block_of = [&](int i) { return range(m0 + i * block, block); };

  std::vector<PartialVote> partial;
  for (const auto& v : p.votes) {
    auto pairs = v.pairs();
    for (Candidate a = 0; a < m0; ++a)
      for (int d = m0; d < m; ++d) pairs.emplace_back(a, d);
    for (int d = m0; d + 1 < m; ++d) pairs.emplace_back(d, d + 1);
    partial.push_back(transitive_close(pairs, m));
  }
  int dummy_reach = 0;
  for (const auto& v : partial)
    for (int d = m0; d < m; ++d) dummy_reach += placement_feasible(v, bit(d), 0, k) ? 1 : 0;
  check(g.audit, "dummy top-k placements in augmented partial votes", 0, dummy_reach);

  Profile complete{cands, {}};
  int i = 0;
  for (Candidate x = 0; x < m0; ++x) {
    if (x == c) continue;
    std::vector<Candidate> front = concat({{x}, block_of(i++)});
    LinearVote v{front};
    for (Candidate y = 0; y < m; ++y)
      if (std::find(front.begin(), front.end(), y) == front.end()) v.ranking.push_back(y);
    complete.votes.push_back(std::move(v));
  }
  check(g.audit, "complete votes", others, complete.n());
  // The last block is left for the manipulator to approve alongside c.
  for (int d = m0; d < m; ++d)
    check(g.audit, "score of " + cands.label(d) + " from complete votes", d < m - block ? 1 : 0,
          k_approval_score(complete, d, k));

  g.instance = assemble(RuleSpec::k_approval(k), cands, partial, complete, c);
  return g;
}

GadgetInstance reduce_pw_to_wm_kveto(const PartialProfile& p, Candidate c, int k) {
  const int m0 = p.m();
  if (c < 0 || c >= m0) throw ParameterError("candidate out of range");
  if (k < 2 || k >= m0) throw ParameterError("needs 2 <= k < m");
  const int m = m0 + k + 1;
  const Candidate d = m0 + k;

  std::vector<std::string> extra;
  std::vector<std::string> labels = p.candidates.labels();
  for (int i = 0; i < k; ++i)
    labels.push_back(fresh_label(p.candidates, extra, "x" + std::to_string(i + 1)));
  labels.push_back(fresh_label(p.candidates, extra, "y"));
  CandidateSet cands(labels);

  GadgetInstance g;
  g.problem = Problem::kWM;

  // c goes as high as each vote allows (below its ancestors, above all
  // else), then the dummies x1 > .. > xk > y sit on top.
  std::vector<PartialVote> partial;
  int c_score = 0;
  for (const auto& v : p.votes) {
    auto pairs = v.pairs();
    const Mask anc = v.ancestors(c);
    for (Candidate x = 0; x < m0; ++x)
      if (x != c && !has(anc, x)) pairs.emplace_back(c, x);
    for (int i = m0; i < d; ++i) pairs.emplace_back(i, i + 1);
    for (Candidate x = 0; x < m0; ++x) pairs.emplace_back(d, x);
    partial.push_back(transitive_close(pairs, m));
    const int pos = (k + 1) + popcount(anc) + 1;
    if (pos > m - k) --c_score;
  }

  // Equaliser: k-veto over m candidates ranks by (m-k)-approval.
  std::vector<int> x(m0 + k, 0);
  for (int i = 0; i < k; ++i) x[m0 + i] = c_score;
  ScoreGenResult eq = score_gen(x, m - k);
  Profile complete{cands, eq.profile.votes};

  Profile probe{cands, {}};
  for (const auto& v : partial) probe.votes.push_back(first_extension(v));
  probe.votes.insert(probe.votes.end(), complete.votes.begin(), complete.votes.end());
  const auto scores = positional_scores(ScoreVector::k_veto(m, k), probe);
  for (int i = 0; i < k; ++i)
    check(g.audit, "score(c) - score(" + cands.label(m0 + i) + ")", 0,
          scores[c] - scores[m0 + i]);
  check(g.audit, "score(" + cands.label(d) + ") below score(c)", 1, scores[d] < scores[c]);
  int uneven = 0;
  for (Candidate y = 0; y < m0; ++y)
    uneven += positional_scores(ScoreVector::k_veto(m, k), complete)[y] !=
                      positional_scores(ScoreVector::k_veto(m, k), complete)[c]
                  ? 1
                  : 0;
  check(g.audit, "original candidates with unequal equaliser score", 0, uneven);

  g.instance = assemble(RuleSpec::k_veto(k), cands, partial, complete, c);
  return g;
}

GadgetInstance reduce_x3c_to_wm_maximin(const X3CInstance& src) {
  src.validate();
  const X3CInstance x = with_parity(src, true);
  const int q = x.universe_size;
  const int t = x.t();
  const Candidate c = q, w = q + 1, w1 = q + 2, w2 = q + 3, w3 = q + 4;
  const int m = q + 5;
  auto labels = universe_labels(q);
  for (const char* s : {"c", "w", "w1", "w2", "w3"}) labels.push_back(s);
  CandidateSet cands(labels);

  GadgetInstance g;
  g.problem = Problem::kWM;
  std::vector<PartialVote> partial;
  for (int i = 0; i < t; ++i) {
    const Mask s = set_mask(x.sets[i]);
    const auto in = members(s, q, true);
    const auto out = members(s, q, false);
    std::vector<Pair> removed{{w, c}};
    for (Candidate u : in) removed.emplace_back(w, u);
    partial.push_back(chain_minus(concat({out, {w}, in, {c, w1, w2, w3}}), removed, m, g.audit,
                                  "vote " + std::to_string(i + 1)));
  }

  // Pairs of w against U and c take the table as the complete-vote margin,
  // with the partial votes counted on top; every other pair takes it as the
  // margin over all non-manipulator votes.
  std::vector<int> fixed(m * m, 0);
  std::vector<char> open(m * m, 0);
  for (Candidate a = 0; a < m; ++a)
    for (Candidate b = 0; b < m; ++b) {
      if (a == b) continue;
      const bool against_w = (a == w && (b < q || b == c)) || (b == w && (a < q || a == c));
      open[a * m + b] = against_w ? 1 : 0;
      for (const auto& v : partial) fixed[a * m + b] += v.prefers(a, b) ? 1 : -1;
    }
  std::vector<int> table(m * m, 0);
  set_margin(table, m, c, w, -2 * t + 2 * q / 3);
  set_margin(table, m, c, w1, -t);
  set_margin(table, m, w, w1, -4 * t);
  set_margin(table, m, w1, w2, -t - 2);
  set_margin(table, m, w2, w3, -t - 2);
  set_margin(table, m, w3, w1, -t - 2);
  for (Candidate u = 0; u < q; ++u) set_margin(table, m, u, w, -2 * t + 2);
  std::vector<int> f(m * m, 0);
  for (int i = 0; i < m * m; ++i) f[i] = open[i] ? table[i] : table[i] - fixed[i];
  Profile complete = install_margins(cands, f, g.audit);

  const MarginMatrix got = margins(complete);
  auto table_check = [&](Candidate a, Candidate b) {
    const int i = a * m + b;
    const std::string what = "D(" + cands.label(a) + "," + cands.label(b) + ")" +
                             (open[i] ? " from complete votes" : " over all non-manipulator votes");
    check(g.audit, what, table[i], got(a, b) + (open[i] ? 0 : fixed[i]));
  };
  table_check(c, w);
  table_check(c, w1);
  table_check(w, w1);
  table_check(w1, w2);
  table_check(w2, w3);
  table_check(w3, w1);
  for (Candidate u = 0; u < q; ++u) table_check(u, w);

  g.instance = assemble(RuleSpec::maximin(), cands, partial, complete, c);

  if (auto cover = x3c_cover(src)) {
    Witness wit;
    wit.manipulator_votes.push_back(
        LinearVote{concat({{c, w, w1, w2, w3}, range(0, q)})});
    std::vector<LinearVote> ext;
    for (int i = 0; i < t; ++i) {
      const Mask s = set_mask(x.sets[i]);
      const auto in = members(s, q, true);
      const auto out = members(s, q, false);
      const bool covers = std::binary_search(cover->begin(), cover->end(), i);
      ext.push_back(LinearVote{covers ? concat({out, {w}, in, {c, w1, w2, w3}})
                                      : concat({out, in, {c, w, w1, w2, w3}})});
    }
    ext.insert(ext.end(), complete.votes.begin(), complete.votes.end());
    wit.extension = std::move(ext);
    g.witness = std::move(wit);
  }
  return g;
}

namespace {

GadgetInstance copeland_gadget(const X3CInstance& src, bool strong) {
  src.validate();
  const X3CInstance x = with_parity(src, strong);
  const int q = x.universe_size;
  const int t = x.t();
  const Candidate c = q, w = q + 1, z = q + 2, d = q + 3;
  const int m = q + 4;
  auto labels = universe_labels(q);
  for (const char* s : {"c", "w", "z", "d"}) labels.push_back(s);
  CandidateSet cands(labels);

  GadgetInstance g;
  g.problem = strong ? Problem::kSM : Problem::kWM;
  std::vector<PartialVote> partial;
  for (int i = 0; i < t; ++i) {
    const Mask s = set_mask(x.sets[i]);
    const auto in = members(s, q, true);
    const auto out = members(s, q, false);
    std::vector<Pair> removed;
    for (Candidate a : {z, c})
      for (Candidate b : concat({in, {d, w}})) removed.emplace_back(a, b);
    partial.push_back(chain_minus(concat({out, {z, c, d}, in, {w}}), removed, m, g.audit,
                                  "vote " + std::to_string(i + 1)));
  }

  std::vector<int> f(m * m, 0);
  set_margin(f, m, c, d, strong ? -4 * t : 4 * t);
  set_margin(f, m, c, z, 4 * t);
  set_margin(f, m, z, d, 4 * t);
  set_margin(f, m, w, c, 4 * t);
  set_margin(f, m, z, w, strong ? t - 2 * q / 3 - 2 : t - 2 * q / 3 + 1);
  for (Candidate u = 0; u < q; ++u) {
    set_margin(f, m, u, d, 4 * t);
    set_margin(f, m, z, u, 4 * t);
    set_margin(f, m, c, u, strong ? t : t - 1);
  }
  // Balanced tournament on U: each element beats the next (q-1)/2 around
  // the circle, and for even q the first half also beats its opposite.
  for (Candidate u = 0; u < q; ++u) {
    for (int step = 1; step <= (q - 1) / 2; ++step) set_margin(f, m, u, (u + step) % q, 2 * t + 2);
    if (q % 2 == 0 && u < q / 2) set_margin(f, m, u, u + q / 2, 2 * t + 2);
  }
  Profile complete = install_margins(cands, f, g.audit);
  const MarginMatrix got = margins(complete);
  auto table_check = [&](Candidate a, Candidate b) {
    check(g.audit, "D(" + cands.label(a) + "," + cands.label(b) + ") from complete votes",
          f[a * m + b], got(a, b));
  };
  for (auto [a, b] : std::vector<Pair>{{c, d}, {c, z}, {z, d}, {w, c}, {z, w}}) table_check(a, b);
  int unbeaten = 0;
  for (Candidate u = 0; u < q; ++u) {
    table_check(u, d);
    table_check(z, u);
    table_check(c, u);
    bool beaten = false;
    for (Candidate v = 0; v < q; ++v) beaten = beaten || got(v, u) > t + 1;
    unbeaten += beaten ? 0 : 1;
  }
  check(g.audit, "universe candidates not beaten by another universe candidate", 0, unbeaten);
  if (strong)
    check(g.audit, "c can overturn its loss to d", 0, got(c, d) + t + 1 > 0 ? 1 : 0);

  g.instance = assemble(RuleSpec::copeland(), cands, partial, complete, strong ? z : c);

  if (auto cover = x3c_cover(src)) {
    Witness wit;
    if (strong) {
      wit.manipulator_votes.push_back(LinearVote{concat({{z, w, d}, range(0, q), {c}})});
    } else {
      wit.manipulator_votes.push_back(LinearVote{concat({{c, w, z, d}, range(0, q)})});
      std::vector<LinearVote> ext;
      for (int i = 0; i < t; ++i) {
        const Mask s = set_mask(x.sets[i]);
        const auto in = members(s, q, true);
        const auto out = members(s, q, false);
        const bool covers = std::binary_search(cover->begin(), cover->end(), i);
        ext.push_back(LinearVote{covers ? concat({out, {z, c, d}, in, {w}})
                                        : concat({out, {d}, in, {w, z, c}})});
      }
      ext.insert(ext.end(), complete.votes.begin(), complete.votes.end());
      wit.extension = std::move(ext);
    }
    g.witness = std::move(wit);
  }
  return g;
}

}  // namespace

GadgetInstance reduce_x3c_to_wm_copeland(const X3CInstance& x) { return copeland_gadget(x, false); }

GadgetInstance reduce_x3c_to_sm_copeland(const X3CInstance& x) { return copeland_gadget(x, true); }

GadgetInstance reduce_x3c_to_wm_bucklin(const X3CInstance& x) {
  x.validate();
  const int q = x.universe_size;
  const int t = x.t();
  // W = w1..w{q+1}, D = d1..d{q+1}, then the universe, c and w.
  const int U0 = 2 * q + 2;
  const Candidate c = 3 * q + 2, w = 3 * q + 3;
  const int m = 3 * q + 4;
  std::vector<std::string> labels;
  for (int i = 0; i <= q; ++i) labels.push_back("w" + std::to_string(i + 1));
  for (int i = 0; i <= q; ++i) labels.push_back("d" + std::to_string(i + 1));
  for (const auto& u : universe_labels(q)) labels.push_back(u);
  labels.push_back("c");
  labels.push_back("w");
  CandidateSet cands(labels);
  const auto W = range(0, q + 1);
  const auto D = range(q + 1, q + 1);
  const auto U = range(U0, q);
  const auto W_fixed = range(0, q - 3);
  const auto W_free = range(q - 3, 4);

  GadgetInstance g;
  g.problem = Problem::kWM;
  auto shift = [&](std::vector<Candidate> v) {
    for (auto& u : v) u += U0;
    return v;
  };
  std::vector<PartialVote> partial;
  for (int i = 0; i < t; ++i) {
    const Mask s = set_mask(x.sets[i]);
    const auto in = shift(members(s, q, true));
    const auto out = shift(members(s, q, false));
    std::vector<Pair> removed;
    for (Candidate a : W_free)
      for (Candidate b : concat({{c}, in})) removed.emplace_back(a, b);
    partial.push_back(chain_minus(concat({W, in, {c}, out, D, {w}}), removed, m, g.audit,
                                  "vote " + std::to_string(i + 1)));
  }

  Profile complete{cands, {}};
  for (int i = 0; i < t; ++i) complete.votes.push_back(LinearVote{concat({U, {c}, W, D, {w}})});
  for (int i = 0; i < q / 3 - 1; ++i)
    complete.votes.push_back(LinearVote{concat({U, {w, c}, W, D})});
  for (int i = 0; i < q / 3 + 1; ++i)
    complete.votes.push_back(LinearVote{concat({D, W, U, {c, w}})});
  check(g.audit, "voters including the manipulator", 2 * t + 2 * q / 3 + 1,
        t + complete.n() + 1);

  g.instance = assemble(RuleSpec::bucklin(), cands, partial, complete, c);

  if (auto cover = x3c_cover(x)) {
    Witness wit;
    wit.manipulator_votes.push_back(LinearVote{concat({{c, w}, W, D, U})});
    std::vector<LinearVote> ext;
    for (int i = 0; i < t; ++i) {
      const Mask s = set_mask(x.sets[i]);
      const auto in = shift(members(s, q, true));
      const auto out = shift(members(s, q, false));
      const bool covers = std::binary_search(cover->begin(), cover->end(), i);
      ext.push_back(LinearVote{covers ? concat({W_fixed, in, {c}, W_free, out, D, {w}})
                                      : concat({W, in, {c}, out, D, {w}})});
    }
    ext.insert(ext.end(), complete.votes.begin(), complete.votes.end());
    wit.extension = std::move(ext);
    g.witness = std::move(wit);
  }
  return g;
}

std::vector<AuditItem> audit_mcgarvey(const MarginTarget& target, const Profile& p) {
  std::vector<AuditItem> audit;
  const MarginMatrix d = margins(p);
  long long bound = 0;
  for (Candidate a = 0; a < target.m; ++a) {
    for (Candidate b = a + 1; b < target.m; ++b) {
      check(audit, "D(" + p.candidates.label(a) + "," + p.candidates.label(b) + ")",
            target(a, b), d(a, b));
      bound += std::abs(target(a, b));
    }
  }
  audit.push_back({"votes within the size bound", bound, p.n(), p.n() <= bound});
  return audit;
}

std::vector<AuditItem> audit_score_gen(const std::vector<int>& x, int k,
                                       const ScoreGenResult& result) {
  std::vector<AuditItem> audit;
  const Profile& p = result.profile;
  const int m = static_cast<int>(x.size());
  int lowest = std::numeric_limits<int>::max();
  for (Candidate i = 0; i < m; ++i) {
    const int s = k_approval_score(p, i, k);
    check(audit, "score(" + p.candidates.label(i) + ")", result.lambda + x[i], s);
    lowest = std::min(lowest, s);
  }
  const int d = k_approval_score(p, m, k);
  audit.push_back({"score(d) below every other score", lowest - 1, d, d < lowest});
  return audit;
}

ManipulationInstance embed_cm_as(Problem kind, const RuleSpec& rule, const Profile& p,
                                 int manipulators, Candidate c) {
  if (kind != Problem::kWM && kind != Problem::kSM)
    throw ParameterError("CM embeds only as weak or strong manipulation");
  ManipulationInstance inst{rule, PartialProfile::from_profile(p), manipulators, c};
  inst.validate();
  return inst;
}

std::pair<PartialProfile, Candidate> wm_to_pw(const ManipulationInstance& inst) {
  PartialProfile out = inst.partial;
  for (int i = 0; i < inst.manipulators; ++i)
    out.votes.push_back(PartialVote::empty(inst.partial.m()));
  return {out, inst.preferred};
}

}  // namespace pmanip
