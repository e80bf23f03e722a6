#pragma once

// Brute-force references shared by the unit and acceptance tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "pmanip/crosscheck.hpp"
#include "pmanip/gadgets.hpp"
#include "pmanip/prefs.hpp"

namespace pmanip::testing {

inline std::vector<LinearVote> all_permutations(int m) {
  std::vector<Candidate> r(m);
  std::iota(r.begin(), r.end(), 0);
  std::vector<LinearVote> out;
  do {
    out.push_back(LinearVote{r});
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

/// Permutations of all candidates that contain every pair of v.
inline std::vector<LinearVote> brute_extensions(const PartialVote& v) {
  std::vector<LinearVote> out;
  for (const auto& p : all_permutations(v.m())) {
    const auto pos = p.positions();
    bool ok = true;
    for (auto [a, b] : v.pairs()) ok = ok && pos[a] < pos[b];
    if (ok) out.push_back(p);
  }
  return out;
}

/// Random partial order: a random permutation restricted to a random
/// subset of its pairs, then closed.
inline PartialVote random_order(Rng& rng, int m) {
  std::vector<Candidate> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
  std::vector<std::pair<Candidate, Candidate>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (rng.uniform(0, 2) == 0) pairs.emplace_back(order[i], order[j]);
  return transitive_close(pairs, m);
}

inline LinearVote random_linear(Rng& rng, int m) {
  std::vector<Candidate> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
  return LinearVote{order};
}

inline LinearVote vote(std::initializer_list<Candidate> r) { return LinearVote{r}; }

inline PartialVote order(int m, std::initializer_list<std::pair<Candidate, Candidate>> pairs) {
  return transitive_close(std::vector<std::pair<Candidate, Candidate>>(pairs), m);
}

/// Checks the construction's own certificate by evaluating it: the winner
/// of extension plus manipulator votes (WM), or the necessary winner of the
/// partial votes plus manipulator votes (SM).
inline Verdict check_gadget_witness(const GadgetInstance& g) {
  if (!g.witness) return {false, "no witness"};
  SolveResult r;
  r.answer = true;
  r.witness = g.witness;
  return verify_result(g.problem, g.instance, r);
}

inline X3CInstance x3c(int q, std::vector<std::array<int, 3>> one_based) {
  X3CInstance x{q, {}};
  for (auto s : one_based) x.sets.push_back({s[0] - 1, s[1] - 1, s[2] - 1});
  x.validate();
  return x;
}

/// Every X3C instance over q elements with t sets drawn (with repetition,
/// sorted) from the triples of the universe.
inline std::vector<X3CInstance> all_x3c(int q, int t) {
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int k = j + 1; k < q; ++k) triples.push_back({i, j, k});
  std::vector<X3CInstance> out;
  std::vector<int> pick(t, 0);
  const int n = static_cast<int>(triples.size());
  while (true) {
    X3CInstance x{q, {}};
    for (int i : pick) x.sets.push_back(triples[i]);
    out.push_back(x);
    int pos = t - 1;
    while (pos >= 0 && pick[pos] == n - 1) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < t; ++i) pick[i] = pick[pos];
  }
  return out;
}

}  // namespace pmanip::testing
