#include <gtest/gtest.h>

#include <algorithm>

#include "pmanip/prefs.hpp"
#include "support.hpp"

namespace pmanip {
namespace {

using testing::brute_extensions;
using testing::order;
using testing::random_order;
using testing::vote;

constexpr Candidate a = 0, b = 1, c = 2, d = 3;

TEST(TransitiveClose, ChainGetsItsShortcut) {
  const PartialVote v = order(3, {{a, b}, {b, c}});
  using P = std::pair<Candidate, Candidate>;
  EXPECT_EQ(v.pairs(), (std::vector<P>{{a, b}, {a, c}, {b, c}}));
}

TEST(TransitiveClose, EmptyStaysEmpty) {
  EXPECT_EQ(order(3, {}).pair_count(), 0);
  EXPECT_EQ(order(3, {}), PartialVote::empty(3));
}

TEST(TransitiveClose, RejectsCyclesAndLoops) {
  EXPECT_THROW(order(2, {{a, b}, {b, a}}), CycleError);
  EXPECT_THROW(order(3, {{a, b}, {b, c}, {c, a}}), CycleError);
  EXPECT_THROW(order(2, {{a, a}}), CycleError);
  EXPECT_THROW(order(2, {{a, 5}}), ParameterError);
}

TEST(TransitiveClose, Idempotent) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const PartialVote v = random_order(rng, rng.uniform(1, 7));
    EXPECT_EQ(transitive_close(v.pairs(), v.m()), v);
    EXPECT_EQ(transitive_close(v.cover_pairs(), v.m()), v);
  }
}

TEST(PartialVote, FromLinearIsComplete) {
  const PartialVote v = PartialVote::from_linear(vote({c, a, b}));
  EXPECT_TRUE(v.is_complete());
  EXPECT_TRUE(v.prefers(c, a));
  EXPECT_TRUE(v.prefers(c, b));
  EXPECT_EQ(v.pair_count(), 3);
  EXPECT_THROW(PartialVote::from_linear(vote({a, a, b})), ParameterError);
}

TEST(Extensions, ThreeCandidateExample) {
  const auto ext = extensions(order(3, {{a, b}}));
  EXPECT_EQ(ext, (std::vector<LinearVote>{vote({a, b, c}), vote({a, c, b}), vote({c, a, b})}));
  EXPECT_EQ(count_extensions(order(3, {{a, b}})), 3u);
}

TEST(Extensions, CompleteVoteHasOnlyItself) {
  const LinearVote l = vote({b, d, a, c});
  EXPECT_EQ(extensions(PartialVote::from_linear(l)), std::vector<LinearVote>{l});
  EXPECT_EQ(count_extensions(PartialVote::from_linear(l)), 1u);
}

TEST(Extensions, EmptyOrderGivesAllPermutations) {
  EXPECT_EQ(extensions(PartialVote::empty(4)).size(), 24u);
  EXPECT_EQ(count_extensions(PartialVote::empty(5)), 120u);
}

TEST(Extensions, BudgetIsEnforced) {
  EXPECT_THROW(extensions(PartialVote::empty(5), 100), BudgetExceeded);
  EXPECT_THROW(count_extensions(PartialVote::empty(5), 119), BudgetExceeded);
  EXPECT_NO_THROW(count_extensions(PartialVote::empty(5), 120));
}

TEST(Extensions, MatchBruteForceInLexicographicOrder) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const PartialVote v = random_order(rng, rng.uniform(1, 6));
    const auto got = extensions(v);
    EXPECT_EQ(got, brute_extensions(v));
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    for (const auto& e : got) EXPECT_TRUE(v.admits(e));
  }
}

// Reference: any extension with `include` in the top k and `exclude` below.
bool brute_placement(const PartialVote& v, Mask include, Mask exclude, int k) {
  for (const auto& e : brute_extensions(v)) {
    Mask top = 0;
    for (int i = 0; i < k; ++i) top |= bit(e.ranking[i]);
    if ((top & include) == include && (top & exclude) == 0) return true;
  }
  return false;
}

TEST(PlacementFeasible, Examples) {
  EXPECT_FALSE(placement_feasible(order(3, {{a, b}}), bit(b), bit(a), 1));
  EXPECT_TRUE(placement_feasible(PartialVote::empty(3), bit(b), bit(a), 1));
  EXPECT_FALSE(placement_feasible(order(3, {{a, b}, {a, c}}), bit(b) | bit(c), 0, 2));
}

TEST(PlacementFeasible, AgreesWithBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int m = rng.uniform(1, 5);
    const PartialVote v = random_order(rng, m);
    for (int rep = 0; rep < 10; ++rep) {
      Mask include = 0, exclude = 0;
      const int picks = rng.uniform(0, std::min(3, m));
      for (int i = 0; i < picks; ++i) {
        const Candidate x = rng.uniform(0, m - 1);
        if (has(include | exclude, x)) continue;
        (rng.coin() ? include : exclude) |= bit(x);
      }
      const int k = rng.uniform(0, m);
      EXPECT_EQ(placement_feasible(v, include, exclude, k), brute_placement(v, include, exclude, k));
    }
  }
}

TEST(PositionPairFeasible, AgreesWithBruteForce) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(2, 5);
    const PartialVote v = random_order(rng, m);
    const auto exts = brute_extensions(v);
    for (Candidate x = 0; x < m; ++x) {
      for (Candidate y = 0; y < m; ++y) {
        if (x == y) continue;
        for (int px = 1; px <= m; ++px) {
          for (int py = 1; py <= m; ++py) {
            if (px == py) continue;
            const bool want = std::any_of(exts.begin(), exts.end(), [&](const LinearVote& e) {
              return e.ranking[px - 1] == x && e.ranking[py - 1] == y;
            });
            EXPECT_EQ(position_pair_feasible(v, x, px, y, py), want);
          }
        }
      }
    }
  }
}

TEST(ExtendExtreme, Examples) {
  EXPECT_EQ(extend_extreme(PartialVote::empty(3), b, a), vote({b, c, a}));
  EXPECT_EQ(extend_extreme(order(3, {{a, b}}), b, a), vote({a, b, c}));
  const LinearVote l = vote({c, a, d, b});
  EXPECT_EQ(extend_extreme(PartialVote::from_linear(l), a, b), l);
  EXPECT_THROW(extend_extreme(PartialVote::empty(3), a, a), ParameterError);
}

TEST(ExtendExtreme, HiAsEarlyAsPossibleThenLoAsLateAsPossible) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = rng.uniform(2, 6);
    const PartialVote v = random_order(rng, m);
    const Candidate hi = rng.uniform(0, m - 1);
    Candidate lo = rng.uniform(0, m - 2);
    if (lo >= hi) ++lo;
    const LinearVote e = extend_extreme(v, hi, lo);
    ASSERT_TRUE(v.admits(e));
    const auto pos = e.positions();
    EXPECT_EQ(pos[hi], popcount(v.ancestors(hi)));
    int best_lo = -1;
    for (const auto& x : brute_extensions(v)) {
      const auto p = x.positions();
      if (p[hi] == pos[hi]) best_lo = std::max(best_lo, p[lo]);
    }
    EXPECT_EQ(pos[lo], best_lo);
  }
}

TEST(ExtendByPriority, IsAnExtensionFavouringLowPriority) {
  const PartialVote v = order(4, {{c, a}});
  EXPECT_EQ(extend_by_priority(v, {0, 1, 2, 3}), vote({b, c, a, d}));
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(1, 6);
    const PartialVote w = random_order(rng, m);
    std::vector<int> prio(m);
    for (int& p : prio) p = rng.uniform(0, 9);
    EXPECT_TRUE(w.admits(extend_by_priority(w, prio)));
    EXPECT_EQ(first_extension(w), extensions(w).front());
  }
}

TEST(CandidateSet, LabelsAreUnique) {
  const CandidateSet s({"x", "y"});
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.find("y"), 1);
  EXPECT_FALSE(s.find("z").has_value());
  EXPECT_THROW(CandidateSet({"x", "x"}), ParameterError);
  EXPECT_THROW(CandidateSet(std::vector<std::string>{}), ParameterError);
  EXPECT_EQ(CandidateSet::anonymous(3).label(2), "c2");
}

}  // namespace
}  // namespace pmanip
