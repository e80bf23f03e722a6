#include <gtest/gtest.h>

#include "pmanip/crosscheck.hpp"
#include "pmanip/gadgets.hpp"
#include "pmanip/oracle.hpp"
#include "support.hpp"

namespace pmanip {
namespace {

using testing::order;
using testing::vote;

constexpr Candidate a = 0, b = 1, c = 2;

PartialProfile partial(int m, std::vector<PartialVote> votes) {
  return {CandidateSet::anonymous(m), std::move(votes)};
}

ManipulationInstance instance(RuleSpec r, PartialProfile p, int manipulators, Candidate pref) {
  return {std::move(r), std::move(p), manipulators, pref};
}

TEST(PossibleWinner, Examples) {
  const auto p = partial(2, {order(2, {{a, b}})});
  const SolveResult yes = solve_pw(RuleSpec::plurality(), p, a);
  ASSERT_TRUE(yes.answer);
  EXPECT_EQ(*yes.witness->extension, std::vector<LinearVote>{vote({a, b})});
  EXPECT_FALSE(solve_pw(RuleSpec::plurality(), p, b).answer);
  const SolveResult empty = solve_pw(RuleSpec::plurality(), partial(3, {PartialVote::empty(3)}), b);
  ASSERT_TRUE(empty.answer);
  EXPECT_EQ(empty.witness->extension->front().ranking.front(), b);
}

TEST(NecessaryWinner, Examples) {
  EXPECT_TRUE(solve_nw(RuleSpec::plurality(),
                       partial(3, {PartialVote::from_linear(vote({a, b, c}))}), a)
                  .answer);
  const SolveResult no = solve_nw(RuleSpec::plurality(), partial(2, {PartialVote::empty(2)}), a);
  EXPECT_FALSE(no.answer);
  ASSERT_TRUE(no.counterexample.has_value());
  EXPECT_EQ(*no.counterexample, std::vector<LinearVote>{vote({b, a})});
}

TEST(NecessaryWinner, OtherCandidatesCanTakeBothTops) {
  // c may top the first vote and b the second, leaving a with no points.
  const auto p = partial(3, {order(3, {{a, b}}), order(3, {{a, c}})});
  const SolveResult r = solve_nw(RuleSpec::plurality(), p, a);
  EXPECT_FALSE(r.answer);
  // First failure in enumeration order: b tops the second vote and ties a.
  EXPECT_EQ(*r.counterexample, (std::vector<LinearVote>{vote({a, b, c}), vote({b, a, c})}));
  EXPECT_TRUE(verify_result(Problem::kNW, instance(RuleSpec::plurality(), p, 1, a), r).ok);
}

TEST(CoalitionalManipulation, Examples) {
  const Profile p{CandidateSet::anonymous(2), {vote({b, a})}};
  EXPECT_TRUE(solve_cm(RuleSpec::plurality(), p, 2, a).answer);
  EXPECT_FALSE(solve_cm(RuleSpec::plurality(), p, 1, a).answer);
  const Profile none{CandidateSet::anonymous(3), {}};
  for (const RuleSpec& r : {RuleSpec::plurality(), RuleSpec::borda(), RuleSpec::bucklin(),
                            RuleSpec::maximin(), RuleSpec::copeland()})
    EXPECT_TRUE(solve_cm(r, none, 1, a).answer) << r.describe();
}

TEST(WeakManipulation, Examples) {
  // The extension c > a > b plus a manipulator ranking c first gives c two points.
  const auto inst = instance(RuleSpec::plurality(), partial(3, {order(3, {{a, b}})}), 1, c);
  const SolveResult r = solve_wm(inst);
  ASSERT_TRUE(r.answer);
  EXPECT_TRUE(verify_result(Problem::kWM, inst, r).ok);
  EXPECT_TRUE(solve_wm(instance(RuleSpec::maximin(), partial(3, {}), 1, a)).answer);
}

TEST(StrongManipulation, Examples) {
  const SolveResult lone = solve_sm(instance(RuleSpec::bucklin(), partial(3, {}), 1, c));
  ASSERT_TRUE(lone.answer);
  EXPECT_EQ(lone.witness->manipulator_votes.front().ranking.front(), c);
  EXPECT_FALSE(lone.witness->extension.has_value());
  EXPECT_FALSE(
      solve_sm(instance(RuleSpec::plurality(), partial(2, {PartialVote::empty(2)}), 1, a)).answer);
}

TEST(ManipulationInstance, Validation) {
  EXPECT_THROW(instance(RuleSpec::plurality(), partial(2, {}), 0, a).validate(), ParameterError);
  EXPECT_THROW(instance(RuleSpec::plurality(), partial(2, {}), 1, 2).validate(), ParameterError);
  EXPECT_THROW(instance(RuleSpec::k_approval(2), partial(2, {}), 1, 0).validate(), ParameterError);
  EXPECT_THROW(solve_wm(instance(RuleSpec::plurality(), partial(2, {}), 0, a)), ParameterError);
}

TEST(Oracle, BudgetExceeded) {
  const auto p = partial(5, {PartialVote::empty(5), PartialVote::empty(5), PartialVote::empty(5)});
  OracleOptions tight;
  tight.budget = 1000;
  EXPECT_THROW(solve_nw(RuleSpec::borda(), p, a, tight), BudgetExceeded);
  EXPECT_THROW(solve_sm(instance(RuleSpec::borda(), p, 2, a), tight), BudgetExceeded);
}

TEST(Oracle, FirstWitnessIsLexicographicallySmallest) {
  const auto p = partial(3, {PartialVote::empty(3), PartialVote::empty(3)});
  const SolveResult r = solve_pw(RuleSpec::plurality(), p, b);
  ASSERT_TRUE(r.answer);
  // b needs both tops; the smallest such pair is (b a c, b a c).
  EXPECT_EQ(*r.witness->extension, (std::vector<LinearVote>{vote({b, a, c}), vote({b, a, c})}));
}

std::vector<RuleSpec> rules_for(int m) {
  std::vector<RuleSpec> rules = {RuleSpec::plurality(), RuleSpec::veto(),   RuleSpec::borda(),
                                 RuleSpec::bucklin(),   RuleSpec::maximin(), RuleSpec::copeland()};
  if (m > 2) rules.push_back(RuleSpec::k_approval(2));
  if (m > 2) rules.push_back(RuleSpec::k_veto(2));
  return rules;
}

class OracleProperties : public ::testing::Test {
 protected:
  template <typename Check>
  void for_random_instances(int trials, Check check) {
    Rng rng(2024);
    for (int trial = 0; trial < trials; ++trial) {
      const int m = rng.uniform(2, 4);
      const int n = rng.uniform(0, 3);
      const int k = rng.uniform(1, 2);
      const ManipulationInstance base = random_instance(rng, RuleSpec::plurality(), m, n, k);
      for (const auto& r : rules_for(m)) {
        ManipulationInstance inst = base;
        inst.rule = r;
        check(inst);
      }
    }
  }
};

TEST_F(OracleProperties, DefinitionalImplications) {
  for_random_instances(60, [](const ManipulationInstance& inst) {
    const auto& p = inst.partial;
    const Candidate x = inst.preferred;
    const bool sm = solve_sm(inst).answer;
    const bool wm = solve_wm(inst).answer;
    if (sm) EXPECT_TRUE(wm);
    if (solve_nw(inst.rule, p, x).answer) EXPECT_TRUE(solve_pw(inst.rule, p, x).answer);
    auto [padded, pc] = wm_to_pw(inst);
    EXPECT_EQ(solve_pw(inst.rule, padded, pc).answer, wm);
  });
}

TEST_F(OracleProperties, CoalitionalManipulationEmbeds) {
  for_random_instances(60, [](const ManipulationInstance& inst) {
    Profile complete{inst.partial.candidates, {}};
    for (const auto& v : inst.partial.votes) complete.votes.push_back(first_extension(v));
    const Candidate x = inst.preferred;
    const bool cm = solve_cm(inst.rule, complete, inst.manipulators, x).answer;
    EXPECT_EQ(solve_wm(embed_cm_as(Problem::kWM, inst.rule, complete, inst.manipulators, x)).answer, cm);
    EXPECT_EQ(solve_sm(embed_cm_as(Problem::kSM, inst.rule, complete, inst.manipulators, x)).answer, cm);
  });
}

TEST_F(OracleProperties, PreferredOnTopPruningIsSound) {
  OracleOptions prune;
  prune.preferred_on_top = true;
  for_random_instances(60, [&](const ManipulationInstance& inst) {
    EXPECT_EQ(solve_wm(inst, prune).answer, solve_wm(inst).answer) << inst.rule.describe();
    EXPECT_EQ(solve_sm(inst, prune).answer, solve_sm(inst).answer) << inst.rule.describe();
  });
}

TEST_F(OracleProperties, StrongManipulationIsNecessaryWinnerWithTheCoalition) {
  for_random_instances(40, [](const ManipulationInstance& inst) {
    const SolveResult r = solve_sm(inst);
    if (!r.answer) return;
    PartialProfile with_q = inst.partial;
    for (const auto& q : r.witness->manipulator_votes)
      with_q.votes.push_back(PartialVote::from_linear(q));
    EXPECT_TRUE(solve_nw(inst.rule, with_q, inst.preferred).answer);
  });
}

TEST_F(OracleProperties, WitnessesVerify) {
  for_random_instances(60, [](const ManipulationInstance& inst) {
    for (Problem pr : {Problem::kPW, Problem::kNW, Problem::kWM, Problem::kSM}) {
      SolveResult r;
      switch (pr) {
        case Problem::kPW: r = solve_pw(inst.rule, inst.partial, inst.preferred); break;
        case Problem::kNW: r = solve_nw(inst.rule, inst.partial, inst.preferred); break;
        case Problem::kWM: r = solve_wm(inst); break;
        default: r = solve_sm(inst); break;
      }
      if (r.answer || pr == Problem::kNW) {
        const Verdict v = verify_result(pr, inst, r);
        EXPECT_TRUE(v.ok) << problem_name(pr) << ": " << v.reason;
      }
    }
  });
}

TEST(VerifyResult, RejectsWrongWinner) {
  const auto inst = instance(RuleSpec::plurality(), partial(2, {order(2, {{b, a}})}), 1, a);
  SolveResult forged;
  forged.answer = true;
  forged.witness = Witness{{vote({b, a})}, std::vector<LinearVote>{vote({b, a})}};
  EXPECT_FALSE(verify_result(Problem::kWM, inst, forged).ok);
  forged.witness->extension = std::vector<LinearVote>{vote({a, b})};
  EXPECT_FALSE(verify_result(Problem::kWM, inst, forged).ok) << "extension must respect b > a";
  SolveResult bare;
  bare.answer = true;
  EXPECT_FALSE(verify_result(Problem::kSM, inst, bare).ok);
}

TEST(ProblemNames, RoundTrip) {
  for (Problem p : {Problem::kPW, Problem::kNW, Problem::kCM, Problem::kWM, Problem::kSM})
    EXPECT_EQ(parse_problem(problem_name(p)), p);
  EXPECT_THROW(parse_problem("xx"), ParameterError);
}

}  // namespace
}  // namespace pmanip
