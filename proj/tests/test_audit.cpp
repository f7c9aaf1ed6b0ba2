#include <gtest/gtest.h>

#include "qdm/audit.hpp"

using namespace qdm;

namespace {

AuditReport run(std::size_t n, std::size_t levels, Criterion c, std::vector<Check> checks = {},
                Comparators cmp = {}) {
  auto spec = AuditSpec::of_size(n, levels);
  spec.criterion = c;
  spec.checks = std::move(checks);
  return Auditor(spec, cmp).run();
}

// With two consequences and u anchored at both ends, distinct normalized
// lotteries never tie, so the substitution checks have nothing to examine.
bool vacuous(Check c, std::size_t n) { return n == 2 && (c == Check::B3 || c == Check::A3); }

void expect_all_pass(const AuditReport& r, std::size_t n) {
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << to_string(c.check) << ": "
                          << (c.counterexample ? c.counterexample->summary : std::string());
    if (vacuous(c.check, n)) {
      EXPECT_EQ(c.instances, 0u) << to_string(c.check);
    } else {
      EXPECT_GT(c.instances, 0u) << to_string(c.check);
    }
  }
}

}  // namespace

TEST(Audit, CheckNamesRoundTripCaseInsensitively) {
  for (Check c : kAllChecks) EXPECT_EQ(parse_check(to_string(c)), c);
  EXPECT_EQ(parse_check("LEMMA1"), Check::Lemma1);
  EXPECT_EQ(parse_check("a2-"), Check::A2Pess);
  EXPECT_FALSE(parse_check("Z9").has_value());
}

TEST(Audit, PossibilisticUtilityAxiomsHoldOnSmallSpaces) {
  for (auto [n, l] : {std::pair{2, 2}, {2, 4}, {3, 2}, {3, 3}}) expect_all_pass(run(n, l, Criterion::PU), n);
}

TEST(Audit, LexicographicCriterionChecksHold) { expect_all_pass(run(3, 4, Criterion::LexPU), 3); }

TEST(Audit, RefinedChecksHoldWithTwoConsequences) {
  for (std::size_t l = 2; l <= 4; ++l) expect_all_pass(run(2, l, Criterion::RPU), 2);
}

TEST(Audit, RefinedOrderAndRefinementHoldWithThreeConsequences) {
  expect_all_pass(run(3, 4, Criterion::RPU,
                      {Check::A1, Check::A2Pess, Check::A2Opt, Check::A2Neutral, Check::Refinement}),
                  3);
}

TEST(Audit, RefinedSubstitutionFailsWithThreeConsequences) {
  const auto r = run(3, 3, Criterion::RPU, {Check::A3});
  ASSERT_FALSE(r.passed());
  const auto& cx = *r.checks[0].counterexample;
  EXPECT_EQ(cx.refined_lotteries.size(), 3u);
  EXPECT_EQ(cx.coefficients.size(), 2u);
  ASSERT_TRUE(cx.assignment.has_value());
  // replay: the two sub-lotteries tie, the mixtures do not
  const auto s = Scale::uniform(3);
  const auto x = OutcomeSpace::numbered(3);
  const auto& u = *cx.assignment;
  bool tie_somewhere = false, split_somewhere = false;
  for (auto att : kAllAttitudes) {
    if (cmp_uw(rpu(cx.refined_lotteries[0], u), rpu(cx.refined_lotteries[1], u), att) != Ordering::Equal) continue;
    tie_somewhere = true;
    auto mixed = [&](const RefinedLottery& sub) {
      RefinedCompound m;
      m.branches.push_back({embed_level(cx.coefficients[0]), sub});
      m.branches.push_back({embed_level(cx.coefficients[1]), cx.refined_lotteries[2]});
      return rpu(reduce_rr(s, x, m), u);
    };
    if (cmp_uw(mixed(cx.refined_lotteries[0]), mixed(cx.refined_lotteries[1]), att) != Ordering::Equal) {
      split_somewhere = true;
    }
  }
  EXPECT_TRUE(tie_somewhere);
  EXPECT_TRUE(split_somewhere);
}

TEST(Audit, BridgesHoldAndWarnForUnanchoredAssignments) {
  const auto r = run(3, 4, Criterion::PU, {Check::Bridges});
  ASSERT_TRUE(r.passed());
  EXPECT_EQ(r.checks[0].instances, 64u * 64u);
  EXPECT_FALSE(r.checks[0].warnings.empty());
}

TEST(Audit, ContinuityRecordsAVerifiedWitnessForEveryTriple) {
  auto spec = AuditSpec::of_size(3, 3);
  spec.criterion = Criterion::PU;
  spec.checks = {Check::C4};
  spec.witness_limit = 1'000'000;
  const auto r = Auditor(spec).run();
  ASSERT_TRUE(r.passed());
  EXPECT_EQ(r.checks[0].witness_count, r.checks[0].instances);
  EXPECT_EQ(r.checks[0].witnesses.size(), r.checks[0].witness_count);
}

// The harness must notice a comparator that swaps one pair of U_V values.
TEST(Audit, MutatedComparatorIsCaught) {
  const auto s = Scale::uniform(3);
  const BinaryUtility a(s.top(), s.level(1)), b(s.top(), s.top());
  Comparators cmp;
  cmp.uv = [a, b](const BinaryUtility& x, const BinaryUtility& y) {
    if (x == a && y == b) return Ordering::Less;
    if (x == b && y == a) return Ordering::Greater;
    return cmp_uv(x, y);
  };
  const auto r = run(3, 3, Criterion::PU, {}, cmp);
  ASSERT_FALSE(r.passed());
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    ASSERT_TRUE(c.counterexample.has_value()) << to_string(c.check);
    EXPECT_FALSE(c.counterexample->summary.empty());
    EXPECT_FALSE(c.counterexample->items.empty());
  }
}

TEST(Audit, MutatedRefinedComparatorIsCaught) {
  Comparators cmp;
  cmp.uw = [](const RefinedBinaryUtility& x, const RefinedBinaryUtility& y, Attitude att) {
    const auto o = cmp_uw(x, y, att);
    return att == Attitude::Optimistic ? reverse(o) : o;
  };
  const auto r = run(2, 3, Criterion::RPU, {Check::A2Opt, Check::Refinement}, cmp);
  EXPECT_FALSE(r.checks[0].passed);
  EXPECT_FALSE(r.checks[1].passed);
}

TEST(Audit, CounterexamplesReplay) {
  Comparators cmp;
  cmp.uv = [](const BinaryUtility& x, const BinaryUtility& y) {
    const auto o = cmp_uv(x, y);
    return o == Ordering::Greater && x.lam() == y.lam() ? Ordering::Less
           : o == Ordering::Less && x.lam() == y.lam() ? Ordering::Greater
                                                       : o;
  };
  const auto r = run(3, 3, Criterion::PU, {Check::C3}, cmp);
  ASSERT_FALSE(r.passed());
  const auto& cx = *r.checks[0].counterexample;
  ASSERT_EQ(cx.lotteries.size(), 3u);
  const auto s = Scale::uniform(3);
  const auto x = OutcomeSpace::numbered(3);
  const auto& u = *cx.assignment;
  const auto m1 = pu(reduce_r(s, x, mix(cx.coefficients[0], cx.lotteries[0], cx.coefficients[1], cx.lotteries[2])), u);
  const auto m2 = pu(reduce_r(s, x, mix(cx.coefficients[0], cx.lotteries[1], cx.coefficients[1], cx.lotteries[2])), u);
  EXPECT_EQ(cx.items[5].second, render(s, m1));
  EXPECT_EQ(cx.items[6].second, render(s, m2));
}

TEST(Audit, VerdictsDoNotDependOnEnumerationOrder) {
  for (auto crit : {Criterion::PU, Criterion::RPU}) {
    auto base = AuditSpec::of_size(3, 3);
    base.criterion = crit;
    const auto r0 = Auditor(base).run();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto spec = base;
      spec.shuffle_seed = seed;
      const auto r = Auditor(spec).run();
      ASSERT_EQ(r.checks.size(), r0.checks.size());
      for (std::size_t i = 0; i < r.checks.size(); ++i) {
        EXPECT_EQ(r.checks[i].passed, r0.checks[i].passed) << to_string(r.checks[i].check);
        // a failing check stops at its first counterexample, wherever that falls
        if (r0.checks[i].passed) {
          EXPECT_EQ(r.checks[i].instances, r0.checks[i].instances) << to_string(r.checks[i].check);
        }
      }
    }
  }
}

TEST(Audit, BudgetIsCheckedUpFront) {
  auto spec = AuditSpec::of_size(5, 11);
  spec.criterion = Criterion::PU;
  spec.checks = {Check::C3};
  EXPECT_THROW(Auditor(spec).run(), BudgetExceeded);
}

TEST(Audit, InapplicableChecksAreRejected) {
  auto spec = AuditSpec::of_size(3, 3);
  spec.criterion = Criterion::PU;
  spec.checks = {Check::A2Pess};
  EXPECT_THROW(Auditor(spec).run(), InvalidArgument);
  spec.criterion = Criterion::RPU;
  spec.checks = {Check::A3};
  spec.max_depth = 1;
  EXPECT_THROW(Auditor(spec).run(), InvalidArgument);
  spec.max_depth = 3;
  EXPECT_THROW(Auditor{spec}, InvalidArgument);
}

TEST(Audit, DepthOneSkipsMixtureChecks) {
  auto spec = AuditSpec::of_size(3, 3);
  spec.criterion = Criterion::PU;
  spec.max_depth = 1;
  for (Check c : Auditor(spec).selected_checks()) EXPECT_FALSE(needs_mixtures(c));
}

TEST(Audit, AnchoredAssignmentsCoverTheInterior) {
  const Auditor a(AuditSpec::of_size(4, 3));
  EXPECT_EQ(a.assignments().size(), 25u);  // 5 values at each of two interior consequences
  for (const auto& u : a.assignments()) {
    EXPECT_EQ(u.front(), BinaryUtility(Scale::uniform(3).top(), Scale::uniform(3).bottom()));
  }
}
