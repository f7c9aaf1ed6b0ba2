#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qdm/enumerate.hpp"
#include "qdm/format.hpp"
#include "qdm/refined.hpp"

using namespace qdm;

namespace {

const Scale kTenths = Scale::uniform(11);
const Scale kHalf({"0", "0.5", "0.6", "1"});
const OutcomeSpace kFive = OutcomeSpace::numbered(5);
const OutcomeSpace kTwo({"good", "bad"}, "good", "bad");

Level L(const Scale& s, const char* label) { return *s.find(label); }
Level L(const char* label) { return L(kTenths, label); }

IncreasingSeq seq(const Scale& s, std::initializer_list<const char*> labels) {
  std::vector<Level> v;
  for (auto l : labels) v.push_back(L(s, l));
  return IncreasingSeq(v);
}

// (1, (0.5,1)) and (1, (0.5,0.6)) on {0, 0.5, 0.6, 1}.
WValue left() { return WValue({seq(kHalf, {"1"}), seq(kHalf, {"0.5", "1"})}); }
WValue right() { return WValue({seq(kHalf, {"1"}), seq(kHalf, {"0.5", "0.6"})}); }

UtilityAssignment five_utilities() {
  return {BinaryUtility(L("1"), L("0")), BinaryUtility(L("1"), L("0.1")), BinaryUtility(L("1"), L("1")),
          BinaryUtility(L("0.1"), L("1")), BinaryUtility(L("0"), L("1"))};
}

SimpleLottery on(std::initializer_list<int> xs) {
  auto l = zero_lottery(kTenths, kFive);
  for (int x : xs) l.degrees[x - 1] = kTenths.top();
  return l;
}

std::string show(const RefinedBinaryUtility& v) { return render(kTenths, v); }

}  // namespace

TEST(IncreasingSeq, MustBeNonemptyAndStrictlyIncreasing) {
  EXPECT_THROW(IncreasingSeq({}), InvalidArgument);
  EXPECT_THROW(seq(kHalf, {"0.6", "0.5"}), InvalidArgument);
  EXPECT_THROW(seq(kHalf, {"0.5", "0.5"}), InvalidArgument);
}

TEST(RankIncreasing, SortsAndDedupes) {
  EXPECT_EQ(render(kHalf, rank_increasing({L(kHalf, "0.5"), L(kHalf, "1"), L(kHalf, "0.5"), L(kHalf, "0.6")})),
            "(0.5,0.6,1)");
  EXPECT_EQ(rank_increasing({L(kHalf, "1"), L(kHalf, "1")}), seq(kHalf, {"1"}));
}

TEST(LexCmp, TopPaddingPutsShortSequencesHigh) {
  EXPECT_EQ(lex_cmp(seq(kHalf, {"0.5"}), seq(kHalf, {"0.5", "0.6"})), Ordering::Greater);
  EXPECT_EQ(lex_cmp(seq(kHalf, {"0.5"}), seq(kHalf, {"0.5", "1"})), Ordering::Equal);
  EXPECT_EQ(lex_cmp(seq(kHalf, {"1"}), seq(kHalf, {"0.5", "1"})), Ordering::Greater);
}

TEST(LexCmp, MatchesOracleOnAllShortSequences) {
  const auto s = Scale::uniform(5);
  std::vector<IncreasingSeq> all;
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<Level> v;
    for (int i = 0; i < 5; ++i)
      if (mask & (1 << i)) v.push_back(s.level(i));
    all.emplace_back(v);
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      oracle::Seq x, y;
      for (auto l : a.levels()) x.push_back(l.index);
      for (auto l : b.levels()) y.push_back(l.index);
      const int want = oracle::lex(x, y, 4);
      const auto got = lex_cmp(a, b);
      EXPECT_EQ(got, want > 0 ? Ordering::Greater : want < 0 ? Ordering::Less : Ordering::Equal);
    }
  }
}

TEST(WValue, ZeroAndInvariants) {
  EXPECT_TRUE(WValue{}.is_zero());
  EXPECT_TRUE(embed_level(kHalf.bottom()).is_zero());
  EXPECT_THROW(WValue({seq(kHalf, {"0.5"}), seq(kHalf, {"1"})}), InvalidArgument);
  EXPECT_THROW(WValue({seq(kHalf, {"0", "0.5"})}), InvalidArgument);
  EXPECT_EQ(WValue::from_unsorted({seq(kHalf, {"0.5"}), seq(kHalf, {"1"})}).elems().front(), seq(kHalf, {"1"}));
}

TEST(Operators, NablaWorkedExample) {
  EXPECT_EQ(render(kHalf, nabla(left(), right(), RefinedPolicy{true, true})), "(1,(0.5,1),(0.5,0.6))");
}

TEST(Operators, DeltaWorkedExample) {
  EXPECT_EQ(render(kHalf, delta(left(), right())), "(1,(0.5,1),(0.5,0.6,1))");
}

TEST(Operators, NablaKeepsMultiplicityByDefault) {
  const auto one = embed_level(kTenths.top());
  EXPECT_EQ(render(kTenths, nabla(one, one)), "(1,1)");
  EXPECT_EQ(nabla(one, one).size(), 2u);
  EXPECT_EQ(render(kTenths, nabla(one, one, RefinedPolicy{true, true})), "1");
}

TEST(Operators, ZeroAnnihilatesDeltaAndVanishesUnderNabla) {
  EXPECT_TRUE(delta(WValue{}, left()).is_zero());
  EXPECT_TRUE(delta(left(), WValue{}).is_zero());
  EXPECT_EQ(nabla(WValue{}, left()), left());
}

// 1 Δ w keeps w's order class but appends top to each sequence.
TEST(Operators, TopIsADeltaIdentityUpToTrailingTop) {
  const auto one = embed_level(kHalf.top());
  const auto w = WValue({seq(kHalf, {"0.5"})});
  const auto r = delta(one, w);
  EXPECT_EQ(render(kHalf, r), "(0.5,1)");
  EXPECT_EQ(lex_cmp(r.elems()[0], w.elems()[0]), Ordering::Equal);
}

TEST(Operators, MatchOracleOnRandomValues) {
  const auto s = Scale::uniform(4);
  std::mt19937 rng(11);
  auto random_w = [&]() {
    oracle::W w;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < n; ++i) {
      oracle::Seq q;
      for (int l = 1; l <= 3; ++l)
        if (rng() % 2) q.push_back(l);
      if (q.empty()) q.push_back(3);
      w.push_back(q);
    }
    oracle::sort_w(w, 3);
    return w;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = random_w(), b = random_w();
    for (bool dedupe : {false, true}) {
      const RefinedPolicy p{dedupe, dedupe};
      EXPECT_EQ(oracle::ints(nabla(oracle::wvalue(s, a), oracle::wvalue(s, b), p)), oracle::nabla(a, b, 3, dedupe));
      EXPECT_EQ(oracle::ints(delta(oracle::wvalue(s, a), oracle::wvalue(s, b), p)), oracle::delta(a, b, 3, dedupe));
    }
  }
}

TEST(Operators, CommutativeAndAssociative) {
  const auto s = Scale::uniform(3);
  std::vector<WValue> ws{WValue{}};
  for (auto a : {"0.5", "1"}) ws.push_back(WValue({seq(s, {a})}));
  ws.push_back(WValue({seq(s, {"0.5", "1"})}));
  ws.push_back(WValue({seq(s, {"1"}), seq(s, {"0.5"})}));
  ws.push_back(WValue({seq(s, {"1"}), seq(s, {"1"})}));
  for (const auto& a : ws)
    for (const auto& b : ws) {
      EXPECT_EQ(nabla(a, b), nabla(b, a));
      EXPECT_EQ(delta(a, b), delta(b, a));
      for (const auto& c : ws) {
        EXPECT_EQ(nabla(nabla(a, b), c), nabla(a, nabla(b, c)));
        EXPECT_EQ(delta(delta(a, b), c), delta(a, delta(b, c)));
      }
    }
}

TEST(ReduceRR, StagedLotteryKeepsItsHistory) {
  const auto inner = canonical(kTenths, kTwo, L("1"), L("0.5"));
  CompoundLottery c;
  c.branches.push_back({L("1"), Outcome{0}});
  c.branches.push_back({L("0.1"), inner});
  const auto r = reduce_rr(kTenths, kTwo, embed_compound(c));
  EXPECT_EQ(render(kTenths, kTwo, r), "[(1,(0.1,1))/good, (0.1,0.5)/bad]");
  EXPECT_NE(r, embed_lottery(canonical(kTenths, kTwo, L("1"), L("0.1"))));
}

TEST(ReduceRR, EmbeddedSimpleLotteryIsAFixedPoint) {
  const auto l = embed_lottery(on({1, 2}));
  EXPECT_EQ(reduce_rr(kTenths, kFive, l), l);
}

TEST(ReduceRR, FirstLevelsAgreeWithClassicalReduction) {
  const auto s = Scale::uniform(4);
  const auto x = OutcomeSpace::numbered(2);
  const auto all = all_lotteries(s, x, false, 100);
  for (const auto& a : all)
    for (const auto& b : all)
      for (auto lam : s.levels())
        for (auto mu : s.levels()) {
          const auto c = mix(lam, a, mu, b);
          const auto classical = reduce_r(s, x, c);
          const auto refined = reduce_rr(s, x, embed_compound(c));
          for (std::size_t i = 0; i < 2; ++i) {
            const auto first = refined.degrees[i].first_level();
            EXPECT_EQ(first ? first->index : 0, classical.degrees[i].index);
          }
        }
}

TEST(RPU, FiveConsequenceValues) {
  const auto u = five_utilities();
  EXPECT_EQ(show(rpu(on({2}), u)), "<1, (0.1,1)>");
  EXPECT_EQ(show(rpu(on({1, 2}), u)), "<(1,1), (0.1,1)>");
  EXPECT_EQ(show(rpu(on({4}), u)), "<(0.1,1), 1>");
  EXPECT_EQ(show(rpu(on({4, 5}), u)), "<(0.1,1), (1,1)>");
  EXPECT_EQ(show(rpu(on({3}), u)), "<1, 1>");
  EXPECT_EQ(show(rpu(on({2, 4}), u)), "<(1,(0.1,1)), (1,(0.1,1))>");
}

TEST(RPU, FiveConsequenceVerdicts) {
  const auto u = five_utilities();
  for (auto att : kAllAttitudes) {
    EXPECT_EQ(cmp_uw(rpu(on({1, 2}), u), rpu(on({2}), u), att), Ordering::Greater) << to_string(att);
    EXPECT_EQ(cmp_uw(rpu(on({4, 5}), u), rpu(on({4}), u), att), Ordering::Less) << to_string(att);
  }
  const auto a = rpu(on({3}), u), b = rpu(on({2, 4}), u);
  EXPECT_EQ(cmp_uw(a, b, Attitude::Optimistic), Ordering::Less);
  EXPECT_EQ(cmp_uw(a, b, Attitude::Pessimistic), Ordering::Greater);
  EXPECT_EQ(cmp_uw(a, b, Attitude::Neutral), Ordering::Incomparable);
}

TEST(RPU, FirstLevelsAreThePUValue) {
  const auto s = Scale::uniform(4);
  const auto x = OutcomeSpace::numbered(3);
  const auto v = all_binary_utilities(s);
  const UtilityAssignment u{v.front(), v[2], v.back()};
  for_each_lottery(s, x, true, 1000, [&](const SimpleLottery& l) {
    const auto r = rpu(l, u);
    const auto p = pu(l, u);
    EXPECT_EQ(r.alpha.first_level().value_or(s.bottom()), p.lam());
    EXPECT_EQ(r.beta.first_level().value_or(s.bottom()), p.mu());
    EXPECT_TRUE(r.in_uw());
  });
}

TEST(RPU, NablaDedupeRestoresTheClassicalTie) {
  const auto u = five_utilities();
  const RefinedPolicy dedupe{true, true};
  EXPECT_EQ(cmp_uw(rpu(on({1, 2}), u, dedupe), rpu(on({2}), u, dedupe), Attitude::Pessimistic), Ordering::Equal);
}

TEST(CmpUW, MissingPositionsSitBelowEverySequence) {
  const auto one = embed_level(kTenths.top());
  const RefinedBinaryUtility a{nabla(one, one), WValue{}}, b{one, WValue{}};
  EXPECT_EQ(cmp_uw(a, b, Attitude::Optimistic), Ordering::Greater);
  EXPECT_EQ(cmp_uw(b, a, Attitude::Pessimistic), Ordering::Less);
}

TEST(CmpUW, AntisymmetricAndReflexive) {
  const auto s = Scale::uniform(3);
  const auto x = OutcomeSpace::numbered(3);
  const auto v = all_binary_utilities(s);
  const UtilityAssignment u{v.front(), v[2], v.back()};
  std::vector<RefinedBinaryUtility> vals;
  for_each_lottery(s, x, true, 100, [&](const SimpleLottery& l) { vals.push_back(rpu(l, u)); });
  for (auto att : kAllAttitudes)
    for (const auto& a : vals) {
      EXPECT_EQ(cmp_uw(a, a, att), Ordering::Equal);
      for (const auto& b : vals) EXPECT_EQ(cmp_uw(a, b, att), reverse(cmp_uw(b, a, att)));
    }
}

// Known limit of the construction: nabla keeps multiplicity while delta
// removes it, so mixing two RPU-equal lotteries with the same context can
// separate them once a third consequence is present.
TEST(RPU, SubstitutionCanFailWithThreeConsequences) {
  const auto s = Scale::uniform(3);
  const auto x = OutcomeSpace::numbered(3);
  const auto v = all_binary_utilities(s);
  const UtilityAssignment u{v.front(), v.front(), v.back()};
  const auto a = embed_lottery(degenerate(s, x, Outcome{0}));
  const auto b = embed_lottery(degenerate(s, x, Outcome{1}));
  ASSERT_EQ(cmp_uw(rpu(a, u), rpu(b, u), Attitude::Pessimistic), Ordering::Equal);
  auto mixed = [&](const RefinedLottery& sub) {
    RefinedCompound m;
    m.branches.push_back({embed_level(s.top()), sub});
    m.branches.push_back({embed_level(s.top()), a});
    return rpu(reduce_rr(s, x, m), u);
  };
  EXPECT_EQ(render(s, mixed(a)), "<1, 0>");
  EXPECT_EQ(render(s, mixed(b)), "<(1,1), 0>");
  EXPECT_NE(cmp_uw(mixed(a), mixed(b), Attitude::Pessimistic), Ordering::Equal);
}
