#include <gtest/gtest.h>

#include "qdm/scale.hpp"

using namespace qdm;

TEST(Scale, UniformElevenLevelsReadAsTenths) {
  const auto s = Scale::uniform(11);
  ASSERT_EQ(s.size(), 11u);
  EXPECT_EQ(s.labels().front(), "0");
  EXPECT_EQ(s.labels()[1], "0.1");
  EXPECT_EQ(s.labels()[5], "0.5");
  EXPECT_EQ(s.labels().back(), "1");
}

TEST(Scale, UniformThreeLevels) {
  EXPECT_EQ(Scale::uniform(3).labels(), (std::vector<std::string>{"0", "0.5", "1"}));
}

TEST(Scale, RejectsDegenerateDeclarations) {
  EXPECT_THROW(Scale({"only"}), InvalidArgument);
  EXPECT_THROW(Scale({"a", "a"}), InvalidArgument);
  EXPECT_THROW(Scale({"a", ""}), InvalidArgument);
  EXPECT_THROW(Scale::uniform(1), InvalidArgument);
}

TEST(Scale, LabelsAreOrdinalNotNumeric) {
  const Scale s({"none", "some", "all"});
  EXPECT_LT(*s.find("none"), *s.find("all"));
  EXPECT_EQ(s.label(s.top()), "all");
  EXPECT_FALSE(s.find("0.5").has_value());
}

TEST(Level, JoinMeetAreMaxMin) {
  const auto s = Scale::uniform(5);
  for (auto a : s.levels()) {
    for (auto b : s.levels()) {
      EXPECT_EQ(join(a, b).index, std::max(a.index, b.index));
      EXPECT_EQ(meet(a, b).index, std::min(a.index, b.index));
    }
  }
}

TEST(Level, InvolutionReversesAndIsSelfInverse) {
  const auto s = Scale::uniform(11);
  EXPECT_EQ(involution(s.bottom()), s.top());
  EXPECT_EQ(involution(s.top()), s.bottom());
  EXPECT_EQ(s.label(involution(*s.find("0.3"))), "0.7");
  for (auto a : s.levels()) {
    EXPECT_EQ(involution(involution(a)), a);
    for (auto b : s.levels()) {
      if (a < b) {
        EXPECT_GT(involution(a), involution(b));
      }
    }
  }
}

TEST(Level, MixingScalesThrows) {
  const auto a = Scale::uniform(3).top(), b = Scale::uniform(4).top();
  EXPECT_THROW(join(a, b), ScaleMismatch);
  EXPECT_THROW((void)(a < b), ScaleMismatch);
  EXPECT_THROW(Scale::uniform(3).label(b), ScaleMismatch);
  EXPECT_FALSE(a == b);
}

TEST(Level, OutOfRangeIndexThrows) { EXPECT_THROW(Scale::uniform(3).level(3), InvalidArgument); }
