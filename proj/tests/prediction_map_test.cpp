#include <gtest/gtest.h>

#include <random>

#include "nertcam/prediction_map.hpp"

namespace nertcam {
namespace {

constexpr SdrLayout k333{3, 3, 3};

Entry row(std::string_view f, std::string_view l, std::string_view c) {
  return {BitVector::from_string(f), BitVector::from_string(l), BitVector::from_string(c), true, false};
}

TEST(Condense, PredictFeatureExample) {
  const std::vector<Entry> matched{row("001", "010", "100"), row("100", "010", "010")};
  const auto out = condense(matched, CommandKind::PredictFeature, k333);
  EXPECT_EQ(out.features.to_string(), "101");
  EXPECT_EQ(out.locations.to_string(), "000");
  EXPECT_EQ(out.classes.to_string(), "110");
  EXPECT_FALSE(out.failed());
}

TEST(Condense, PredictLocationHoldsFeaturesLow) {
  const std::vector<Entry> matched{row("001", "010", "100"), row("001", "001", "100")};
  const auto out = condense(matched, CommandKind::PredictLocation, k333);
  EXPECT_EQ(out.features.to_string(), "000");
  EXPECT_EQ(out.locations.to_string(), "011");
  EXPECT_EQ(out.classes.to_string(), "100");
}

TEST(Condense, EmptyMatchAndNonPredictAreAllZero) {
  EXPECT_EQ(condense({}, CommandKind::PredictFeature, k333), empty_prediction(k333));
  EXPECT_TRUE(condense({}, CommandKind::PredictLocation, k333).failed());
  const std::vector<Entry> matched{row("001", "010", "100")};
  EXPECT_EQ(condense(matched, CommandKind::Infer, k333), empty_prediction(k333));
  EXPECT_EQ(condense(matched, CommandKind::Store, k333), empty_prediction(k333));
}

TEST(Condense, OutputsAreUnionsOfMatchedRows) {
  std::mt19937_64 rng(5);
  const SdrLayout layout{7, 6, 5};
  auto bits = [&](std::size_t n) {
    std::string s(n, '0');
    s[rng() % n] = '1';
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Entry> matched;
    const std::size_t n = rng() % 6;
    std::string feat(7, '0'), loc(6, '0'), cls(5, '0');
    for (std::size_t i = 0; i < n; ++i) {
      matched.push_back(row(bits(7), bits(6), bits(5)));
      for (std::size_t p = 0; p < 7; ++p) feat[p] |= matched.back().feature.test(p) ? 1 : 0;
      for (std::size_t p = 0; p < 6; ++p) loc[p] |= matched.back().location.test(p) ? 1 : 0;
      for (std::size_t p = 0; p < 5; ++p) cls[p] |= matched.back().class_bits.test(p) ? 1 : 0;
    }
    const auto pf = condense(matched, CommandKind::PredictFeature, layout);
    EXPECT_EQ(pf.features.to_string(), feat);
    EXPECT_EQ(pf.classes.to_string(), cls);
    EXPECT_TRUE(pf.locations.none());
    const auto pl = condense(matched, CommandKind::PredictLocation, layout);
    EXPECT_EQ(pl.locations.to_string(), loc);
    EXPECT_EQ(pl.classes.to_string(), cls);
    EXPECT_TRUE(pl.features.none());
    EXPECT_EQ(pf.failed(), n == 0);
  }
}

}  // namespace
}  // namespace nertcam
