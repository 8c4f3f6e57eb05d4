#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "normsim/stats.hpp"

using namespace normsim::stats;

namespace {

// Reference samples and results from scipy.stats.ttest_ind(equal_var=False).
const std::vector<double> kNormal0 = {
    0.647906,  0.469321,  -0.643021, -1.178259, -0.14469,  1.203458,  1.333584,  0.908301,  0.346564,  1.600035,
    1.23284,   -0.220318, -1.061965, -0.364569, -0.420019, 0.687509,  -1.899116, -0.191369, 1.671222,  -0.920284,
    -0.758464, -0.084261, -1.417821, -0.129613, -0.015653, -0.004655, -0.988514, -0.36583,  0.653818,  -0.714551};
const std::vector<double> kNormal1 = {
    1.547197, 1.655512, -0.427001, 0.354694, 1.655313, 1.493495, 1.179375, 0.651382, 1.108559, 2.874773,
    0.778545, 1.57965,  0.583252,  0.801674, 1.648027, 0.070998, 0.757583, 0.389692, 0.141292, 1.175753,
    2.239823, 1.221407, 0.618233,  -0.45112, 1.818957, 1.210459, 0.368686, 1.861436, 2.574229, -0.631653};

}  // namespace

TEST(Welch, MatchesReferenceForNormalSamples) {
  const auto two = welch_t_test(kNormal0, kNormal1);
  EXPECT_NEAR(two.t, -4.582537225393287, 1e-9);
  EXPECT_NEAR(two.p, 2.5063583620736432e-05, 1e-6);
  EXPECT_NEAR(two.p / 2.5063583620736432e-05, 1.0, 1e-6);
  const auto less = welch_t_test(kNormal0, kNormal1, Alternative::Less);
  EXPECT_NEAR(less.p, 1.2531791810368216e-05, 1e-6);
  const auto greater = welch_t_test(kNormal0, kNormal1, Alternative::Greater);
  EXPECT_NEAR(greater.p, 1.0 - 1.2531791810368216e-05, 1e-9);
}

TEST(Welch, MatchesReferenceForUnequalSizes) {
  const std::vector<double> c{0.61, 0.58, 0.63, 0.60, 0.59};
  const std::vector<double> d{0.57, 0.58, 0.56, 0.59, 0.58, 0.55};
  const auto two = welch_t_test(c, d);
  EXPECT_NEAR(two.t, 2.8907102678535708, 1e-9);
  EXPECT_NEAR(two.p, 0.021802228295405457, 1e-9);
  EXPECT_NEAR(welch_t_test(c, d, Alternative::Greater).p, 0.010901114147702728, 1e-9);
}

TEST(Welch, IdenticalSamples) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const auto r = welch_t_test(a, a);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_NEAR(r.p, 1.0, 1e-12);
}

TEST(Welch, SeparatedConstants) {
  const std::vector<double> a{1, 1, 1, 1};
  const std::vector<double> b{0, 0, 0, 0};
  const auto r = welch_t_test(a, b);
  EXPECT_TRUE(std::isinf(r.t));
  EXPECT_GT(r.t, 0);
  EXPECT_LT(r.p, 0.001);
  EXPECT_EQ(welch_t_test(a, b, Alternative::Less).p, 1.0);
  EXPECT_EQ(welch_t_test(a, a).p, 1.0);
}

TEST(Welch, OneConstantSample) {
  const std::vector<double> a{0.0, 0.0, 0.0};
  const std::vector<double> b{1.0, 2.0, 3.0};
  const auto r = welch_t_test(a, b);
  // Variance comes only from b: t = -2 / sqrt(1/3), dof = n_b - 1.
  EXPECT_NEAR(r.t, -2.0 / std::sqrt(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.dof, 2.0, 1e-12);
}

TEST(Welch, NeedsTwoObservations) {
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(welch_t_test(one, two), std::invalid_argument);
}

TEST(Property, WelchIsSymmetric) {
  const auto ab = welch_t_test(kNormal0, kNormal1);
  const auto ba = welch_t_test(kNormal1, kNormal0);
  EXPECT_DOUBLE_EQ(ab.t, -ba.t);
  EXPECT_DOUBLE_EQ(ab.p, ba.p);
  EXPECT_DOUBLE_EQ(ab.dof, ba.dof);
}

TEST(Glass, UnitVectors) {
  // Control mean 0.5 with sample sigma 0.25; treatment mean 1.0.
  // Two points at mean +- s/sqrt(2) give sample sigma s.
  const double s = 0.25;
  const std::vector<double> treatment{1.0, 1.0};
  const std::vector<double> control{0.5 - s / std::sqrt(2.0), 0.5 + s / std::sqrt(2.0)};
  EXPECT_NEAR(sample_stddev(control), 0.25, 1e-15);
  const double d = glass_delta(treatment, control);
  EXPECT_NEAR(d, 2.0, 1e-12);
  EXPECT_EQ(cohen_label(d), "large");
}

TEST(Glass, EqualMeansAreNegligible) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  EXPECT_EQ(glass_delta(a, a), 0.0);
  EXPECT_EQ(cohen_label(glass_delta(a, a)), "negligible");
}

TEST(Glass, ZeroVarianceControlIsInfinite) {
  const std::vector<double> treatment{0.25, 0.26};
  const std::vector<double> control{0.0, 0.0, 0.0};
  EXPECT_EQ(glass_delta(treatment, control), std::numeric_limits<double>::infinity());
  EXPECT_EQ(glass_delta(control, std::vector<double>{1.0, 1.0}), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(cohen_label(std::numeric_limits<double>::infinity()), "large");
}

TEST(Property, GlassSignFollowsDirection) {
  const std::vector<double> control{0.4, 0.5, 0.6};
  for (double shift : {0.05, 0.2, 1.0}) {
    const std::vector<double> up{0.5 + shift, 0.5 + shift};
    const std::vector<double> down{0.5 - shift, 0.5 - shift};
    EXPECT_NEAR(glass_delta(up, control), -glass_delta(down, control), 1e-12);
  }
}

TEST(Cohen, Boundaries) {
  EXPECT_EQ(cohen_label(0.1999), "negligible");
  EXPECT_EQ(cohen_label(0.2), "small");
  EXPECT_EQ(cohen_label(-0.49), "small");
  EXPECT_EQ(cohen_label(0.5), "medium");
  EXPECT_EQ(cohen_label(0.79), "medium");
  EXPECT_EQ(cohen_label(0.8), "large");
  EXPECT_EQ(cohen_label(-3.0), "large");
}
