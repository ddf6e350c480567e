#include <gtest/gtest.h>

#include <random>
#include <string>

#include "ffadc/error.hpp"
#include "ffadc/timing.hpp"

using namespace ffadc;

namespace {

TEST(BuildSchedule, NominalGigasample) {
  const auto s = build_schedule(1e9, 0.5, 100e-12, 100e-12);
  EXPECT_DOUBLE_EQ(s.period, 1e-9);
  EXPECT_DOUBLE_EQ(s.hold_start, 0.5e-9);
  EXPECT_NEAR(s.ck1_time, 0.6e-9, 1e-21);
  EXPECT_NEAR(s.ck2_time, 0.9e-9, 1e-21);
  EXPECT_NEAR(s.ck1_delay(), 100e-12, 1e-21);
  EXPECT_NEAR(s.ck2_lead(), 100e-12, 1e-21);

  const auto j = to_json(s);
  EXPECT_EQ(j["period_ps"], 1000);
  EXPECT_EQ(j["hold_start_ps"], 500);
  EXPECT_EQ(j["ck1_ps"], 600);
  EXPECT_EQ(j["ck2_ps"], 900);
}

TEST(BuildSchedule, ZeroDelaysViolateStrictOrdering) {
  EXPECT_THROW(build_schedule(1e9, 0.5, 0.0, 0.0), Error);
  EXPECT_THROW(build_schedule(1e9, 0.5, 100e-12, 0.0), Error);
}

TEST(BuildSchedule, InfeasibleWindowNamesInequality) {
  try {
    build_schedule(1e9, 0.5, 300e-12, 300e-12);
    FAIL() << "expected schedule-infeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kScheduleInfeasible);
    EXPECT_NE(std::string(e.what()).find("ck1_time < ck2_time"), std::string::npos);
  }
}

TEST(BuildSchedule, BadDuty) {
  EXPECT_THROW(build_schedule(1e9, 0.0, 1e-12, 1e-12), Error);
  EXPECT_THROW(build_schedule(1e9, 1.0, 1e-12, 1e-12), Error);
}

TEST(BuildSchedule, StrictOrderingProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 1000; ++trial) {
    const double fs = 1e8 + u(rng) * 1e10;
    const double duty = u(rng);
    const double window = (1.0 - duty) / fs;
    const double ck1 = u(rng) * window * 0.49;
    const double ck2 = u(rng) * window * 0.49;
    const auto s = build_schedule(fs, duty, ck1, ck2);
    ASSERT_LT(s.track_start, s.hold_start);
    ASSERT_LT(s.hold_start, s.ck1_time);
    ASSERT_LT(s.ck1_time, s.ck2_time);
    ASSERT_LT(s.ck2_time, s.track_start + s.period);
  }
}

TEST(BuildSchedule, ScaleCovariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> k_dist(0.1, 10.0);
  const auto base = build_schedule(1e9, 0.5, 100e-12, 100e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const double k = k_dist(rng);
    const auto s = build_schedule(1e9 * k, 0.5, 100e-12 / k, 100e-12 / k);
    ASSERT_NEAR(s.period, base.period / k, 1e-12 * base.period / k);
    ASSERT_NEAR(s.hold_start, base.hold_start / k, 1e-12 * base.period / k);
    ASSERT_NEAR(s.ck1_time, base.ck1_time / k, 1e-12 * base.period / k);
    ASSERT_NEAR(s.ck2_time, base.ck2_time / k, 1e-12 * base.period / k);
  }
}

TEST(DelayChain, PrefixSums) {
  EXPECT_TRUE(delay_chain({}).empty());
  const std::vector<double> two{50e-12, 50e-12};
  const auto e2 = delay_chain(two);
  ASSERT_EQ(e2.size(), 2u);
  EXPECT_DOUBLE_EQ(e2[0], 50e-12);
  EXPECT_DOUBLE_EQ(e2[1], 100e-12);
  const std::vector<double> four(4, 100e-12);
  const auto e4 = delay_chain(four);
  ASSERT_EQ(e4.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e4[i], (i + 1) * 100e-12, 1e-24);
}

TEST(DelayChain, StrictlyIncreasing) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(1e-13, 1e-10);
  std::vector<double> delays(200);
  for (auto& x : delays) x = d(rng);
  const auto edges = delay_chain(delays);
  for (std::size_t i = 1; i < edges.size(); ++i) ASSERT_LT(edges[i - 1], edges[i]);
}

TEST(DelayChain, RejectsNonPositive) {
  const std::vector<double> bad{10e-12, 0.0};
  EXPECT_THROW(delay_chain(bad), Error);
}

}  // namespace
