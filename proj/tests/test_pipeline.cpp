#include <gtest/gtest.h>

#include <array>

#include "onebit/pipeline.hpp"

using namespace onebit;

namespace {

SystemConfig small(SystemVariant v, std::uint64_t seed = 1) {
  SystemConfig s;
  s.variant = v;
  s.n_symbols = 3000;
  s.seed = seed;
  return s;
}

PaConfig pa_at(double ibo, double bbpf) {
  PaConfig p;
  p.ibo = ibo;
  p.bbpf = bbpf;
  return p;
}

}  // namespace

TEST(DrawQpsk, DeterministicAndBalanced) {
  const auto a = draw_qpsk(40000, 9), b = draw_qpsk(40000, 9);
  EXPECT_EQ(a.symbols, b.symbols);
  EXPECT_NE(a.symbols, draw_qpsk(40000, 10).symbols);
  std::array<int, 4> counts{};
  for (const auto& s : a.symbols) ++counts[qpsk_index(s)];
  for (int c : counts) EXPECT_NEAR(c / 40000.0, 0.25, 0.01);
  EXPECT_NEAR(mean_power(a.symbols), 1.0, 1e-12);
}

TEST(StreamSeeds, SymbolAndNoiseSeedsDiffer) {
  for (std::uint64_t s : {0ull, 1ull, 2ull, 0xffffffffffffull}) {
    const auto [a, b] = detail::stream_seeds(s);
    EXPECT_NE(a, b);
    EXPECT_EQ(detail::stream_seeds(s), std::make_pair(a, b));
  }
  EXPECT_NE(detail::stream_seeds(1).first, detail::stream_seeds(2).first);
}

TEST(RunLink, BitIdenticalForSameSeed) {
  const auto sys = small(SystemVariant::sys2, 7);
  const auto a = run_link(sys, pa_at(0.1, 0.9), {});
  const auto b = run_link(sys, pa_at(0.1, 0.9), {});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == run_link(small(SystemVariant::sys2, 8), pa_at(0.1, 0.9), {}));
}

TEST(RunLink, NearlyLinearPaIsNearlyLossless) {
  const auto one_bit = run_link(small(SystemVariant::sys2), pa_at(10.0, 10.0), {});
  EXPECT_GE(one_bit.mi, 1.9);
  const auto ideal = run_link(small(SystemVariant::sys1), pa_at(10.0, 10.0), {});
  EXPECT_GE(ideal.mi, 1.95);
  EXPECT_GE(ideal.b_pa, 1.0);
  EXPECT_LE(ideal.b_pa, 1.5);
  EXPECT_EQ(ideal.rx_lag % 4, 0);
  EXPECT_FALSE(ideal.align_ambiguous);
}

TEST(RunLink, ReportedQuantitiesAreConsistent) {
  for (auto v : {SystemVariant::sys1, SystemVariant::sys2, SystemVariant::sys3}) {
    const auto m = run_link(small(v), pa_at(0.1, 0.9), {});
    EXPECT_GE(m.mi, 0.0);
    EXPECT_LE(m.mi, 2.0);
    EXPECT_DOUBLE_EQ(m.rate_r, m.mi);
    EXPECT_GT(m.p_pa, 0.0);
    EXPECT_LE(m.p_t, 4.0 / std::numbers::pi * m.p_pa);
    EXPECT_NEAR(m.sigma_n2, m.p_t / 30.0, 1e-12);
    EXPECT_NEAR(m.psd_total_power / m.y_p_power, 1.0, 0.02);
    EXPECT_NEAR(m.fom_normalized, m.rate_r * m.rate_r / (m.p_pa * m.b_pa) * m.sigma_n2, 1e-12);
  }
}

TEST(RunLink, RejectsInvalidConfiguration) {
  auto sys = small(SystemVariant::sys2);
  sys.n_symbols = 10;
  EXPECT_THROW(run_link(sys, {}, {}), ConfigError);
  EXPECT_THROW(run_link(small(SystemVariant::sys2), pa_at(0.0, 0.9), {}), ConfigError);
  EXPECT_THROW(run_link(small(SystemVariant::sys2), pa_at(0.1, 70.0), {}), ConfigError);
  EXPECT_THROW(parse_variant("sys4"), ConfigError);
}

TEST(RunLink, StageFailureNamesTheStage) {
  auto sys = small(SystemVariant::sys2);
  sys.fc_multiple = 63.5;  // carrier plus signal bandwidth exceeds Nyquist
  try {
    run_link(sys, pa_at(0.1, 0.5), {});
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "pa");
    EXPECT_NE(std::string(e.what()).find("pa: "), std::string::npos);
  }
}

TEST(CompareSystems, SharedSeedAndShapes) {
  const std::array systems{SystemVariant::sys1, SystemVariant::sys2};
  const std::array bbpf{0.6, 1.2};
  const auto curves = compare_systems(systems, bbpf, 0.1, small(SystemVariant::sys2), {}, {}, 2);
  ASSERT_EQ(curves.size(), 2u);
  for (const auto& c : curves) {
    ASSERT_EQ(c.metrics.size(), 2u);
    EXPECT_LT(c.argmax(), 2u);
  }
  EXPECT_EQ(curves[1].variant, SystemVariant::sys2);
  EXPECT_TRUE(curves[1].metrics[1] == run_link(small(SystemVariant::sys2), pa_at(0.1, 1.2), {}));
  EXPECT_THROW(compare_systems({}, bbpf, 0.1, small(SystemVariant::sys2), {}, {}), ConfigError);
  EXPECT_THROW(compare_systems(systems, {}, 0.1, small(SystemVariant::sys2), {}, {}), ConfigError);
}
