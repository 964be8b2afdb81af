#include <gtest/gtest.h>

#include <cmath>

#include "onebit/channel.hpp"
#include "onebit/metrics/psd.hpp"

using namespace onebit;

TEST(CalibrateNoise, DefaultOperatingPoint) {
  const ChannelConfig def{};
  EXPECT_NEAR(calibrate_noise(1.0, def), 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(calibrate_noise(2.0, def), 2.0 / 30.0, 1e-15);
  const ChannelConfig plain{0.7, 0.0, 0.0};
  EXPECT_NEAR(calibrate_noise(1.3, plain), 0.7 * 1.3, 1e-15);
  EXPECT_THROW(calibrate_noise(0.0, def), ConfigError);
}

TEST(CalibrateNoise, SinrIdentityHolds) {
  for (double p_t : {1e-3, 0.5, 7.0})
    for (double sinr : {0.0, 10.0, 17.5}) {
      const ChannelConfig cfg{1.0, sinr, 2.0};
      const double s2 = calibrate_noise(p_t, cfg);
      EXPECT_NEAR(cfg.alpha * p_t / (3.0 * s2), std::pow(10.0, sinr / 10.0), 1e-9);
    }
}

TEST(Awgn, ZeroNoiseAndDeterminism) {
  const PassbandSignal x{std::vector<double>(1000, 0.25), 128.0, 30.0};
  EXPECT_EQ(add_awgn(x, 0.0, 1.0, 5).samples, x.samples);
  EXPECT_EQ(add_awgn(x, 0.1, 1.0, 5).samples, add_awgn(x, 0.1, 1.0, 5).samples);
  EXPECT_NE(add_awgn(x, 0.1, 1.0, 5).samples, add_awgn(x, 0.1, 1.0, 6).samples);
}

TEST(Awgn, InBandPowerMatchesSigmaN2) {
  const double s2 = 1.0 / 30.0;
  const PassbandSignal zero{std::vector<double>(128 * 10000, 0.0), 128.0, 30.0};
  const auto noise = add_awgn(zero, s2, 1.0, 42);
  const auto psd = welch_psd(noise);
  EXPECT_NEAR(band_power(psd, 29.5, 30.5) / s2, 1.0, 0.03);
}

TEST(Awgn, DistinctSeedsAreUncorrelated) {
  const std::size_t n = 200000;
  const PassbandSignal zero{std::vector<double>(n, 0.0), 128.0, 30.0};
  const auto a = add_awgn(zero, 1.0, 1.0, 1), b = add_awgn(zero, 1.0, 1.0, 2);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ab += a.samples[i] * b.samples[i];
    aa += a.samples[i] * a.samples[i];
    bb += b.samples[i] * b.samples[i];
  }
  const double rho = ab / std::sqrt(aa * bb);
  EXPECT_LE(std::abs(rho), 3.0 / std::sqrt(static_cast<double>(n)));
}
