#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "onebit/metrics/efficiency.hpp"
#include "onebit/metrics/mutual_information.hpp"
#include "onebit/metrics/psd.hpp"
#include "oracles.hpp"

using namespace onebit;

namespace {

std::vector<cplx> qpsk(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<cplx> s(n);
  for (auto& v : s) v = qpsk_point(rng() & 3u);
  return s;
}

}  // namespace

TEST(MutualInformation, NoiselessIsTwoBits) {
  const auto tx = qpsk(10000, 1);
  EXPECT_NEAR(mutual_information(tx, tx, {MiDetector::sign}).bits, 2.0, 0.01);
  EXPECT_NEAR(mutual_information(tx, tx, {MiDetector::histogram, 8}).bits, 2.0, 0.01);
}

TEST(MutualInformation, IndependentIsNearZero) {
  const auto tx = qpsk(10000, 2);
  auto rx = tx;
  std::shuffle(rx.begin(), rx.end(), std::mt19937(3));
  const auto est = mutual_information(tx, rx);
  EXPECT_LE(est.bits, 0.05);
  EXPECT_GT(est.bias, 0.0);
  EXPECT_LE(mutual_information(tx, rx, {MiDetector::sign}).bits, 0.05);
}

TEST(MutualInformation, IndependentBitFlipsMatchBinarySymmetricChannel) {
  const double p = 0.1;
  const auto tx = qpsk(100000, 4);
  std::mt19937 rng(5);
  std::bernoulli_distribution flip(p);
  auto rx = tx;
  for (auto& z : rx) z = {flip(rng) ? -z.real() : z.real(), flip(rng) ? -z.imag() : z.imag()};
  const double expected = 2.0 * (1.0 - oracle::binary_entropy(p));
  EXPECT_NEAR(mutual_information(tx, rx, {MiDetector::sign}).bits, expected, 0.03);
  EXPECT_NEAR(mutual_information(tx, rx, {MiDetector::histogram, 8}).bits, expected, 0.03);
}

TEST(MutualInformation, BoundedAndInvariantToRotationFreeScaling) {
  std::mt19937 rng(6);
  std::normal_distribution<double> g;
  for (double sigma : {0.05, 0.3, 1.0, 3.0}) {
    const auto tx = qpsk(4000, static_cast<unsigned>(10 * sigma) + 7);
    std::vector<cplx> rx(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) rx[i] = tx[i] + sigma * cplx(g(rng), g(rng));
    for (auto det : {MiDetector::sign, MiDetector::histogram}) {
      const double mi = mutual_information(tx, rx, {det, 8}).bits;
      EXPECT_GE(mi, 0.0);
      EXPECT_LE(mi, 2.0);
      auto scaled = rx;
      for (auto& z : scaled) z *= 17.0;
      EXPECT_NEAR(mutual_information(tx, scaled, {det, 8}).bits, mi, 1e-12);
    }
  }
}

TEST(MutualInformation, RejectsBadInput) {
  const auto tx = qpsk(10, 1);
  EXPECT_THROW(mutual_information(tx, std::vector<cplx>(9)), ConfigError);
  EXPECT_THROW(mutual_information(std::vector<cplx>{}, std::vector<cplx>{}), ConfigError);
  EXPECT_THROW(mutual_information(tx, tx, {MiDetector::histogram, 1}), ConfigError);
  EXPECT_DOUBLE_EQ(information_rate(1.5, 2.0), 3.0);
  EXPECT_THROW(information_rate(-0.1, 1.0), ConfigError);
}

TEST(Welch, SinusoidPowerAtItsBin) {
  const double fs = 128.0, f0 = 30.0;
  std::vector<double> x(1 << 17);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::cos(2.0 * std::numbers::pi * f0 * static_cast<double>(i) / fs);
  const auto psd = welch_psd(x, fs);
  EXPECT_NEAR(band_power(psd, f0 - 0.5, f0 + 0.5), 0.5, 0.005);
  EXPECT_NEAR(psd.total_power, 0.5, 0.005);
  const auto peak = std::max_element(psd.values.begin(), psd.values.end()) - psd.values.begin();
  EXPECT_NEAR(psd.freqs[static_cast<std::size_t>(peak)], f0, psd.df);
}

TEST(Welch, WhiteNoiseIsFlat) {
  const double fs = 128.0;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<double> x(1 << 20);
  for (auto& v : x) v = g(rng);
  const auto psd = welch_psd(x, fs);
  EXPECT_NEAR(psd.total_power, 1.0, 0.03);
  EXPECT_NEAR(band_power(psd, 10.0, 20.0) / (10.0 * 2.0 / fs), 1.0, 0.03);
}

TEST(Welch, ZeroInputAndParseval) {
  const auto zero = welch_psd(std::vector<double>(8192, 0.0), 128.0);
  for (double v : zero.values) EXPECT_EQ(v, 0.0);
  std::vector<double> x;
  for (const auto& z : oracle::bandlimited_signal(1 << 16, 20.0, 128.0, 3, 50)) x.push_back(z.real());
  double p = 0.0;
  for (double v : x) p += v * v;
  p /= static_cast<double>(x.size());
  EXPECT_NEAR(welch_psd(x, 128.0).total_power / p, 1.0, 0.03);
  EXPECT_THROW(welch_psd(std::vector<double>(100, 1.0), 128.0), ConfigError);
}

TEST(OccupiedBandwidth, BrickwallSpectrum) {
  const double df = 128.0 / 4096.0, fc = 30.0;
  for (double width : {0.5, 1.0, 2.0, 4.0}) {
    PsdEstimate psd;
    psd.df = df;
    for (std::size_t k = 0; k <= 2048; ++k) {
      psd.freqs.push_back(static_cast<double>(k) * df);
      psd.values.push_back(std::abs(psd.freqs.back() - fc) <= width / 2.0 ? 1.0 : 0.0);
      psd.total_power += psd.values.back() * df;
    }
    EXPECT_NEAR(occupied_bandwidth(psd, fc), 0.9375 * width, 2.0 * df) << width;
  }
}

TEST(OccupiedBandwidth, MonotoneInFractionAndChecksArguments) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::vector<double> x(1 << 18);
  for (auto& v : x) v = g(rng);
  const auto psd = welch_psd(x, 128.0);
  double prev = 0.0;
  for (double frac : {0.5, 0.8, 0.9, 0.9375, 0.99}) {
    const double b = occupied_bandwidth(psd, 30.0, frac);
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_THROW(occupied_bandwidth(psd, 100.0), ConfigError);
  EXPECT_THROW(occupied_bandwidth(psd, 30.0, 1.0), ConfigError);
  EXPECT_THROW(occupied_bandwidth(welch_psd(std::vector<double>(8192, 0.0), 128.0), 30.0), ConfigError);
}

TEST(Efficiencies, Definitions) {
  const auto e = efficiencies(2.0, 0.5, 1.25, 0.1, 1.0);
  EXPECT_DOUBLE_EQ(e.eta_p, 4.0);
  EXPECT_DOUBLE_EQ(e.eta_b, 1.6);
  EXPECT_DOUBLE_EQ(e.fom, 6.4);
  EXPECT_NEAR(e.fom_normalized, 0.64, 1e-15);
  EXPECT_THROW(efficiencies(1.0, 0.0, 1.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(efficiencies(1.0, 1.0, 0.0, 1.0, 1.0), ConfigError);

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double r = u(rng), p = u(rng), b = u(rng), n0 = u(rng), a = u(rng);
    const auto f = efficiencies(r, p, b, n0, a);
    EXPECT_NEAR(f.fom, r * r / (p * b), 1e-12 * f.fom);
    EXPECT_NEAR(f.fom_normalized, f.eta_p * f.eta_b * n0 / a, 1e-12 * f.fom_normalized);
  }
}
