#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

struct ChannelConfig {
  double alpha = 1.0;               // channel power gain
  double sinr_db = 10.0;
  double interference_ratio = 2.0;  // sigma_i^2 / sigma_n^2

  void validate() const {
    if (!(alpha > 0.0)) throw ConfigError("channel.alpha must be > 0");
    if (!(interference_ratio >= 0.0)) throw ConfigError("channel.interference_ratio must be >= 0");
    if (!std::isfinite(sinr_db)) throw ConfigError("channel.sinr_db must be finite");
  }
};

/// Noise power sigma_n^2 = N0 B that yields the target SINR
/// alpha P_T / (sigma_n^2 (1 + interference_ratio)).
inline double calibrate_noise(double p_t, const ChannelConfig& cfg) {
  cfg.validate();
  if (!(p_t > 0.0)) throw ConfigError("calibrate_noise: transmit power must be > 0");
  return cfg.alpha * p_t / ((1.0 + cfg.interference_ratio) * std::pow(10.0, cfg.sinr_db / 10.0));
}

/// Adds white Gaussian noise with two-sided PSD N0/2, N0 = sigma_n2 / B, so
/// any band of width B holds sigma_n2 of noise power. Samples come from
/// std::normal_distribution driven by mt19937_64 seeded with `seed`.
inline PassbandSignal add_awgn(const PassbandSignal& x, double sigma_n2, double baud_rate, std::uint64_t seed) {
  if (!(sigma_n2 >= 0.0)) throw ConfigError("add_awgn: sigma_n2 must be >= 0");
  if (!(baud_rate > 0.0)) throw ConfigError("add_awgn: baud_rate must be > 0");
  PassbandSignal out = x;
  if (sigma_n2 == 0.0) return out;
  const double sigma = std::sqrt(sigma_n2 * (x.sample_rate / 2.0) / baud_rate);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (auto& v : out.samples) v += gauss(rng);
  return out;
}

}  // namespace onebit
