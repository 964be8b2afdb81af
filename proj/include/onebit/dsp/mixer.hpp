#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "onebit/dsp/signal.hpp"

namespace onebit {

namespace detail {

// exp(j 2 pi f n / fs) by table lookup when f/fs is rational with a small
// period, otherwise by direct evaluation. Keeps the phase exact over long
// signals.
inline std::vector<cplx> carrier_table(double fc, double fs, std::size_t n) {
  std::vector<cplx> c(n);
  const double step = 2.0 * std::numbers::pi * fc / fs;
  for (std::size_t i = 0; i < n; ++i) c[i] = std::polar(1.0, step * static_cast<double>(i));
  return c;
}

// Samples per exact carrier period if fc/fs = p/q with q <= limit, else 0.
inline std::size_t carrier_period(double fc, double fs, std::size_t limit = 4096) {
  for (std::size_t q = 1; q <= limit; ++q) {
    const double p = fc / fs * static_cast<double>(q);
    if (std::abs(p - std::round(p)) < 1e-9) return q;
  }
  return 0;
}

inline std::vector<cplx> carrier(double fc, double fs, std::size_t n) {
  const std::size_t period = carrier_period(fc, fs);
  if (period == 0 || period >= n) return carrier_table(fc, fs, n);
  const auto table = carrier_table(fc, fs, period);
  std::vector<cplx> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = table[i % period];
  return c;
}

}  // namespace detail

/// x_p[n] = Re{x_bb[n] exp(j 2 pi fc n / fs)}. Passband power is half the
/// baseband power. `bb_halfwidth` is the one-sided baseband bandwidth used for
/// the Nyquist check.
inline PassbandSignal upconvert(const ComplexBasebandSignal& baseband, double fc, double bb_halfwidth = 1.5) {
  PassbandSignal out;
  out.sample_rate = baseband.sample_rate;
  out.carrier_freq = fc;
  if (!(baseband.sample_rate > 2.0 * (fc + bb_halfwidth)))
    throw ConfigError("upconvert: sample_rate must exceed 2 (fc + signal half-bandwidth)");
  const auto lo = detail::carrier(fc, baseband.sample_rate, baseband.size());
  out.samples.resize(baseband.size());
  for (std::size_t n = 0; n < baseband.size(); ++n) out.samples[n] = (baseband.samples[n] * lo[n]).real();
  return out;
}

/// y_bb[n] = 2 x_p[n] exp(-j 2 pi fc n / fs). Images at 2 fc remain; the caller lowpass filters.
inline ComplexBasebandSignal downconvert(const PassbandSignal& passband, double fc) {
  ComplexBasebandSignal out;
  out.sample_rate = passband.sample_rate;
  const auto lo = detail::carrier(fc, passband.sample_rate, passband.size());
  out.samples.resize(passband.size());
  for (std::size_t n = 0; n < passband.size(); ++n) out.samples[n] = 2.0 * passband.samples[n] * std::conj(lo[n]);
  return out;
}

}  // namespace onebit
