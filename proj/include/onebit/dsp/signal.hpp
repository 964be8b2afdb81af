#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "onebit/error.hpp"

namespace onebit {

using cplx = std::complex<double>;

// All frequencies are expressed in units of the baud rate B (B = 1).

/// Complex envelope sampled at `sample_rate`.
struct ComplexBasebandSignal {
  std::vector<cplx> samples;
  double sample_rate = 1.0;

  std::size_t size() const noexcept { return samples.size(); }
};

/// Real RF waveform sampled at `sample_rate` around `carrier_freq`.
struct PassbandSignal {
  std::vector<double> samples;
  double sample_rate = 1.0;
  double carrier_freq = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
};

/// QPSK symbols at `baud_rate`.
struct SymbolStream {
  std::vector<cplx> symbols;
  double baud_rate = 1.0;

  std::size_t size() const noexcept { return symbols.size(); }
};

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// QPSK alphabet {(+-1 +-j)/sqrt(2)} indexed by (re bit) | (im bit) << 1.
inline cplx qpsk_point(unsigned index) {
  const double re = (index & 1u) ? kInvSqrt2 : -kInvSqrt2;
  const double im = (index & 2u) ? kInvSqrt2 : -kInvSqrt2;
  return {re, im};
}

/// Index of the QPSK quadrant containing `z` (sign(0) = +1).
inline unsigned qpsk_index(cplx z) {
  return (z.real() >= 0.0 ? 1u : 0u) | (z.imag() >= 0.0 ? 2u : 0u);
}

template <class T>
double mean_power(std::span<const T> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc / static_cast<double>(x.size());
}

template <class T>
double mean_power(const std::vector<T>& x) {
  return mean_power(std::span<const T>(x));
}

template <class T>
bool all_finite(std::span<const T> x) {
  for (const auto& v : x) {
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(v)) return false;
    } else {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

inline void validate(const ComplexBasebandSignal& s) {
  if (!(s.sample_rate > 0.0)) throw ConfigError("baseband sample_rate must be > 0");
  if (!all_finite(std::span<const cplx>(s.samples))) throw ConfigError("baseband samples must be finite");
}

/// Checks the Nyquist condition for a modulated signal of baseband half-width
/// `bb_halfwidth` (B(1+rho) for RRC-shaped QPSK).
inline void validate(const PassbandSignal& s, double bb_halfwidth) {
  if (!(s.sample_rate > 2.0 * (s.carrier_freq + bb_halfwidth)))
    throw ConfigError("passband sample_rate violates Nyquist for carrier + signal bandwidth");
  if (!all_finite(std::span<const double>(s.samples))) throw ConfigError("passband samples must be finite");
}

}  // namespace onebit
