#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

/// One direct-form second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  /// Both poles strictly inside the unit circle (stability triangle).
  bool stable() const noexcept { return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2; }
};

using SosCascade = std::vector<Biquad>;

/// H(e^{j 2 pi f / fs}) of the cascade.
inline cplx frequency_response(const SosCascade& sos, double f, double fs) {
  const cplx z1 = std::polar(1.0, -2.0 * std::numbers::pi * f / fs);
  const cplx z2 = z1 * z1;
  cplx h{1.0, 0.0};
  for (const auto& s : sos) h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return h;
}

/// DC gain of the cascade.
inline double dc_gain(const SosCascade& sos) {
  double g = 1.0;
  for (const auto& s : sos) g *= (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
  return g;
}

/// Output of a linear convolution. `samples` has length N + L - 1 and the
/// filter's integer group delay is `delay` = (L - 1) / 2.
template <class T>
struct FirOutput {
  std::vector<T> samples;
  std::size_t delay = 0;

  /// `count` samples starting at the group delay, zero past the end.
  std::vector<T> compensated(std::size_t count) const {
    std::vector<T> out(count, T{});
    for (std::size_t i = 0; i < count && delay + i < samples.size(); ++i) out[i] = samples[delay + i];
    return out;
  }
};

template <class T>
FirOutput<T> fir_filter(std::span<const T> x, std::span<const double> taps) {
  if (taps.empty()) throw ConfigError("fir_filter: empty tap sequence");
  FirOutput<T> out;
  out.delay = (taps.size() - 1) / 2;
  if (x.empty()) return out;
  out.samples.assign(x.size() + taps.size() - 1, T{});
  // Skip zero inputs so zero-stuffed signals cost 1/L of a dense convolution.
  for (std::size_t n = 0; n < x.size(); ++n) {
    const T v = x[n];
    if (v == T{}) continue;
    T* dst = out.samples.data() + n;
    for (std::size_t k = 0; k < taps.size(); ++k) dst[k] += taps[k] * v;
  }
  return out;
}

template <class T>
FirOutput<T> fir_filter(const std::vector<T>& x, const std::vector<double>& taps) {
  return fir_filter(std::span<const T>(x), std::span<const double>(taps));
}

/// Filters `x` through the cascade (transposed direct form II per section), zero initial state.
template <class T>
std::vector<T> iir_filter(std::span<const T> x, const SosCascade& sos) {
  for (const auto& s : sos)
    if (!s.stable()) throw ConfigError("iir_filter: unstable second-order section");
  std::vector<T> y(x.begin(), x.end());
  for (const auto& s : sos) {
    T z1{}, z2{};
    for (auto& v : y) {
      const T in = v;
      const T out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return y;
}

template <class T>
std::vector<T> iir_filter(const std::vector<T>& x, const SosCascade& sos) {
  return iir_filter(std::span<const T>(x), sos);
}

}  // namespace onebit
