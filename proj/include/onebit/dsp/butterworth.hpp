#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "onebit/dsp/filter.hpp"
#include "onebit/error.hpp"

namespace onebit {

enum class FilterKind { lowpass, bandpass };

/// Digital Butterworth filter realized as cascaded second-order sections.
/// `order` is the order of the lowpass prototype, so a bandpass of order n
/// has 2n poles (the usual butter(n, [lo, hi]) convention). Cutoffs are the
/// 3-dB edges; lowpass uses `cutoff_high` only.
struct ButterworthSpec {
  int order = 4;
  FilterKind kind = FilterKind::lowpass;
  double cutoff_low = 0.0;
  double cutoff_high = 1.0;
  double sample_rate = 128.0;

  void validate() const {
    if (order < 1) throw ConfigError("butterworth order must be >= 1");
    if (!(sample_rate > 0.0)) throw ConfigError("butterworth sample_rate must be > 0");
    const double nyq = sample_rate / 2.0;
    if (!(cutoff_high > 0.0 && cutoff_high < nyq))
      throw ConfigError("butterworth cutoff must lie strictly inside (0, sample_rate/2)");
    if (kind == FilterKind::bandpass) {
      if (!(cutoff_low > 0.0 && cutoff_low < cutoff_high))
        throw ConfigError("butterworth bandpass needs 0 < cutoff_low < cutoff_high");
    }
  }

  static ButterworthSpec lowpass(int order, double cutoff, double fs) {
    return {order, FilterKind::lowpass, 0.0, cutoff, fs};
  }

  /// Bandpass with 3-dB edges at center -/+ bandwidth/2.
  static ButterworthSpec bandpass(int order, double center, double bandwidth, double fs) {
    return {order, FilterKind::bandpass, center - bandwidth / 2.0, center + bandwidth / 2.0, fs};
  }
};

namespace detail {

using std::numbers::pi;

// Left-half-plane poles of the unit-cutoff analog Butterworth prototype.
inline std::vector<cplx> butterworth_prototype_poles(int n) {
  std::vector<cplx> poles;
  poles.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) poles.push_back(std::polar(1.0, pi * (2.0 * k + n + 1.0) / (2.0 * n)));
  return poles;
}

inline double prewarp(double f, double fs) { return 2.0 * fs * std::tan(pi * f / fs); }

inline cplx bilinear(cplx s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

// Groups z-plane poles into conjugate pairs (or pairs of real poles). A lone
// real pole yields a first-order denominator with a2 = 0.
inline std::vector<std::pair<double, double>> pole_pairs(std::vector<cplx> poles) {
  constexpr double eps = 1e-12;
  std::vector<std::pair<double, double>> dens;
  std::vector<double> reals;
  for (const auto& p : poles) {
    if (p.imag() > eps) dens.emplace_back(-2.0 * p.real(), std::norm(p));
    else if (std::abs(p.imag()) <= eps) reals.push_back(p.real());
  }
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i + 1 < reals.size(); i += 2)
    dens.emplace_back(-(reals[i] + reals[i + 1]), reals[i] * reals[i + 1]);
  if (reals.size() % 2 == 1) dens.emplace_back(-reals.back(), 0.0);
  return dens;
}

}  // namespace detail

/// Bilinear-transform Butterworth design with prewarped edges. Lowpass has
/// unit DC gain; bandpass has unit gain at the prewarped geometric center.
inline SosCascade design_butterworth(const ButterworthSpec& spec) {
  spec.validate();
  const double fs = spec.sample_rate;
  SosCascade sos;

  if (spec.kind == FilterKind::lowpass) {
    const double wc = detail::prewarp(spec.cutoff_high, fs);
    std::vector<cplx> zp;
    for (const auto& p : detail::butterworth_prototype_poles(spec.order)) zp.push_back(detail::bilinear(wc * p, fs));
    for (const auto& [a1, a2] : detail::pole_pairs(zp)) {
      Biquad s;
      s.a1 = a1;
      s.a2 = a2;
      const bool first_order = (a2 == 0.0);
      const double g = (1.0 + a1 + a2) / (first_order ? 2.0 : 4.0);
      s.b0 = g;
      s.b1 = first_order ? g : 2.0 * g;
      s.b2 = first_order ? 0.0 : g;
      sos.push_back(s);
    }
    return sos;
  }

  const double w1 = detail::prewarp(spec.cutoff_low, fs);
  const double w2 = detail::prewarp(spec.cutoff_high, fs);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;
  std::vector<cplx> zp;
  for (const auto& q : detail::butterworth_prototype_poles(spec.order)) {
    const cplx qb = q * bw;
    const cplx root = std::sqrt(qb * qb - 4.0 * w0sq);
    zp.push_back(detail::bilinear((qb + root) / 2.0, fs));
    zp.push_back(detail::bilinear((qb - root) / 2.0, fs));
  }
  const double f0 = fs * std::atan(std::sqrt(w0sq) / (2.0 * fs)) / std::numbers::pi;
  for (const auto& [a1, a2] : detail::pole_pairs(zp)) {
    Biquad s{1.0, 0.0, -1.0, a1, a2};
    const double mag = std::abs(frequency_response(SosCascade{s}, f0, fs));
    s.b0 /= mag;
    s.b2 /= mag;
    sos.push_back(s);
  }
  return sos;
}

}  // namespace onebit
