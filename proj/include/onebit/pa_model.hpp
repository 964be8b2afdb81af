#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "onebit/dsp/butterworth.hpp"
#include "onebit/dsp/filter.hpp"
#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

// Behavioral push-pull PA: memoryless clipper at +-V_sat followed by a
// bandpass tank around the carrier. V_sat is both the clipping level and the
// supply voltage drawn from.

struct PaConfig {
  double ibo = 0.1;     // V_sat / sigma_xp
  double r_load = 1.0;  // ohms
  double bbpf = 0.9;    // 3-dB bandwidth of the tank, units of B
  int bpf_order = 4;

  void validate() const {
    if (!(ibo > 0.0)) throw ConfigError("pa.ibo must be > 0");
    if (!(r_load > 0.0)) throw ConfigError("pa.r_load must be > 0");
    if (!(bbpf > 0.0)) throw ConfigError("pa.bbpf must be > 0");
  }

  ButterworthSpec bpf_spec(double fc, double fs) const { return ButterworthSpec::bandpass(bpf_order, fc, bbpf, fs); }
};

struct PaOutput {
  PassbandSignal y_p;
  std::vector<double> i_l;  // load current y_p / R_L
  double v_sat = 0.0;
  double p_pa = 0.0;
  double p_t = 0.0;
};

/// V_sat = ibo * RMS(x_p) over `window` (the whole signal when empty).
inline double set_operating_point(double ibo, std::span<const double> window) {
  if (!(ibo > 0.0)) throw ConfigError("set_operating_point: ibo must be > 0");
  const double rms = std::sqrt(mean_power(window));
  if (!(rms > 0.0)) throw ConfigError("set_operating_point: PA input has zero power");
  return ibo * rms;
}

inline std::vector<double> clip(std::span<const double> x, double v_sat) {
  if (!(v_sat > 0.0)) throw ConfigError("clip: v_sat must be > 0");
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [v_sat](double v) { return std::clamp(v, -v_sat, v_sat); });
  return out;
}

inline PassbandSignal clip(const PassbandSignal& x, double v_sat) {
  return {clip(std::span<const double>(x.samples), v_sat), x.sample_rate, x.carrier_freq};
}

inline PassbandSignal bandpass_reconstruct(const PassbandSignal& v_t, const ButterworthSpec& bpf) {
  const auto sos = design_butterworth(bpf);
  return {iir_filter(std::span<const double>(v_t.samples), sos), v_t.sample_rate, v_t.carrier_freq};
}

/// Battery draw V_sat * E|i_L|.
inline double pa_power(std::span<const double> i_l, double v_sat) {
  if (i_l.empty()) return 0.0;
  double acc = 0.0;
  for (double v : i_l) acc += std::abs(v);
  return v_sat * acc / static_cast<double>(i_l.size());
}

/// Power delivered to the load, E[i_L y_p].
inline double transmit_power(std::span<const double> i_l, std::span<const double> y_p) {
  if (i_l.size() != y_p.size()) throw ConfigError("transmit_power: i_l and y_p lengths differ");
  if (i_l.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t n = 0; n < i_l.size(); ++n) acc += i_l[n] * y_p[n];
  return acc / static_cast<double>(i_l.size());
}

struct AmAmOptions {
  int samples_per_cycle = 4096;
  int cycles = 1;
};

/// First-harmonic output amplitude f(A) of the clipper driven by A cos(wt),
/// measured by a single-bin DFT over an integer number of carrier cycles.
inline std::vector<double> am_am_curve(double v_sat, std::span<const double> amplitudes, const AmAmOptions& opt = {}) {
  if (!(v_sat > 0.0)) throw ConfigError("am_am_curve: v_sat must be > 0");
  if (opt.samples_per_cycle < 4 || opt.cycles < 1) throw ConfigError("am_am_curve: bad sampling options");
  const std::size_t n = static_cast<std::size_t>(opt.samples_per_cycle) * static_cast<std::size_t>(opt.cycles);
  std::vector<double> basis_c(n), basis_s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = 2.0 * std::numbers::pi * static_cast<double>(i) / opt.samples_per_cycle;
    basis_c[i] = std::cos(ph);
    basis_s[i] = std::sin(ph);
  }
  std::vector<double> out;
  out.reserve(amplitudes.size());
  for (double a : amplitudes) {
    if (!(a > 0.0)) throw ConfigError("am_am_curve: amplitudes must be > 0");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::clamp(a * basis_c[i], -v_sat, v_sat);
      re += v * basis_c[i];
      im += v * basis_s[i];
    }
    out.push_back(2.0 * std::hypot(re, im) / static_cast<double>(n));
  }
  return out;
}

}  // namespace onebit
