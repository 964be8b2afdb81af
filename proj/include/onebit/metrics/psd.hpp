#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include <fftw3.h>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

/// One-sided PSD on [0, fs/2]. values in W/Hz, bin spacing `df`.
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> values;
  double df = 0.0;
  double total_power = 0.0;  // sum(values) * df
};

struct WelchOptions {
  std::size_t segment_len = 4096;
  double overlap = 0.5;
};

namespace detail {

// FFTW's planner is not reentrant; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }

  double* input() noexcept { return in_; }
  void execute() noexcept { fftw_execute(plan_); }
  std::complex<double> bin(std::size_t k) const noexcept { return {out_[k][0], out_[k][1]}; }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace detail

/// Welch estimate with a periodic Hann window, normalized so that
/// sum(values) * df equals the mean power of the analyzed samples.
inline PsdEstimate welch_psd(std::span<const double> x, double sample_rate, const WelchOptions& opt = {}) {
  const std::size_t len = opt.segment_len;
  if (len < 2) throw ConfigError("welch_psd: segment length must be >= 2");
  if (len > x.size()) throw ConfigError("welch_psd: segment longer than signal");
  if (!(opt.overlap >= 0.0 && opt.overlap < 1.0)) throw ConfigError("welch_psd: overlap must be in [0, 1)");
  const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(len * (1.0 - opt.overlap))));

  std::vector<double> window(len);
  double wpow = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(len));
    wpow += window[i] * window[i];
  }

  const std::size_t nbins = len / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  detail::RealFft fft(len);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + len <= x.size(); start += hop, ++segments) {
    double* in = fft.input();
    for (std::size_t i = 0; i < len; ++i) in[i] = x[start + i] * window[i];
    fft.execute();
    for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(fft.bin(k));
  }

  PsdEstimate psd;
  psd.df = sample_rate / static_cast<double>(len);
  psd.freqs.resize(nbins);
  psd.values.resize(nbins);
  const double scale = 1.0 / (static_cast<double>(segments) * wpow * sample_rate);
  for (std::size_t k = 0; k < nbins; ++k) {
    const bool edge = (k == 0) || (len % 2 == 0 && k == nbins - 1);
    psd.freqs[k] = static_cast<double>(k) * psd.df;
    psd.values[k] = acc[k] * scale * (edge ? 1.0 : 2.0);
    psd.total_power += psd.values[k] * psd.df;
  }
  return psd;
}

inline PsdEstimate welch_psd(const PassbandSignal& x, const WelchOptions& opt = {}) {
  return welch_psd(std::span<const double>(x.samples), x.sample_rate, opt);
}

/// Power of the PSD inside [lo, hi], treating each bin as a constant density
/// over [f_k - df/2, f_k + df/2] so partial bins contribute linearly.
inline double band_power(const PsdEstimate& psd, double lo, double hi) {
  double p = 0.0;
  for (std::size_t k = 0; k < psd.values.size(); ++k) {
    const double a = std::max(lo, psd.freqs[k] - psd.df / 2.0);
    const double b = std::min(hi, psd.freqs[k] + psd.df / 2.0);
    if (b > a) p += psd.values[k] * (b - a);
  }
  return p;
}

/// Smallest B with band_power(fc - B/2, fc + B/2) >= fraction * total_power.
/// The band power is piecewise linear in B, so the crossing is solved exactly
/// within the bin where it happens.
inline double occupied_bandwidth(const PsdEstimate& psd, double fc, double fraction = 0.9375) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("occupied_bandwidth: fraction must be in (0, 1)");
  if (psd.values.empty() || !(psd.total_power > 0.0)) throw ConfigError("occupied_bandwidth: PSD has no power");
  const double f_lo = psd.freqs.front() - psd.df / 2.0;
  const double f_hi = psd.freqs.back() + psd.df / 2.0;
  if (fc < psd.freqs.front() || fc > psd.freqs.back()) throw ConfigError("occupied_bandwidth: fc outside PSD grid");

  const double target = fraction * psd.total_power;
  // Breakpoints of the piecewise-linear band power: half-widths where either
  // window edge crosses a bin boundary.
  std::vector<double> halfw;
  for (std::size_t k = 0; k <= psd.values.size(); ++k) {
    const double edge = psd.freqs.front() - psd.df / 2.0 + static_cast<double>(k) * psd.df;
    halfw.push_back(std::abs(edge - fc));
  }
  std::sort(halfw.begin(), halfw.end());
  halfw.erase(std::unique(halfw.begin(), halfw.end()), halfw.end());
  const double max_half = std::max(fc - f_lo, f_hi - fc);

  double prev_h = 0.0, prev_p = 0.0;
  for (double h : halfw) {
    if (h <= prev_h) continue;
    const double p = band_power(psd, fc - h, fc + h);
    if (p >= target) {
      const double t = (p > prev_p) ? (target - prev_p) / (p - prev_p) : 1.0;
      return 2.0 * (prev_h + t * (h - prev_h));
    }
    prev_h = h;
    prev_p = p;
  }
  return 2.0 * max_half;
}

}  // namespace onebit
