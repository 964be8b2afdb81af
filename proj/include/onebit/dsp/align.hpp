#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

struct AlignOptions {
  int stride = 1;    // rx samples per tx symbol
  int min_lag = -16;  // rx samples
  int max_lag = 16;
  // Symbol index range [first, last) used for the correlation; last = 0 means all.
  std::size_t first = 0;
  std::size_t last = 0;
};

struct AlignResult {
  int lag = 0;
  cplx gain{1.0, 0.0};  // least-squares c in tx[n] ~ c * rx[lag + stride n]
  double peak = 0.0;     // |cross-correlation| at lag, normalized by the number of terms
  bool ambiguous = false;
  std::size_t first = 0;  // symbol range actually correlated
  std::size_t last = 0;
};

/// Finds the lag maximizing |sum_n tx[n] conj(rx[lag + stride n])| over the
/// window and the complex scalar that maps rx onto tx at that lag. When more
/// than one lag comes within 1% of the peak the smallest is chosen and the
/// result is flagged ambiguous.
inline AlignResult align(std::span<const cplx> tx, std::span<const cplx> rx, const AlignOptions& opt = {}) {
  if (opt.stride < 1) throw ConfigError("align: stride must be >= 1");
  if (opt.min_lag > opt.max_lag) throw ConfigError("align: empty lag window");
  const auto stride = static_cast<long long>(opt.stride);
  const long long last_req = opt.last == 0 ? static_cast<long long>(tx.size())
                                           : std::min<long long>(static_cast<long long>(opt.last), static_cast<long long>(tx.size()));
  // Restrict n so that every lag in the window indexes inside rx.
  long long n_lo = static_cast<long long>(opt.first);
  if (opt.min_lag < 0) n_lo = std::max(n_lo, (-static_cast<long long>(opt.min_lag) + stride - 1) / stride);
  long long n_hi = last_req;
  const long long rx_room = static_cast<long long>(rx.size()) - 1 - opt.max_lag;
  n_hi = rx_room < 0 ? 0 : std::min(n_hi, rx_room / stride + 1);
  if (n_hi <= n_lo) throw ConfigError("align: rx stream too short for the requested lag window");

  const int span_count = opt.max_lag - opt.min_lag + 1;
  std::vector<double> mags(static_cast<std::size_t>(span_count));
  double best = -1.0;
  for (int lag = opt.min_lag; lag <= opt.max_lag; ++lag) {
    cplx acc{};
    for (long long n = n_lo; n < n_hi; ++n) acc += tx[static_cast<std::size_t>(n)] * std::conj(rx[static_cast<std::size_t>(lag + stride * n)]);
    const double m = std::abs(acc);
    mags[static_cast<std::size_t>(lag - opt.min_lag)] = m;
    best = std::max(best, m);
  }

  AlignResult res;
  int hits = 0;
  for (int lag = opt.max_lag; lag >= opt.min_lag; --lag) {
    if (mags[static_cast<std::size_t>(lag - opt.min_lag)] >= 0.99 * best) {
      res.lag = lag;
      ++hits;
    }
  }
  res.ambiguous = hits > 1;
  res.first = static_cast<std::size_t>(n_lo);
  res.last = static_cast<std::size_t>(n_hi);

  cplx num{};
  double den = 0.0;
  for (long long n = n_lo; n < n_hi; ++n) {
    const cplx r = rx[static_cast<std::size_t>(res.lag + stride * n)];
    num += tx[static_cast<std::size_t>(n)] * std::conj(r);
    den += std::norm(r);
  }
  res.gain = den > 0.0 ? num / den : cplx{};
  res.peak = mags[static_cast<std::size_t>(res.lag - opt.min_lag)] / static_cast<double>(n_hi - n_lo);
  return res;
}

/// rx[lag + stride n] * gain for n in [0, count); out-of-range samples are zero.
inline std::vector<cplx> apply_alignment(std::span<const cplx> rx, const AlignResult& a, int stride, std::size_t count) {
  std::vector<cplx> out(count, cplx{});
  for (std::size_t n = 0; n < count; ++n) {
    const long long idx = a.lag + static_cast<long long>(stride) * static_cast<long long>(n);
    if (idx >= 0 && idx < static_cast<long long>(rx.size())) out[n] = a.gain * rx[static_cast<std::size_t>(idx)];
  }
  return out;
}

}  // namespace onebit
