#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

/// How received values are discretized before the plug-in estimate.
enum class MiDetector {
  sign,       // 4-point quadrant alphabet (1-bit receivers)
  histogram,  // uniform bins per real dimension over +-4 std
};

struct MiOptions {
  MiDetector detector = MiDetector::histogram;
  int bins_per_dim = 8;
};

struct MiEstimate {
  double bits = 0.0;
  double bias = 0.0;  // Miller-Madow first-order bias of the plug-in estimate
};

namespace detail {

inline std::vector<int> bin_dimension(std::span<const cplx> rx, bool imag, int bins) {
  double mean = 0.0;
  for (const auto& z : rx) mean += imag ? z.imag() : z.real();
  mean /= static_cast<double>(rx.size());
  double var = 0.0;
  for (const auto& z : rx) {
    const double d = (imag ? z.imag() : z.real()) - mean;
    var += d * d;
  }
  const double sd = std::sqrt(var / static_cast<double>(rx.size()));
  std::vector<int> idx(rx.size(), bins / 2);
  if (!(sd > 0.0)) return idx;
  const double lo = -4.0 * sd;
  const double width = 8.0 * sd / bins;
  for (std::size_t n = 0; n < rx.size(); ++n) {
    const double v = imag ? rx[n].imag() : rx[n].real();
    idx[n] = std::clamp(static_cast<int>(std::floor((v - lo) / width)), 0, bins - 1);
  }
  return idx;
}

}  // namespace detail

/// Plug-in estimate of I(X; X_hat) in bits from the empirical joint pmf of
/// transmitted QPSK symbols and discretized received values. Zero cells
/// contribute nothing.
inline MiEstimate mutual_information(std::span<const cplx> tx, std::span<const cplx> rx, const MiOptions& opt = {}) {
  if (tx.size() != rx.size()) throw ConfigError("mutual_information: tx and rx lengths differ");
  if (tx.empty()) throw ConfigError("mutual_information: empty input");
  if (opt.detector == MiDetector::histogram && opt.bins_per_dim < 2)
    throw ConfigError("mutual_information: bins_per_dim must be >= 2");

  std::vector<int> ry(rx.size());
  int ny = 4;
  if (opt.detector == MiDetector::sign) {
    for (std::size_t n = 0; n < rx.size(); ++n) ry[n] = static_cast<int>(qpsk_index(rx[n]));
  } else {
    const int b = opt.bins_per_dim;
    const auto re = detail::bin_dimension(rx, false, b);
    const auto im = detail::bin_dimension(rx, true, b);
    for (std::size_t n = 0; n < rx.size(); ++n) ry[n] = re[n] + b * im[n];
    ny = b * b;
  }

  std::vector<double> joint(static_cast<std::size_t>(4 * ny), 0.0);
  for (std::size_t n = 0; n < tx.size(); ++n) joint[qpsk_index(tx[n]) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(ry[n])] += 1.0;

  const double total = static_cast<double>(tx.size());
  std::array<double, 4> px{};
  std::vector<double> py(static_cast<std::size_t>(ny), 0.0);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < static_cast<std::size_t>(ny); ++y) {
      px[x] += joint[x * ny + y];
      py[y] += joint[x * ny + y];
    }

  double mi = 0.0;
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < static_cast<std::size_t>(ny); ++y) {
      const double c = joint[x * ny + y];
      if (c == 0.0) continue;
      mi += c / total * std::log2(c * total / (px[x] * py[y]));
    }

  int kx = 0, ky = 0;
  for (double v : px) kx += v > 0.0;
  for (double v : py) ky += v > 0.0;
  MiEstimate est;
  est.bits = std::clamp(mi, 0.0, 2.0);
  est.bias = kx > 0 && ky > 0 ? (kx - 1) * (ky - 1) / (2.0 * total * std::numbers::ln2) : 0.0;
  return est;
}

/// R = B * I(X; X_hat).
inline double information_rate(double mi_bits, double baud_rate) {
  if (mi_bits < 0.0) throw ConfigError("information_rate: mutual information must be >= 0");
  return baud_rate * mi_bits;
}

}  // namespace onebit
