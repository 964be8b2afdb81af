#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "onebit/error.hpp"

namespace onebit {

struct RrcSpec {
  double roll_off = 0.5;
  int span = 16;  // symbols
  int samples_per_symbol = 4;

  void validate() const {
    if (!(roll_off >= 0.0 && roll_off <= 1.0)) throw ConfigError("rrc roll_off must be in [0, 1]");
    if (span < 8) throw ConfigError("rrc span must be >= 8 symbols");
    if (samples_per_symbol < 1) throw ConfigError("rrc samples_per_symbol must be >= 1");
  }
};

namespace detail {

// Root-raised-cosine impulse response at t (in symbol periods), unnormalized.
inline double rrc_value(double t, double rho) {
  using std::numbers::pi;
  constexpr double eps = 1e-10;
  if (std::abs(t) < eps) return 1.0 - rho + 4.0 * rho / pi;
  if (rho > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * rho)) < eps) {
    return rho / std::sqrt(2.0) *
           ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * rho)) + (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * rho)));
  }
  const double num = std::sin(pi * t * (1.0 - rho)) + 4.0 * rho * t * std::cos(pi * t * (1.0 + rho));
  const double den = pi * t * (1.0 - (4.0 * rho * t) * (4.0 * rho * t));
  return num / den;
}

}  // namespace detail

/// Odd-length (span * sps + 1), symmetric RRC taps with unit energy.
inline std::vector<double> design_rrc(const RrcSpec& spec) {
  spec.validate();
  const int half = spec.span * spec.samples_per_symbol / 2;
  std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
  double energy = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double t = static_cast<double>(k) / spec.samples_per_symbol;
    const double v = detail::rrc_value(t, spec.roll_off);
    taps[static_cast<std::size_t>(k + half)] = v;
    energy += v * v;
  }
  const double norm = 1.0 / std::sqrt(energy);
  for (auto& v : taps) v *= norm;
  // Enforce exact even symmetry against rounding in the two branches.
  for (std::size_t k = 0; k < taps.size() / 2; ++k) taps[taps.size() - 1 - k] = taps[k];
  return taps;
}

}  // namespace onebit
