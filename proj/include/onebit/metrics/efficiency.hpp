#pragma once

#include "onebit/error.hpp"

namespace onebit {

struct Efficiencies {
  double eta_p = 0.0;           // R / P_PA, bits/s/W
  double eta_b = 0.0;           // R / B_PA, bits/s/Hz
  double fom = 0.0;             // eta_p * eta_b
  double fom_normalized = 0.0;  // fom * N0 / alpha
};

inline Efficiencies efficiencies(double rate, double p_pa, double b_pa, double n0, double alpha) {
  if (!(p_pa > 0.0)) throw ConfigError("efficiencies: P_PA must be > 0");
  if (!(b_pa > 0.0)) throw ConfigError("efficiencies: B_PA must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("efficiencies: alpha must be > 0");
  Efficiencies e;
  e.eta_p = rate / p_pa;
  e.eta_b = rate / b_pa;
  e.fom = e.eta_p * e.eta_b;
  e.fom_normalized = e.fom * n0 / alpha;
  return e;
}

/// Everything measured for one operating point.
struct LinkMetrics {
  double mi = 0.0;       // bits per channel use
  double mi_bias = 0.0;  // estimator bias, reported alongside mi
  double rate_r = 0.0;
  double b_pa = 0.0;
  double p_pa = 0.0;
  double p_t = 0.0;
  double eta_p = 0.0;
  double eta_b = 0.0;
  double fom = 0.0;
  double fom_normalized = 0.0;
  // Diagnostics.
  double v_sat = 0.0;
  double sigma_n2 = 0.0;
  double psd_total_power = 0.0;
  double y_p_power = 0.0;
  int rx_lag = 0;
  bool align_ambiguous = false;

  bool operator==(const LinkMetrics&) const = default;
};

}  // namespace onebit
