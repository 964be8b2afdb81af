#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/dsp/align.hpp"
#include "onebit/dsp/butterworth.hpp"
#include "onebit/dsp/filter.hpp"
#include "onebit/dsp/mixer.hpp"
#include "onebit/dsp/rate.hpp"
#include "onebit/dsp/rrc.hpp"
#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"
#include "onebit/metrics/efficiency.hpp"
#include "onebit/metrics/mutual_information.hpp"
#include "onebit/metrics/psd.hpp"
#include "onebit/pa_model.hpp"
#include "onebit/parallel.hpp"
#include "onebit/quantizer.hpp"

namespace onebit {

/// sys1: infinite-resolution DAC/ADC. sys2: 1-bit DAC/ADC. sys3: 1-bit
/// DAC/ADC without transmit upsampling and RRC.
enum class SystemVariant { sys1, sys2, sys3 };

inline std::string_view to_string(SystemVariant v) {
  switch (v) {
    case SystemVariant::sys1: return "sys1";
    case SystemVariant::sys2: return "sys2";
    case SystemVariant::sys3: return "sys3";
  }
  return "?";
}

inline SystemVariant parse_variant(std::string_view s) {
  if (s == "sys1") return SystemVariant::sys1;
  if (s == "sys2") return SystemVariant::sys2;
  if (s == "sys3") return SystemVariant::sys3;
  throw ConfigError("unknown system variant '" + std::string(s) + "' (expected sys1, sys2 or sys3)");
}

struct SystemConfig {
  SystemVariant variant = SystemVariant::sys2;
  double baud_rate = 1.0;
  double fc_multiple = 30.0;
  int analog_sps = 128;
  int n_symbols = 10000;
  RrcSpec rrc{0.5, 16, 4};
  int lpf_order = 4;
  double lpf_cutoff = 1.0;  // units of B
  int adc_sps = 4;
  std::uint64_t seed = 1;
  int mi_bins_per_dim = 8;
  WelchOptions psd{};
  double obw_fraction = 0.9375;
  double converter_level = kInvSqrt2;

  double carrier() const { return fc_multiple * baud_rate; }
  double analog_rate() const { return analog_sps * baud_rate; }
  bool one_bit() const { return variant != SystemVariant::sys1; }
  int dac_sps() const { return variant == SystemVariant::sys3 ? 1 : rrc.samples_per_symbol; }
  /// Symbols excluded at each end from every metric.
  int edge_symbols() const { return rrc.span; }

  void validate() const {
    rrc.validate();
    if (!(baud_rate > 0.0)) throw ConfigError("system.baud_rate must be > 0");
    if (analog_sps < 1 || adc_sps < 1) throw ConfigError("system sample rates must be >= 1");
    if (analog_sps % dac_sps() != 0) throw ConfigError("system.analog_sps must be divisible by the DAC rate");
    if (analog_sps % adc_sps != 0) throw ConfigError("system.analog_sps must be divisible by system.adc_sps");
    if (rrc.samples_per_symbol != adc_sps) throw ConfigError("system.rrc_sps must equal system.adc_sps");
    if (!(fc_multiple > 0.0 && fc_multiple < analog_sps / 2.0)) throw ConfigError("system.fc_multiple must lie in (0, analog_sps/2)");
    if (n_symbols <= 4 * edge_symbols()) throw ConfigError("system.n_symbols too small for edge trimming");
    if (mi_bins_per_dim < 2) throw ConfigError("system.mi_bins_per_dim must be >= 2");
    if (!(obw_fraction > 0.0 && obw_fraction < 1.0)) throw ConfigError("system.obw_fraction must be in (0, 1)");
    ButterworthSpec::lowpass(lpf_order, lpf_cutoff * baud_rate, analog_rate()).validate();
  }
};

namespace detail {

// Independent 64-bit seeds for the symbol source and the noise generator.
inline std::pair<std::uint64_t, std::uint64_t> stream_seeds(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::array<std::uint32_t, 4> w{};
  seq.generate(w.begin(), w.end());
  return {(std::uint64_t{w[0]} << 32) | w[1], (std::uint64_t{w[2]} << 32) | w[3]};
}

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace detail

/// Uniform i.i.d. QPSK symbols from mt19937_64.
inline SymbolStream draw_qpsk(std::size_t count, std::uint64_t seed, double baud_rate = 1.0) {
  std::mt19937_64 rng(seed);
  SymbolStream s;
  s.baud_rate = baud_rate;
  s.symbols.reserve(count);
  for (std::size_t n = 0; n < count; ++n) s.symbols.push_back(qpsk_point(static_cast<unsigned>(rng() >> 62)));
  return s;
}

/// Runs the transmit/PA/channel/receive chain for one operating point.
inline LinkMetrics run_link(const SystemConfig& sys, const PaConfig& pa, const ChannelConfig& ch) {
  sys.validate();
  pa.validate();
  ch.validate();
  pa.bpf_spec(sys.carrier(), sys.analog_rate()).validate();

  const auto n_sym = static_cast<std::size_t>(sys.n_symbols);
  const auto edge = static_cast<std::size_t>(sys.edge_symbols());
  const auto [symbol_seed, noise_seed] = detail::stream_seeds(sys.seed);
  const ConverterMode converter = sys.one_bit() ? ConverterMode::one_bit(sys.converter_level) : ConverterMode::infinite();
  const auto rrc_taps = design_rrc(sys.rrc);
  const auto lpf = design_butterworth(ButterworthSpec::lowpass(sys.lpf_order, sys.lpf_cutoff * sys.baud_rate, sys.analog_rate()));
  const double fs = sys.analog_rate();
  const double fc = sys.carrier();

  const SymbolStream tx = draw_qpsk(n_sym, symbol_seed, sys.baud_rate);

  // Transmit DSP.
  const ComplexBasebandSignal shaped = detail::stage("tx-dsp", [&] {
    if (sys.variant == SystemVariant::sys3) return ComplexBasebandSignal{tx.symbols, sys.baud_rate};
    const auto up = upsample_zero_insert(tx, sys.rrc.samples_per_symbol);
    return ComplexBasebandSignal{fir_filter(up.samples, rrc_taps).compensated(up.size()), up.sample_rate};
  });

  // DAC, hold to the analog rate, anti-alias lowpass.
  const ComplexBasebandSignal analog = detail::stage("dac", [&] {
    const auto held = zoh_hold(convert(shaped, converter), sys.analog_sps / sys.dac_sps());
    return ComplexBasebandSignal{iir_filter(held.samples, lpf), held.sample_rate};
  });

  const std::size_t n_analog = analog.size();
  const std::size_t w_begin = edge * static_cast<std::size_t>(sys.analog_sps);
  const std::size_t w_end = n_analog - w_begin;
  auto window = [&](const std::vector<double>& v) { return std::span<const double>(v).subspan(w_begin, w_end - w_begin); };

  LinkMetrics m;

  // Upconvert, normalize to unit RMS, PA.
  const PassbandSignal y_p = detail::stage("pa", [&] {
    PassbandSignal x_p = upconvert(analog, fc, sys.baud_rate * (1.0 + sys.rrc.roll_off));
    const double rms = std::sqrt(mean_power(window(x_p.samples)));
    if (!(rms > 0.0)) throw ConfigError("PA input has zero power");
    for (auto& v : x_p.samples) v /= rms;
    m.v_sat = set_operating_point(pa.ibo, window(x_p.samples));
    return bandpass_reconstruct(clip(x_p, m.v_sat), pa.bpf_spec(fc, fs));
  });
  std::vector<double> i_l(y_p.samples);
  for (auto& v : i_l) v /= pa.r_load;
  m.p_pa = pa_power(window(i_l), m.v_sat);
  m.p_t = transmit_power(window(i_l), window(y_p.samples));
  m.y_p_power = mean_power(window(y_p.samples));

  // Channel. Noise power is referred to the load, so the voltage variance scales with R_L.
  const PassbandSignal received = detail::stage("channel", [&] {
    m.sigma_n2 = calibrate_noise(m.p_t, ch);
    return add_awgn(y_p, m.sigma_n2 * pa.r_load, sys.baud_rate, noise_seed);
  });

  // Receiver: ideal LNA, downconvert, lowpass, ADC at adc_sps, matched RRC.
  // Timing is recovered by the lag search at the ADC rate.
  std::vector<cplx> rx_symbols = detail::stage("rx", [&] {
    const auto bb = downconvert(received, fc);
    const auto filtered = iir_filter(bb.samples, lpf);
    const int decim = sys.analog_sps / sys.adc_sps;
    const auto sampled = convert(downsample(std::span<const cplx>(filtered), decim, 0), converter);
    const auto matched = fir_filter(sampled, rrc_taps).compensated(n_sym * static_cast<std::size_t>(sys.adc_sps));

    AlignOptions opt;
    opt.stride = sys.adc_sps;
    opt.min_lag = -4 * sys.adc_sps;
    opt.max_lag = 4 * sys.adc_sps;
    opt.first = edge;
    opt.last = n_sym - edge;
    const AlignResult a = align(tx.symbols, matched, opt);
    m.rx_lag = a.lag;
    m.align_ambiguous = a.ambiguous;
    return apply_alignment(matched, a, sys.adc_sps, n_sym);
  });

  // Metrics over the trimmed symbol range.
  detail::stage("metrics", [&] {
    const std::span<const cplx> tx_w = std::span<const cplx>(tx.symbols).subspan(edge, n_sym - 2 * edge);
    const std::span<const cplx> rx_w = std::span<const cplx>(rx_symbols).subspan(edge, n_sym - 2 * edge);
    const MiOptions mi_opt{sys.one_bit() ? MiDetector::sign : MiDetector::histogram, sys.mi_bins_per_dim};
    const MiEstimate mi = mutual_information(tx_w, rx_w, mi_opt);
    m.mi = mi.bits;
    m.mi_bias = mi.bias;
    m.rate_r = information_rate(m.mi, sys.baud_rate);

    const PsdEstimate psd = welch_psd(window(y_p.samples), fs, sys.psd);
    m.psd_total_power = psd.total_power;
    m.b_pa = occupied_bandwidth(psd, fc, sys.obw_fraction);

    const double n0 = m.sigma_n2 / sys.baud_rate;
    const Efficiencies e = efficiencies(m.rate_r, m.p_pa, m.b_pa, n0, ch.alpha);
    m.eta_p = e.eta_p;
    m.eta_b = e.eta_b;
    m.fom = e.fom;
    m.fom_normalized = e.fom_normalized;
    return 0;
  });
  return m;
}

/// FOM-vs-B_bpf curve of one system at fixed IBO.
struct SystemCurve {
  SystemVariant variant = SystemVariant::sys2;
  std::vector<double> bbpf;
  std::vector<LinkMetrics> metrics;

  /// Index of the largest fom_normalized (first on ties).
  std::size_t argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < metrics.size(); ++i)
      if (metrics[i].fom_normalized > metrics[best].fom_normalized) best = i;
    return best;
  }
};

/// Runs every system over the B_bpf grid at one IBO with a common seed.
inline std::vector<SystemCurve> compare_systems(std::span<const SystemVariant> systems, std::span<const double> bbpf_values,
                                                double ibo, const SystemConfig& base, const PaConfig& pa_base,
                                                const ChannelConfig& ch, unsigned jobs = default_jobs()) {
  if (systems.empty()) throw ConfigError("compare_systems: no systems given");
  if (bbpf_values.empty()) throw ConfigError("compare_systems: empty B_bpf grid");
  std::vector<SystemCurve> curves(systems.size());
  const std::size_t nb = bbpf_values.size();
  std::vector<std::optional<LinkMetrics>> results(systems.size() * nb);
  std::vector<std::exception_ptr> errors(results.size());
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    SystemConfig sys = base;
    sys.variant = systems[i / nb];
    PaConfig pa = pa_base;
    pa.ibo = ibo;
    pa.bbpf = bbpf_values[i % nb];
    try {
      results[i] = run_link(sys, pa, ch);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t s = 0; s < systems.size(); ++s) {
    curves[s].variant = systems[s];
    curves[s].bbpf.assign(bbpf_values.begin(), bbpf_values.end());
    for (std::size_t b = 0; b < nb; ++b) curves[s].metrics.push_back(*results[s * nb + b]);
  }
  return curves;
}

}  // namespace onebit
