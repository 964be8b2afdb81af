#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/error.hpp"
#include "onebit/optimizer.hpp"
#include "onebit/pa_model.hpp"
#include "onebit/pipeline.hpp"

namespace onebit {

/// Everything an experiment needs. Serialized as flat `key = value` lines
/// with section prefixes (system.*, pa.*, channel.*, grid.*, output.*).
/// Missing keys keep the defaults below; unknown keys are rejected.
struct ExperimentConfig {
  SystemConfig system{};
  PaConfig pa{};
  ChannelConfig channel{};
  GridSpec grid{{0.0316, 0.1, 1.0, 10.0},
                {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0},
                {SystemVariant::sys2}};
  std::string out_dir = "out";

  void validate() const {
    system.validate();
    pa.validate();
    channel.validate();
    grid.validate();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline double parse_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
  return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
  v = trim(v);
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
  return out;
}

/// Comma list, or an inclusive range `start:stop:step`.
inline std::vector<double> parse_number_list(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v.empty()) return {};
  if (v.find(':') != std::string_view::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw ConfigError("key '" + std::string(key) + "': range must be start:stop:step");
    const double start = parse_double(key, parts[0]);
    const double stop = parse_double(key, parts[1]);
    const double step = parse_double(key, parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("key '" + std::string(key) + "': range needs step > 0 and stop >= start");
    std::vector<double> out;
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) out.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
    return out;
  }
  std::vector<double> out;
  for (auto p : split(v, ',')) out.push_back(parse_double(key, p));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

inline const std::map<std::string, Setter, std::less<>>& config_setters() {
  static const std::map<std::string, Setter, std::less<>> setters = [] {
    std::map<std::string, Setter, std::less<>> m;
    m["system.variant"] = [](ExperimentConfig& c, auto, auto v) { c.system.variant = parse_variant(trim(v)); };
    m["system.fc_multiple"] = [](ExperimentConfig& c, auto k, auto v) { c.system.fc_multiple = parse_double(k, v); };
    m["system.analog_sps"] = [](ExperimentConfig& c, auto k, auto v) { c.system.analog_sps = parse_int<int>(k, v); };
    m["system.n_symbols"] = [](ExperimentConfig& c, auto k, auto v) { c.system.n_symbols = parse_int<int>(k, v); };
    m["system.rrc_rolloff"] = [](ExperimentConfig& c, auto k, auto v) { c.system.rrc.roll_off = parse_double(k, v); };
    m["system.rrc_span"] = [](ExperimentConfig& c, auto k, auto v) { c.system.rrc.span = parse_int<int>(k, v); };
    m["system.rrc_sps"] = [](ExperimentConfig& c, auto k, auto v) { c.system.rrc.samples_per_symbol = parse_int<int>(k, v); };
    m["system.lpf_order"] = [](ExperimentConfig& c, auto k, auto v) { c.system.lpf_order = parse_int<int>(k, v); };
    m["system.lpf_cutoff"] = [](ExperimentConfig& c, auto k, auto v) { c.system.lpf_cutoff = parse_double(k, v); };
    m["system.adc_sps"] = [](ExperimentConfig& c, auto k, auto v) { c.system.adc_sps = parse_int<int>(k, v); };
    m["system.seed"] = [](ExperimentConfig& c, auto k, auto v) { c.system.seed = parse_int<std::uint64_t>(k, v); };
    m["system.mi_bins_per_dim"] = [](ExperimentConfig& c, auto k, auto v) { c.system.mi_bins_per_dim = parse_int<int>(k, v); };
    m["system.psd_segment"] = [](ExperimentConfig& c, auto k, auto v) { c.system.psd.segment_len = parse_int<std::size_t>(k, v); };
    m["system.psd_overlap"] = [](ExperimentConfig& c, auto k, auto v) { c.system.psd.overlap = parse_double(k, v); };
    m["system.obw_fraction"] = [](ExperimentConfig& c, auto k, auto v) { c.system.obw_fraction = parse_double(k, v); };
    m["pa.ibo"] = [](ExperimentConfig& c, auto k, auto v) { c.pa.ibo = parse_double(k, v); };
    m["pa.bbpf"] = [](ExperimentConfig& c, auto k, auto v) { c.pa.bbpf = parse_double(k, v); };
    m["pa.r_load"] = [](ExperimentConfig& c, auto k, auto v) { c.pa.r_load = parse_double(k, v); };
    m["pa.bpf_order"] = [](ExperimentConfig& c, auto k, auto v) { c.pa.bpf_order = parse_int<int>(k, v); };
    m["channel.alpha"] = [](ExperimentConfig& c, auto k, auto v) { c.channel.alpha = parse_double(k, v); };
    m["channel.sinr_db"] = [](ExperimentConfig& c, auto k, auto v) { c.channel.sinr_db = parse_double(k, v); };
    m["channel.interference_ratio"] = [](ExperimentConfig& c, auto k, auto v) { c.channel.interference_ratio = parse_double(k, v); };
    m["grid.ibo"] = [](ExperimentConfig& c, auto k, auto v) { c.grid.ibo_values = parse_number_list(k, v); };
    m["grid.bbpf"] = [](ExperimentConfig& c, auto k, auto v) { c.grid.bbpf_values = parse_number_list(k, v); };
    m["grid.systems"] = [](ExperimentConfig& c, auto, auto v) {
      c.grid.systems.clear();
      if (trim(v).empty()) return;
      for (auto s : split(v, ',')) c.grid.systems.push_back(parse_variant(s));
    };
    m["output.dir"] = [](ExperimentConfig& c, auto, auto v) { c.out_dir = std::string(trim(v)); };
    return m;
  }();
  return setters;
}

}  // namespace detail

/// Applies one `key = value` setting. Unknown keys raise ConfigError naming the key.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  const auto& setters = detail::config_setters();
  const auto it = setters.find(detail::trim(key));
  if (it == setters.end()) throw ConfigError("unknown configuration key '" + std::string(detail::trim(key)) + "'");
  it->second(cfg, it->first, value);
}

/// Parses configuration text. `origin` prefixes diagnostics (usually the path).
inline ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>") {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value', got '" + std::string(line) + "'");
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace onebit
