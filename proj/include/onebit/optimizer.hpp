#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "onebit/error.hpp"
#include "onebit/parallel.hpp"
#include "onebit/pipeline.hpp"

namespace onebit {

struct GridSpec {
  std::vector<double> ibo_values;
  std::vector<double> bbpf_values;  // units of B
  std::vector<SystemVariant> systems;

  void validate() const {
    auto check = [](const std::vector<double>& v, const char* name) {
      if (v.empty()) throw ConfigError(std::string(name) + " must not be empty");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw ConfigError(std::string(name) + " values must be > 0");
        if (i > 0 && !(v[i] > v[i - 1])) throw ConfigError(std::string(name) + " values must be strictly increasing");
      }
    };
    check(ibo_values, "grid.ibo");
    check(bbpf_values, "grid.bbpf");
    if (systems.empty()) throw ConfigError("grid.systems must not be empty");
  }

  std::size_t size() const { return systems.size() * ibo_values.size() * bbpf_values.size(); }
};

struct GridPoint {
  SystemVariant variant = SystemVariant::sys2;
  double ibo = 0.0;
  double bbpf = 0.0;
  std::optional<LinkMetrics> metrics;  // empty when the point failed
  std::string error;
};

struct GridArgmax {
  SystemVariant variant = SystemVariant::sys2;
  double ibo = 0.0;
  double bbpf = 0.0;
  double fom_normalized = 0.0;
  std::size_t index = 0;  // into GridResult::points
};

struct GridResult {
  std::vector<GridPoint> points;  // ordered by system, ibo, bbpf
  std::vector<GridArgmax> argmax;  // one per system with at least one successful point

  std::optional<GridArgmax> argmax_for(SystemVariant v) const {
    for (const auto& a : argmax)
      if (a.variant == v) return a;
    return std::nullopt;
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const GridPoint& p) { return !p.metrics; }));
  }
};

/// Largest fom_normalized per system among successful points. Points are
/// scanned in (ibo, bbpf) ascending order and only a strictly larger value
/// replaces the incumbent, so ties go to the smaller IBO, then smaller B_bpf.
inline std::vector<GridArgmax> select_argmax(const std::vector<GridPoint>& points, const std::vector<SystemVariant>& systems) {
  std::vector<GridArgmax> out;
  for (const auto v : systems) {
    std::optional<GridArgmax> best;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (p.variant != v || !p.metrics) continue;
      if (!best || p.metrics->fom_normalized > best->fom_normalized) best = GridArgmax{v, p.ibo, p.bbpf, p.metrics->fom_normalized, i};
    }
    if (best) out.push_back(*best);
  }
  return out;
}

/// Exhaustive evaluation of run_link over systems x IBO x B_bpf. Per-point
/// failures are recorded; only an all-failed grid is an error.
inline GridResult grid_search(const GridSpec& grid, const SystemConfig& sys_base, const PaConfig& pa_base,
                              const ChannelConfig& ch, unsigned jobs = default_jobs()) {
  grid.validate();
  GridResult res;
  res.points.reserve(grid.size());
  for (const auto v : grid.systems)
    for (double ibo : grid.ibo_values)
      for (double b : grid.bbpf_values) res.points.push_back(GridPoint{v, ibo, b, std::nullopt, {}});

  parallel_for(res.points.size(), jobs, [&](std::size_t i) {
    auto& p = res.points[i];
    SystemConfig sys = sys_base;
    sys.variant = p.variant;
    PaConfig pa = pa_base;
    pa.ibo = p.ibo;
    pa.bbpf = p.bbpf;
    try {
      p.metrics = run_link(sys, pa, ch);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });

  if (res.failures() == res.points.size()) throw StageError("grid_search", "every grid point failed: " + res.points.front().error);
  res.argmax = select_argmax(res.points, grid.systems);
  return res;
}

}  // namespace onebit
