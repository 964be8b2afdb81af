#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "onebit/error.hpp"
#include "onebit/optimizer.hpp"
#include "onebit/pa_model.hpp"

namespace onebit {

inline constexpr const char* kResultsHeader = "system,ibo,b_bpf_over_b,mi_bits,r_over_b,b_pa_over_b,p_pa,p_t,eta_p,eta_b,fom_norm";

/// Six significant digits, shortest form, '.' decimal point regardless of locale.
inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

inline std::string results_row(SystemVariant v, double ibo, double bbpf, const LinkMetrics& m, double baud_rate = 1.0) {
  std::string row(to_string(v));
  for (double x : {ibo, bbpf, m.mi, m.rate_r / baud_rate, m.b_pa / baud_rate, m.p_pa, m.p_t, m.eta_p, m.eta_b, m.fom_normalized}) {
    row += ',';
    row += format_number(x);
  }
  return row;
}

inline std::string results_csv(const GridResult& res) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& p : res.points)
    if (p.metrics) out += results_row(p.variant, p.ibo, p.bbpf, *p.metrics) + "\n";
  return out;
}

/// Points at which the AM-AM curve is tabulated: `count` log-spaced values of A/V_sat.
inline std::vector<double> am_am_grid(double lo = 0.01, double hi = 10.0, std::size_t count = 200) {
  std::vector<double> a(count);
  for (std::size_t i = 0; i < count; ++i)
    a[i] = lo * std::pow(hi / lo, count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1));
  return a;
}

/// f(A)/V_sat against A/V_sat.
inline std::string am_am_csv() {
  const auto a = am_am_grid();
  const auto f = am_am_curve(1.0, a);
  std::string out = "a_over_vsat,f_over_vsat\n";
  for (std::size_t i = 0; i < a.size(); ++i) out += format_number(a[i]) + "," + format_number(f[i]) + "\n";
  return out;
}

namespace detail {

struct FigureColumn {
  const char* name;
  double (*value)(const GridPoint&);
};

inline double col_ibo(const GridPoint& p) { return p.ibo; }
inline double col_bbpf(const GridPoint& p) { return p.bbpf; }
inline double col_rate(const GridPoint& p) { return p.metrics->rate_r; }
inline double col_ppa_pt(const GridPoint& p) { return p.metrics->p_pa / p.metrics->p_t; }
inline double col_bpa(const GridPoint& p) { return p.metrics->b_pa; }
inline double col_fom(const GridPoint& p) { return p.metrics->fom_normalized; }

// Long-format table: system, then series/x keys in the given order, then values.
inline std::string figure_table(const GridResult& res, const std::vector<FigureColumn>& keys, const std::vector<FigureColumn>& values,
                                bool system_first = true) {
  std::vector<const GridPoint*> pts;
  for (const auto& p : res.points)
    if (p.metrics) pts.push_back(&p);
  std::stable_sort(pts.begin(), pts.end(), [&](const GridPoint* a, const GridPoint* b) {
    if (system_first && a->variant != b->variant) return a->variant < b->variant;
    for (const auto& k : keys) {
      const double x = k.value(*a), y = k.value(*b);
      if (x != y) return x < y;
      if (!system_first && &k == &keys.front() && a->variant != b->variant) return a->variant < b->variant;
    }
    return false;
  });
  std::string out;
  auto header = [&] {
    std::vector<std::string> cols;
    if (system_first) cols.push_back("system");
    for (std::size_t i = 0; i < keys.size(); ++i) {
      cols.push_back(keys[i].name);
      if (!system_first && i == 0) cols.push_back("system");
    }
    for (const auto& v : values) cols.push_back(v.name);
    std::string h;
    for (std::size_t i = 0; i < cols.size(); ++i) h += (i ? "," : "") + cols[i];
    return h + "\n";
  };
  out += header();
  for (const auto* p : pts) {
    std::string row;
    if (system_first) row += std::string(to_string(p->variant));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!row.empty()) row += ',';
      row += format_number(keys[i].value(*p));
      if (!system_first && i == 0) row += "," + std::string(to_string(p->variant));
    }
    for (const auto& v : values) row += "," + format_number(v.value(*p));
    out += row + "\n";
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StageError("output", "cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw StageError("output", "write failed for '" + path.string() + "'");
}

}  // namespace detail

/// Per-figure plot data derived from a grid sweep, keyed by file name.
inline std::vector<std::pair<std::string, std::string>> figure_tables(const GridResult& res) {
  using detail::FigureColumn;
  const FigureColumn ibo{"ibo", detail::col_ibo}, bbpf{"b_bpf_over_b", detail::col_bbpf};
  return {
      {"fig3.csv", am_am_csv()},
      {"fig4.csv", detail::figure_table(res, {bbpf, ibo}, {{"r_over_b", detail::col_rate}})},
      {"fig5.csv", detail::figure_table(res, {bbpf, ibo}, {{"ppa_over_pt", detail::col_ppa_pt}, {"b_pa_over_b", detail::col_bpa}})},
      {"fig6.csv", detail::figure_table(res, {bbpf, ibo}, {{"fom_norm", detail::col_fom}})},
      {"fig7.csv", detail::figure_table(res, {ibo, bbpf}, {{"fom_norm", detail::col_fom}})},
      {"fig8.csv", detail::figure_table(res, {ibo, bbpf}, {{"fom_norm", detail::col_fom}}, false)},
  };
}

inline std::string failures_log(const GridResult& res) {
  std::string out;
  for (const auto& p : res.points)
    if (!p.metrics)
      out += std::string(to_string(p.variant)) + " ibo=" + format_number(p.ibo) + " bbpf=" + format_number(p.bbpf) + ": " + p.error + "\n";
  return out;
}

inline std::string argmax_summary(const GridResult& res) {
  std::string out;
  for (const auto& a : res.argmax)
    out += "argmax " + std::string(to_string(a.variant)) + ": ibo_opt=" + format_number(a.ibo) + " bbpf_opt=" + format_number(a.bbpf) +
           " fom_norm=" + format_number(a.fom_normalized) + "\n";
  return out;
}

/// Writes grid.csv, fig3.csv..fig8.csv and failures.log into `dir`.
inline void write_sweep_outputs(const GridResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  detail::write_file(dir / "grid.csv", results_csv(res));
  for (const auto& [name, text] : figure_tables(res)) detail::write_file(dir / name, text);
  detail::write_file(dir / "failures.log", failures_log(res));
}

}  // namespace onebit
