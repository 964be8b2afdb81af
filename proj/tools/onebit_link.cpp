// Command-line front end: single operating point, grid sweep, AM-AM table.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "onebit/onebit.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::string> system;
  std::optional<double> ibo;
  std::optional<double> bbpf;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  unsigned jobs = onebit::default_jobs();
};

onebit::ExperimentConfig resolve(const Overrides& o) {
  onebit::ExperimentConfig cfg = o.config_path.empty() ? onebit::ExperimentConfig{} : onebit::load_config(o.config_path);
  if (o.system) {
    cfg.system.variant = onebit::parse_variant(*o.system);
    cfg.grid.systems = {cfg.system.variant};
  }
  if (o.ibo) cfg.pa.ibo = *o.ibo;
  if (o.bbpf) cfg.pa.bbpf = *o.bbpf;
  if (o.seed) cfg.system.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  return cfg;
}

int cmd_run(const Overrides& o) {
  const auto cfg = resolve(o);
  cfg.system.validate();
  cfg.pa.validate();
  cfg.channel.validate();
  const auto m = onebit::run_link(cfg.system, cfg.pa, cfg.channel);
  const std::string csv = std::string(onebit::kResultsHeader) + "\n" +
                          onebit::results_row(cfg.system.variant, cfg.pa.ibo, cfg.pa.bbpf, m, cfg.system.baud_rate) + "\n";
  std::cout << csv;
  std::filesystem::create_directories(cfg.out_dir);
  onebit::detail::write_file(std::filesystem::path(cfg.out_dir) / "run.csv", csv);
  return 0;
}

int cmd_sweep(const Overrides& o) {
  const auto cfg = resolve(o);
  cfg.validate();
  const auto res = onebit::grid_search(cfg.grid, cfg.system, cfg.pa, cfg.channel, o.jobs);
  onebit::write_sweep_outputs(res, cfg.out_dir);
  std::cout << onebit::argmax_summary(res);
  if (const auto n = res.failures(); n > 0)
    std::cerr << n << " grid point(s) failed; see " << (std::filesystem::path(cfg.out_dir) / "failures.log").string() << "\n";
  return 0;
}

int cmd_amam(const Overrides& o) {
  const std::string out_dir = o.out.value_or("out");
  std::filesystem::create_directories(out_dir);
  onebit::detail::write_file(std::filesystem::path(out_dir) / "fig3.csv", onebit::am_am_csv());
  std::cout << "wrote " << (std::filesystem::path(out_dir) / "fig3.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for 1-bit DAC/ADC QPSK with a clipping PA"};
  app.require_subcommand(1);
  Overrides o;
  std::string system;
  double ibo = 0.0, bbpf = 0.0;
  std::uint64_t seed = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Key-value configuration file");
    sub->add_option("--system", system, "sys1 | sys2 | sys3");
    sub->add_option("--ibo", ibo, "PA input back-off V_sat / sigma_xp");
    sub->add_option("--bbpf", bbpf, "PA bandpass 3-dB bandwidth in units of B");
    sub->add_option("--seed", seed, "Base random seed");
    sub->add_option("--jobs", o.jobs, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "Output directory");
  };
  auto* run = app.add_subcommand("run", "Evaluate one operating point and print its metrics row");
  auto* sweep = app.add_subcommand("sweep", "Grid-search IBO x B_bpf and write per-figure CSVs");
  auto* amam = app.add_subcommand("amam", "Write the PA AM-AM transfer characteristic");
  add_common(run);
  add_common(sweep);
  add_common(amam);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  if (active->count("--system")) o.system = system;
  if (active->count("--ibo")) o.ibo = ibo;
  if (active->count("--bbpf")) o.bbpf = bbpf;
  if (active->count("--seed")) o.seed = seed;
  if (active->count("--out")) o.out = out;

  try {
    if (active == run) return cmd_run(o);
    if (active == sweep) return cmd_sweep(o);
    return cmd_amam(o);
  } catch (const onebit::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
