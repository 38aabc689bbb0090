// csm: central spin model simulator.
//
//   csm ensemble --nspins 15 --out out/
//   csm scaling --sizes 5,10,15,20
//   csm verify --nspins 5 --seed 1
//
// Exit codes: 0 success, 2 invalid input, 3 verification failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csm/config.hpp"
#include "csm/csv_io.hpp"
#include "csm/ensemble.hpp"
#include "csm/oracle.hpp"
#include "csm/scaling.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> nspins;
  std::optional<int> realizations;
  std::optional<double> tmax_us;
  std::optional<int> steps;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::string> couplings;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "INI-style config file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--nspins", o.nspins, "bath size (multiple of spins_per_ring)");
  cmd->add_option("--realizations", o.realizations, "orientations to average");
  cmd->add_option("--tmax-us", o.tmax_us, "last time point in microseconds");
  cmd->add_option("--steps", o.steps, "number of time points");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  cmd->add_option("--couplings", o.couplings, "coupling list file (Hz, one per line)");
}

csm::RunConfig resolve(const CommonOptions& o) {
  csm::RunConfig cfg = o.config.empty() ? csm::parse_config("") : csm::load_config(o.config);
  auto& g = cfg.geometry();
  if (o.seed) cfg.ensemble.master_seed = *o.seed;
  if (o.nspins) {
    if (*o.nspins < 1 || *o.nspins % g.spins_per_ring != 0) {
      throw csm::ConfigError("--nspins", "must be a positive multiple of spins_per_ring (" +
                                             std::to_string(g.spins_per_ring) + ")");
    }
    g.n_rings = *o.nspins / g.spins_per_ring;
  }
  if (o.realizations) cfg.ensemble.n_realizations = *o.realizations;
  if (o.tmax_us) cfg.ensemble.grid.t_max = *o.tmax_us * 1e-6;
  if (o.steps) cfg.ensemble.grid.n_steps = *o.steps;
  if (o.out) cfg.output_dir = *o.out;
  if (o.workers) cfg.ensemble.workers = *o.workers;
  if (o.couplings) cfg.coupling_file = *o.couplings;
  cfg.validate();
  if (!cfg.coupling_file.empty()) cfg.ensemble.fixed_couplings = csm::read_coupling_file(cfg.coupling_file);
  return cfg;
}

void print_written(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << "\n"; }

int run_fid(const csm::RunConfig& cfg, std::optional<int> single) {
  csm::EnsembleConfig ens = cfg.ensemble;
  if (single) {
    ens.fixed_couplings = csm::realization_couplings(ens, *single);
    ens.n_realizations = 1;
  }
  const auto s = csm::run_ensemble(ens);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    rows.push_back({s.times[i] * 1e6, s.fid_mean[i], s.fid_std[i], s.s_ent_mean[i], s.s_ent_std[i]});
  }
  const auto path = std::filesystem::path(cfg.output_dir) / "fid.csv";
  csm::write_csv(path, {"time_us", "fid_mean", "fid_std", "s_ent_mean", "s_ent_std"}, rows);
  print_written(path);
  return 0;
}

int run_intensities(const csm::RunConfig& cfg) {
  const auto s = csm::run_ensemble(cfg.ensemble);
  const auto written = csm::emit_traces(s, cfg.output_dir);
  std::filesystem::remove(written.traces);
  print_written(written.intensities);
  return 0;
}

int run_entropy(const csm::RunConfig& cfg) {
  const auto s = csm::run_ensemble(cfg.ensemble);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    rows.push_back({s.times[i] * 1e6, s.s1_mean[i], s.s1_std[i], s.s2_mean[i], s.s2_std[i]});
  }
  const auto path = std::filesystem::path(cfg.output_dir) / "entropy.csv";
  csm::write_csv(path, {"time_us", "s1_mean", "s1_std", "s2_mean", "s2_std"}, rows);
  print_written(path);
  return 0;
}

int run_ensemble_cmd(const csm::RunConfig& cfg) {
  const auto s = csm::run_ensemble(cfg.ensemble);
  const auto written = csm::emit_traces(s, cfg.output_dir);
  print_written(written.traces);
  print_written(written.intensities);
  return 0;
}

csm::ScalingReport run_sweep(const csm::RunConfig& cfg) {
  if (cfg.ensemble.fixed_couplings) throw csm::ConfigError("--couplings", "not supported by size sweeps");
  const auto summaries = csm::entropy_vs_size(cfg.scaling.sizes, cfg.ensemble, cfg.scaling.realizations_by_size);
  return csm::analyze_scaling(summaries, cfg.scaling.options);
}

int run_scaling(const csm::RunConfig& cfg) {
  const auto report = run_sweep(cfg);
  std::cout << csm::format_scaling_report(report);
  const auto path = std::filesystem::path(cfg.output_dir) / "scaling.csv";
  csm::write_scaling_csv(report, path);
  print_written(path);
  return 0;
}

int run_verify(const csm::RunConfig& cfg, int instances, int n_times) {
  std::vector<csm::CouplingSet> sets;
  for (int i = 0; i < instances; ++i) {
    sets.push_back(cfg.ensemble.fixed_couplings ? *cfg.ensemble.fixed_couplings
                                                : csm::realization_couplings(cfg.ensemble, i));
    if (cfg.ensemble.fixed_couplings) break;
  }
  // Times drawn from a stream disjoint from the orientation streams.
  csm::RngStream rng(cfg.ensemble.master_seed, ~std::uint64_t{0});
  std::vector<double> times;
  for (int i = 0; i < n_times; ++i) times.push_back(rng.next_unit() * cfg.ensemble.grid.t_max);

  const auto report = csm::verify_against_oracle(sets, times, cfg.protocol.n_phases, cfg.protocol.max_dense_spins);
  std::printf("oracle verification: N = %d, %zu instances x %zu times\n", sets.front().n_spins(),
              report.n_instances, report.n_times);
  for (const auto& check : report.checks) {
    std::printf("  %-4s %-42s max dev %.3e (tol %.0e)\n", check.passed() ? "PASS" : "FAIL", check.name.c_str(),
                check.max_deviation, check.tolerance);
  }
  std::printf("%s\n", report.passed() ? "verification passed" : "verification FAILED");
  return report.passed() ? 0 : kExitVerifyFailed;
}

int run_plot_data(const csm::RunConfig& cfg) {
  const std::filesystem::path dir(cfg.output_dir);
  const auto s = csm::run_ensemble(cfg.ensemble);
  print_written(csm::emit_decay(s, dir));
  print_written(csm::emit_orders(s, dir));
  print_written(csm::emit_size_scaling(run_sweep(cfg), dir));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central spin model: FID, Hamming-weight intensities and correlation entropies"};
  app.require_subcommand(1);

  CommonOptions common;
  std::optional<int> single;
  std::string sizes;
  int verify_instances = 5;
  int verify_times = 8;
  std::optional<int> max_dense;

  auto* fid = app.add_subcommand("fid", "FID and entanglement entropy (fid.csv)");
  fid->add_option("--realization", single, "evaluate one orientation instead of the ensemble");
  auto* inten = app.add_subcommand("intensities", "Hamming-weight intensities over time (intensities.csv)");
  auto* entropy = app.add_subcommand("entropy", "S1 and S2 traces (entropy.csv)");
  auto* ensemble = app.add_subcommand("ensemble", "full pipeline (traces.csv, intensities.csv)");
  auto* scaling = app.add_subcommand("scaling", "size sweep with ln(N) fits (scaling.csv)");
  auto* verify = app.add_subcommand("verify", "analytic engine against the dense oracle");
  verify->add_option("--instances", verify_instances, "orientations to test")->check(CLI::PositiveNumber);
  verify->add_option("--times", verify_times, "random times per orientation")->check(CLI::PositiveNumber);
  verify->add_option("--max-dense-spins", max_dense, "raise the dense oracle size cap");
  auto* plot = app.add_subcommand("plot-data", "decay.csv, orders.csv and size_scaling.csv");
  for (auto* cmd : {fid, inten, entropy, ensemble, scaling, verify, plot}) add_common(cmd, common);
  for (auto* cmd : {scaling, plot}) cmd->add_option("--sizes", sizes, "comma-separated bath sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    csm::RunConfig cfg = resolve(common);
    if (!sizes.empty()) cfg.scaling.sizes = csm::parse_int_list(sizes, "--sizes");
    if (max_dense) cfg.protocol.max_dense_spins = *max_dense;
    if (*verify && cfg.protocol.max_dense_spins > csm::kDefaultMaxDenseSpins) {
      const double gib = std::pow(4.0, cfg.protocol.max_dense_spins + 1) * 16.0 / (1 << 30);
      std::cerr << "warning: dense states at N = " << cfg.protocol.max_dense_spins << " take " << gib
                << " GiB each\n";
    }
    if (*fid) return run_fid(cfg, single);
    if (*inten) return run_intensities(cfg);
    if (*entropy) return run_entropy(cfg);
    if (*ensemble) return run_ensemble_cmd(cfg);
    if (*scaling) return run_scaling(cfg);
    if (*verify) return run_verify(cfg, verify_instances, verify_times);
    if (*plot) return run_plot_data(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalid;
}
