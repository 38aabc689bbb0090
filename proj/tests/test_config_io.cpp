#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "csm/config.hpp"
#include "csm/csv_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("csm_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_key(const std::string& text) {
  try {
    csm::parse_config(text);
  } catch (const csm::ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

csm::EnsembleSummary small_summary() {
  csm::EnsembleConfig cfg;
  cfg.n_realizations = 12;
  cfg.grid.t_max = 1000e-6;
  cfg.grid.n_steps = 21;
  cfg.geometry.n_rings = 1;
  return csm::run_ensemble(cfg);
}

}  // namespace

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const auto cfg = csm::parse_config("");
  EXPECT_EQ(cfg.ensemble.n_spins(), 15);
  EXPECT_EQ(cfg.ensemble.n_realizations, 300);
  EXPECT_EQ(cfg.ensemble.master_seed, 0u);
  EXPECT_DOUBLE_EQ(cfg.ensemble.grid.t_max, 8000e-6);
  EXPECT_EQ(cfg.ensemble.grid.n_steps, 801);
  EXPECT_EQ(cfg.protocol.n_phases, 0);
  EXPECT_EQ(cfg.geometry().ring_profile, csm::phenyl_ring_profile());
  EXPECT_EQ(cfg.scaling.sizes, (std::vector<int>{5, 10, 15, 20, 25, 30}));
}

TEST(ParseConfig, ReadsEverySection) {
  const auto cfg = csm::parse_config(R"(
# comment
[geometry]
spins_per_ring = 5
n_rings = 2
radius_growth_factor = 1.26
ring_profile = uniform
coupling_scale = 5000.5
[ensemble]
realizations = 40
seed = 18446744073709551615
t_max_us = 2500
steps = 251
workers = 3
[protocol]
n_phases = 16
max_dense_spins = 9
[scaling]
sizes = 5, 10, 15
realizations_by_size = 10:20, 15:5
fit_lo_us = 40
fit_hi_us = 320
saturation_t_min_us = 2000
[output]
dir = results/run1
)");
  EXPECT_EQ(cfg.ensemble.n_spins(), 10);
  EXPECT_TRUE(cfg.geometry().ring_profile.empty());
  EXPECT_EQ(cfg.geometry().coupling_scale, 5000.5);
  EXPECT_EQ(cfg.ensemble.n_realizations, 40);
  EXPECT_EQ(cfg.ensemble.master_seed, 18446744073709551615ull);
  EXPECT_DOUBLE_EQ(cfg.ensemble.grid.t_max, 2500e-6);
  EXPECT_EQ(cfg.ensemble.workers, 3);
  EXPECT_EQ(cfg.protocol.n_phases, 16);
  EXPECT_EQ(cfg.protocol.max_dense_spins, 9);
  EXPECT_EQ(cfg.scaling.sizes, (std::vector<int>{5, 10, 15}));
  EXPECT_EQ(cfg.scaling.realizations_by_size.at(10), 20);
  EXPECT_EQ(cfg.scaling.realizations_by_size.at(15), 5);
  EXPECT_DOUBLE_EQ(cfg.scaling.options.fit_lo, 40e-6);
  EXPECT_DOUBLE_EQ(cfg.scaling.options.saturation_t_min, 2000e-6);
  EXPECT_EQ(cfg.output_dir, "results/run1");
}

TEST(ParseConfig, ThreeRingsOfFive) {
  EXPECT_EQ(csm::parse_config("[geometry]\nn_rings = 3\nspins_per_ring = 5\n").ensemble.n_spins(), 15);
}

TEST(ParseConfig, NonFiveRingFallsBackToUniformProfile) {
  const auto cfg = csm::parse_config("[geometry]\nspins_per_ring = 6\n");
  EXPECT_TRUE(cfg.geometry().ring_profile.empty());
  EXPECT_EQ(cfg.ensemble.n_spins(), 18);
  EXPECT_EQ(error_key("[geometry]\nspins_per_ring = 6\nring_profile = phenyl\n"), "geometry.ring_profile");
}

TEST(ParseConfig, ZeroRingsIsRejected) {
  try {
    csm::parse_config("[geometry]\nn_rings = 0\n");
    FAIL() << "expected ConfigError";
  } catch (const csm::ConfigError& e) {
    EXPECT_EQ(e.key(), "geometry.n_rings");
    EXPECT_NE(std::string(e.what()).find("n_rings must be >= 1"), std::string::npos);
  }
}

TEST(ParseConfig, ErrorsNameTheKey) {
  EXPECT_EQ(error_key("[geometry]\ncolour = blue\n"), "geometry.colour");
  EXPECT_EQ(error_key("[physics]\nx = 1\n"), "physics");
  EXPECT_EQ(error_key("stray = 1\n"), "stray");
  EXPECT_EQ(error_key("[ensemble]\nrealizations = many\n"), "ensemble.realizations");
  EXPECT_EQ(error_key("[ensemble]\nrealizations = 3.5\n"), "ensemble.realizations");
  EXPECT_EQ(error_key("[ensemble]\nrealizations = 0\n"), "ensemble.realizations");
  EXPECT_EQ(error_key("[ensemble]\nsteps = 1\n"), "ensemble.steps");
  EXPECT_EQ(error_key("[ensemble]\nt_max_us = -5\n"), "ensemble.t_max_us");
  EXPECT_EQ(error_key("[geometry]\nradius_growth_factor = 1.0\n"), "geometry.radius_growth_factor");
  EXPECT_EQ(error_key("[scaling]\nrealizations_by_size = 25\n"), "scaling.realizations_by_size");
  EXPECT_EQ(error_key("[scaling]\nfit_lo_us = 400\n"), "scaling.fit_hi_us");
  EXPECT_EQ(error_key("[output]\ndir =\n"), "output.dir");
}

TEST(CouplingFile, ReadsHertzWithComments) {
  const auto dir = scratch_dir("couplings");
  fs::create_directories(dir);
  std::ofstream(dir / "c.txt") << "# bath\n1000\n\n-250.5  # weak\n";
  const auto c = csm::read_coupling_file((dir / "c.txt").string());
  ASSERT_EQ(c.n_spins(), 2);
  EXPECT_DOUBLE_EQ(c[0], 2000.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(c[1], -501.0 * std::numbers::pi);
  std::ofstream(dir / "bad.txt") << "12\nabc\n";
  EXPECT_THROW(csm::read_coupling_file((dir / "bad.txt").string()), csm::ConfigError);
  EXPECT_THROW(csm::read_coupling_file((dir / "missing.txt").string()), csm::ConfigError);
}

TEST(EmitTraces, HeadersAndFirstRow) {
  const auto dir = scratch_dir("emit");
  const auto s = small_summary();
  const auto out = csm::emit_traces(s, dir);
  const auto traces = slurp(out.traces);
  EXPECT_EQ(traces.substr(0, traces.find('\n')), csm::kTracesHeader);
  const auto t = csm::read_csv(out.traces);
  ASSERT_EQ(t.rows.size(), s.times.size());
  EXPECT_EQ(t.rows[0][t.column("time_us")], 0.0);
  EXPECT_EQ(t.rows[0][t.column("fid_mean")], 1.0);
  EXPECT_EQ(t.rows[0][t.column("s2_mean")], 0.0);
  EXPECT_EQ(t.rows[1][t.column("time_us")], 50.0);

  const auto inten = slurp(out.intensities);
  EXPECT_EQ(inten.substr(0, inten.find('\n')), csm::kIntensitiesHeader);
}

TEST(EmitTraces, IntensityRowsSortedAndNormalized) {
  const auto dir = scratch_dir("emit_sorted");
  const auto s = small_summary();
  const auto table = csm::read_csv(csm::emit_traces(s, dir).intensities);
  ASSERT_EQ(table.rows.size(), s.times.size() * s.n_orders());
  std::map<double, double> totals;
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    const auto& a = table.rows[r - 1];
    const auto& b = table.rows[r];
    EXPECT_TRUE(a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]));
  }
  for (const auto& row : table.rows) totals[row[0]] += row[2];
  for (const auto& [time, total] : totals) EXPECT_NEAR(total, 1.0, 1e-9) << "t = " << time;
}

TEST(EmitTraces, RoundTripIsExact) {
  const auto dir = scratch_dir("roundtrip");
  const auto s = small_summary();
  const auto t = csm::read_csv(csm::emit_traces(s, dir).traces);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    EXPECT_EQ(t.rows[i][0], s.times[i] * 1e6);
    EXPECT_EQ(t.rows[i][1], s.fid_mean[i]);
    EXPECT_EQ(t.rows[i][2], s.fid_std[i]);
    EXPECT_EQ(t.rows[i][5], s.s1_mean[i]);
    EXPECT_EQ(t.rows[i][8], s.s2_std[i]);
  }
  const auto in = csm::read_csv(dir / "intensities.csv");
  for (std::size_t r = 0; r < in.rows.size(); ++r) EXPECT_EQ(in.rows[r][2], s.intensity_mean[r]);
}

TEST(EmitTraces, ByteIdenticalOnRepeat) {
  const auto a = scratch_dir("repeat_a");
  const auto b = scratch_dir("repeat_b");
  csm::emit_traces(small_summary(), a);
  csm::emit_traces(small_summary(), b);
  EXPECT_EQ(slurp(a / "traces.csv"), slurp(b / "traces.csv"));
  EXPECT_EQ(slurp(a / "intensities.csv"), slurp(b / "intensities.csv"));
}

TEST(EmitTraces, IoErrorCarriesPath) {
  const auto dir = scratch_dir("blocked");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  try {
    csm::emit_traces(small_summary(), dir / "file" / "sub");
    FAIL() << "expected IoError";
  } catch (const csm::IoError& e) {
    EXPECT_NE(std::string(e.what()).find((dir / "file").string()), std::string::npos);
  }
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(csm::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(csm::format_double(1.0), "1");
  EXPECT_EQ(std::stod(csm::format_double(std::numbers::pi)), std::numbers::pi);
}

TEST(ScalingOutput, CsvAndReport) {
  csm::ScalingReport report;
  for (int n : {5, 10, 15}) {
    csm::SizeScaling row;
    row.n_spins = n;
    row.growth.slope = 0.6 + 0.01 * n;
    row.s2_saturation = 1.3 + 0.7 * std::log(n);
    if (n > 5) row.equilibration_time = 1.2e-3;
    report.sizes.push_back(row);
  }
  report.beta_fit = csm::fit_ln_n({{5, 0.65}, {10, 0.7}, {15, 0.75}});
  report.saturation_fit = csm::fit_ln_n({{5, 2.4}, {10, 2.9}, {15, 3.2}});
  const auto text = csm::format_scaling_report(report);
  EXPECT_NE(text.find("beta(N)"), std::string::npos);
  EXPECT_NE(text.find("S2_sat(N)"), std::string::npos);
  EXPECT_NE(text.find("not equilibrated within grid"), std::string::npos);

  const auto dir = scratch_dir("scaling");
  csm::write_scaling_csv(report, dir / "scaling.csv");
  const auto csv = slurp(dir / "scaling.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "quantity,n_spins,value,spread,r_squared");
  EXPECT_NE(csv.find("beta,10,"), std::string::npos);
  EXPECT_NE(csv.find("s2_saturation_fit_slope,,"), std::string::npos);
}

TEST(PlotData, LayoutsMatchColumns) {
  const auto dir = scratch_dir("figs");
  const auto s = small_summary();
  const auto decay = csm::read_csv(csm::emit_decay(s, dir));
  EXPECT_EQ(decay.columns.size(), 5u);
  const auto orders = csm::read_csv(csm::emit_orders(s, dir));
  EXPECT_EQ(orders.columns.front(), "time_us");
  EXPECT_EQ(orders.columns[1], "I_-5");
  EXPECT_EQ(orders.columns.back(), "s2_mean");
  EXPECT_EQ(orders.rows[0][orders.column("I_0")], 1.0);
}
