#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "csm/ensemble.hpp"

namespace {

csm::EnsembleConfig small_config() {
  csm::EnsembleConfig cfg;
  cfg.n_realizations = 70;  // spans three reduction blocks
  cfg.master_seed = 12345;
  cfg.grid.t_max = 3000e-6;
  cfg.grid.n_steps = 151;
  return cfg;
}

}  // namespace

TEST(TimeGrid, EndpointsAndSpacing) {
  const csm::TimeGrid grid;
  const auto t = grid.points();
  ASSERT_EQ(t.size(), 801u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t.back(), 8000e-6);
  EXPECT_DOUBLE_EQ(t[1], 10e-6);
}

TEST(Ensemble, BitwiseIdenticalAcrossWorkerCounts) {
  auto cfg = small_config();
  cfg.workers = 1;
  const auto a = csm::run_ensemble(cfg);
  for (int workers : {2, 3, 8}) {
    cfg.workers = workers;
    const auto b = csm::run_ensemble(cfg);
    EXPECT_EQ(a.fid_mean, b.fid_mean);
    EXPECT_EQ(a.fid_std, b.fid_std);
    EXPECT_EQ(a.s_ent_mean, b.s_ent_mean);
    EXPECT_EQ(a.s1_mean, b.s1_mean);
    EXPECT_EQ(a.s2_mean, b.s2_mean);
    EXPECT_EQ(a.s2_std, b.s2_std);
    EXPECT_EQ(a.intensity_mean, b.intensity_mean);
    EXPECT_EQ(a.intensity_std, b.intensity_std);
  }
}

TEST(Ensemble, RealizationDependsOnlyOnSeedAndIndex) {
  auto cfg = small_config();
  const auto c5 = csm::realization_couplings(cfg, 5);
  cfg.n_realizations = 3;
  cfg.workers = 4;
  const auto again = csm::realization_couplings(cfg, 5);
  ASSERT_EQ(c5.n_spins(), again.n_spins());
  for (int j = 0; j < c5.n_spins(); ++j) EXPECT_EQ(c5[j], again[j]);
  cfg.master_seed += 1;
  EXPECT_NE(csm::realization_couplings(cfg, 5)[0], c5[0]);
  EXPECT_NE(csm::realization_couplings(cfg, 6)[0], csm::realization_couplings(cfg, 5)[0]);
}

TEST(Ensemble, TimeZeroRowAndNormalization) {
  const auto s = csm::run_ensemble(small_config());
  EXPECT_EQ(s.fid_mean[0], 1.0);
  EXPECT_EQ(s.s2_mean[0], 0.0);
  EXPECT_EQ(s.s_ent_mean[0], 0.0);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    double total = 0.0;
    for (int n = -s.n_spins; n <= s.n_spins; ++n) total += s.intensity_at(i, n);
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_LE(s.s2_mean[i], s.s1_mean[i] + 1e-12);
    EXPECT_GE(s.fid_std[i], 0.0);
  }
}

TEST(Ensemble, MeansMatchDirectAverage) {
  auto cfg = small_config();
  cfg.n_realizations = 9;
  const auto s = csm::run_ensemble(cfg);
  const auto times = cfg.grid.points();
  std::vector<double> fid_sum(times.size(), 0.0), s2_sq(times.size(), 0.0), s2_sum(times.size(), 0.0);
  for (int r = 0; r < cfg.n_realizations; ++r) {
    const auto trace = csm::evaluate_realization(csm::realization_couplings(cfg, r), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      fid_sum[i] += trace.fid[i];
      s2_sum[i] += trace.s2[i];
      s2_sq[i] += trace.s2[i] * trace.s2[i];
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(s.fid_mean[i], fid_sum[i] / 9, 1e-14);
    const double m = s2_sum[i] / 9;
    EXPECT_NEAR(s.s2_std[i], std::sqrt(std::max(0.0, s2_sq[i] / 9 - m * m)), 1e-7);
  }
}

TEST(Ensemble, FixedCouplingsHaveNoSpread) {
  auto cfg = small_config();
  cfg.fixed_couplings = csm::CouplingSet({3000.0, -1200.0, 800.0, 5100.0});
  cfg.n_realizations = 5;
  const auto s = csm::run_ensemble(cfg);
  EXPECT_EQ(s.n_spins, 4);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    EXPECT_NEAR(s.fid_std[i], 0.0, 1e-7);
    EXPECT_NEAR(s.fid_mean[i], csm::fid(*cfg.fixed_couplings, s.times[i]), 1e-14);
  }
}

TEST(Ensemble, RejectsInvalidConfig) {
  auto cfg = small_config();
  cfg.n_realizations = 0;
  EXPECT_THROW(csm::run_ensemble(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.grid.n_steps = 1;
  EXPECT_THROW(csm::run_ensemble(cfg), std::invalid_argument);
  const std::vector<int> sizes{5, 7};
  EXPECT_THROW(csm::entropy_vs_size(sizes, small_config()), std::invalid_argument);
}

TEST(EntropyVsSize, SaturationIncreasesWithBathSize) {
  csm::EnsembleConfig cfg;
  cfg.n_realizations = 60;
  const std::vector<int> sizes{5, 10, 15, 20};
  const auto out = csm::entropy_vs_size(sizes, cfg, {{20, 30}});
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out.at(20).n_realizations, 30);
  EXPECT_EQ(out.at(10).n_spins, 10);
  double prev = 0.0;
  for (int n : sizes) {
    const auto sat = csm::saturation_value(out.at(n).entropy_trace(), csm::EntropyKind::kS2, 5000e-6);
    EXPECT_GT(sat.mean, prev) << "N = " << n;
    prev = sat.mean;
  }
}
