#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "csm/entropy.hpp"
#include "csm/geometry.hpp"

namespace csm {

/// Uniform grid of n_steps points on [0, t_max] (seconds).
struct TimeGrid {
  double t_max = 8000e-6;
  int n_steps = 801;

  double at(int i) const { return t_max * i / (n_steps - 1); }
  std::vector<double> points() const;
};

struct EnsembleConfig {
  int n_realizations = 300;
  std::uint64_t master_seed = 0;
  TimeGrid grid;
  GeometryConfig geometry;
  /// Evaluate this coupling set instead of sampling orientations; every
  /// realization is then identical.
  std::optional<CouplingSet> fixed_couplings;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  int workers = 0;

  int n_spins() const;
  void validate() const;
};

/// One realization evaluated on a time grid. Intensities are row-major,
/// (2N+1) values per time point, order n at column n + N.
struct RealizationTrace {
  CouplingSet couplings;
  std::vector<double> fid;
  std::vector<double> s_ent;
  std::vector<double> s1;
  std::vector<double> s2;
  std::vector<double> intensities;
};

struct EnsembleSummary {
  int n_spins = 0;
  int n_realizations = 0;
  std::vector<double> times;
  std::vector<double> fid_mean, fid_std;
  std::vector<double> s_ent_mean, s_ent_std;
  std::vector<double> s1_mean, s1_std;
  std::vector<double> s2_mean, s2_std;
  /// Row-major, (2N+1) columns per time point.
  std::vector<double> intensity_mean, intensity_std;

  std::size_t n_orders() const { return 2 * static_cast<std::size_t>(n_spins) + 1; }
  double intensity_at(std::size_t time_index, int order) const {
    return intensity_mean[time_index * n_orders() + static_cast<std::size_t>(order + n_spins)];
  }
  EntropyTrace entropy_trace() const;
};

/// Couplings of realization `index`, drawn from its own RNG substream.
CouplingSet realization_couplings(const EnsembleConfig& cfg, int index);

RealizationTrace evaluate_realization(const CouplingSet& couplings, std::span<const double> times);

/// Powder average. Output is bitwise identical for any worker count: each
/// realization is computed independently and reduced in index order with
/// compensated sums.
EnsembleSummary run_ensemble(const EnsembleConfig& cfg);

/// One ensemble per bath size. Sizes must be multiples of
/// cfg.geometry.spins_per_ring; `realizations_by_size` overrides the
/// realization count for individual sizes.
std::map<int, EnsembleSummary> entropy_vs_size(std::span<const int> sizes, const EnsembleConfig& cfg,
                                               const std::map<int, int>& realizations_by_size = {});

}  // namespace csm
