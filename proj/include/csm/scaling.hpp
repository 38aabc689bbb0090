#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "csm/ensemble.hpp"

namespace csm {

/// Ordinary least squares y = intercept + slope * x.
struct FitResult {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
  double r_squared = 0.0;
  std::size_t n_samples = 0;
  /// Range of the raw abscissa that was fitted (seconds for time fits,
  /// bath size for size fits).
  double window_lo = 0.0;
  double window_hi = 0.0;

  double operator()(double x) const { return intercept + slope * x; }
};

/// Requires at least 3 points and a non-degenerate abscissa.
FitResult fit_linear(std::span<const double> x, std::span<const double> y);

/// Fits values against log2(t / 1 us) over samples with t_lo <= t <= t_hi
/// (times in seconds). Rejects windows with fewer than 3 samples or t <= 0.
FitResult fit_log_time(std::span<const double> times, std::span<const double> values, double t_lo,
                       double t_hi);
FitResult fit_log_time(const EntropyTrace& trace, double t_lo, double t_hi,
                       EntropyKind kind = EntropyKind::kS2);

/// Fits value against ln(N). Needs at least 3 distinct sizes.
FitResult fit_ln_n(const std::map<int, double>& points);

struct ScalingOptions {
  double fit_lo = 50e-6;
  double fit_hi = 300e-6;
  double saturation_t_min = 5000e-6;
};

struct SizeScaling {
  int n_spins = 0;
  int n_realizations = 0;
  FitResult growth;  // S2 vs log2(t/us) in the fit window; slope is beta
  double s2_saturation = 0.0;
  double s2_saturation_std = 0.0;
  std::optional<double> equilibration_time;
};

struct ScalingReport {
  std::vector<SizeScaling> sizes;
  FitResult beta_fit;
  FitResult saturation_fit;
  /// Mean and population std of T_eq over sizes >= 15 that equilibrated.
  double t_eq_mean = 0.0;
  double t_eq_std = 0.0;
  int t_eq_count = 0;
};

inline constexpr int kLargeBathThreshold = 15;

ScalingReport analyze_scaling(const std::map<int, EnsembleSummary>& summaries,
                              const ScalingOptions& options = {});

}  // namespace csm
