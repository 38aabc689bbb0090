#include "csm/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csm {

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_linear: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("fit_linear: need at least 3 samples, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_linear: abscissa has no spread");

  FitResult fit;
  fit.n_samples = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit(x[i]);
    ss_res += r * r;
  }
  fit.rms_residual = std::sqrt(ss_res / static_cast<double>(n));
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

FitResult fit_log_time(std::span<const double> times, std::span<const double> values, double t_lo,
                       double t_hi) {
  if (times.size() != values.size()) throw std::invalid_argument("fit_log_time: length mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(times[i] > 0.0)) throw std::invalid_argument("fit_log_time: window contains t <= 0");
    x.push_back(std::log2(times[i] / 1e-6));
    y.push_back(values[i]);
  }
  if (x.size() < 3) {
    throw std::invalid_argument("fit_log_time: window holds " + std::to_string(x.size()) +
                                " samples (need 3)");
  }
  FitResult fit = fit_linear(x, y);
  fit.window_lo = t_lo;
  fit.window_hi = t_hi;
  return fit;
}

FitResult fit_log_time(const EntropyTrace& trace, double t_lo, double t_hi, EntropyKind kind) {
  trace.validate();
  return fit_log_time(trace.times, trace.series(kind), t_lo, t_hi);
}

FitResult fit_ln_n(const std::map<int, double>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_ln_n: need at least 3 sizes, got " + std::to_string(points.size()));
  }
  std::vector<double> x, y;
  for (const auto& [n, value] : points) {
    if (n < 1) throw std::invalid_argument("fit_ln_n: sizes must be positive");
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(value);
  }
  FitResult fit = fit_linear(x, y);
  fit.window_lo = points.begin()->first;
  fit.window_hi = points.rbegin()->first;
  return fit;
}

ScalingReport analyze_scaling(const std::map<int, EnsembleSummary>& summaries,
                              const ScalingOptions& options) {
  ScalingReport report;
  std::map<int, double> betas, saturations;
  std::vector<double> t_eqs;
  for (const auto& [n, summary] : summaries) {
    const EntropyTrace trace = summary.entropy_trace();
    SizeScaling row;
    row.n_spins = n;
    row.n_realizations = summary.n_realizations;
    row.growth = fit_log_time(trace, options.fit_lo, options.fit_hi, EntropyKind::kS2);
    const auto sat = saturation_value(trace, EntropyKind::kS2, options.saturation_t_min);
    row.s2_saturation = sat.mean;
    row.s2_saturation_std = sat.stddev;
    row.equilibration_time = equilibration_time(trace, EntropyKind::kS2, sat.mean);
    betas[n] = row.growth.slope;
    saturations[n] = row.s2_saturation;
    if (n >= kLargeBathThreshold && row.equilibration_time) t_eqs.push_back(*row.equilibration_time);
    report.sizes.push_back(row);
  }
  if (summaries.size() >= 3) {
    report.beta_fit = fit_ln_n(betas);
    report.saturation_fit = fit_ln_n(saturations);
  }
  if (!t_eqs.empty()) {
    double sum = 0.0;
    for (double t : t_eqs) sum += t;
    report.t_eq_mean = sum / static_cast<double>(t_eqs.size());
    double sq = 0.0;
    for (double t : t_eqs) sq += (t - report.t_eq_mean) * (t - report.t_eq_mean);
    report.t_eq_std = std::sqrt(sq / static_cast<double>(t_eqs.size()));
    report.t_eq_count = static_cast<int>(t_eqs.size());
  }
  return report;
}

}  // namespace csm
