#include "csm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csm {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Entries down to -kNegativeSlack are treated as rounding noise around zero.
constexpr double kNegativeSlack = 1e-12;
constexpr double kNormTolerance = 1e-9;

void check_spectrum(std::span<const double> intensities) {
  if (intensities.empty()) throw std::invalid_argument("empty intensity spectrum");
  double sum = 0.0;
  for (double v : intensities) {
    if (!(v >= -kNegativeSlack)) throw std::invalid_argument("negative or NaN intensity");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw std::invalid_argument("intensity spectrum not normalized (sum = " + std::to_string(sum) + ")");
  }
}

}  // namespace

double entanglement_entropy(double fid_value) {
  if (!(std::abs(fid_value) <= 1.0)) {
    throw std::domain_error("FID value " + std::to_string(fid_value) + " outside [-1, 1]");
  }
  const double up = 0.5 * (1.0 + fid_value);
  const double down = 0.5 * (1.0 - fid_value);
  return -(plogp(up) + plogp(down));
}

double renyi_s1(std::span<const double> intensities) {
  check_spectrum(intensities);
  double sum = 0.0;
  for (double v : intensities) sum += plogp(v);
  return std::max(0.0, -sum);
}

double renyi_s2(std::span<const double> intensities) {
  check_spectrum(intensities);
  double purity = 0.0;
  for (double v : intensities) purity += v * v;
  return std::max(0.0, -std::log2(purity));
}

double renyi_s1(const IntensitySpectrum& spectrum) { return renyi_s1(spectrum.intensities); }
double renyi_s2(const IntensitySpectrum& spectrum) { return renyi_s2(spectrum.intensities); }

std::span<const double> EntropyTrace::series(EntropyKind kind) const {
  switch (kind) {
    case EntropyKind::kEntanglement:
      return s_ent;
    case EntropyKind::kS1:
      return s1;
    case EntropyKind::kS2:
      return s2;
  }
  throw std::invalid_argument("unknown entropy kind");
}

void EntropyTrace::validate() const {
  const auto n = times.size();
  if (s_ent.size() != n || s1.size() != n || s2.size() != n) {
    throw std::invalid_argument("EntropyTrace: series lengths differ from time grid");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("EntropyTrace: times not strictly increasing");
  }
}

SaturationEstimate saturation_value(std::span<const double> times, std::span<const double> values,
                                    double t_min) {
  if (times.size() != values.size()) throw std::invalid_argument("saturation_value: length mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > t_min) {
      sum += values[i];
      ++count;
    }
  }
  if (count < kMinSaturationSamples) {
    throw std::invalid_argument("saturation_value: only " + std::to_string(count) +
                                " samples beyond t_min (need " + std::to_string(kMinSaturationSamples) + ")");
  }
  SaturationEstimate est;
  est.n_samples = count;
  est.mean = sum / static_cast<double>(count);
  double sq = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > t_min) sq += (values[i] - est.mean) * (values[i] - est.mean);
  }
  est.stddev = std::sqrt(sq / static_cast<double>(count));
  return est;
}

SaturationEstimate saturation_value(const EntropyTrace& trace, EntropyKind kind, double t_min) {
  trace.validate();
  return saturation_value(trace.times, trace.series(kind), t_min);
}

std::optional<double> equilibration_time(std::span<const double> times,
                                         std::span<const double> values, double saturation) {
  if (times.size() != values.size()) throw std::invalid_argument("equilibration_time: length mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (values[i] >= saturation) return times[i];
  }
  return std::nullopt;
}

std::optional<double> equilibration_time(const EntropyTrace& trace, EntropyKind kind,
                                         double saturation) {
  trace.validate();
  return equilibration_time(trace.times, trace.series(kind), saturation);
}

}  // namespace csm
