#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "csm/zz_dynamics.hpp"

namespace csm {

/// Von Neumann entropy (bits) of the central spin, whose reduced state has
/// eigenvalues (1 +- fid)/2. Throws std::domain_error for |fid| > 1.
double entanglement_entropy(double fid_value);

/// Shannon entropy (bits) of the Hamming-weight intensities.
/// Throws std::invalid_argument unless the spectrum is nonnegative and sums
/// to 1 within 1e-9.
double renyi_s1(const IntensitySpectrum& spectrum);
double renyi_s1(std::span<const double> intensities);

/// Collision entropy -log2(sum_n I_n^2), same preconditions as renyi_s1.
double renyi_s2(const IntensitySpectrum& spectrum);
double renyi_s2(std::span<const double> intensities);

enum class EntropyKind { kEntanglement, kS1, kS2 };

/// Entropy time series in bits. Spreads are empty for a single realization.
struct EntropyTrace {
  std::vector<double> times;  // seconds, strictly increasing
  std::vector<double> s_ent;
  std::vector<double> s1;
  std::vector<double> s2;
  std::vector<double> s_ent_std;
  std::vector<double> s1_std;
  std::vector<double> s2_std;

  std::span<const double> series(EntropyKind kind) const;
  /// Throws std::invalid_argument on length mismatch or a non-increasing grid.
  void validate() const;
};

struct SaturationEstimate {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n_samples = 0;
};

inline constexpr std::size_t kMinSaturationSamples = 10;

/// Mean and standard deviation of `values` over samples with time > t_min.
/// Rejects windows holding fewer than kMinSaturationSamples samples.
SaturationEstimate saturation_value(std::span<const double> times, std::span<const double> values,
                                    double t_min);
SaturationEstimate saturation_value(const EntropyTrace& trace, EntropyKind kind, double t_min);

/// First grid time at which `values` reaches `saturation`; nullopt if it never does.
std::optional<double> equilibration_time(std::span<const double> times,
                                         std::span<const double> values, double saturation);
std::optional<double> equilibration_time(const EntropyTrace& trace, EntropyKind kind,
                                         double saturation);

}  // namespace csm
