#pragma once

#include <span>
#include <vector>

#include "csm/geometry.hpp"

// Closed-form dynamics of a central spin coupled to its bath through commuting
// ZZ terms, H = sum_j omega_j sz^cs sz^j. Because every term commutes, the
// evolved state factorizes spin by spin: bath spin j is either left alone
// (weight cos^2(2 omega_j t)) or correlated with the central spin
// (weight sin^2(2 omega_j t)).

namespace csm {

/// Total squared amplitude p_m of terms correlating the central spin with
/// exactly m bath spins, m = 0..N.
struct ClusterWeightDistribution {
  std::vector<double> weights;
  double time = 0.0;

  int n_spins() const { return static_cast<int>(weights.size()) - 1; }
};

/// Intensities I_n of Hamming weight n = -N..N, stored at index n + N.
struct IntensitySpectrum {
  std::vector<double> intensities;
  double time = 0.0;

  int max_order() const { return (static_cast<int>(intensities.size()) - 1) / 2; }
  double at(int order) const { return intensities[static_cast<std::size_t>(order + max_order())]; }
};

/// Pi_j cos(2 omega_j t).
double fid(const CouplingSet& c, double t);

/// Per-spin correlation weights q_j = sin^2(2 omega_j t).
std::vector<double> flip_weights(const CouplingSet& c, double t);

/// Poisson-binomial mass of m successes over independent trials with
/// success probabilities `q`. O(N^2) convolution.
std::vector<double> poisson_binomial_pmf(std::span<const double> q);

ClusterWeightDistribution cluster_weights(const CouplingSet& c, double t);

/// Spreads each size-m cluster binomially over Hamming orders -m, -m+2, ..., m.
/// Holds the C(m, k)/2^m table for a fixed N so repeated calls do no setup.
class HammingSpreader {
 public:
  explicit HammingSpreader(int n_spins);

  int n_spins() const { return n_spins_; }
  IntensitySpectrum spread(const ClusterWeightDistribution& clusters) const;
  /// Writes 2N+1 intensities into `out`.
  void spread_into(std::span<const double> cluster_weights, std::span<double> out) const;

 private:
  int n_spins_;
  std::vector<double> table_;  // row m, column k: C(m, k) / 2^m
};

IntensitySpectrum hamming_intensities(const CouplingSet& c, double t);

/// Echo signal SIG_phi(2t) after encoding the bath with an x rotation by phi.
/// Evaluated as Pi_j (1 - q_j + q_j cos phi), which equals
/// sum_n e^{i n phi} I_n(t).
double encoded_signal(const CouplingSet& c, double t, double phi);

/// Same signal assembled from a spectrum: I_0 + 2 sum_{n>0} I_n cos(n phi).
double encoded_signal(const IntensitySpectrum& spectrum, double phi);

}  // namespace csm
