#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csm/geometry.hpp"
#include "csm/zz_dynamics.hpp"

// Brute-force density-matrix simulation of the phase-encoded echo protocol:
// evolve under the ZZ Hamiltonian, rotate the bath about x by phi, reverse the
// evolution, read out the central spin, and Fourier transform over phi.
//
// Basis index layout: the central spin is the most significant bit, bath spin
// j is bit j. A set bit means spin down (sz = -1).

namespace csm {

inline constexpr int kDefaultMaxDenseSpins = 10;

class DenseState {
 public:
  /// rho(0) = (sx/2) (x) (1/2)^(x)N. Throws std::invalid_argument when
  /// n_spins exceeds `max_spins`.
  static DenseState initial(int n_spins, int max_spins = kDefaultMaxDenseSpins);

  /// Wraps an existing matrix; its dimension must be 2^(n_spins+1).
  DenseState(int n_spins, Eigen::MatrixXcd matrix);

  int n_spins() const { return n_spins_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd& matrix() { return matrix_; }

 private:
  int n_spins_;
  Eigen::MatrixXcd matrix_;
};

/// Diagonal of H in the product basis.
std::vector<double> zz_energies(const CouplingSet& c);

/// U(t) rho U(t)^dagger with U(t) = exp(-i H t). Negative t applies U^dagger.
DenseState evolve(const DenseState& state, const CouplingSet& c, double t);

/// R rho R^dagger with R = exp(i phi/2 sum_j sx^j) on the bath only.
DenseState rotate_bath(const DenseState& state, double phi);

/// Conjugation by exp(-i pi/2 sx) on the central spin.
DenseState pi_pulse_central(const DenseState& state);

/// Tr_B[rho] as a 2x2 matrix.
Eigen::Matrix2cd reduced_central_spin(const DenseState& state);

/// Tr[Tr_B[rho] sx].
double central_spin_x(const DenseState& state);

/// FID as the average over all 2^(N+1) z configurations of
/// cos(2 <phi_k|H|phi_k> t).
double fid_configuration_sum(const CouplingSet& c, double t);

/// Smallest power of two >= 2N + 2.
int default_phase_count(int n_spins);

/// SIG_phi(2t) for phi_k = 2 pi k / n_phases, k = 0..n_phases-1.
std::vector<double> protocol_signals(const CouplingSet& c, double t, int n_phases,
                                     int max_spins = kDefaultMaxDenseSpins);

/// Discrete Fourier transform of SIG over the phase grid into I_n,
/// n = -N..N. Rejects fewer than 2N + 2 phases and throws
/// std::runtime_error if any order keeps an imaginary part >= 1e-10.
IntensitySpectrum demodulate(std::span<const double> signals, int n_spins, double t);

/// Full protocol; n_phases < 2N + 2 is rejected with std::invalid_argument.
IntensitySpectrum run_protocol(const CouplingSet& c, double t, int n_phases,
                               int max_spins = kDefaultMaxDenseSpins);

struct PiPulseReport {
  bool passed = false;
  double max_state_deviation = 0.0;
  double signal_deviation = 0.0;
};

/// Compares the direct reversal U^dagger rho_phi U against the physical route
/// U P rho_phi P^dagger U^dagger (P a pi pulse on the central spin), with the
/// pulse frame undone before comparison. State deviation is elementwise and
/// relative to the largest entry. rho_phi is the state after
/// evolution by t and a bath rotation by `phi`.
PiPulseReport pi_pulse_equivalence(const CouplingSet& c, double t, double phi = 1.0,
                                   double tolerance = 1e-10);

bool pi_pulse_equivalence_check(const CouplingSet& c, double t);

struct OracleCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_deviation < tolerance; }
};

struct VerificationReport {
  std::vector<OracleCheck> checks;
  std::size_t n_instances = 0;
  std::size_t n_times = 0;

  bool passed() const;
};

/// Runs the analytic engine against the dense oracle on every (instance,
/// time) pair. n_phases = 0 picks default_phase_count; odd counts are
/// bumped by one so that phi = pi lies on the grid.
VerificationReport verify_against_oracle(std::span<const CouplingSet> instances, std::span<const double> times,
                                         int n_phases = 0, int max_spins = kDefaultMaxDenseSpins);

}  // namespace csm
