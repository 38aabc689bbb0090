#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "csm/rng.hpp"

namespace csm {

using Vec3 = std::array<double, 3>;

/// Median of |3x^2 - 1| for x uniform on [0, 1]. For an in-plane bath spin
/// and an isotropically distributed field, cos(theta) is uniform on [-1, 1],
/// so this is the median of the first-ring angular factor.
inline constexpr double kMedianAngularFactor = 0.7806247497997997;  // sqrt(351)/24

/// Dipolar prefactor (rad/s) that puts the median |omega|/2pi of a uniform
/// first ring at `median_hz`.
constexpr double calibrated_coupling_scale(double median_hz) {
  return 2.0 * std::numbers::pi * median_hz / kMedianAngularFactor;
}

/// ZZ prefactor (rad/s) of the secular 31P-1H dipolar coupling at distance
/// `distance_nm`: d(3cos^2 theta - 1) Iz Sz with d = mu0/4pi gP gH hbar / r^3,
/// written with Pauli matrices (Iz Sz = sz sz / 4).
double phosphorus_proton_zz_scale(double distance_nm);

/// P-H distances in a P-phenyl fragment from standard bond lengths
/// (P-C 1.83 A, aromatic C-C 1.39 A, C-H 1.08 A).
inline constexpr double kOrthoDistanceNm = 0.2918;
inline constexpr double kMetaDistanceNm = 0.4942;
inline constexpr double kParaDistanceNm = 0.5690;

/// Radial multipliers for the five protons of a phenyl ring, in azimuthal
/// order ortho, meta, para, meta, ortho.
std::vector<double> phenyl_ring_profile();

/// Rings of bath spins in the plane z = 0 around a central spin at the
/// origin. Spin i of ring k (1-based) sits at azimuth
/// 2*pi*i/spins_per_ring + k*pi/spins_per_ring and radius
/// base_radius * growth^(k-1) * ring_profile[i]. An empty profile places
/// every spin of a ring on one circle.
struct GeometryConfig {
  int spins_per_ring = 5;
  int n_rings = 3;
  double base_radius_nm = kOrthoDistanceNm;
  double radius_growth_factor = 1.02;
  std::vector<double> ring_profile = phenyl_ring_profile();
  /// rad/s; coupling of a spin at reduced distance 1 with unit angular factor.
  double coupling_scale = phosphorus_proton_zz_scale(kOrthoDistanceNm);

  int n_spins() const { return spins_per_ring * n_rings; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Static field direction expressed in the molecule frame.
class Orientation {
 public:
  /// Normalizes `direction`; throws if it is zero or non-finite.
  static Orientation from_direction(const Vec3& direction);

  const Vec3& field_direction() const { return dir_; }
  Orientation flipped() const;

 private:
  explicit Orientation(const Vec3& unit) : dir_(unit) {}
  Vec3 dir_;
};

/// Isotropic direction on the unit sphere (powder averaging).
Orientation sample_orientation(RngStream& rng);

/// Per-bath-spin ZZ couplings omega_j in rad/s.
class CouplingSet {
 public:
  CouplingSet() = default;
  /// Throws std::invalid_argument on non-finite entries.
  explicit CouplingSet(std::vector<double> omegas);

  static CouplingSet from_hertz(std::span<const double> hz);

  std::span<const double> omegas() const { return omegas_; }
  double operator[](std::size_t j) const { return omegas_[j]; }
  int n_spins() const { return static_cast<int>(omegas_.size()); }

 private:
  std::vector<double> omegas_;
};

/// Bath spin positions (nm), ring by ring.
std::vector<Vec3> bath_positions(const GeometryConfig& cfg);

/// omega_j = coupling_scale * (3 cos^2 theta_j - 1) / (r_j / base_radius)^3,
/// theta_j the angle between the field and the central-to-bath-spin vector.
CouplingSet build_bath(const GeometryConfig& cfg, const Orientation& orient);

}  // namespace csm
