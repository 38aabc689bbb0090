#include "csm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csm {

double phosphorus_proton_zz_scale(double distance_nm) {
  constexpr double kMu0Over4Pi = 1e-7;           // T m / A
  constexpr double kGammaH = 2.6752218744e8;     // rad / (s T)
  constexpr double kGammaP = 1.0839e8;           // rad / (s T)
  constexpr double kHbar = 1.054571817e-34;      // J s
  const double r = distance_nm * 1e-9;
  const double d = kMu0Over4Pi * kGammaH * kGammaP * kHbar / (r * r * r);
  return 0.25 * d;
}

std::vector<double> phenyl_ring_profile() {
  constexpr double meta = kMetaDistanceNm / kOrthoDistanceNm;
  constexpr double para = kParaDistanceNm / kOrthoDistanceNm;
  return {1.0, meta, para, meta, 1.0};
}

void GeometryConfig::validate() const {
  if (spins_per_ring < 1) throw std::invalid_argument("spins_per_ring must be >= 1");
  if (n_rings < 1) throw std::invalid_argument("n_rings must be >= 1");
  if (!(base_radius_nm > 0.0) || !std::isfinite(base_radius_nm)) {
    throw std::invalid_argument("base_radius_nm must be > 0");
  }
  if (!(radius_growth_factor > 1.0) || !std::isfinite(radius_growth_factor)) {
    throw std::invalid_argument("radius_growth_factor must be > 1");
  }
  if (!ring_profile.empty()) {
    if (ring_profile.size() != static_cast<std::size_t>(spins_per_ring)) {
      throw std::invalid_argument("ring_profile must list spins_per_ring = " +
                                  std::to_string(spins_per_ring) + " multipliers");
    }
    for (double f : ring_profile) {
      if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("ring_profile entries must be > 0");
    }
  }
  if (!std::isfinite(coupling_scale)) {
    throw std::invalid_argument("coupling_scale must be finite");
  }
}

Orientation Orientation::from_direction(const Vec3& direction) {
  const double norm = std::hypot(direction[0], direction[1], direction[2]);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("orientation direction must be finite and nonzero");
  }
  return Orientation({direction[0] / norm, direction[1] / norm, direction[2] / norm});
}

Orientation Orientation::flipped() const { return Orientation({-dir_[0], -dir_[1], -dir_[2]}); }

Orientation sample_orientation(RngStream& rng) {
  // Archimedes: z uniform on [-1, 1] gives the area measure.
  const double z = 2.0 * rng.next_unit() - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * rng.next_unit();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Orientation::from_direction({rho * std::cos(azimuth), rho * std::sin(azimuth), z});
}

CouplingSet::CouplingSet(std::vector<double> omegas) : omegas_(std::move(omegas)) {
  for (std::size_t j = 0; j < omegas_.size(); ++j) {
    if (!std::isfinite(omegas_[j])) {
      throw std::invalid_argument("coupling " + std::to_string(j) + " is not finite");
    }
  }
}

CouplingSet CouplingSet::from_hertz(std::span<const double> hz) {
  std::vector<double> omegas(hz.begin(), hz.end());
  for (double& w : omegas) w *= 2.0 * std::numbers::pi;
  return CouplingSet(std::move(omegas));
}

std::vector<Vec3> bath_positions(const GeometryConfig& cfg) {
  cfg.validate();
  std::vector<Vec3> positions;
  positions.reserve(static_cast<std::size_t>(cfg.n_spins()));
  const double spacing = 2.0 * std::numbers::pi / cfg.spins_per_ring;
  for (int ring = 1; ring <= cfg.n_rings; ++ring) {
    const double radius = cfg.base_radius_nm * std::pow(cfg.radius_growth_factor, ring - 1);
    const double offset = ring * std::numbers::pi / cfg.spins_per_ring;
    for (int i = 0; i < cfg.spins_per_ring; ++i) {
      const double azimuth = i * spacing + offset;
      const double r = cfg.ring_profile.empty() ? radius : radius * cfg.ring_profile[static_cast<std::size_t>(i)];
      positions.push_back({r * std::cos(azimuth), r * std::sin(azimuth), 0.0});
    }
  }
  return positions;
}

CouplingSet build_bath(const GeometryConfig& cfg, const Orientation& orient) {
  const auto positions = bath_positions(cfg);
  const Vec3& b = orient.field_direction();
  std::vector<double> omegas;
  omegas.reserve(positions.size());
  for (const Vec3& p : positions) {
    const double r = std::hypot(p[0], p[1], p[2]);
    if (!(r > 0.0)) throw std::invalid_argument("bath spin placed at the central spin position");
    const double cos_theta = (p[0] * b[0] + p[1] * b[1] + p[2] * b[2]) / r;
    const double reduced = r / cfg.base_radius_nm;
    omegas.push_back(cfg.coupling_scale * (3.0 * cos_theta * cos_theta - 1.0) /
                     (reduced * reduced * reduced));
  }
  return CouplingSet(std::move(omegas));
}

}  // namespace csm
