#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csm/ensemble.hpp"
#include "csm/oracle.hpp"
#include "csm/scaling.hpp"

namespace csm {

/// Validation failure in a configuration file or command-line override.
/// `key()` names the offending setting as "section.key" when known.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ProtocolConfig {
  int n_phases = 0;  // 0: default_phase_count(N)
  int max_dense_spins = kDefaultMaxDenseSpins;
};

struct ScalingConfig {
  std::vector<int> sizes{5, 10, 15, 20, 25, 30};
  std::map<int, int> realizations_by_size;
  ScalingOptions options;
};

struct RunConfig {
  EnsembleConfig ensemble;  // geometry lives in ensemble.geometry
  ProtocolConfig protocol;
  ScalingConfig scaling;
  std::string output_dir = "out";
  std::string coupling_file;  // one omega/2pi value (Hz) per line

  GeometryConfig& geometry() { return ensemble.geometry; }
  const GeometryConfig& geometry() const { return ensemble.geometry; }

  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// Parses sectioned key = value text:
///
///   [geometry]   spins_per_ring, n_rings, base_radius_nm, radius_growth_factor,
///                ring_profile ("phenyl", "uniform" or comma list),
///                coupling_scale (rad/s), coupling_file
///   [ensemble]   realizations, seed, t_max_us, steps, workers
///   [protocol]   n_phases, max_dense_spins
///   [scaling]    sizes, realizations_by_size ("25:100, 30:20"), fit_lo_us,
///                fit_hi_us, saturation_t_min_us
///   [output]     dir
///
/// Missing keys take defaults; unknown sections or keys are errors.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Reads a coupling list (Hz, one per line; blank lines and '#' comments skipped).
CouplingSet read_coupling_file(const std::string& path);

std::vector<int> parse_int_list(const std::string& text, const std::string& key);

}  // namespace csm
