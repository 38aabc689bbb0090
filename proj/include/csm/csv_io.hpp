#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "csm/ensemble.hpp"
#include "csm/scaling.hpp"

namespace csm {

/// File-system failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTracesHeader =
    "time_us,fid_mean,fid_std,s_ent_mean,s_ent_std,s1_mean,s1_std,s2_mean,s2_std";
inline constexpr const char* kIntensitiesHeader = "time_us,n,intensity_mean,intensity_std";

/// A numeric CSV file: one header line, then rows of equal width.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double value);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);
CsvTable read_csv(const std::filesystem::path& path);

struct EmittedTraces {
  std::filesystem::path traces;
  std::filesystem::path intensities;
};

/// Writes traces.csv and intensities.csv into `dir` (created if needed).
EmittedTraces emit_traces(const EnsembleSummary& summary, const std::filesystem::path& dir);

/// Columns quantity,n_spins,value,spread,r_squared. One row per (quantity, N)
/// for beta, s2_saturation and t_eq_us, then the ln(N) fit coefficients with
/// n_spins left blank.
void write_scaling_csv(const ScalingReport& report, const std::filesystem::path& path);

std::string format_scaling_report(const ScalingReport& report);

/// Plot-ready files. decay.csv: FID and S_ent mean/std per time.
/// orders.csv: I_n for n = -max_order..max_order plus S1 and S2 per time.
/// size_scaling.csv: per size beta, S2 saturation and T_eq with the ln(N) fit values.
std::filesystem::path emit_decay(const EnsembleSummary& summary, const std::filesystem::path& dir);
std::filesystem::path emit_orders(const EnsembleSummary& summary, const std::filesystem::path& dir,
                                int max_order = 6);
std::filesystem::path emit_size_scaling(const ScalingReport& report, const std::filesystem::path& dir);

}  // namespace csm
