#include "csm/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace csm {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const fs::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match header of '" +
                                  path.string() + "'");
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  out.close();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
  table.columns = split_line(line);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.columns.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

EmittedTraces emit_traces(const EnsembleSummary& summary, const fs::path& dir) {
  ensure_dir(dir);
  const std::size_t n_times = summary.times.size();
  std::vector<std::vector<double>> rows;
  rows.reserve(n_times);
  for (std::size_t i = 0; i < n_times; ++i) {
    rows.push_back({summary.times[i] * 1e6, summary.fid_mean[i], summary.fid_std[i], summary.s_ent_mean[i],
                    summary.s_ent_std[i], summary.s1_mean[i], summary.s1_std[i], summary.s2_mean[i],
                    summary.s2_std[i]});
  }
  EmittedTraces out{dir / "traces.csv", dir / "intensities.csv"};
  write_csv(out.traces, split_line(kTracesHeader), rows);

  rows.clear();
  const std::size_t n_orders = summary.n_orders();
  rows.reserve(n_times * n_orders);
  for (std::size_t i = 0; i < n_times; ++i) {
    for (std::size_t k = 0; k < n_orders; ++k) {
      const double n = static_cast<double>(static_cast<int>(k) - summary.n_spins);
      rows.push_back({summary.times[i] * 1e6, n, summary.intensity_mean[i * n_orders + k],
                      summary.intensity_std[i * n_orders + k]});
    }
  }
  write_csv(out.intensities, split_line(kIntensitiesHeader), rows);
  return out;
}

void write_scaling_csv(const ScalingReport& report, const fs::path& path) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "quantity,n_spins,value,spread,r_squared\n";
  // beta rows: spread is the fit rms residual; saturation rows: ensemble std over the plateau
  for (const auto& row : report.sizes) {
    out << "beta," << row.n_spins << ',' << format_double(row.growth.slope) << ','
        << format_double(row.growth.rms_residual) << ',' << format_double(row.growth.r_squared) << '\n';
  }
  for (const auto& row : report.sizes) {
    out << "s2_saturation," << row.n_spins << ',' << format_double(row.s2_saturation) << ','
        << format_double(row.s2_saturation_std) << ",\n";
  }
  for (const auto& row : report.sizes) {
    out << "t_eq_us," << row.n_spins << ','
        << (row.equilibration_time ? format_double(*row.equilibration_time * 1e6) : "") << ",,\n";
  }
  if (report.beta_fit.n_samples > 0) {
    const auto fit_rows = [&](const char* name, const FitResult& fit) {
      out << name << "_fit_intercept,," << format_double(fit.intercept) << ',' << format_double(fit.rms_residual)
          << ',' << format_double(fit.r_squared) << '\n';
      out << name << "_fit_slope,," << format_double(fit.slope) << ',' << format_double(fit.rms_residual) << ','
          << format_double(fit.r_squared) << '\n';
    };
    fit_rows("beta", report.beta_fit);
    fit_rows("s2_saturation", report.saturation_fit);
  }
  out.close();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string format_scaling_report(const ScalingReport& report) {
  std::ostringstream out;
  char buf[160];
  out << "   N  realizations   beta    alpha   R2(beta)   S2_sat   S2_sat_std   T_eq_us\n";
  for (const auto& row : report.sizes) {
    std::snprintf(buf, sizeof buf, "%4d  %12d  %6.4f  %7.4f  %8.4f  %7.4f  %10.4f  ", row.n_spins, row.n_realizations,
                  row.growth.slope, row.growth.intercept, row.growth.r_squared, row.s2_saturation,
                  row.s2_saturation_std);
    out << buf;
    if (row.equilibration_time) {
      std::snprintf(buf, sizeof buf, "%8.1f\n", *row.equilibration_time * 1e6);
      out << buf;
    } else {
      out << "not equilibrated within grid\n";
    }
  }
  if (report.beta_fit.n_samples > 0) {
    std::snprintf(buf, sizeof buf, "beta(N)   = %.4f + %.4f ln N   (R2 = %.4f)\n", report.beta_fit.intercept,
                  report.beta_fit.slope, report.beta_fit.r_squared);
    out << buf;
    std::snprintf(buf, sizeof buf, "S2_sat(N) = %.4f + %.4f ln N   (R2 = %.4f)\n", report.saturation_fit.intercept,
                  report.saturation_fit.slope, report.saturation_fit.r_squared);
    out << buf;
  } else {
    out << "ln(N) fits need at least 3 sizes\n";
  }
  if (report.t_eq_count > 0) {
    std::snprintf(buf, sizeof buf, "T_eq (N >= %d) = %.1f +- %.1f us over %d sizes\n", kLargeBathThreshold,
                  report.t_eq_mean * 1e6, report.t_eq_std * 1e6, report.t_eq_count);
    out << buf;
  }
  return out.str();
}

fs::path emit_decay(const EnsembleSummary& summary, const fs::path& dir) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < summary.times.size(); ++i) {
    rows.push_back({summary.times[i] * 1e6, summary.fid_mean[i], summary.fid_std[i], summary.s_ent_mean[i],
                    summary.s_ent_std[i]});
  }
  const fs::path path = dir / "decay.csv";
  write_csv(path, {"time_us", "fid_mean", "fid_std", "s_ent_mean", "s_ent_std"}, rows);
  return path;
}

fs::path emit_orders(const EnsembleSummary& summary, const fs::path& dir, int max_order) {
  max_order = std::min(max_order, summary.n_spins);
  std::vector<std::string> columns{"time_us"};
  for (int n = -max_order; n <= max_order; ++n) columns.push_back("I_" + std::to_string(n));
  columns.push_back("s1_mean");
  columns.push_back("s2_mean");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < summary.times.size(); ++i) {
    std::vector<double> row{summary.times[i] * 1e6};
    for (int n = -max_order; n <= max_order; ++n) row.push_back(summary.intensity_at(i, n));
    row.push_back(summary.s1_mean[i]);
    row.push_back(summary.s2_mean[i]);
    rows.push_back(std::move(row));
  }
  const fs::path path = dir / "orders.csv";
  write_csv(path, columns, rows);
  return path;
}

fs::path emit_size_scaling(const ScalingReport& report, const fs::path& dir) {
  const bool fitted = report.beta_fit.n_samples > 0;
  const double nan = std::nan("");
  std::vector<std::vector<double>> rows;
  for (const auto& row : report.sizes) {
    const double ln_n = std::log(static_cast<double>(row.n_spins));
    rows.push_back({static_cast<double>(row.n_spins), row.growth.slope, fitted ? report.beta_fit(ln_n) : nan,
                    row.s2_saturation, row.s2_saturation_std, fitted ? report.saturation_fit(ln_n) : nan,
                    row.equilibration_time ? *row.equilibration_time * 1e6 : nan});
  }
  const fs::path path = dir / "size_scaling.csv";
  write_csv(path, {"n_spins", "beta", "beta_fit", "s2_saturation", "s2_saturation_std", "s2_saturation_fit", "t_eq_us"},
            rows);
  return path;
}

}  // namespace csm
