#include "csm/zz_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace csm {

double fid(const CouplingSet& c, double t) {
  double product = 1.0;
  for (double w : c.omegas()) product *= std::cos(2.0 * w * t);
  return product;
}

std::vector<double> flip_weights(const CouplingSet& c, double t) {
  std::vector<double> q;
  q.reserve(c.omegas().size());
  for (double w : c.omegas()) {
    const double s = std::sin(2.0 * w * t);
    q.push_back(s * s);
  }
  return q;
}

std::vector<double> poisson_binomial_pmf(std::span<const double> q) {
  std::vector<double> pmf(q.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double hit = q[j];
    if (!(hit >= 0.0 && hit <= 1.0)) throw std::invalid_argument("trial probability outside [0, 1]");
    const double miss = 1.0 - hit;
    for (std::size_t m = j + 1; m > 0; --m) pmf[m] = pmf[m] * miss + pmf[m - 1] * hit;
    pmf[0] *= miss;
  }
  return pmf;
}

ClusterWeightDistribution cluster_weights(const CouplingSet& c, double t) {
  // Same recurrence as poisson_binomial_pmf, but with cos^2 kept exact so
  // that p_0 agrees with fid(t)^2 to rounding.
  const auto n = c.omegas().size();
  ClusterWeightDistribution out{std::vector<double>(n + 1, 0.0), t};
  auto& p = out.weights;
  p[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * c[j] * t;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    const double stay = cs * cs;
    const double flip = sn * sn;
    for (std::size_t m = j + 1; m > 0; --m) p[m] = p[m] * stay + p[m - 1] * flip;
    p[0] *= stay;
  }
  return out;
}

HammingSpreader::HammingSpreader(int n_spins) : n_spins_(n_spins) {
  if (n_spins < 0) throw std::invalid_argument("n_spins must be >= 0");
  const auto width = static_cast<std::size_t>(n_spins + 1);
  table_.assign(width * width, 0.0);
  table_[0] = 1.0;
  for (std::size_t m = 1; m < width; ++m) {
    const double* prev = &table_[(m - 1) * width];
    double* row = &table_[m * width];
    row[0] = 0.5 * prev[0];
    for (std::size_t k = 1; k <= m; ++k) row[k] = 0.5 * (prev[k - 1] + prev[k]);
  }
}

void HammingSpreader::spread_into(std::span<const double> cluster_weights,
                                  std::span<double> out) const {
  const auto n = static_cast<std::size_t>(n_spins_);
  if (cluster_weights.size() != n + 1 || out.size() != 2 * n + 1) {
    throw std::invalid_argument("HammingSpreader: size mismatch");
  }
  const std::size_t width = n + 1;
  for (double& v : out) v = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    const double pm = cluster_weights[m];
    if (pm == 0.0) continue;
    const double* row = &table_[m * width];
    // k raised idempotents and m - k lowered ones give order 2k - m.
    for (std::size_t k = 0; k <= m; ++k) out[n + 2 * k - m] += pm * row[k];
  }
  // Fold to enforce I_n = I_{-n} exactly.
  for (std::size_t i = 1; i <= n; ++i) {
    const double avg = 0.5 * (out[n + i] + out[n - i]);
    out[n + i] = avg;
    out[n - i] = avg;
  }
}

IntensitySpectrum HammingSpreader::spread(const ClusterWeightDistribution& clusters) const {
  IntensitySpectrum out{std::vector<double>(2 * static_cast<std::size_t>(n_spins_) + 1), clusters.time};
  spread_into(clusters.weights, out.intensities);
  return out;
}

IntensitySpectrum hamming_intensities(const CouplingSet& c, double t) {
  return HammingSpreader(c.n_spins()).spread(cluster_weights(c, t));
}

double encoded_signal(const CouplingSet& c, double t, double phi) {
  const double cos_phi = std::cos(phi);
  double product = 1.0;
  for (double w : c.omegas()) {
    const double angle = 2.0 * w * t;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    product *= cs * cs + sn * sn * cos_phi;
  }
  return product;
}

double encoded_signal(const IntensitySpectrum& spectrum, double phi) {
  double sum = spectrum.at(0);
  for (int n = 1; n <= spectrum.max_order(); ++n) sum += 2.0 * spectrum.at(n) * std::cos(n * phi);
  return sum;
}

}  // namespace csm
