#include "csm/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "csm/zz_dynamics.hpp"

namespace csm {

namespace {

// Realizations are computed in blocks of this size and folded into the
// accumulators in index order before the next block starts.
constexpr int kBlockSize = 32;

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct MomentAccumulator {
  std::vector<CompensatedSum> first;
  std::vector<CompensatedSum> second;

  explicit MomentAccumulator(std::size_t n) : first(n), second(n) {}

  void add(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      first[i].add(values[i]);
      second[i].add(values[i] * values[i]);
    }
  }

  void finish(int count, std::vector<double>& mean, std::vector<double>& stddev) const {
    const double inv = 1.0 / count;
    mean.resize(first.size());
    stddev.resize(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      const double m = first[i].value() * inv;
      const double var = second[i].value() * inv - m * m;
      mean[i] = m;
      stddev[i] = var > 0.0 ? std::sqrt(var) : 0.0;
    }
  }
};

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [begin, end) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads join.
template <typename Body>
void parallel_for(int begin, int end, int workers, Body&& body) {
  const int count = end - begin;
  if (count <= 0) return;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<int> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (int i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(end);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(n_steps));
  for (int i = 0; i < n_steps; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

int EnsembleConfig::n_spins() const {
  return fixed_couplings ? fixed_couplings->n_spins() : geometry.n_spins();
}

void EnsembleConfig::validate() const {
  if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
  if (grid.n_steps < 2) throw std::invalid_argument("n_steps must be >= 2");
  if (!(grid.t_max > 0.0) || !std::isfinite(grid.t_max)) throw std::invalid_argument("t_max must be > 0");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (fixed_couplings) {
    if (fixed_couplings->n_spins() < 1) throw std::invalid_argument("fixed coupling list is empty");
  } else {
    geometry.validate();
  }
}

CouplingSet realization_couplings(const EnsembleConfig& cfg, int index) {
  if (cfg.fixed_couplings) return *cfg.fixed_couplings;
  RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(index));
  return build_bath(cfg.geometry, sample_orientation(rng));
}

RealizationTrace evaluate_realization(const CouplingSet& couplings, std::span<const double> times) {
  const int n = couplings.n_spins();
  const std::size_t n_orders = 2 * static_cast<std::size_t>(n) + 1;
  const HammingSpreader spreader(n);
  RealizationTrace out;
  out.couplings = couplings;
  out.fid.resize(times.size());
  out.s_ent.resize(times.size());
  out.s1.resize(times.size());
  out.s2.resize(times.size());
  out.intensities.resize(times.size() * n_orders);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double f = fid(couplings, t);
    const auto clusters = cluster_weights(couplings, t);
    std::span<double> spectrum(out.intensities.data() + i * n_orders, n_orders);
    spreader.spread_into(clusters.weights, spectrum);
    out.fid[i] = f;
    out.s_ent[i] = entanglement_entropy(f);
    out.s1[i] = renyi_s1(spectrum);
    out.s2[i] = renyi_s2(spectrum);
  }
  return out;
}

EnsembleSummary run_ensemble(const EnsembleConfig& cfg) {
  cfg.validate();
  const auto times = cfg.grid.points();
  const std::size_t n_times = times.size();
  const int n_spins = cfg.n_spins();
  const std::size_t n_orders = 2 * static_cast<std::size_t>(n_spins) + 1;
  const int workers = resolve_workers(cfg.workers);

  MomentAccumulator fid_acc(n_times), ent_acc(n_times), s1_acc(n_times), s2_acc(n_times);
  MomentAccumulator spec_acc(n_times * n_orders);

  std::vector<RealizationTrace> block(static_cast<std::size_t>(kBlockSize));
  for (int first = 0; first < cfg.n_realizations; first += kBlockSize) {
    const int last = std::min(cfg.n_realizations, first + kBlockSize);
    parallel_for(first, last, workers, [&](int index) {
      block[static_cast<std::size_t>(index - first)] =
          evaluate_realization(realization_couplings(cfg, index), times);
    });
    for (int index = first; index < last; ++index) {
      const auto& r = block[static_cast<std::size_t>(index - first)];
      fid_acc.add(r.fid);
      ent_acc.add(r.s_ent);
      s1_acc.add(r.s1);
      s2_acc.add(r.s2);
      spec_acc.add(r.intensities);
    }
  }

  EnsembleSummary out;
  out.n_spins = n_spins;
  out.n_realizations = cfg.n_realizations;
  out.times = times;
  fid_acc.finish(cfg.n_realizations, out.fid_mean, out.fid_std);
  ent_acc.finish(cfg.n_realizations, out.s_ent_mean, out.s_ent_std);
  s1_acc.finish(cfg.n_realizations, out.s1_mean, out.s1_std);
  s2_acc.finish(cfg.n_realizations, out.s2_mean, out.s2_std);
  spec_acc.finish(cfg.n_realizations, out.intensity_mean, out.intensity_std);
  return out;
}

EntropyTrace EnsembleSummary::entropy_trace() const {
  EntropyTrace trace;
  trace.times = times;
  trace.s_ent = s_ent_mean;
  trace.s1 = s1_mean;
  trace.s2 = s2_mean;
  trace.s_ent_std = s_ent_std;
  trace.s1_std = s1_std;
  trace.s2_std = s2_std;
  return trace;
}

std::map<int, EnsembleSummary> entropy_vs_size(std::span<const int> sizes, const EnsembleConfig& cfg,
                                               const std::map<int, int>& realizations_by_size) {
  const int ring = cfg.geometry.spins_per_ring;
  for (int size : sizes) {
    if (size < ring || size % ring != 0) {
      throw std::invalid_argument("bath size " + std::to_string(size) + " is not a positive multiple of " +
                                  std::to_string(ring) + " spins per ring");
    }
  }
  std::map<int, EnsembleSummary> out;
  for (int size : sizes) {
    EnsembleConfig sized = cfg;
    sized.fixed_couplings.reset();
    sized.geometry.n_rings = size / ring;
    if (auto it = realizations_by_size.find(size); it != realizations_by_size.end()) {
      sized.n_realizations = it->second;
    }
    out.emplace(size, run_ensemble(sized));
  }
  return out;
}

}  // namespace csm
