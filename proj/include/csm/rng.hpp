#pragma once

#include <cstdint>

namespace csm {

/// Counter-based random stream keyed by (master seed, stream index).
///
/// Output k of a stream is a SplitMix64 finalizer applied to
/// key + k * golden_gamma, so a stream's values depend only on its key and
/// position. Realizations of an ensemble each own one stream; no state is
/// shared between them.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace csm
