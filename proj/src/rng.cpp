#include "csm/rng.hpp"

namespace csm {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : key_(splitmix64_mix(master_seed ^ splitmix64_mix(stream_index + kGoldenGamma))) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGoldenGamma);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace csm
