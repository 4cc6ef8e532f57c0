#pragma once

#include <cmath>
#include <cstdint>

namespace gsalloc::rng {

// splitmix64 finalizer (Stafford mix 13).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Key for an independent substream (per slot, per user, ...). Chaining
// derive() calls gives a deterministic tree of streams under one master
// seed, so slots can be generated in parallel and still match a serial run.
inline std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
  return mix64(key + kGolden * (index + 1));
}

// Counter-based splitmix64 stream.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exponential with the given mean, by inversion of the CDF.
  double next_exponential(double mean) {
    return -mean * std::log1p(-next_unit());
  }

 private:
  std::uint64_t state_;
};

}  // namespace gsalloc::rng
