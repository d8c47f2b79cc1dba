#pragma once

#include <cstdint>

namespace rmst {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Maps 64 random bits onto [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential SplitMix64 stream. Bounded draws use rejection sampling so the
// output sequence is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t out = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

  double uniform01() { return to_unit(next()); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::uint64_t state_;
};

// Counter-based draws: the value for (iteration, stream, index) depends only
// on the seed and those coordinates, so edge sampling can be split across
// threads in any way and still replay identically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t iteration, std::uint64_t stream,
                     std::uint64_t index) const {
    std::uint64_t block = mix64(iteration * 0xd1b54a32d192ed03ULL + stream);
    return mix64(mix64(seed_ ^ block) ^ index);
  }

  double uniform(std::uint64_t iteration, std::uint64_t stream, std::uint64_t index) const {
    return to_unit(bits(iteration, stream, index));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace rmst
