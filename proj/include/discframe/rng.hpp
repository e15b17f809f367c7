#pragma once

#include <complex>
#include <cstdint>

namespace discframe {

// Counter-based deterministic generator: draw i is a 64-bit finalizer applied
// to seed + i·(golden-ratio increment). Streams are reproducible across
// platforms and independent of call ordering, which keeps every randomized
// experiment replayable from its seed alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  // Re + i·Im with both parts uniform in [0, 1) — the complex unit square.
  std::complex<double> complex_unit_square() {
    const double re = uniform01();
    const double im = uniform01();
    return {re, im};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace discframe
