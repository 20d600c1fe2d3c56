#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nftpos {

// splitmix64 step; used to derive independent substream seeds from a master
// seed so that draws in one subsystem never shift another subsystem's stream.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::uint64_t stream_id) {
  std::uint64_t s = master_seed;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= stream_id; ++i) out = splitmix64_next(s);
  return out;
}

// Deterministic RNG. mt19937_64 output is bit-specified by the standard; the
// variate transforms are written out here because std::*_distribution output
// is implementation-defined and would break seeded reproducibility.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1) with 53-bit resolution
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // exponential variate with the given rate; finite for all draws since
  // next_unit() < 1
  double exponential(double rate) { return -std::log1p(-next_unit()) / rate; }

  // unbiased integer in [0, n), n > 0; rejection sampling
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t rem =
        (std::uint64_t{0xFFFFFFFFFFFFFFFFULL} % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (rem == 0 || x < std::uint64_t{0} - rem) return x % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nftpos
