#ifndef OLT_RNG_HPP_
#define OLT_RNG_HPP_

#include <cstdint>
#include <vector>

namespace olt {

// splitmix64: used for seeding and for deriving independent per-trial seeds.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256++ with hand-rolled distributions, so that every sampled value is
// a pure function of the seed on every platform (std::uniform_int_distribution
// is implementation-defined and would break byte-reproducible reports).
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Independent stream for trial `index` of an experiment seeded with `master`.
  static Rng for_trial(uint64_t master, uint64_t index) {
    uint64_t sm = master ^ (0xA0761D6478BD642Full * (index + 1));
    return Rng(splitmix64(sm));
  }

  uint64_t next() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound) via rejection sampling.
  uint64_t below(uint64_t bound) {
    if (bound < 2) return 0;
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  uint32_t bit() { return static_cast<uint32_t>(next() >> 63); }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Uniform k-subset of {0,...,n-1} by partial Fisher-Yates; result unsorted.
  std::vector<uint32_t> subset(uint32_t n, uint32_t k) {
    std::vector<uint32_t> idx(n);
    for (uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t j = i + static_cast<uint32_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace olt

#endif  // OLT_RNG_HPP_
