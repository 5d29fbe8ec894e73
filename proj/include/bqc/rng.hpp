#pragma once

#include <cstdint>
#include <random>

namespace bqc {

// Seeded, splittable generator. One stream per party; splits derive
// independent child streams (per trial, per thread) from the parent seed
// without touching the parent's state.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix(seed)) {}

  Rng split(uint64_t salt) const { return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ull * (salt + 1)))); }

  uint64_t u64() { return eng_(); }

  // uniform in [0, 1)
  double uniform() {
    return (u64() >> 11) * 0x1.0p-53;
  }

  int bit() { return static_cast<int>(u64() & 1u); }

  // uniform integer in [0, n)
  int below(int n) {
    return static_cast<int>(u64() % static_cast<uint64_t>(n));
  }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace bqc
