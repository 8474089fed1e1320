#pragma once

// Deterministic random source. All campaign and sampling code derives
// sub-seeds through splitmix64 so a run is reproducible from one root seed
// regardless of evaluation order, and no libstdc++ distribution quirks leak
// into the byte-level determinism contract.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace curv {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed ^ 0xa0761d6478bd642fULL);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p));
  return s;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Inclusive bounds; modulo bias is irrelevant at the spans used here.
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  double uniform_real() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

  bool coin() { return (next() & 1) != 0; }

private:
  std::mt19937_64 gen_;
};

}  // namespace curv
