#ifndef JWB_PRNG_HPP
#define JWB_PRNG_HPP

#include <cstdint>

namespace jwb {

// splitmix64: tiny deterministic generator so that reports are byte-identical
// across platforms for a given seed. Identities checked on sampled points are
// polynomial, so any Zariski-dense sample is decisive.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], small ranges only.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace jwb

#endif
