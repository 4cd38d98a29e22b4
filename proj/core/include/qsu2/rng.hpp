#ifndef QSU2_RNG_HPP
#define QSU2_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qsu2 {

// splitmix64: tiny, seedable, identical across platforms.  Standard-library
// distributions are implementation-defined, so everything random in the
// artifact goes through this.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // standard normal (Box-Muller)
  double next_gaussian() {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qsu2

#endif
