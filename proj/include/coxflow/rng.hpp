#ifndef COXFLOW_RNG_HPP_
#define COXFLOW_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace coxflow {

// splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ c);
}

// A counter-derived RNG stream. Draws are generated explicitly from raw
// 64-bit words so output does not depend on the standard library's
// distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t stream_seed) : eng_(stream_seed) {}

  RngStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
            std::uint64_t c = 0)
      : eng_(derive_seed(seed, a, b, c)) {}

  // Uniform on [0,1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1].
  double uniform_pos() { return 1.0 - uniform(); }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  // Box-Muller; one draw per call, the paired value is discarded.
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace coxflow

#endif  // COXFLOW_RNG_HPP_
