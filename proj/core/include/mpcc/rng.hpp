#ifndef MPCC_RNG_HPP
#define MPCC_RNG_HPP

#include <cstdint>
#include <random>

namespace mpcc {

/// Reproducible random source: a seeded mt19937_64 bit stream with
/// explicit output transforms, so the produced doubles are identical on
/// every platform (standard-library distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_bits() { return engine_(); }

  /// Uniform on [0, 1): the top 53 bits scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via the Box-Muller transform; draws two uniforms
  /// and caches the second variate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // (0,1] for the log argument
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mpcc

#endif  // MPCC_RNG_HPP
