// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_RNG_HPP
#define RW2CF_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace rw2cf {

/// splitmix64 step, used to decorrelate seeds for independent streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic generator over std::mt19937_64 with hand-rolled
/// distributions, so sampled values are identical across standard library
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1): 53 random bits scaled by 2^-53.
  double uniform();

  /// Standard normal via the Marsaglia polar method (one spare cached).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, rate) via Marsaglia-Tsang; requires shape >= 1.
  double gamma(double shape, double rate);

  /// Uniform integer in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rw2cf

#endif
