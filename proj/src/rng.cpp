// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/rng.hpp"

#include <cmath>

#include "rw2cf/errors.hpp"

namespace rw2cf {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double x, y, s;
  do {
    x = 2.0 * uniform() - 1.0;
    y = 2.0 * uniform() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * f;
  have_spare_ = true;
  return x * f;
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw NumericError("gamma requires positive shape and rate");
  }
  // Marsaglia-Tsang squeeze for shape >= 1; the boost x = g * u^(1/shape)
  // with g ~ Gamma(shape + 1) covers shape < 1.
  if (shape < 1.0) {
    double g = gamma(shape + 1.0, 1.0);
    double boost;
    do {
      boost = uniform();
    } while (boost == 0.0);
    return g * std::pow(boost, 1.0 / shape) / rate;
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double uu = uniform();
    if (uu < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (uu > 0.0 && std::log(uu) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw NumericError("below(0)");
  std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

}  // namespace rw2cf
