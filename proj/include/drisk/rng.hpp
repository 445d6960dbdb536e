#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace drisk {

// Seeded generator used for every random draw in the project. Uniform and
// gaussian variates are produced by hand (not std::*_distribution, whose
// output differs between standard library implementations) so that a fixed
// seed yields identical files everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

  // Box-Muller, standard normal.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Independent deterministic sub-stream (per channel, per epoch, ...).
  Rng fork(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace drisk
