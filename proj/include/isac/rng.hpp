#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "isac/types.hpp"

namespace isac {

// splitmix64 finalizer. Used to derive independent per-trial seeds from
// (master seed, trial index) so results never depend on how trials are
// sliced across workers.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d493bbba9a14dbULL;
  return z ^ (z >> 31);
}

// mt19937_64 gives an engine whose output sequence is pinned by the standard.
// The distribution layer is hand-rolled because std::normal_distribution and
// friends are implementation-defined and would break cross-toolchain
// reproducibility of frozen test values.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : eng_(mix_seed(seed, stream)) {}

  // uniform on [0,1) with 53 random bits
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Box-Muller, one spare cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * kPi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  // scalar CN(0, variance): total power split evenly over re/im
  cplx cnormal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  CVec cnormal_vec(Eigen::Index n, double variance) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cnormal(variance);
    return v;
  }

  double exponential(double mean) {
    return -mean * std::log1p(-uniform());
  }

  // unit-modulus QPSK symbol
  cplx qpsk() {
    const auto q = static_cast<int>(eng_() >> 62); // top 2 bits
    static const double lut_re[4] = {M_SQRT1_2, -M_SQRT1_2, -M_SQRT1_2, M_SQRT1_2};
    static const double lut_im[4] = {M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2, -M_SQRT1_2};
    return {lut_re[q], lut_im[q]};
  }

  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace isac
