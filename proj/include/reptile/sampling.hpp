#pragma once

// Deterministic low-discrepancy samples and irrational grid offsets.

#include <cmath>
#include <numbers>
#include <vector>

namespace reptile {

/// Fixed irrational offset in (0,1) for grid axis j: (3 - sqrt5)/2, sqrt5 - 2,
/// then fractional parts of square roots of primes.
inline double grid_offset(std::size_t j) {
  static const double primes[] = {7, 11, 13, 17, 19, 23, 29, 31};
  if (j == 0) return (3.0 - std::sqrt(5.0)) / 2.0;
  if (j == 1) return std::sqrt(5.0) - 2.0;
  const double r = std::sqrt(primes[(j - 2) % 8]);
  return r - std::floor(r);
}

/// Additive recurrence points in [0,1)^d built on the generalised golden
/// ratio (x^(d+1) = x + 1), shifted by seed.
class Kronecker {
 public:
  explicit Kronecker(std::size_t d, double seed = 0.5) : alpha_(d), seed_(seed) {
    double phi = 2.0;
    for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(d + 1));
    for (std::size_t j = 0; j < d; ++j) alpha_[j] = std::fmod(std::pow(1.0 / phi, static_cast<double>(j + 1)), 1.0);
  }

  std::vector<double> operator()(std::size_t i) const {
    std::vector<double> p(alpha_.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double v = seed_ + alpha_[j] * static_cast<double>(i + 1);
      p[j] = v - std::floor(v);
    }
    return p;
  }

 private:
  std::vector<double> alpha_;
  double seed_;
};

}  // namespace reptile
