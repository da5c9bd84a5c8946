#pragma once

// Sorted spectrum, counting functions, odd cores and multiplicity identities.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "reptile/algebra.hpp"
#include "reptile/qlattice.hpp"

namespace reptile {

struct Level {
  AlgebraicValue value;
  double approx = 0.0;
  std::vector<QuantumNumber> members;  // lexicographic
  std::size_t position = 0;            // 1-based index of the first appearance

  std::size_t multiplicity() const { return members.size(); }
};

struct Counts {
  std::size_t lower = 0;  // N_(lambda) = #{j : lambda_j < lambda}
  std::size_t upper = 0;  // N^(lambda) = #{j : lambda_j <= lambda}
  std::size_t n = 0;      // N(lambda): lower + 1 at eigenvalues, else lower
  std::size_t d = 0;      // upper - lower
};

struct OddCore {
  AlgebraicValue core;
  int k = 0;
};

class SpectrumIndex {
 public:
  SpectrumIndex(Problem problem, AlgebraicValue cutoff, std::vector<Level> levels)
      : problem_(problem), cutoff_(std::move(cutoff)), levels_(std::move(levels)) {}

  const Problem& problem() const { return problem_; }
  const AlgebraicValue& cutoff() const { return cutoff_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  const Level& operator[](std::size_t i) const { return levels_[i]; }

  /// Index of the first level with value >= v.
  std::size_t lower_bound(const AlgebraicValue& v) const {
    const double fv = v.to_double();
    std::size_t lo = 0, hi = levels_.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (detail::hinted_compare(levels_[mid].value, levels_[mid].approx, v, fv) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  /// Level holding v, if v is an eigenvalue below the cutoff.
  const Level* find(const AlgebraicValue& v) const {
    require_in_range(v);
    const std::size_t i = lower_bound(v);
    if (i < levels_.size() && levels_[i].value == v) return &levels_[i];
    return nullptr;
  }

  const Level& level_of(const AlgebraicValue& v) const {
    const Level* l = find(v);
    if (!l) throw InvalidEigenvalueError(v.to_string() + " is not an eigenvalue of " + describe(problem_));
    return *l;
  }

  /// Level whose spectral position range contains pos (1-based).
  const Level& at_position(std::size_t pos) const {
    if (pos == 0) throw DomainError("positions are 1-based");
    for (const auto& l : levels_)
      if (pos >= l.position && pos < l.position + l.multiplicity()) return l;
    throw OutOfRangeError("position " + std::to_string(pos) + " lies beyond the cutoff");
  }

  void require_in_range(const AlgebraicValue& v) const {
    if (v >= cutoff_) throw OutOfRangeError(v.to_string() + " is not below the index cutoff " + cutoff_.to_string());
  }

 private:
  Problem problem_;
  AlgebraicValue cutoff_;
  std::vector<Level> levels_;
};

inline SpectrumIndex build_index(const Problem& p, const AlgebraicValue& cutoff) {
  if (cutoff <= AlgebraicValue::zero(cutoff.dim())) throw DomainError("cutoff must be positive");
  LatticeRegion region = enumerate_below(p, cutoff);
  std::vector<Level> levels;
  std::size_t position = 1;
  for (auto& pt : region.points) {
    if (levels.empty() || !(levels.back().value == pt.value)) {
      if (!levels.empty()) position += levels.back().multiplicity();
      levels.push_back({pt.value, pt.approx, {}, position});
    }
    levels.back().members.push_back(pt.m);
  }
  return SpectrumIndex(p, cutoff, std::move(levels));
}

/// Smallest eigenvalue >= num/den. Indexing below it selects exactly the
/// eigenvalues strictly below the rational num/den.
inline AlgebraicValue rational_cutoff(const Problem& p, const Integer& num, const Integer& den) {
  if (den <= 0 || num <= 0) throw DomainError("cutoff must be a positive rational");
  const int ring = p.domain.ring_dim();
  const Integer q = num / den;
  const Integer s = boost::multiprecision::sqrt(q) + 1;
  const Integer bound = (s + 2) * (s + 2) + 4 * p.domain.dim + 1;
  const auto region = enumerate_below(p, AlgebraicValue::integer(ring, bound));
  const AlgebraicValue target = AlgebraicValue::integer(ring, num);
  for (const auto& pt : region.points)
    if (pt.value * den >= target) return pt.value;
  throw ConsistencyError("no eigenvalue found above the cutoff");
}

inline Counts counting(const SpectrumIndex& si, const AlgebraicValue& v) {
  si.require_in_range(v);
  const std::size_t i = si.lower_bound(v);
  Counts c;
  c.lower = i < si.size() ? si[i].position - 1
                          : (si.size() ? si[si.size() - 1].position - 1 + si[si.size() - 1].multiplicity() : 0);
  const bool eigen = i < si.size() && si[i].value == v;
  c.d = eigen ? si[i].multiplicity() : 0;
  c.upper = c.lower + c.d;
  c.n = eigen ? c.lower + 1 : c.lower;
  return c;
}

/// lambda = gamma^(2k) lambda0 with lambda0 odd.
inline OddCore odd_core(const AlgebraicValue& v) {
  if (v.is_zero()) throw DomainError("zero has no odd core");
  OddCore oc{v, 0};
  while (parity(oc.core) == Parity::even) {
    oc.core = scale_gamma2(oc.core, -1);
    ++oc.k;
  }
  return oc;
}

/// #{(a,b) in Z^2 : a^2 + b^2 = z}.
inline std::int64_t r2(std::int64_t z) {
  if (z < 0) return 0;
  std::int64_t count = 0;
  for (std::int64_t a = 0; a * a <= z; ++a) {
    const std::int64_t rest = z - a * a;
    const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    for (std::int64_t c = std::max<std::int64_t>(0, b - 1); c <= b + 1; ++c) {
      if (c * c != rest) continue;
      count += (a == 0 ? 1 : 2) * (c == 0 ? 1 : 2);
    }
  }
  return count;
}

/// #{(a,b) : a,b >= 0, a^2 + 2 b^2 = c}, the multiplicity of c in the
/// Neumann spectrum of the 2-dimensional box.
inline std::int64_t rectangle_multiplicity(const Integer& c) {
  if (c < 0) return 0;
  std::int64_t count = 0;
  for (Integer b = 0; 2 * b * b <= c; ++b) {
    const Integer rest = c - 2 * b * b;
    const Integer a = boost::multiprecision::sqrt(rest);
    if (a * a == rest) ++count;
  }
  return count;
}

/// Multiplicity of v in the spectrum of B^(n), n even, as the product of the
/// rectangle multiplicities of its coefficients.
inline std::int64_t multiplicity_by_factorization(int n, const AlgebraicValue& v) {
  if (n % 2 != 0 || n < 2) throw DomainError("multiplicity factorization needs an even dimension");
  if (v.dim() != n) throw DomainError("value lives in a different ring");
  std::int64_t d = 1;
  for (const auto& c : v.coeffs()) {
    const std::int64_t factor = rectangle_multiplicity(c);
    if (factor == 0)
      throw InvalidEigenvalueError(v.to_string() + " is not in the Neumann spectrum of the " + std::to_string(n) +
                                   "-dimensional box");
    d *= factor;
  }
  return d;
}

/// Counting function of the half-triangle with Dirichlet data on the
/// diagonal cut: #{p >= q >= 0 : ((2p+1)^2 + (2q+1)^2) / 2 < lambda}.
inline std::int64_t half_triangle_count(std::int64_t lambda) {
  std::int64_t count = 0;
  for (std::int64_t p = 0;; ++p) {
    const std::int64_t a = 2 * p + 1;
    if ((a * a + 1) / 2 >= lambda) break;
    for (std::int64_t q = 0; q <= p; ++q) {
      const std::int64_t b = 2 * q + 1;
      if ((a * a + b * b) / 2 < lambda) ++count;
      else break;
    }
  }
  return count;
}

}  // namespace reptile
