#pragma once

// Quantum-number lattices Q and the combinatorial sets over them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "reptile/algebra.hpp"
#include "reptile/problem.hpp"

namespace reptile {

/// Eigenvalue of the basis function indexed by q.
inline AlgebraicValue eigenvalue(const Problem& p, const QuantumNumber& q) {
  require_valid(p, q);
  return from_quantum_number(p.domain.ring_dim(), q);
}

/// Parity of a quantum number: triangle odd iff m - n odd, box odd iff m_1 odd.
inline Parity parity_of(const Problem& p, const QuantumNumber& q) {
  if (p.domain.is_triangle()) return ((q[0] - q[1]) % 2 != 0) ? Parity::odd : Parity::even;
  return (q[0] % 2 != 0) ? Parity::odd : Parity::even;
}

namespace detail {

// Relative slack on float prefilters; float evaluation of lattice values is
// accurate to ~1e-15 relative, so anything this far apart is ordered safely.
inline constexpr double kFloatSlack = 1e-9;

inline bool clearly_less(double a, double b) {
  return a < b - kFloatSlack * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Exact order of two values with a float hint for the common case.
inline std::strong_ordering hinted_compare(const AlgebraicValue& a, double fa, const AlgebraicValue& b, double fb) {
  if (clearly_less(fa, fb)) return std::strong_ordering::less;
  if (clearly_less(fb, fa)) return std::strong_ordering::greater;
  return compare(a, b);
}

/// Float gamma^(2j) for axis j of a box of dimension n.
inline double axis_weight(int n, int j) { return std::pow(2.0, 2.0 * j / n); }

}  // namespace detail

/// A lattice point with its exact and approximate eigenvalue.
struct LatticePoint {
  QuantumNumber m;
  AlgebraicValue value;
  double approx = 0.0;
};

/// All quantum numbers of a problem with eigenvalue strictly below cutoff,
/// ordered by (value, lexicographic m).
struct LatticeRegion {
  Problem problem;
  AlgebraicValue cutoff;
  std::vector<LatticePoint> points;

  std::size_t size() const { return points.size(); }

  std::vector<QuantumNumber> quantum_numbers() const {
    std::vector<QuantumNumber> out;
    out.reserve(points.size());
    for (const auto& pt : points) out.push_back(pt.m);
    return out;
  }
};

inline LatticeRegion enumerate_below(const Problem& p, const AlgebraicValue& cutoff) {
  const int ring = p.domain.ring_dim();
  if (cutoff.dim() != ring) throw DomainError("cutoff lives in a different ring than the problem");
  if (cutoff < AlgebraicValue::zero(ring)) throw DomainError("cutoff must be nonnegative");

  LatticeRegion region{p, cutoff, {}};
  const double limit = cutoff.to_double();
  const double slack = detail::kFloatSlack * std::max(1.0, limit);
  const int len = p.domain.qn_size();
  const int lo = p.bc == Boundary::neumann ? 0 : 1;

  std::vector<double> weight(static_cast<std::size_t>(len), 1.0);
  if (!p.domain.is_triangle())
    for (int j = 0; j < len; ++j) weight[static_cast<std::size_t>(j)] = detail::axis_weight(len, j);

  QuantumNumber q(std::vector<int>(static_cast<std::size_t>(len), 0));
  std::function<void(int, double)> walk = [&](int axis, double partial) {
    if (axis == len) {
      if (!is_valid(p, q)) return;
      AlgebraicValue v = from_quantum_number(ring, q);
      if (detail::clearly_less(partial, limit) || (!detail::clearly_less(limit, partial) && v < cutoff))
        region.points.push_back({q, std::move(v), partial});
      return;
    }
    const double w = weight[static_cast<std::size_t>(axis)];
    int start = lo;
    // triangle: m >= n, so the second entry never exceeds the first
    const int upper = static_cast<int>(std::floor(std::sqrt(std::max(0.0, (limit + slack - partial) / w)))) + 1;
    int stop = upper;
    if (p.domain.is_triangle() && axis == 1) stop = std::min(stop, q[0]);
    for (int v = start; v <= stop; ++v) {
      const double next = partial + w * v * v;
      if (next > limit + slack) break;
      q[static_cast<std::size_t>(axis)] = v;
      walk(axis + 1, next);
    }
    q[static_cast<std::size_t>(axis)] = 0;
  };
  walk(0, 0.0);

  std::sort(region.points.begin(), region.points.end(), [](const LatticePoint& a, const LatticePoint& b) {
    const auto c = detail::hinted_compare(a.value, a.approx, b.value, b.approx);
    if (c != 0) return c < 0;
    return a.m < b.m;
  });
  return region;
}

/// Splits a point list into (odd, even) quantum numbers.
inline std::pair<std::vector<QuantumNumber>, std::vector<QuantumNumber>> parity_split(const LatticeRegion& r) {
  std::pair<std::vector<QuantumNumber>, std::vector<QuantumNumber>> out;
  for (const auto& pt : r.points)
    (parity_of(r.problem, pt.m) == Parity::odd ? out.first : out.second).push_back(pt.m);
  return out;
}

/// Points of A whose right neighbour m + e_1 is not in A.
inline std::vector<QuantumNumber> right_boundary(std::span<const QuantumNumber> a) {
  const std::set<QuantumNumber> members(a.begin(), a.end());
  std::vector<QuantumNumber> out;
  for (const auto& m : a) {
    QuantumNumber next = m;
    next[0] += 1;
    if (!members.count(next)) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<QuantumNumber> right_boundary(const LatticeRegion& r) {
  const auto qs = r.quantum_numbers();
  return right_boundary(std::span<const QuantumNumber>(qs));
}

/// Right boundary of Q(cutoff) restricted to one parity class.
inline std::vector<QuantumNumber> right_boundary(const LatticeRegion& r, Parity which) {
  std::vector<QuantumNumber> out;
  for (auto& m : right_boundary(r))
    if (parity_of(r.problem, m) == which) out.push_back(std::move(m));
  return out;
}

enum class ReferenceKind { diag, axis };

/// Triangle reference sets: diag(m) = {(i,j) : 0 <= j <= i <= m} for phi_{m,m};
/// axis(m) = {(m+j, m-i) : 0 <= i <= m, -i <= j <= i} for phi_{2m,0}.
inline std::vector<QuantumNumber> reference_set_triangle(ReferenceKind kind, int m) {
  if (m < 1) throw DomainError("reference set parameter must be at least 1");
  std::vector<QuantumNumber> out;
  if (kind == ReferenceKind::diag) {
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= i; ++j) out.push_back({i, j});
  } else {
    for (int i = 0; i <= m; ++i)
      for (int j = -i; j <= i; ++j) out.push_back({m + j, m - i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// B_Q(lambda_m): the lattice box {m~ : 0 <= m~_j <= m_j}.
inline std::vector<QuantumNumber> reference_set_box(const QuantumNumber& m) {
  for (int v : m.m)
    if (v < 0) throw DomainError("box quantum number entries must be nonnegative");
  std::vector<QuantumNumber> out;
  QuantumNumber cur(std::vector<int>(m.size(), 0));
  for (;;) {
    out.push_back(cur);
    std::size_t j = 0;
    while (j < m.size() && cur[j] == m[j]) cur[j++] = 0;
    if (j == m.size()) break;
    ++cur[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reptile
