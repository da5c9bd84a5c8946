#pragma once

// Folding and unfolding of coordinates and quantum numbers, the reflection
// R, k-frames S^(k), partition counts M(k) and the explicit subdomain spectra.
//
// Triangle D = {0 <= y <= x <= pi}, half 1/2 D = D n {x + y <= pi},
// cut L = {x + y = pi}. Box B^(n) with edges l_j = pi / gamma^(j-1),
// half {x_1 <= pi/2}, cut L = {x_1 = pi/2}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "reptile/algebra.hpp"
#include "reptile/problem.hpp"
#include "reptile/qlattice.hpp"
#include "reptile/sampling.hpp"
#include "reptile/union_find.hpp"

namespace reptile {

using Point = std::vector<double>;
using Rational = boost::rational<std::int64_t>;

namespace detail {
inline constexpr double kGeomTol = 1e-12;
}

/// Edge lengths l_j; the triangle reports its bounding square.
inline std::vector<double> edge_lengths(const Domain& d) {
  if (d.is_triangle()) return {std::numbers::pi, std::numbers::pi};
  std::vector<double> l(static_cast<std::size_t>(d.dim));
  for (int j = 0; j < d.dim; ++j) l[static_cast<std::size_t>(j)] = std::numbers::pi * std::pow(2.0, -static_cast<double>(j) / d.dim);
  return l;
}

/// gamma of the domain: sqrt2 for the triangle, 2^(1/n) for B^(n).
inline double gamma_of(const Domain& d) {
  return d.is_triangle() ? std::numbers::sqrt2 : std::pow(2.0, 1.0 / d.dim);
}

inline bool contains(const Domain& d, const Point& p, double tol = detail::kGeomTol) {
  const double t = tol * std::numbers::pi;
  if (static_cast<int>(p.size()) != d.dim) return false;
  if (d.is_triangle()) return p[1] >= -t && p[1] <= p[0] + t && p[0] <= std::numbers::pi + t;
  const auto l = edge_lengths(d);
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] < -t || p[j] > l[j] + t) return false;
  return true;
}

inline bool contains_half(const Domain& d, const Point& p, double tol = detail::kGeomTol) {
  if (!contains(d, p, tol)) return false;
  const double t = tol * std::numbers::pi;
  if (d.is_triangle()) return p[0] + p[1] <= std::numbers::pi + t;
  return p[0] <= std::numbers::pi / 2 + t;
}

inline void require_in(const Domain& d, const Point& p) {
  if (!contains(d, p)) throw DomainError("point lies outside the domain");
}

/// F: 1/2 Omega -> Omega. Triangle (x+y, x-y); box gamma (x_2,...,x_n,x_1).
inline Point fold_point(const Domain& d, const Point& p) {
  if (!contains_half(d, p)) throw DomainError("fold_point needs a point of the half domain");
  if (d.is_triangle()) return {p[0] + p[1], p[0] - p[1]};
  const double g = gamma_of(d);
  Point out(p.size());
  for (std::size_t j = 0; j + 1 < p.size(); ++j) out[j] = g * p[j + 1];
  out.back() = g * p[0];
  return out;
}

/// U: Omega -> 1/2 Omega, the inverse of F.
inline Point unfold_point(const Domain& d, const Point& p) {
  require_in(d, p);
  if (d.is_triangle()) return {(p[0] + p[1]) / 2, (p[0] - p[1]) / 2};
  const double g = gamma_of(d);
  Point out(p.size());
  out[0] = p.back() / g;
  for (std::size_t j = 1; j < p.size(); ++j) out[j] = p[j - 1] / g;
  return out;
}

/// R: triangle (pi - y, pi - x); box (pi - x_1, x_2, ...).
inline Point reflect(const Domain& d, const Point& p) {
  require_in(d, p);
  if (d.is_triangle()) return {std::numbers::pi - p[1], std::numbers::pi - p[0]};
  Point out = p;
  out[0] = std::numbers::pi - p[0];
  return out;
}

/// U_Q: triangle (k+l, k-l); box (2 m_n, m_1, ..., m_{n-1}).
inline QuantumNumber unfold_qn(const Problem& p, const QuantumNumber& m) {
  require_valid(p, m);
  if (p.domain.is_triangle()) return {m[0] + m[1], m[0] - m[1]};
  QuantumNumber out = m;
  out[0] = 2 * m[m.size() - 1];
  for (std::size_t j = 1; j < m.size(); ++j) out[j] = m[j - 1];
  return out;
}

/// F_Q: triangle ((k+l)/2, (k-l)/2) for k = l mod 2; box (m_2, ..., m_n, m_1/2)
/// for m_1 even.
inline QuantumNumber fold_qn(const Problem& p, const QuantumNumber& m) {
  require_valid(p, m);
  if (parity_of(p, m) == Parity::odd)
    throw FoldParityError("cannot fold odd quantum number " + to_string(m));
  QuantumNumber out;
  if (p.domain.is_triangle()) {
    out = {(m[0] + m[1]) / 2, (m[0] - m[1]) / 2};
  } else {
    out = m;
    for (std::size_t j = 0; j + 1 < m.size(); ++j) out[j] = m[j + 1];
    out[m.size() - 1] = m[0] / 2;
  }
  require_valid(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// k-frames

/// Triangle facet: segment with endpoints in units of pi.
struct Segment {
  Rational x0, y0, x1, y1;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Box facet: the piece {t_axis = pos, lo_j <= t_j <= hi_j} of a hyperplane,
/// in fractional coordinates t_j = x_j / l_j.
struct Slab {
  int axis = 0;
  Rational pos;
  std::vector<std::pair<Rational, Rational>> range;  // range[axis] = {pos, pos}
  friend bool operator==(const Slab&, const Slab&) = default;
};

struct KFrame {
  Domain domain;
  int k = 0;
  std::vector<Segment> segments;
  std::vector<Slab> slabs;

  std::size_t facet_count() const { return domain.is_triangle() ? segments.size() : slabs.size(); }
};

namespace detail {

inline Segment unfold_segment(const Segment& s) {
  const Rational two(2);
  return {(s.x0 + s.y0) / two, (s.x0 - s.y0) / two, (s.x1 + s.y1) / two, (s.x1 - s.y1) / two};
}

inline Segment reflect_segment(const Segment& s) {
  const Rational one(1);
  return {one - s.y0, one - s.x0, one - s.y1, one - s.x1};
}

inline Segment fold_segment(const Segment& s) {
  return {s.x0 + s.y0, s.x0 - s.y0, s.x1 + s.y1, s.x1 - s.y1};
}

/// Pullback of a slab through F: F-axis j is p-axis j+1 with the same
/// fraction, F-axis n-1 is p-axis 0 with the fraction halved.
inline Slab unfold_slab(const Slab& s) {
  const int n = static_cast<int>(s.range.size());
  Slab out;
  out.range.resize(s.range.size());
  for (int j = 0; j + 1 < n; ++j) out.range[static_cast<std::size_t>(j + 1)] = s.range[static_cast<std::size_t>(j)];
  const auto& last = s.range[static_cast<std::size_t>(n - 1)];
  out.range[0] = {last.first / 2, last.second / 2};
  out.axis = s.axis + 1 < n ? s.axis + 1 : 0;
  out.pos = out.range[static_cast<std::size_t>(out.axis)].first;
  return out;
}

inline Slab reflect_slab(const Slab& s) {
  Slab out = s;
  out.range[0] = {Rational(1) - s.range[0].second, Rational(1) - s.range[0].first};
  if (out.axis == 0) out.pos = out.range[0].first;
  return out;
}

inline Slab fold_slab(const Slab& s) {
  const int n = static_cast<int>(s.range.size());
  Slab out;
  out.range.resize(s.range.size());
  for (int j = 0; j + 1 < n; ++j) out.range[static_cast<std::size_t>(j)] = s.range[static_cast<std::size_t>(j + 1)];
  out.range[static_cast<std::size_t>(n - 1)] = {s.range[0].first * 2, s.range[0].second * 2};
  out.axis = s.axis > 0 ? s.axis - 1 : n - 1;
  out.pos = out.range[static_cast<std::size_t>(out.axis)].first;
  return out;
}

inline bool segment_contains(const Segment& outer, const Segment& inner) {
  auto on = [&](const Rational& x, const Rational& y) {
    const Rational cross = (outer.x1 - outer.x0) * (y - outer.y0) - (outer.y1 - outer.y0) * (x - outer.x0);
    if (cross != Rational(0)) return false;
    return x >= std::min(outer.x0, outer.x1) && x <= std::max(outer.x0, outer.x1) &&
           y >= std::min(outer.y0, outer.y1) && y <= std::max(outer.y0, outer.y1);
  };
  return on(inner.x0, inner.y0) && on(inner.x1, inner.y1);
}

inline bool slab_contains(const Slab& outer, const Slab& inner) {
  if (outer.axis != inner.axis || outer.pos != inner.pos) return false;
  for (std::size_t j = 0; j < outer.range.size(); ++j)
    if (inner.range[j].first < outer.range[j].first || inner.range[j].second > outer.range[j].second) return false;
  return true;
}

}  // namespace detail

/// S^(0) = L and S^(k) = U(S^(k-1)) u R(U(S^(k-1))).
inline KFrame build_frame(const Domain& d, int k) {
  if (k < 0) throw DomainError("frame index must be nonnegative");
  if (k > 24) throw DomainError("frame index too large");
  KFrame f{d, 0, {}, {}};
  if (d.is_triangle()) {
    f.segments.push_back({Rational(1, 2), Rational(1, 2), Rational(1), Rational(0)});
  } else {
    Slab l;
    l.axis = 0;
    l.pos = Rational(1, 2);
    l.range.assign(static_cast<std::size_t>(d.dim), {Rational(0), Rational(1)});
    l.range[0] = {l.pos, l.pos};
    f.slabs.push_back(l);
  }
  for (int step = 0; step < k; ++step) {
    KFrame next{d, f.k + 1, {}, {}};
    for (const auto& s : f.segments) {
      auto u = detail::unfold_segment(s);
      next.segments.push_back(u);
      next.segments.push_back(detail::reflect_segment(u));
    }
    for (const auto& s : f.slabs) {
      auto u = detail::unfold_slab(s);
      next.slabs.push_back(u);
      next.slabs.push_back(detail::reflect_slab(u));
    }
    f = std::move(next);
  }
  return f;
}

/// True iff every facet of frame maps into a facet of previous under F
/// (for facets in the half domain) or F o R.
inline bool frame_nests(const KFrame& frame, const KFrame& previous) {
  if (frame.k != previous.k + 1) return false;
  if (frame.domain.is_triangle()) {
    for (const auto& s : frame.segments) {
      const bool half = s.x0 + s.y0 <= Rational(1) && s.x1 + s.y1 <= Rational(1);
      const Segment img = detail::fold_segment(half ? s : detail::reflect_segment(s));
      if (std::none_of(previous.segments.begin(), previous.segments.end(),
                       [&](const Segment& o) { return detail::segment_contains(o, img); }))
        return false;
    }
    return true;
  }
  for (const auto& s : frame.slabs) {
    const bool half = s.range[0].second <= Rational(1, 2);
    const Slab img = detail::fold_slab(half ? s : detail::reflect_slab(s));
    if (std::none_of(previous.slabs.begin(), previous.slabs.end(),
                     [&](const Slab& o) { return detail::slab_contains(o, img); }))
      return false;
  }
  return true;
}

/// Points spread over all facets of the frame, in domain coordinates.
inline std::vector<Point> frame_samples(const KFrame& f, std::size_t count) {
  std::vector<Point> out;
  const std::size_t facets = f.facet_count();
  if (facets == 0 || count == 0) return out;
  const std::size_t per = (count + facets - 1) / facets;
  const double pi = std::numbers::pi;
  if (f.domain.is_triangle()) {
    Kronecker seq(1, 0.1);
    for (const auto& s : f.segments) {
      const double x0 = boost::rational_cast<double>(s.x0), y0 = boost::rational_cast<double>(s.y0);
      const double x1 = boost::rational_cast<double>(s.x1), y1 = boost::rational_cast<double>(s.y1);
      for (std::size_t i = 0; i < per; ++i) {
        const double t = seq(i)[0];
        out.push_back({pi * (x0 + t * (x1 - x0)), pi * (y0 + t * (y1 - y0))});
      }
    }
    return out;
  }
  const auto l = edge_lengths(f.domain);
  const std::size_t n = l.size();
  Kronecker seq(n, 0.1);
  for (const auto& s : f.slabs) {
    for (std::size_t i = 0; i < per; ++i) {
      const auto u = seq(i);
      Point p(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double lo = boost::rational_cast<double>(s.range[j].first);
        const double hi = boost::rational_cast<double>(s.range[j].second);
        p[j] = l[j] * (lo + u[j] * (hi - lo));
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// partitions

/// 2^floor(k/n) + 1.
inline std::int64_t box_partition_formula(int n, int k) {
  return (std::int64_t{1} << (k / n)) + 1;
}

namespace detail {

/// Components of the sampled domain interior minus the frame at R samples
/// per axis.
inline std::size_t raster_components(const KFrame& f, int res) {
  const Domain& d = f.domain;
  const std::size_t dims = static_cast<std::size_t>(d.dim);
  std::vector<double> offset(dims);
  for (std::size_t j = 0; j < dims; ++j) offset[j] = grid_offset(j);
  std::vector<std::size_t> stride(dims);
  std::size_t total = 1;
  for (std::size_t j = 0; j < dims; ++j) {
    stride[j] = total;
    total *= static_cast<std::size_t>(res);
  }
  // fractional sample coordinate along axis j
  auto coord = [&](std::size_t j, int i) { return (i + offset[j]) / res; };

  std::vector<char> inside(total, 1);
  if (d.is_triangle()) {
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) inside[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * stride[1]] = coord(1, j) < coord(0, i);
  }
  // cut[a][c]: the edge from sample c to c + e_a crosses the frame
  std::vector<std::vector<char>> cut(dims, std::vector<char>(total, 0));

  if (d.is_triangle()) {
    for (const auto& s : f.segments) {
      const double x0 = boost::rational_cast<double>(s.x0), y0 = boost::rational_cast<double>(s.y0);
      const double x1 = boost::rational_cast<double>(s.x1), y1 = boost::rational_cast<double>(s.y1);
      auto orient = [](double ax, double ay, double bx, double by, double cx, double cy) {
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
      };
      auto crosses = [&](double px, double py, double qx, double qy) {
        const double d1 = orient(x0, y0, x1, y1, px, py), d2 = orient(x0, y0, x1, y1, qx, qy);
        const double d3 = orient(px, py, qx, qy, x0, y0), d4 = orient(px, py, qx, qy, x1, y1);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0;
      };
      const int ilo = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) * res - offset[0])) - 1);
      const int ihi = std::min(res - 1, static_cast<int>(std::ceil(std::max(x0, x1) * res - offset[0])) + 1);
      const int jlo = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) * res - offset[1])) - 1);
      const int jhi = std::min(res - 1, static_cast<int>(std::ceil(std::max(y0, y1) * res - offset[1])) + 1);
      for (int i = ilo; i <= ihi; ++i)
        for (int j = jlo; j <= jhi; ++j) {
          const std::size_t c = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * stride[1];
          const double px = coord(0, i), py = coord(1, j);
          if (i + 1 < res && crosses(px, py, coord(0, i + 1), py)) cut[0][c] = 1;
          if (j + 1 < res && crosses(px, py, px, coord(1, j + 1))) cut[1][c] = 1;
        }
    }
  } else {
    for (const auto& s : f.slabs) {
      const std::size_t a = static_cast<std::size_t>(s.axis);
      const double pos = boost::rational_cast<double>(s.pos);
      const int i = static_cast<int>(std::floor(pos * res - offset[a]));
      if (i < 0 || i + 1 >= res) continue;
      // iterate over samples of the other axes inside the ranges
      std::vector<int> lo(dims), hi(dims);
      bool empty = false;
      for (std::size_t j = 0; j < dims; ++j) {
        if (j == a) {
          lo[j] = hi[j] = i;
          continue;
        }
        const double rlo = boost::rational_cast<double>(s.range[j].first);
        const double rhi = boost::rational_cast<double>(s.range[j].second);
        lo[j] = std::max(0, static_cast<int>(std::ceil(rlo * res - offset[j])));
        hi[j] = std::min(res - 1, static_cast<int>(std::floor(rhi * res - offset[j])));
        if (lo[j] > hi[j]) empty = true;
      }
      if (empty) continue;
      std::vector<int> cur = lo;
      for (;;) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < dims; ++j) c += static_cast<std::size_t>(cur[j]) * stride[j];
        cut[a][c] = 1;
        std::size_t j = 0;
        while (j < dims && cur[j] == hi[j]) {
          cur[j] = lo[j];
          ++j;
        }
        if (j == dims) break;
        ++cur[j];
      }
    }
  }

  UnionFind uf(total);
  std::vector<int> idx(dims, 0);
  for (std::size_t c = 0; c < total; ++c) {
    if (inside[c]) {
      for (std::size_t a = 0; a < dims; ++a) {
        if (idx[a] + 1 >= res) continue;
        const std::size_t nb = c + stride[a];
        if (inside[nb] && !cut[a][c]) uf.unite(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(nb));
      }
    }
    for (std::size_t a = 0; a < dims; ++a) {
      if (++idx[a] < res) break;
      idx[a] = 0;
    }
  }
  return uf.count_roots(inside);
}

}  // namespace detail

struct PartitionCount {
  std::int64_t count = 0;
  int resolution = 0;  // the finer of the two agreeing resolutions
};

/// M(k): connected components of Omega minus S^(k), certified by agreement
/// of two successive raster resolutions.
inline PartitionCount partition_count(const Domain& d, int k, int max_doublings = 3) {
  const KFrame f = build_frame(d, k);
  int res;
  if (d.is_triangle())
    res = 32 << ((k + 1) / 2);
  else
    res = std::max(8, 4 << (k / d.dim + 1));
  std::size_t previous = detail::raster_components(f, res);
  for (int step = 0; step < max_doublings; ++step) {
    res *= 2;
    const std::size_t current = detail::raster_components(f, res);
    if (current == previous) return {static_cast<std::int64_t>(current), res};
    previous = current;
  }
  throw ResolutionError("partition count for k=" + std::to_string(k) + " did not stabilise under refinement");
}

// ---------------------------------------------------------------------------
// subdomain spectra

enum class Subdomain { square_s, rect_r };

/// Square S = (pi/2, pi) x (0, pi/2): (2p+1)^2 + (2q+1)^2.
/// Rectangle R(k): 2^(k-1) (p^2 + q^2), p >= 1, q odd.
inline AlgebraicValue subdomain_spectrum_value(Subdomain sub, int k, int p, int q) {
  if (sub == Subdomain::square_s) {
    if (p < 0 || q < 0) throw DomainError("square quantum numbers must be nonnegative");
    const Integer a = 2 * p + 1, b = 2 * q + 1;
    return AlgebraicValue::integer(1, a * a + b * b);
  }
  if (k < 2) throw DomainError("rectangle subdomain needs k >= 2");
  if (p < 1 || q < 1 || q % 2 == 0) throw DomainError("rectangle quantum numbers need p >= 1 and q odd");
  return AlgebraicValue::integer(1, (Integer(p) * p + Integer(q) * q) << (k - 1));
}

/// Two distinct subdomain eigenfunctions sharing lambda_{U_Q^k(m,n)}, for an
/// odd triangle quantum number (m,n) with n != 0.
struct SubdomainWitness {
  Subdomain sub;
  int k;
  std::pair<int, int> first, second;
};

inline SubdomainWitness subdomain_witness(const QuantumNumber& core, int k) {
  const int m = core[0], n = core[1];
  if (k < 1) throw DomainError("subdomain witnesses need k >= 1");
  if (n == 0 || (m - n) % 2 == 0) throw DomainError("subdomain witnesses need an odd quantum number with n != 0");
  if (k == 1) return {Subdomain::square_s, 1, {(m + n - 1) / 2, (m - n - 1) / 2}, {(m - n - 1) / 2, (m + n - 1) / 2}};
  return {Subdomain::rect_r, k, {m + n, m - n}, {m - n, m + n}};
}

}  // namespace reptile
