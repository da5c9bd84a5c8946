#pragma once

// Nodal-domain counts (closed forms and a certified grid oracle), nodal
// deficiency bounds and the Dirichlet deficiency identity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "reptile/eigenfn.hpp"
#include "reptile/folding.hpp"
#include "reptile/qlattice.hpp"
#include "reptile/sampling.hpp"
#include "reptile/spectrum.hpp"
#include "reptile/union_find.hpp"

namespace reptile {

enum class CountMethod { formula, grid };

struct NodalCount {
  std::int64_t nu = 0;
  CountMethod method = CountMethod::formula;
  int resolution = 0;  // samples along the longest axis at the finer level
  bool stable = true;
};

/// Closed forms: box prod(m_j + 1) (Neumann) or prod m_j (Dirichlet);
/// Neumann triangle (m,m) -> (m+1)(m+2)/2 and (2m,0) -> (m+1)^2.
inline NodalCount count_formula(const Problem& p, const QuantumNumber& m) {
  require_valid(p, m);
  std::int64_t nu = 1;
  if (!p.domain.is_triangle()) {
    for (int v : m.m) nu *= p.bc == Boundary::neumann ? v + 1 : v;
    return {nu, CountMethod::formula, 0, true};
  }
  if (p.bc == Boundary::neumann) {
    if (m[0] == m[1]) return {std::int64_t(m[0] + 1) * (m[0] + 2) / 2, CountMethod::formula, 0, true};
    if (m[1] == 0 && m[0] % 2 == 0) return {std::int64_t(m[0] / 2 + 1) * (m[0] / 2 + 1), CountMethod::formula, 0, true};
  }
  throw UnsupportedError("no closed nodal count for " + describe(p) + " " + to_string(m) + "; use the grid count");
}

/// Sampled nodal components at a fixed resolution.
struct GridComponents {
  std::vector<int> res;            // samples per axis
  std::vector<double> offset;      // fractional sample offset per axis
  std::vector<std::int32_t> label; // component id per sample, -1 outside / zero
  std::int64_t count = 0;
};

namespace detail {

/// Per-axis sample counts: base cells along the longest axis, at least 16
/// scaled by edge length and at least 8 per half period of the highest
/// frequency on that axis.
inline std::vector<int> grid_resolution(const EigenfunctionCombo& f, int base) {
  const auto l = edge_lengths(f.problem().domain);
  std::vector<int> res(l.size());
  for (std::size_t j = 0; j < l.size(); ++j) {
    const double scale = l[j] / std::numbers::pi;
    const double by_freq = 8.0 * f.max_frequency(j) * scale;
    res[j] = static_cast<int>(std::ceil(std::max({16.0 * scale, by_freq, base * scale})));
  }
  return res;
}

}  // namespace detail

/// Components of {f > 0} u {f < 0} sampled on the offset grid. Two adjacent
/// samples are joined only when the segment between them is certified free
/// of zeros by a Lipschitz bound, refined by bisection.
inline GridComponents grid_components(const EigenfunctionCombo& f, const std::vector<int>& res) {
  const Domain& d = f.problem().domain;
  const auto l = edge_lengths(d);
  const std::size_t dims = l.size();
  const auto& prods = f.products();
  const std::size_t np = prods.size();

  GridComponents out;
  out.res = res;
  out.offset.resize(dims);
  std::vector<double> step(dims);
  std::vector<std::size_t> stride(dims);
  std::size_t total = 1;
  for (std::size_t j = 0; j < dims; ++j) {
    out.offset[j] = grid_offset(j);
    step[j] = l[j] / res[j];
    stride[j] = total;
    total *= static_cast<std::size_t>(res[j]);
  }
  auto coord = [&](std::size_t j, int i) { return (i + out.offset[j]) * step[j]; };

  // table[t][j][i] = trig factor of product t on axis j at sample i
  std::vector<std::vector<std::vector<double>>> table(np, std::vector<std::vector<double>>(dims));
  for (std::size_t t = 0; t < np; ++t)
    for (std::size_t j = 0; j < dims; ++j) {
      auto& col = table[t][j];
      col.resize(static_cast<std::size_t>(res[j]));
      for (int i = 0; i < res[j]; ++i) col[static_cast<std::size_t>(i)] = prods[t].factor(j, coord(j, i));
    }

  std::vector<double> value(total, 0.0);
  std::vector<char> active(total, 0);
  std::vector<int> idx(dims, 0);
  for (std::size_t c = 0; c < total; ++c) {
    const bool inside = !d.is_triangle() || coord(1, idx[1]) < coord(0, idx[0]);
    if (inside) {
      double s = 0.0;
      for (std::size_t t = 0; t < np; ++t) {
        double v = prods[t].coef;
        for (std::size_t j = 0; j < dims; ++j) v *= table[t][j][static_cast<std::size_t>(idx[j])];
        s += v;
      }
      value[c] = s;
      active[c] = s != 0.0;
    }
    for (std::size_t j = 0; j < dims; ++j) {
      if (++idx[j] < res[j]) break;
      idx[j] = 0;
    }
  }

  UnionFind uf(total);
  std::vector<double> edge_coef(np);
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t c = 0; c < total; ++c) {
    if (active[c]) {
      for (std::size_t a = 0; a < dims; ++a) {
        if (idx[a] + 1 >= res[a]) continue;
        const std::size_t nb = c + stride[a];
        if (!active[nb] || (value[c] > 0) != (value[nb] > 0)) continue;
        // restriction of f to the edge: sum_t edge_coef[t] * trig_t(freq_t s)
        double lip = 0.0;
        for (std::size_t t = 0; t < np; ++t) {
          double v = prods[t].coef;
          for (std::size_t j = 0; j < dims; ++j)
            if (j != a) v *= table[t][j][static_cast<std::size_t>(idx[j])];
          edge_coef[t] = v;
          lip += std::abs(v) * prods[t].freq[a];
        }
        auto along = [&](double s) {
          double r = 0.0;
          for (std::size_t t = 0; t < np; ++t) r += edge_coef[t] * prods[t].factor(a, s);
          return r;
        };
        const bool positive = value[c] > 0;
        const double slack = 1e-9 * f.sup_bound();
        auto certify = [&](auto&& self, double s0, double s1, double g0, double g1, int depth) -> bool {
          if (std::abs(g0) + std::abs(g1) > lip * (s1 - s0) * (1 + 1e-9) + slack) return true;
          if (depth == 0) return false;
          const double sm = 0.5 * (s0 + s1);
          const double gm = along(sm);
          if (gm == 0.0 || (gm > 0) != positive) return false;
          return self(self, s0, sm, g0, gm, depth - 1) && self(self, sm, s1, gm, g1, depth - 1);
        };
        const double s0 = coord(a, idx[a]);
        if (certify(certify, s0, s0 + step[a], value[c], value[nb], 20))
          uf.unite(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(nb));
      }
    }
    for (std::size_t j = 0; j < dims; ++j) {
      if (++idx[j] < res[j]) break;
      idx[j] = 0;
    }
  }

  out.label.assign(total, -1);
  std::vector<std::int32_t> id_of_root(total, -1);
  std::int32_t next = 0;
  for (std::size_t c = 0; c < total; ++c) {
    if (!active[c]) continue;
    auto& id = id_of_root[uf.find(static_cast<std::uint32_t>(c))];
    if (id < 0) id = next++;
    out.label[c] = id;
  }
  out.count = next;
  return out;
}

/// Grid nodal count, accepted once two successive doublings agree.
inline NodalCount count_grid(const EigenfunctionCombo& f, int resolution = 0, int max_doublings = 3) {
  if (resolution != 0 && resolution < 16) throw DomainError("grid resolution must be at least 16");
  auto res = detail::grid_resolution(f, resolution);
  std::int64_t previous = grid_components(f, res).count;
  for (int step = 0; step < max_doublings; ++step) {
    for (auto& r : res) r *= 2;
    const std::int64_t current = grid_components(f, res).count;
    if (current == previous) return {current, CountMethod::grid, *std::max_element(res.begin(), res.end()), true};
    previous = current;
  }
  throw InstabilityError("grid nodal count did not stabilise for an eigenfunction of " + f.value().to_string());
}

/// Closed form when available, otherwise the grid count.
inline NodalCount nodal_count(const Problem& p, const QuantumNumber& m) {
  try {
    return count_formula(p, m);
  } catch (const UnsupportedError&) {
    return count_grid(EigenfunctionCombo::basis(p, m));
  }
}

// ---------------------------------------------------------------------------
// deficiency

/// M(k) for the domain; boxes and triangle both by certified raster count,
/// memoised per (domain, k).
inline std::int64_t frame_partition_count(const Domain& d, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::int64_t> cache;
  const std::pair<int, int> key{d.is_triangle() ? 0 : d.dim, k};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::int64_t m = partition_count(d, k).count;
  std::lock_guard lock(mutex);
  cache[key] = m;
  return m;
}

struct DeficiencyReport {
  AlgebraicValue lambda;
  OddCore core;
  std::int64_t d_core = 0;         // d(lambda0)
  std::int64_t partitions = 0;     // M(k)
  std::int64_t boundary_even = 0;  // |right boundary of Q(lambda0) n E|
  std::int64_t multiple_bound = 0; // (d(lambda0) - 1)(M(k) - 1)
  std::optional<std::int64_t> boundary_bound;  // |..| - 1, k = 0 and Neumann only
  std::int64_t bound = 0;          // max of the applicable bounds
  std::optional<std::int64_t> exact;  // N - nu for simple eigenvalues when computed
};

/// Lower bounds on delta(lambda) from the frame partition and the right
/// boundary of the lattice.
inline DeficiencyReport deficiency_bound(const SpectrumIndex& si, const AlgebraicValue& lambda) {
  const Problem& p = si.problem();
  if (lambda.is_zero()) throw DomainError("the ground state has no odd core");
  si.level_of(lambda);
  DeficiencyReport r;
  r.lambda = lambda;
  r.core = odd_core(lambda);
  r.d_core = static_cast<std::int64_t>(si.level_of(r.core.core).multiplicity());
  r.partitions = frame_partition_count(p.domain, r.core.k);
  r.multiple_bound = (r.d_core - 1) * (r.partitions - 1);
  r.bound = r.multiple_bound;
  if (r.core.k == 0 && p.bc == Boundary::neumann) {
    const auto region = enumerate_below(p, r.core.core);
    r.boundary_even = static_cast<std::int64_t>(right_boundary(region, Parity::even).size());
    r.boundary_bound = r.boundary_even - 1;
    r.bound = std::max(r.bound, *r.boundary_bound);
  }
  return r;
}

/// N(lambda) - nu(phi) for a simple eigenvalue, nu from the grid oracle.
inline std::int64_t simple_deficiency(const SpectrumIndex& si, const AlgebraicValue& lambda, bool use_grid = true) {
  const Level& level = si.level_of(lambda);
  if (level.multiplicity() != 1)
    throw UnsupportedError("deficiency of the multiple eigenvalue " + lambda.to_string() +
                           " needs a minimum over the eigenspace");
  const auto& m = level.members.front();
  const std::int64_t nu =
      use_grid ? count_grid(EigenfunctionCombo::basis(si.problem(), m)).nu : nodal_count(si.problem(), m).nu;
  return static_cast<std::int64_t>(counting(si, lambda).n) - nu;
}

struct DirichletIdentity {
  std::int64_t lhs = 0;   // delta(lambda)
  std::int64_t rhs = 0;   // 2 delta(gamma^-2 lambda) + |right boundary of Q(lambda) n O| - 1
  std::int64_t folded_deficiency = 0;
  std::int64_t boundary_odd = 0;
};

inline DirichletIdentity dirichlet_deficiency_check(const SpectrumIndex& si, const AlgebraicValue& lambda,
                                                   bool use_grid = true) {
  const Problem& p = si.problem();
  if (p.bc != Boundary::dirichlet) throw DomainError("the deficiency identity is for Dirichlet problems");
  if (parity(lambda) != Parity::even) throw DomainError("the deficiency identity needs an even eigenvalue");
  const AlgebraicValue folded = scale_gamma2(lambda, -1);
  const Level& top = si.level_of(lambda);
  const Level* low = si.find(folded);
  if (!low) throw InvalidEigenvalueError(folded.to_string() + " is not an eigenvalue");
  if (top.multiplicity() != 1 || low->multiplicity() != 1)
    throw UnsupportedError("the deficiency identity check needs simple eigenvalues");
  DirichletIdentity out;
  out.lhs = simple_deficiency(si, lambda, use_grid);
  out.folded_deficiency = simple_deficiency(si, folded, use_grid);
  out.boundary_odd = static_cast<std::int64_t>(right_boundary(enumerate_below(p, lambda), Parity::odd).size());
  out.rhs = 2 * out.folded_deficiency + out.boundary_odd - 1;
  return out;
}

}  // namespace reptile
