#pragma once

// End-to-end acceptance checks, shared by the acceptance test binary and
// `reptile selftest`.

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reptile/courant.hpp"

namespace reptile {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

inline AlgebraicValue integer(int dim, long v) { return AlgebraicValue::integer(dim, v); }

/// Fails the running criterion with a message.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

/// Calls fn(m) for every vector in [lo, hi]^n.
template <class Fn>
void for_each_box(std::size_t n, int lo, int hi, Fn&& fn) {
  QuantumNumber m(std::vector<int>(n, lo));
  for (;;) {
    fn(m);
    std::size_t j = 0;
    while (j < n && m[j] == hi) m[j++] = lo;
    if (j == n) return;
    ++m[j];
  }
}

inline double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string theorem_triangle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto vs = classify_triangle(integer(1, 5000));
  const double secs = elapsed(t0);
  const auto sharp = sharp_positions(vs);
  expect(sharp == std::vector<std::size_t>{1, 2, 3, 4, 6}, "sharp positions " + join(sharp));
  std::vector<std::size_t> values;
  for (const auto& v : vs)
    if (v.sharp) values.push_back(static_cast<std::size_t>(v.approx));
  expect(values == std::vector<std::size_t>{0, 1, 2, 4, 8}, "sharp values " + join(values));
  for (const auto& v : vs)
    if (!v.sharp)
      expect(!v.witness.points.empty() || v.witness.subdomain || v.witness.multiplicity > 1,
             "missing witness at position " + std::to_string(v.position));
  expect(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << vs.size() << " levels below 5000, sharp positions " << join(sharp) << ", " << secs << " s";
  return s.str();
}

inline std::string theorem_boxes() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream s;
  struct Case {
    int n;
    long cutoff;
    std::vector<std::size_t> expected;
  };
  for (const auto& c : {Case{2, 2000, {1, 2, 4, 6}}, Case{3, 500, {1, 2}}, Case{4, 500, {1, 2}}}) {
    const auto vs = classify_box(c.n, integer(c.n, c.cutoff));
    const auto sharp = sharp_positions(vs);
    expect(sharp == c.expected, "n=" + std::to_string(c.n) + " sharp positions " + join(sharp));
    s << "n=" << c.n << ": " << vs.size() << " levels, sharp " << join(sharp) << "; ";
  }
  const double secs = elapsed(t0);
  expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  s << secs << " s";
  return s.str();
}

inline std::string nodal_formula_vs_grid() {
  std::size_t checked = 0;
  auto check = [&](const Problem& p, const QuantumNumber& m) {
    const auto g = count_grid(EigenfunctionCombo::basis(p, m));
    const auto f = count_formula(p, m);
    expect(g.stable && g.nu == f.nu, describe(p) + " " + to_string(m) + ": grid " + std::to_string(g.nu) +
                                         ", formula " + std::to_string(f.nu));
    ++checked;
    return g.nu;
  };
  for (int n : {2, 3}) {
    const Problem p{Domain::box(n), Boundary::neumann};
    for_each_box(static_cast<std::size_t>(n), 0, 8, [&](const QuantumNumber& m) { check(p, m); });
  }
  const Problem tri{Domain::triangle(), Boundary::neumann};
  for (int m = 0; m <= 6; ++m) {
    check(tri, {m, m});
    check(tri, {2 * m, 0});
  }
  const Problem rect{Domain::box(2), Boundary::neumann};
  expect(check(tri, {3, 3}) == 10, "nu(3,3)");
  expect(check(tri, {6, 0}) == 16, "nu(6,0)");
  expect(check(rect, {1, 1}) == 4, "nu(1,1)");
  expect(check(rect, {2, 1}) == 6, "nu(2,1)");
  return std::to_string(checked) + " basis functions agree";
}

inline std::string multiplicity_identities() {
  for (std::int64_t z = 0; z <= 2000; ++z)
    for (int k = 1; k <= 6; ++k)
      expect(r2(z) == r2(z << k), "r2(" + std::to_string(z) + ") vs k=" + std::to_string(k));
  for (int n : {3, 5}) {
    const auto si = build_index({Domain::box(n), Boundary::neumann}, integer(n, 200));
    for (const auto& l : si.levels())
      expect(l.multiplicity() == 1, "n=" + std::to_string(n) + " multiple level " + l.value.to_string());
  }
  std::size_t levels = 0;
  for (int n : {2, 4}) {
    const auto si = build_index({Domain::box(n), Boundary::neumann}, integer(n, 200));
    for (const auto& l : si.levels()) {
      expect(multiplicity_by_factorization(n, l.value) == static_cast<std::int64_t>(l.multiplicity()),
             "n=" + std::to_string(n) + " factorization at " + l.value.to_string());
      ++levels;
    }
  }
  return "r2 invariance z<=2000, k<=6; odd n simple; " + std::to_string(levels) + " even-n levels factor";
}

inline std::string deficiency_bounds() {
  std::ostringstream s;
  for (int n : {2, 3})
    for (int k = 0; k <= 8; ++k) {
      const auto got = partition_count(Domain::box(n), k).count;
      expect(got == box_partition_formula(n, k), "M(" + std::to_string(k) + ") for n=" + std::to_string(n) + " is " +
                                                      std::to_string(got));
    }
  std::size_t checked = 0;
  for (const Problem& p : {Problem{Domain::triangle(), Boundary::neumann}, Problem{Domain::box(2), Boundary::neumann},
                           Problem{Domain::box(3), Boundary::neumann}}) {
    const auto si = build_index(p, integer(p.domain.ring_dim(), 201));
    for (const auto& level : si.levels()) {
      if (level.value.is_zero() || level.multiplicity() != 1) continue;
      const auto r = deficiency_bound(si, level.value);
      const auto exact = simple_deficiency(si, level.value);
      expect(exact >= 0 && r.bound <= exact,
             describe(p) + " at " + level.value.to_string() + ": bound " + std::to_string(r.bound) + ", exact " +
                 std::to_string(exact));
      ++checked;
    }
  }
  s << "partition counts match for n=2,3, k<=8; bounds hold on " << checked << " simple eigenvalues";
  return s.str();
}

inline std::string frame_vanishing_check() {
  std::mt19937_64 rng(20240601);
  std::size_t cases = 0;
  double worst = 0.0;
  struct Case {
    Domain d;
    long cutoff;
  };
  for (const auto& c : {Case{Domain::triangle(), 80}, Case{Domain::box(2), 60}, Case{Domain::box(3), 40}}) {
    const Problem p{c.d, Boundary::neumann};
    const auto si = build_index(p, integer(c.d.ring_dim(), c.cutoff));
    std::vector<AlgebraicValue> cores;
    for (const auto& l : si.levels())
      if (!l.value.is_zero() && parity(l.value) == Parity::odd) cores.push_back(l.value);
    std::uniform_int_distribution<std::size_t> pick(0, cores.size() - 1);
    std::uniform_int_distribution<int> pick_k(0, 4);
    for (int i = 0; i < 50; ++i) {
      const int k = pick_k(rng);
      const auto f = random_combo(p, scale_gamma2(cores[pick(rng)], k), rng);
      const double sup = sup_estimate(f);
      const double on_frame = frame_vanishing(f, build_frame(c.d, k), 10000);
      expect(on_frame <= 1e-9 * sup, describe(p) + " k=" + std::to_string(k) + " at " + f.value().to_string() +
                                         ": " + std::to_string(on_frame));
      worst = std::max(worst, on_frame / sup);
      ++cases;
    }
  }
  std::ostringstream s;
  s << cases << " cases, worst relative frame value " << worst;
  return s.str();
}

inline std::string folding_algebra() {
  std::size_t count = 0;
  auto check = [&](const Problem& p, const QuantumNumber& m) {
    const int ring = p.domain.ring_dim();
    const AlgebraicValue v = from_quantum_number(ring, m);
    const QuantumNumber u = unfold_qn(p, m);
    expect(from_quantum_number(ring, u) == scale_gamma2(v, 1), "unfold scaling at " + to_string(m));
    expect(fold_qn(p, u) == m, "fold after unfold at " + to_string(m));
    if (parity(v) == Parity::even) {
      const QuantumNumber f = fold_qn(p, m);
      expect(unfold_qn(p, f) == m, "unfold after fold at " + to_string(m));
      expect(scale_gamma2(v, -1) == from_quantum_number(ring, f), "fold scaling at " + to_string(m));
    }
    ++count;
  };
  const Problem tri{Domain::triangle(), Boundary::neumann};
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= m; ++n) check(tri, {m, n});
  for (int n = 2; n <= 6; ++n) {
    const Problem p{Domain::box(n), Boundary::neumann};
    for_each_box(static_cast<std::size_t>(n), 0, 20, [&](const QuantumNumber& m) { check(p, m); });
  }

  std::mt19937_64 rng(7);
  std::size_t points = 0;
  for (Boundary bc : {Boundary::neumann, Boundary::dirichlet})
    for (const Domain& d : {Domain::triangle(), Domain::box(2), Domain::box(3)}) {
      const Problem p{d, bc};
      const auto si = build_index(p, integer(d.ring_dim(), 60));
      for (const auto& level : si.levels()) {
        const auto f = random_combo(p, level.value, rng);
        const auto u = unfold_fn(f);
        const double scale = f.sup_bound();
        for (const auto& x : domain_samples(d, 1000, 0.77)) {
          const Point h = unfold_point(d, x);
          expect(std::abs(u.raw(h) - f.raw(fold_point(d, h))) <= 1e-12 * scale,
                 "pointwise law for " + describe(p) + " at " + level.value.to_string());
          ++points;
        }
      }
    }
  return std::to_string(count) + " quantum numbers, " + std::to_string(points) + " pointwise evaluations";
}

inline std::string dirichlet_checks() {
  const Problem rect_d{Domain::box(2), Boundary::dirichlet};
  const auto si = build_index(rect_d, integer(2, 301));
  const auto six = dirichlet_deficiency_check(si, integer(2, 6));
  expect(six.lhs == 0 && six.rhs == 0, "delta(6) = " + std::to_string(six.lhs));
  std::size_t pairs = 0;
  for (const auto& level : si.levels()) {
    if (parity(level.value) != Parity::even || level.multiplicity() != 1) continue;
    const Level* low = si.find(scale_gamma2(level.value, -1));
    if (!low || low->multiplicity() != 1) continue;
    const auto id = dirichlet_deficiency_check(si, level.value);
    expect(id.lhs == id.rhs, "identity at " + level.value.to_string() + ": " + std::to_string(id.lhs) + " vs " +
                                 std::to_string(id.rhs));
    ++pairs;
  }
  std::size_t functions = 0;
  for (const Domain& d : {Domain::triangle(), Domain::box(2), Domain::box(3)}) {
    const Problem p{d, Boundary::dirichlet};
    for (const auto& pt : enumerate_below(p, integer(d.ring_dim(), 201)).points) {
      const auto got = symmetry_check(EigenfunctionCombo::basis(p, pt.m));
      expect(got == expected_symmetry(p, pt.value), describe(p) + " " + to_string(pt.m) + " is " +
                                                         std::string(to_string(got)));
      ++functions;
    }
  }
  return std::to_string(pairs) + " identity pairs, " + std::to_string(functions) + " parity flips";
}

inline std::string half_triangle_check() {
  const Problem tri{Domain::triangle(), Boundary::neumann};
  const auto region = enumerate_below(tri, integer(1, 2001));
  // odd lattice points with value < lambda, swept in value order
  std::vector<std::int64_t> odd_values;
  for (const auto& pt : region.points)
    if (parity_of(tri, pt.m) == Parity::odd) odd_values.push_back(static_cast<std::int64_t>(pt.value.coeff(0)));
  std::size_t idx = 0;
  for (std::int64_t lambda = 1; lambda <= 2000; ++lambda) {
    while (idx < odd_values.size() && odd_values[idx] < lambda) ++idx;
    expect(half_triangle_count(lambda) == static_cast<std::int64_t>(idx),
           "count at " + std::to_string(lambda) + ": " + std::to_string(half_triangle_count(lambda)) + " vs " +
               std::to_string(idx));
  }
  return "agreement for every lambda <= 2000";
}

struct Entry {
  int id;
  const char* title;
  std::string (*run)();
};

inline const std::vector<Entry>& criteria() {
  static const std::vector<Entry> list{
      {1, "triangle Courant-sharp set below 5000", theorem_triangle},
      {2, "box Courant-sharp sets (n=2 below 2000, n=3,4 below 500)", theorem_boxes},
      {3, "nodal closed forms agree with the grid count", nodal_formula_vs_grid},
      {4, "multiplicity identities", multiplicity_identities},
      {5, "frame partitions and deficiency bounds", deficiency_bounds},
      {6, "eigenfunctions vanish on k-frames", frame_vanishing_check},
      {7, "folding algebra and pointwise folding law", folding_algebra},
      {8, "Dirichlet deficiency identity and parity flip", dirichlet_checks},
      {9, "half-triangle count equals the odd lattice count", half_triangle_check},
  };
  return list;
}

}  // namespace acceptance

/// Runs the selected criteria (all when `only` is empty), printing one line
/// per criterion to `out`.
inline std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::set<int>& only = {}) {
  std::vector<CriterionResult> results;
  for (const auto& e : acceptance::criteria()) {
    if (!only.empty() && !only.count(e.id)) continue;
    CriterionResult r{e.id, e.title, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = e.run();
      r.pass = true;
    } catch (const std::exception& ex) {
      r.detail = ex.what();
    }
    r.seconds = acceptance::elapsed(t0);
    out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " [" << r.detail << "] ("
        << static_cast<long>(r.seconds * 10) / 10.0 << " s)" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace reptile
