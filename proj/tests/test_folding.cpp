#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "reptile/folding.hpp"

using namespace reptile;

namespace {

constexpr double pi = std::numbers::pi;
const Domain tri = Domain::triangle();
const Problem tri_n{tri, Boundary::neumann};

void check_point(const Point& got, const Point& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Catch::Approx(want[i]).margin(1e-14));
}

}  // namespace

TEST_CASE("coordinate maps") {
  check_point(fold_point(tri, {pi / 2, 0}), {pi / 2, pi / 2});
  check_point(unfold_point(tri, {pi, 0}), {pi / 2, pi / 2});
  check_point(fold_point(Domain::box(2), {pi / 4, 0}), {0, pi * std::numbers::sqrt2 / 4});
  check_point(reflect(tri, {pi / 2, pi / 2}), {pi / 2, pi / 2});
  check_point(reflect(tri, {pi, pi / 4}), {3 * pi / 4, 0});
  check_point(reflect(Domain::box(2), {0, 0.5}), {pi, 0.5});
  CHECK_THROWS_AS(fold_point(tri, {0.9 * pi, 0.3 * pi}), DomainError);
  CHECK_THROWS_AS(unfold_point(tri, {0, 1}), DomainError);
  CHECK_THROWS_AS(reflect(Domain::box(2), {4, 0}), DomainError);
}

TEST_CASE("F and U are inverse, R is an involution fixing L") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (const Domain& d : {tri, Domain::box(2), Domain::box(3), Domain::box(5)}) {
    const auto l = edge_lengths(d);
    for (int t = 0; t < 500; ++t) {
      Point p(l.size());
      for (std::size_t j = 0; j < l.size(); ++j) p[j] = u(rng) * l[j];
      if (d.is_triangle() && p[1] > p[0]) std::swap(p[0], p[1]);
      const Point h = unfold_point(d, p);
      REQUIRE(contains_half(d, h));
      const Point back = fold_point(d, h);
      for (std::size_t j = 0; j < p.size(); ++j) REQUIRE(back[j] == Catch::Approx(p[j]).margin(1e-12));
      const Point r = reflect(d, reflect(d, p));
      for (std::size_t j = 0; j < p.size(); ++j) REQUIRE(r[j] == Catch::Approx(p[j]).margin(1e-12));
    }
    const Point a = d.is_triangle() ? Point{pi * 0.6, 0.1} : Point(l.size(), 0.2);
    const Point b = d.is_triangle() ? Point{pi * 0.9, 0.7} : Point(l.size(), 0.3);
    double dab = 0, dfab = 0;
    const Point fa = unfold_point(d, a), fb = unfold_point(d, b);
    for (std::size_t j = 0; j < a.size(); ++j) {
      dab += (a[j] - b[j]) * (a[j] - b[j]);
      dfab += (fa[j] - fb[j]) * (fa[j] - fb[j]);
    }
    CHECK(std::sqrt(dab / dfab) == Catch::Approx(gamma_of(d)));
  }
  // L is fixed by R
  check_point(reflect(tri, {0.75 * pi, 0.25 * pi}), {0.75 * pi, 0.25 * pi});
  check_point(reflect(Domain::box(3), {pi / 2, 0.3, 0.2}), {pi / 2, 0.3, 0.2});
}

TEST_CASE("quantum number folding examples") {
  CHECK(unfold_qn(tri_n, {1, 1}) == QuantumNumber{2, 0});
  CHECK(unfold_qn(tri_n, {2, 0}) == QuantumNumber{2, 2});
  CHECK(unfold_qn(tri_n, {2, 2}) == QuantumNumber{4, 0});
  CHECK(fold_qn(tri_n, {2, 0}) == QuantumNumber{1, 1});
  const Problem b3{Domain::box(3), Boundary::neumann};
  CHECK(unfold_qn(b3, {1, 0, 2}) == QuantumNumber{4, 1, 0});
  CHECK_THROWS_AS(fold_qn(tri_n, {2, 1}), FoldParityError);
  CHECK_THROWS_AS(fold_qn(b3, {1, 0, 2}), FoldParityError);
}

TEST_CASE("quantum number folding round trip and eigenvalue scaling") {
  for (int n = 2; n <= 4; ++n) {
    for (Boundary bc : {Boundary::neumann, Boundary::dirichlet}) {
      const Problem p{Domain::box(n), bc};
      for (const auto& pt : enumerate_below(p, AlgebraicValue::integer(n, 120)).points) {
        const auto u = unfold_qn(p, pt.m);
        REQUIRE(fold_qn(p, u) == pt.m);
        REQUIRE(eigenvalue(p, u) == scale_gamma2(pt.value, 1));
        if (parity_of(p, pt.m) == Parity::even) {
          const auto f = fold_qn(p, pt.m);
          REQUIRE(unfold_qn(p, f) == pt.m);
          REQUIRE(eigenvalue(p, f) == scale_gamma2(pt.value, -1));
        }
      }
    }
  }
  for (Boundary bc : {Boundary::neumann, Boundary::dirichlet}) {
    const Problem p{tri, bc};
    for (int m = 0; m <= 20; ++m)
      for (int k = 0; k <= m; ++k) {
        const QuantumNumber q{m, k};
        if (!is_valid(p, q)) continue;
        REQUIRE(fold_qn(p, unfold_qn(p, q)) == q);
        REQUIRE(eigenvalue(p, unfold_qn(p, q)) == scale_gamma2(eigenvalue(p, q), 1));
      }
  }
}

TEST_CASE("triangle frames") {
  auto f0 = build_frame(tri, 0);
  REQUIRE(f0.segments.size() == 1);
  CHECK(f0.segments[0] == Segment{Rational(1, 2), Rational(1, 2), Rational(1), Rational(0)});
  auto f1 = build_frame(tri, 1);
  REQUIRE(f1.segments.size() == 2);
  // {x = pi/2, y <= pi/2} and {y = pi/2, x >= pi/2}
  CHECK(f1.segments[0] == Segment{Rational(1, 2), Rational(0), Rational(1, 2), Rational(1, 2)});
  CHECK(f1.segments[1] == Segment{Rational(1), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  for (int k = 1; k <= 6; ++k) {
    auto f = build_frame(tri, k);
    CHECK(f.segments.size() == (std::size_t{1} << k));
    CHECK(frame_nests(f, build_frame(tri, k - 1)));
    for (const auto& p : frame_samples(f, 200)) CHECK(contains(tri, p));
  }
}

TEST_CASE("box frames") {
  auto f1 = build_frame(Domain::box(2), 1);
  REQUIRE(f1.slabs.size() == 2);
  for (const auto& s : f1.slabs) {
    CHECK(s.axis == 1);
    CHECK(s.pos == Rational(1, 2));
  }
  for (int n : {2, 3}) {
    for (int k = 1; k <= 6; ++k) {
      auto f = build_frame(Domain::box(n), k);
      CHECK(frame_nests(f, build_frame(Domain::box(n), k - 1)));
      for (const auto& p : frame_samples(f, 100)) CHECK(contains(Domain::box(n), p));
    }
  }
}

TEST_CASE("partition counts") {
  CHECK(partition_count(tri, 0).count == 2);
  CHECK(partition_count(Domain::box(2), 3).count == 3);
  // k-frames of the triangle are the nodal sets of phi_{U_Q^k(1,0)}, whose
  // counts are (m+1)(m+2)/2 for (m,m) and (m+1)^2 for (2m,0)
  const std::int64_t expected[] = {2, 3, 4, 6, 9, 15, 25};
  for (int k = 0; k <= 6; ++k) CHECK(partition_count(tri, k).count == expected[k]);
  CHECK(partition_count(tri, 4).count >= 5);
  for (int n : {2, 3})
    for (int k = 0; k <= 8; ++k) CHECK(partition_count(Domain::box(n), k).count == box_partition_formula(n, k));
}

TEST_CASE("subdomain spectra") {
  CHECK(subdomain_spectrum_value(Subdomain::square_s, 1, 1, 0) == AlgebraicValue::integer(1, 10));
  CHECK(subdomain_spectrum_value(Subdomain::square_s, 1, 0, 1) == AlgebraicValue::integer(1, 10));
  CHECK(subdomain_spectrum_value(Subdomain::rect_r, 2, 3, 1) == AlgebraicValue::integer(1, 20));
  CHECK(eigenvalue(tri_n, unfold_qn(tri_n, unfold_qn(tri_n, {2, 1}))) == AlgebraicValue::integer(1, 20));
  CHECK_THROWS_AS(subdomain_spectrum_value(Subdomain::rect_r, 1, 3, 1), DomainError);
  CHECK_THROWS_AS(subdomain_spectrum_value(Subdomain::rect_r, 2, 3, 2), DomainError);
  CHECK_THROWS_AS(subdomain_spectrum_value(Subdomain::square_s, 1, -1, 0), DomainError);
}

TEST_CASE("odd quantum numbers with n != 0 unfold to non-simple subdomain eigenvalues") {
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n < m; ++n) {
      if ((m - n) % 2 == 0) continue;
      QuantumNumber q{m, n};
      for (int k = 1; k <= 5; ++k) {
        q = unfold_qn(tri_n, q);
        const auto w = subdomain_witness({m, n}, k);
        REQUIRE(w.first != w.second);
        const auto a = subdomain_spectrum_value(w.sub, k, w.first.first, w.first.second);
        const auto b = subdomain_spectrum_value(w.sub, k, w.second.first, w.second.second);
        REQUIRE(a == eigenvalue(tri_n, q));
        REQUIRE(b == eigenvalue(tri_n, q));
      }
    }
}
