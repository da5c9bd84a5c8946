#include <catch_amalgamated.hpp>

#include "reptile/nodal.hpp"

using namespace reptile;

namespace {

const Problem tri{Domain::triangle(), Boundary::neumann};
const Problem rect{Domain::box(2), Boundary::neumann};
const Problem rect_d{Domain::box(2), Boundary::dirichlet};

AlgebraicValue integer(int dim, long v) { return AlgebraicValue::integer(dim, v); }

std::int64_t grid_nu(const Problem& p, const QuantumNumber& m) {
  return count_grid(EigenfunctionCombo::basis(p, m)).nu;
}

}  // namespace

TEST_CASE("closed-form nodal counts") {
  CHECK(count_formula(tri, {3, 3}).nu == 10);
  CHECK(count_formula(tri, {6, 0}).nu == 16);
  CHECK(count_formula(rect, {2, 1}).nu == 6);
  CHECK(count_formula(rect, {1, 1}).nu == 4);
  CHECK(count_formula(tri, {0, 0}).nu == 1);
  CHECK(count_formula(rect_d, {2, 1}).nu == 2);
  CHECK_THROWS_AS(count_formula(tri, {2, 1}), UnsupportedError);
  CHECK_THROWS_AS(count_formula(tri, {3, 0}), UnsupportedError);
  CHECK_THROWS_AS(count_formula({Domain::triangle(), Boundary::dirichlet}, {2, 1}), UnsupportedError);
}

TEST_CASE("grid nodal counts") {
  CHECK(grid_nu(tri, {1, 0}) == 2);
  CHECK(grid_nu(tri, {3, 3}) == 10);
  CHECK(grid_nu(tri, {6, 0}) == 16);
  CHECK(grid_nu(rect, {1, 1}) == 4);
  CHECK(grid_nu(rect, {2, 1}) == 6);
  CHECK(grid_nu(rect_d, {2, 1}) == 2);
  const auto c = count_grid(EigenfunctionCombo::basis(tri, {3, 3}));
  CHECK(c.method == CountMethod::grid);
  CHECK(c.stable);
  CHECK_THROWS_AS(count_grid(EigenfunctionCombo::basis(tri, {1, 0}), 8), DomainError);
}

TEST_CASE("grid count agrees with the closed forms") {
  for (int n : {2, 3}) {
    const Problem p{Domain::box(n), Boundary::neumann};
    QuantumNumber m(std::vector<int>(static_cast<std::size_t>(n), 0));
    const int top = 8;
    for (;;) {
      REQUIRE(grid_nu(p, m) == count_formula(p, m).nu);
      std::size_t j = 0;
      while (j < m.size() && m[j] == top) m[j++] = 0;
      if (j == m.size()) break;
      ++m[j];
    }
  }
  for (int m = 0; m <= 6; ++m) {
    REQUIRE(grid_nu(tri, {m, m}) == count_formula(tri, {m, m}).nu);
    REQUIRE(grid_nu(tri, {2 * m, 0}) == count_formula(tri, {2 * m, 0}).nu);
  }
}

TEST_CASE("Courant bound and antisymmetric doubling") {
  for (const Problem& p : {tri, rect, Problem{Domain::box(3), Boundary::neumann}, Problem{Domain::triangle(), Boundary::dirichlet},
                           rect_d, Problem{Domain::box(3), Boundary::dirichlet}}) {
    auto si = build_index(p, integer(p.domain.ring_dim(), p.domain.dim == 3 ? 151 : 301));
    for (const auto& level : si.levels()) {
      const auto n = counting(si, level.value).n;
      for (const auto& m : level.members) {
        const auto nu = grid_nu(p, m);
        REQUIRE(nu <= static_cast<std::int64_t>(n));
        if (p == tri && level.multiplicity() == 1 && parity(level.value) == Parity::odd) REQUIRE(nu % 2 == 0);
      }
    }
  }
}

TEST_CASE("deficiency bound examples") {
  auto si = build_index(tri, integer(1, 60));
  auto r50 = deficiency_bound(si, integer(1, 50));
  CHECK(r50.core.k == 1);
  CHECK(r50.d_core == 2);
  CHECK(r50.partitions == 3);
  CHECK(r50.multiple_bound == 2);
  CHECK(r50.bound >= 2);
  auto r1 = deficiency_bound(si, integer(1, 1));
  CHECK(r1.multiple_bound == 0);
  CHECK(r1.bound == 0);
  CHECK_THROWS_AS(deficiency_bound(si, integer(1, 0)), DomainError);
  CHECK_THROWS_AS(deficiency_bound(si, integer(1, 3)), InvalidEigenvalueError);

  auto rs = build_index(rect, integer(2, 20));
  auto r9 = deficiency_bound(rs, integer(2, 9));
  CHECK(r9.d_core == 2);
  CHECK(r9.multiple_bound == 1);
  CHECK(r9.boundary_even == 3);
  CHECK(r9.bound >= 1);
}

TEST_CASE("deficiency bounds never exceed the exact deficiency") {
  for (const Problem& p : {tri, rect, Problem{Domain::box(3), Boundary::neumann}}) {
    auto si = build_index(p, integer(p.domain.ring_dim(), 201));
    for (const auto& level : si.levels()) {
      if (level.value.is_zero() || level.multiplicity() != 1) continue;
      const auto r = deficiency_bound(si, level.value);
      const auto exact = simple_deficiency(si, level.value);
      REQUIRE(exact >= 0);
      REQUIRE(r.bound <= exact);
    }
  }
}

TEST_CASE("Dirichlet deficiency identity") {
  auto si = build_index(rect_d, integer(2, 301));
  const auto six = dirichlet_deficiency_check(si, integer(2, 6));
  CHECK(six.lhs == 0);
  CHECK(six.rhs == 0);
  CHECK(six.boundary_odd == 1);
  CHECK(simple_deficiency(si, integer(2, 3)) == 0);
  const auto twelve = dirichlet_deficiency_check(si, integer(2, 12));
  CHECK(twelve.lhs == twelve.rhs);
  CHECK_THROWS_AS(dirichlet_deficiency_check(si, integer(2, 3)), DomainError);
  std::size_t checked = 0;
  for (const auto& level : si.levels()) {
    if (parity(level.value) != Parity::even || level.multiplicity() != 1) continue;
    const Level* low = si.find(scale_gamma2(level.value, -1));
    if (!low || low->multiplicity() != 1) continue;
    const auto id = dirichlet_deficiency_check(si, level.value);
    REQUIRE(id.lhs == id.rhs);
    ++checked;
  }
  CHECK(checked > 10);
}
