#include <catch_amalgamated.hpp>

#include "reptile/spectrum.hpp"

using namespace reptile;

namespace {

const Problem tri{Domain::triangle(), Boundary::neumann};

AlgebraicValue integer(int dim, long v) { return AlgebraicValue::integer(dim, v); }

std::vector<long> values_of(const SpectrumIndex& si) {
  std::vector<long> out;
  for (const auto& l : si.levels()) out.push_back(l.value.coeff(0).convert_to<long>());
  return out;
}

}  // namespace

TEST_CASE("build_index examples") {
  auto si = build_index(tri, integer(1, 11));
  CHECK(values_of(si) == std::vector<long>{0, 1, 2, 4, 5, 8, 9, 10});
  for (const auto& l : si.levels()) CHECK(l.multiplicity() == 1);

  auto rect = build_index(Problem{Domain::box(2), Boundary::neumann}, integer(2, 7));
  CHECK(values_of(rect) == std::vector<long>{0, 1, 2, 3, 4, 6});
  CHECK(rect.at_position(4).value == integer(2, 3));
  CHECK(rect.at_position(4).members == std::vector<QuantumNumber>{{1, 1}});
  CHECK(rect.at_position(6).members == std::vector<QuantumNumber>{{2, 1}});

  auto big = build_index(tri, integer(1, 30));
  const auto& l25 = big.level_of(integer(1, 25));
  CHECK(l25.multiplicity() == 2);
  CHECK(l25.members == std::vector<QuantumNumber>{{4, 3}, {5, 0}});
  CHECK_THROWS_AS(build_index(tri, integer(1, 0)), DomainError);
}

TEST_CASE("counting examples") {
  auto si = build_index(tri, integer(1, 11));
  auto c8 = counting(si, integer(1, 8));
  CHECK(c8.lower == 5);
  CHECK(c8.n == 6);
  CHECK(c8.d == 1);
  CHECK(c8.upper == 6);
  auto c3 = counting(si, integer(1, 3));
  CHECK(c3.lower == 3);
  CHECK(c3.n == 3);
  CHECK(c3.d == 0);
  auto c0 = counting(si, integer(1, 0));
  CHECK(c0.lower == 0);
  CHECK(c0.n == 1);
  CHECK_THROWS_AS(counting(si, integer(1, 11)), OutOfRangeError);
  CHECK_THROWS_AS(counting(si, integer(1, 12)), OutOfRangeError);
}

TEST_CASE("N jumps by one at multiple eigenvalues") {
  auto si = build_index(tri, integer(1, 30));
  auto c = counting(si, integer(1, 25));
  CHECK(c.d == 2);
  CHECK(c.n == c.lower + 1);
  CHECK(c.upper == c.lower + 2);
}

TEST_CASE("odd_core examples") {
  auto c8 = odd_core(integer(1, 8));
  CHECK(c8.core == integer(1, 1));
  CHECK(c8.k == 3);
  auto c5 = odd_core(integer(1, 5));
  CHECK(c5.core == integer(1, 5));
  CHECK(c5.k == 0);
  auto c6 = odd_core(integer(2, 6));
  CHECK(c6.core == integer(2, 3));
  CHECK(c6.k == 1);
  CHECK_THROWS_AS(odd_core(integer(1, 0)), DomainError);
}

TEST_CASE("odd cores preserve multiplicity") {
  for (const Problem& p : {tri, Problem{Domain::box(2), Boundary::neumann}, Problem{Domain::box(3), Boundary::neumann},
                           Problem{Domain::box(4), Boundary::neumann}}) {
    auto si = build_index(p, integer(p.domain.ring_dim(), 300));
    for (const auto& l : si.levels()) {
      if (l.value.is_zero()) continue;
      const auto oc = odd_core(l.value);
      REQUIRE(scale_gamma2(oc.core, oc.k) == l.value);
      REQUIRE(parity(oc.core) == Parity::odd);
      REQUIRE(si.level_of(oc.core).multiplicity() == l.multiplicity());
    }
  }
}

TEST_CASE("r2 examples and doubling invariance") {
  CHECK(r2(5) == 8);
  CHECK(r2(0) == 1);
  CHECK(r2(10) == 8);
  CHECK(r2(3) == 0);
  CHECK(r2(25) == 12);
  for (std::int64_t z = 0; z <= 2000; ++z)
    for (int k = 1; k <= 6; ++k) REQUIRE(r2(z) == r2(z << k));
}

TEST_CASE("odd dimensions have simple spectra") {
  for (int n : {3, 5}) {
    auto si = build_index(Problem{Domain::box(n), Boundary::neumann}, integer(n, 200));
    for (const auto& l : si.levels()) REQUIRE(l.multiplicity() == 1);
  }
}

TEST_CASE("multiplicity_by_factorization examples and cross-check") {
  CHECK(multiplicity_by_factorization(4, from_quantum_number(4, std::vector<int>{1, 1, 1, 1})) == 1);
  CHECK(multiplicity_by_factorization(2, integer(2, 9)) == 2);
  CHECK(multiplicity_by_factorization(4, integer(4, 9)) == 2);
  CHECK_THROWS_AS(multiplicity_by_factorization(2, integer(2, 5)), InvalidEigenvalueError);
  CHECK_THROWS_AS(multiplicity_by_factorization(3, integer(3, 1)), DomainError);
  for (int n : {2, 4}) {
    auto si = build_index(Problem{Domain::box(n), Boundary::neumann}, integer(n, 200));
    for (const auto& l : si.levels())
      REQUIRE(multiplicity_by_factorization(n, l.value) == static_cast<std::int64_t>(l.multiplicity()));
  }
  auto rect = build_index(Problem{Domain::box(2), Boundary::neumann}, integer(2, 10));
  CHECK(rect.level_of(integer(2, 9)).members == std::vector<QuantumNumber>{{1, 2}, {3, 0}});
}

TEST_CASE("half-triangle count equals the odd lattice count") {
  std::int64_t previous = 0;
  for (int lambda = 1; lambda <= 2000; ++lambda) {
    auto [odd, even] = parity_split(enumerate_below(tri, integer(1, lambda)));
    const auto count = half_triangle_count(lambda);
    REQUIRE(count == static_cast<std::int64_t>(odd.size()));
    REQUIRE(count >= previous);
    previous = count;
  }
}
