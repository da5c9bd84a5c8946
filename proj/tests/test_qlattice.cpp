#include <catch_amalgamated.hpp>

#include <set>

#include "reptile/qlattice.hpp"

using namespace reptile;

namespace {

const Problem tri{Domain::triangle(), Boundary::neumann};
const Problem tri_d{Domain::triangle(), Boundary::dirichlet};
const Problem rect{Domain::box(2), Boundary::neumann};

AlgebraicValue integer(int dim, long v) { return AlgebraicValue::integer(dim, v); }

std::vector<QuantumNumber> qns(std::initializer_list<QuantumNumber> l) { return l; }

std::set<QuantumNumber> as_set(const std::vector<QuantumNumber>& v) { return {v.begin(), v.end()}; }

// Brute-force count of triangle quantum numbers below lambda.
std::vector<QuantumNumber> brute_triangle(int lambda, bool dirichlet) {
  std::vector<QuantumNumber> out;
  for (int m = 0; m * m < lambda + 1; ++m)
    for (int n = 0; n <= m; ++n) {
      if (dirichlet && !(m > n && n >= 1)) continue;
      if (m * m + n * n < lambda) out.push_back({m, n});
    }
  return out;
}

}  // namespace

TEST_CASE("enumerate_below examples") {
  auto r = enumerate_below(tri, integer(1, 9));
  CHECK(r.quantum_numbers() == qns({{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}));
  CHECK(enumerate_below(tri, integer(1, 0)).size() == 0);
  auto b = enumerate_below(rect, integer(2, 7));
  CHECK(as_set(b.quantum_numbers()) == as_set(qns({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}})));
  CHECK(b.size() == 6);
}

TEST_CASE("enumerate_below matches brute force and is monotone") {
  for (int lambda = 0; lambda <= 400; lambda += 7) {
    for (bool dir : {false, true}) {
      auto r = enumerate_below(dir ? tri_d : tri, integer(1, lambda));
      REQUIRE(as_set(r.quantum_numbers()) == as_set(brute_triangle(lambda, dir)));
      REQUIRE(r.size() == brute_triangle(lambda, dir).size());
    }
  }
  for (int n = 2; n <= 4; ++n) {
    const Problem box{Domain::box(n), Boundary::neumann};
    std::set<QuantumNumber> previous;
    for (int c = 1; c <= 60; c += 3) {
      auto cur = as_set(enumerate_below(box, integer(n, c)).quantum_numbers());
      REQUIRE(std::includes(cur.begin(), cur.end(), previous.begin(), previous.end()));
      previous = cur;
    }
  }
}

TEST_CASE("enumerate_below orders by value then lexicographically") {
  auto r = enumerate_below(tri, integer(1, 60));
  for (std::size_t i = 1; i < r.size(); ++i) {
    const auto c = compare(r.points[i - 1].value, r.points[i].value);
    REQUIRE(c <= 0);
    if (c == 0) REQUIRE(r.points[i - 1].m < r.points[i].m);
  }
  // 50 = 7^2 + 1^2 = 5^2 + 5^2
  auto r51 = enumerate_below(tri, integer(1, 51));
  CHECK(r51.points[r51.size() - 2].m == QuantumNumber{5, 5});
  CHECK(r51.points[r51.size() - 1].m == QuantumNumber{7, 1});
}

TEST_CASE("enumerate_below with irrational cutoff") {
  const Problem box3{Domain::box(3), Boundary::neumann};
  // (1,1,1) has value 1 + 2g + g^2; the cutoff equal to it excludes it
  const auto v = from_quantum_number(3, std::vector<int>{1, 1, 1});
  auto below = enumerate_below(box3, v);
  for (const auto& pt : below.points) REQUIRE(pt.value < v);
  CHECK(std::none_of(below.points.begin(), below.points.end(),
                     [](const LatticePoint& p) { return p.m == QuantumNumber{1, 1, 1}; }));
  auto above = enumerate_below(box3, v + integer(3, 1));
  CHECK(std::any_of(above.points.begin(), above.points.end(),
                    [](const LatticePoint& p) { return p.m == QuantumNumber{1, 1, 1}; }));
}

TEST_CASE("parity_split examples") {
  auto [odd, even] = parity_split(enumerate_below(tri, integer(1, 9)));
  CHECK(odd == qns({{1, 0}, {2, 1}}));
  CHECK(even == qns({{0, 0}, {1, 1}, {2, 0}, {2, 2}}));
  CHECK(parity_of(tri, {1, 1}) == Parity::even);
  CHECK(parity_of(Problem{Domain::box(3), Boundary::neumann}, {1, 0, 2}) == Parity::odd);
}

TEST_CASE("right_boundary examples") {
  CHECK(right_boundary(enumerate_below(tri, integer(1, 5))) == qns({{1, 1}, {2, 0}}));
  CHECK(right_boundary(enumerate_below(tri, integer(1, 9)), Parity::even) == qns({{2, 0}, {2, 2}}));
  CHECK(right_boundary(enumerate_below(tri, integer(1, 2))) == qns({{1, 0}}));
}

TEST_CASE("boundary bijection counts up to 2000") {
  for (int lambda = 1; lambda <= 2000; ++lambda) {
    auto r = enumerate_below(tri, integer(1, lambda));
    auto [odd, even] = parity_split(r);
    REQUIRE(odd.size() == even.size() - right_boundary(r, Parity::even).size());
    auto rd = enumerate_below(tri_d, integer(1, lambda));
    auto [dodd, deven] = parity_split(rd);
    REQUIRE(dodd.size() == deven.size() + right_boundary(rd, Parity::odd).size());
  }
}

TEST_CASE("reference sets") {
  CHECK(reference_set_triangle(ReferenceKind::diag, 3).size() == 10);
  CHECK(reference_set_triangle(ReferenceKind::axis, 3).size() == 16);
  CHECK(reference_set_triangle(ReferenceKind::diag, 1) == qns({{0, 0}, {1, 0}, {1, 1}}));
  CHECK(reference_set_box({2, 1}).size() == 6);
  CHECK(reference_set_box({0, 0, 0}).size() == 1);
  CHECK(reference_set_box({4, 3}).size() == 20);
  CHECK_THROWS_AS(reference_set_triangle(ReferenceKind::diag, 0), DomainError);
}

TEST_CASE("reference sets sit inside Q(lambda) plus the point, strictly for m >= 3") {
  for (int m = 1; m <= 10; ++m) {
    for (auto kind : {ReferenceKind::diag, ReferenceKind::axis}) {
      const QuantumNumber top = kind == ReferenceKind::diag ? QuantumNumber{m, m} : QuantumNumber{2 * m, 0};
      const auto lambda = eigenvalue(tri, top);
      auto region = as_set(enumerate_below(tri, lambda).quantum_numbers());
      region.insert(top);
      const auto ref = as_set(reference_set_triangle(kind, m));
      REQUIRE(std::includes(region.begin(), region.end(), ref.begin(), ref.end()));
      if (m >= 3) {
        const QuantumNumber extra = kind == ReferenceKind::diag ? QuantumNumber{m + 1, 0} : QuantumNumber{2 * m - 1, 2};
        REQUIRE(region.count(extra));
        REQUIRE(!ref.count(extra));
      }
    }
  }
}
