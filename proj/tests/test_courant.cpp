#include <catch_amalgamated.hpp>

#include "reptile/courant.hpp"

using namespace reptile;

namespace {

AlgebraicValue integer(int dim, long v) { return AlgebraicValue::integer(dim, v); }

const Verdict& at_value(const std::vector<Verdict>& vs, const AlgebraicValue& v) {
  for (const auto& x : vs)
    if (x.value == v) return x;
  FAIL("no verdict for " << v.to_string());
  throw 0;
}

std::vector<std::size_t> positions(std::initializer_list<std::size_t> p) { return p; }

}  // namespace

TEST_CASE("triangle sharp set") {
  const auto vs = classify_triangle(integer(1, 400));
  CHECK(sharp_positions(vs) == positions({1, 2, 3, 4, 6}));
  std::vector<long> values;
  for (const auto& v : vs)
    if (v.sharp) values.push_back(static_cast<long>(v.approx));
  CHECK(values == std::vector<long>{0, 1, 2, 4, 8});
}

TEST_CASE("triangle verdict examples") {
  const auto vs = classify_triangle(integer(1, 60));
  const auto& nine = at_value(vs, integer(1, 9));
  CHECK_FALSE(nine.sharp);
  CHECK(nine.reason == Reason::odd_boundary);
  CHECK(nine.witness.points == std::vector<QuantumNumber>{{2, 0}, {2, 2}});

  const auto& ten = at_value(vs, integer(1, 10));
  CHECK(ten.reason == Reason::subdomain_multiplicity);
  REQUIRE(ten.witness.subdomain);
  CHECK(ten.witness.subdomain->sub == Subdomain::square_s);
  CHECK(ten.witness.subdomain->first == std::pair{1, 0});
  CHECK(ten.witness.subdomain->second == std::pair{0, 1});

  const auto& eighteen = at_value(vs, integer(1, 18));
  CHECK(eighteen.reason == Reason::reference_set_strict);
  CHECK(eighteen.witness.reference == ReferenceKind::diag);
  CHECK(eighteen.witness.points == std::vector<QuantumNumber>{{4, 0}});
  CHECK(eighteen.nu == 10);

  const auto& sixteen = at_value(vs, integer(1, 16));
  CHECK(sixteen.reason == Reason::reference_set_strict);
  CHECK(sixteen.witness.reference == ReferenceKind::axis);
  CHECK(sixteen.witness.points == std::vector<QuantumNumber>{{3, 2}});
  CHECK(sixteen.nu == 9);
  CHECK(sixteen.n == 10);

  const auto& twenty = at_value(vs, integer(1, 20));
  CHECK(twenty.reason == Reason::subdomain_multiplicity);
  CHECK(twenty.witness.subdomain->sub == Subdomain::rect_r);

  const auto& eight = at_value(vs, integer(1, 8));
  CHECK(eight.sharp);
  CHECK(eight.reason == Reason::explicit_count);
  CHECK(eight.nu == 6);

  CHECK(at_value(vs, integer(1, 1)).reason == Reason::orthogonality_second);
  CHECK(at_value(vs, integer(1, 0)).reason == Reason::ground_state);
}

TEST_CASE("box sharp sets") {
  const auto rect = classify_box(2, integer(2, 600));
  CHECK(sharp_positions(rect) == positions({1, 2, 4, 6}));
  std::vector<long> values;
  for (const auto& v : rect)
    if (v.sharp) values.push_back(static_cast<long>(v.approx));
  CHECK(values == std::vector<long>{0, 1, 3, 6});
  CHECK(sharp_positions(classify_box(3, integer(3, 150))) == positions({1, 2}));
  CHECK(sharp_positions(classify_box(4, integer(4, 80))) == positions({1, 2}));
  CHECK(sharp_positions(classify_box(5, integer(5, 40))) == positions({1, 2}));
}

TEST_CASE("box verdict examples") {
  const auto vs = classify_box(2, integer(2, 40));
  const auto& v17 = at_value(vs, integer(2, 17));
  CHECK(v17.members == std::vector<QuantumNumber>{{3, 2}});
  CHECK(v17.reason == Reason::box_case_analysis);
  CHECK(v17.witness.points == std::vector<QuantumNumber>{{4, 0}});
  CHECK(v17.nu == 12);

  const auto& v9 = at_value(vs, integer(2, 9));
  CHECK(v9.reason == Reason::multiple_eigenvalue);
  CHECK(v9.witness.multiplicity == 2);

  const auto& v4 = at_value(vs, integer(2, 4));
  CHECK(v4.witness.points == std::vector<QuantumNumber>{{0, 1}});
  CHECK(at_value(vs, integer(2, 3)).reason == Reason::explicit_count);
  CHECK(at_value(vs, integer(2, 6)).nu == 6);

  const auto box3 = classify_box(3, integer(3, 20));
  const auto& ones = at_value(box3, eigenvalue({Domain::box(3), Boundary::neumann}, {1, 1, 1}));
  CHECK(ones.witness.points == std::vector<QuantumNumber>{{2, 0, 0}});
}

TEST_CASE("verdict preconditions") {
  CHECK_THROWS_AS(classify_triangle(integer(1, 8)), DomainError);
  CHECK_THROWS_AS(classify_box(2, integer(2, 6)), DomainError);
  CHECK_NOTHROW(classify_box(2, integer(2, 8)));
  CHECK_THROWS_AS(classify_triangle(build_index({Domain::triangle(), Boundary::dirichlet}, integer(1, 50))),
                  UnsupportedError);
  CHECK_THROWS_AS(classify_box(build_index({Domain::box(2), Boundary::dirichlet}, integer(2, 50))), UnsupportedError);
}

TEST_CASE("reason codes are consistent") {
  for (const auto& si : {build_index({Domain::triangle(), Boundary::neumann}, integer(1, 1500)),
                         build_index({Domain::box(2), Boundary::neumann}, integer(2, 800)),
                         build_index({Domain::box(3), Boundary::neumann}, integer(3, 200)),
                         build_index({Domain::box(4), Boundary::neumann}, integer(4, 100))}) {
    const auto vs = classify(si);
    REQUIRE(vs.size() == si.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& v = vs[i];
      REQUIRE(v.position == si[i].position);
      REQUIRE(v.sharp == sharp_reason(v.reason));
      if (v.nu) REQUIRE(*v.nu <= static_cast<std::int64_t>(v.n));
      if (v.sharp) continue;
      const auto& w = v.witness;
      REQUIRE((!w.points.empty() || w.subdomain || w.multiplicity > 1));
      if (si.problem().domain.is_triangle()) {
        // odd levels are decided by the boundary, even ones through their core
        REQUIRE((v.parity == Parity::odd) == (v.reason == Reason::odd_boundary));
      }
    }
  }
}

TEST_CASE("verdicts are stable under a larger cutoff") {
  const auto small = classify_triangle(integer(1, 200));
  const auto large = classify_triangle(integer(1, 900));
  REQUIRE(large.size() > small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    REQUIRE(small[i].value == large[i].value);
    REQUIRE(small[i].reason == large[i].reason);
    REQUIRE(small[i].sharp == large[i].sharp);
    REQUIRE(small[i].n == large[i].n);
  }
  const auto b_small = classify_box(3, integer(3, 60));
  const auto b_large = classify_box(3, integer(3, 150));
  for (std::size_t i = 0; i < b_small.size(); ++i) {
    REQUIRE(b_small[i].value == b_large[i].value);
    REQUIRE(b_small[i].reason == b_large[i].reason);
    REQUIRE(b_small[i].witness.points == b_large[i].witness.points);
  }
}

TEST_CASE("verdicts agree with grid nodal counts") {
  struct Case {
    Problem p;
    long cutoff;
  };
  for (const auto& c : {Case{{Domain::triangle(), Boundary::neumann}, 151}, Case{{Domain::box(2), Boundary::neumann}, 101},
                        Case{{Domain::box(3), Boundary::neumann}, 101}}) {
    const auto si = build_index(c.p, integer(c.p.domain.ring_dim(), c.cutoff));
    for (const auto& v : classify(si)) {
      if (v.multiplicity != 1) continue;
      const auto nu = count_grid(EigenfunctionCombo::basis(c.p, v.members.front())).nu;
      if (v.sharp)
        REQUIRE(nu == static_cast<std::int64_t>(v.n));
      else
        REQUIRE(nu < static_cast<std::int64_t>(v.n));
      if (v.nu) REQUIRE(*v.nu == nu);
    }
  }
}
