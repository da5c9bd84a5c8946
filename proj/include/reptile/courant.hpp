#pragma once

// Courant-sharpness verdicts. Every non-sharp verdict carries a witness that
// is re-checked with exact arithmetic before it is reported.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reptile/nodal.hpp"
#include "reptile/parallel.hpp"

namespace reptile {

enum class Reason {
  ground_state,
  orthogonality_second,
  explicit_count,
  odd_boundary,
  subdomain_multiplicity,
  multiple_eigenvalue,
  reference_set_strict,
  box_case_analysis,
};

inline std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::ground_state: return "GroundState";
    case Reason::orthogonality_second: return "OrthogonalitySecond";
    case Reason::explicit_count: return "ExplicitCount";
    case Reason::odd_boundary: return "OddBoundary";
    case Reason::subdomain_multiplicity: return "SubdomainMultiplicity";
    case Reason::multiple_eigenvalue: return "MultipleEigenvalue";
    case Reason::reference_set_strict: return "ReferenceSetStrict";
    default: return "BoxCaseAnalysis";
  }
}

inline bool sharp_reason(Reason r) {
  return r == Reason::ground_state || r == Reason::orthogonality_second || r == Reason::explicit_count;
}

struct Witness {
  std::vector<QuantumNumber> points;        // boundary points, extra lattice point or m'
  std::optional<SubdomainWitness> subdomain;
  std::optional<ReferenceKind> reference;   // triangle reference set and its parameter
  int reference_param = 0;
  std::size_t reference_size = 0;           // |reference set| (= nu of the basis function)
  std::size_t multiplicity = 0;             // d > 1 witness
  std::string branch;                       // box decision-tree branch
};

struct Verdict {
  std::size_t position = 0;
  AlgebraicValue value;
  double approx = 0.0;
  std::size_t multiplicity = 0;
  Parity parity = Parity::even;
  OddCore core;                  // value 0 keeps core 0, k 0
  bool sharp = false;
  Reason reason = Reason::ground_state;
  std::size_t n = 0;             // N(lambda)
  std::optional<std::int64_t> nu;  // nodal count of the basis function when known
  std::vector<QuantumNumber> members;
  Witness witness;
  std::vector<std::string> explanation;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyError("witness check failed: " + what);
}

inline std::string show(const AlgebraicValue& v) { return v.to_string(); }

inline Verdict blank_verdict(const SpectrumIndex& si, const Level& level) {
  Verdict v;
  v.position = level.position;
  v.value = level.value;
  v.approx = level.approx;
  v.multiplicity = level.multiplicity();
  v.parity = parity(level.value);
  v.members = level.members;
  v.n = counting(si, level.value).n;
  if (level.value.is_zero())
    v.core = {level.value, 0};
  else
    v.core = odd_core(level.value);
  return v;
}

inline void mark_sharp_by_count(Verdict& v, const Problem& p, Reason reason) {
  const auto c = nodal_count(p, v.members.front());
  v.nu = c.nu;
  v.explanation.push_back("nu(phi" + to_string(v.members.front()) + ") = " + std::to_string(c.nu) + " by " +
                          (c.method == CountMethod::formula ? "closed form" : "grid count") +
                          ", N = " + std::to_string(v.n));
  require(c.nu == static_cast<std::int64_t>(v.n),
          "expected a Courant-sharp count at " + show(v.value) + " but nu = " + std::to_string(c.nu) +
              " and N = " + std::to_string(v.n));
  v.sharp = true;
  v.reason = reason;
}

inline void mark_multiple(Verdict& v) {
  v.reason = Reason::multiple_eigenvalue;
  v.witness.multiplicity = v.multiplicity;
  require(v.multiplicity > 1, "multiplicity witness at " + show(v.value));
  v.explanation.push_back("multiplicity d = " + std::to_string(v.multiplicity) +
                          " > 1: a multiple eigenvalue is not Courant-sharp");
}

/// w in the right boundary of Q(lambda) and even.
inline bool in_even_right_boundary(const Problem& p, const QuantumNumber& w, const AlgebraicValue& lambda) {
  if (!is_valid(p, w) || parity_of(p, w) != Parity::even) return false;
  if (!(eigenvalue(p, w) < lambda)) return false;
  QuantumNumber next = w;
  ++next.m[0];
  return !is_valid(p, next) || eigenvalue(p, next) >= lambda;
}

inline void triangle_odd(Verdict& v, const Problem& p) {
  const QuantumNumber& top = v.members.front();
  const int m = top[0], n = top[1];
  const QuantumNumber a{m - 1, n};
  const QuantumNumber b = n >= 1 ? QuantumNumber{m, n - 1} : QuantumNumber{m - 1, 2};
  for (const auto& w : {a, b})
    require(in_even_right_boundary(p, w, v.value),
            to_string(w) + " in the even right boundary of Q(" + show(v.value) + ")");
  v.reason = Reason::odd_boundary;
  v.witness.points = {a, b};
  v.explanation.push_back("odd eigenvalue with member " + to_string(top));
  v.explanation.push_back(to_string(a) + " and " + to_string(b) + " lie in the even right boundary of Q(" +
                          show(v.value) + "), so that boundary has more than one point");
}

inline void triangle_subdomain(Verdict& v, const QuantumNumber& member) {
  const auto w = subdomain_witness(member, v.core.k);
  const auto f = subdomain_spectrum_value(w.sub, w.k, w.first.first, w.first.second);
  const auto s = subdomain_spectrum_value(w.sub, w.k, w.second.first, w.second.second);
  require(f == v.value && s == v.value && w.first != w.second,
          "subdomain pair for " + to_string(member) + " at " + show(v.value));
  v.reason = Reason::subdomain_multiplicity;
  v.witness.subdomain = w;
  const std::string name = w.sub == Subdomain::square_s ? "square S" : "rectangle R(" + std::to_string(w.k) + ")";
  v.explanation.push_back("odd core " + show(v.core.core) + " (k = " + std::to_string(v.core.k) + ") has member " +
                          to_string(member) + " with second entry nonzero");
  v.explanation.push_back(name + " eigenfunctions (" + std::to_string(w.first.first) + "," +
                          std::to_string(w.first.second) + ") and (" + std::to_string(w.second.first) + "," +
                          std::to_string(w.second.second) + ") both have eigenvalue " + show(v.value) +
                          ": the subdomain eigenvalue is multiple");
}

inline void triangle_reference(Verdict& v, const Problem& p, int m) {
  const int k = v.core.k;
  ReferenceKind kind;
  int a;
  QuantumNumber top, extra;
  if (k % 2 == 1) {
    kind = ReferenceKind::diag;
    a = m << ((k - 1) / 2);
    top = {a, a};
    extra = {a + 1, 0};
  } else {
    kind = ReferenceKind::axis;
    a = m << (k / 2 - 1);
    top = {2 * a, 0};
    extra = {2 * a - 1, 2};
  }
  require(v.members.size() == 1 && v.members.front() == top,
          "expected the single member " + to_string(top) + " at " + show(v.value));
  const auto ref = reference_set_triangle(kind, a);
  const auto nu = count_formula(p, top).nu;
  require(static_cast<std::int64_t>(ref.size()) == nu, "reference set size equals nu for " + to_string(top));
  for (const auto& q : ref) {
    if (q == top) continue;
    require(is_valid(p, q) && eigenvalue(p, q) < v.value, to_string(q) + " in Q(" + show(v.value) + ")");
  }
  require(is_valid(p, extra) && eigenvalue(p, extra) < v.value &&
              !std::binary_search(ref.begin(), ref.end(), extra),
          to_string(extra) + " in Q(" + show(v.value) + ") outside the reference set");
  require(nu < static_cast<std::int64_t>(v.n), "nu < N at " + show(v.value));
  v.reason = Reason::reference_set_strict;
  v.nu = nu;
  v.witness.reference = kind;
  v.witness.reference_param = a;
  v.witness.reference_size = ref.size();
  v.witness.points = {extra};
  v.explanation.push_back("odd core " + show(v.core.core) + " (k = " + std::to_string(v.core.k) +
                          "), single member " + to_string(top));
  v.explanation.push_back("reference set of " + std::to_string(ref.size()) + " points = nu(phi" + to_string(top) +
                          ") lies in Q(" + show(v.value) + ") plus " + to_string(top));
  v.explanation.push_back(to_string(extra) + " is in Q(" + show(v.value) + ") but not in the reference set, so N = " +
                          std::to_string(v.n) + " > nu = " + std::to_string(nu));
}

inline Verdict classify_triangle_level(const SpectrumIndex& si, const Level& level) {
  const Problem& p = si.problem();
  Verdict v = blank_verdict(si, level);
  if (level.value.is_zero()) {
    v.nu = 1;
    v.sharp = true;
    v.reason = Reason::ground_state;
    v.explanation.push_back("ground state: constant eigenfunction, one nodal domain");
    return v;
  }
  if (level.value == AlgebraicValue::integer(1, 1)) {
    mark_sharp_by_count(v, p, Reason::orthogonality_second);
    v.explanation.insert(v.explanation.begin(), "second eigenvalue: orthogonality to constants forces a sign change");
    return v;
  }
  if (v.parity == Parity::odd) {
    triangle_odd(v, p);
    return v;
  }
  const Level& core = si.level_of(v.core.core);
  for (const auto& member : core.members)
    if (member[1] != 0) {
      triangle_subdomain(v, member);
      return v;
    }
  require(core.members.size() == 1, "odd core " + show(v.core.core) + " of (m,0) type");
  const int m = core.members.front()[0];
  if (m == 1 && v.core.k <= 3) {
    mark_sharp_by_count(v, p, Reason::explicit_count);
    return v;
  }
  if (v.multiplicity > 1) {
    mark_multiple(v);
    return v;
  }
  triangle_reference(v, p, m);
  return v;
}

/// The case analysis producing m' for a simple box eigenvalue, or nothing for
/// the Courant-sharp exceptions.
inline std::optional<std::pair<QuantumNumber, std::string>> box_candidate(const QuantumNumber& m) {
  const std::size_t n = m.size();
  auto unit = [n](std::size_t j, int value) {
    QuantumNumber q(std::vector<int>(n, 0));
    q.m[j] = value;
    return q;
  };
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (m[k] < m[k + 1]) return std::pair{unit(k, m[k] + 1), std::string("ascent at index ") + std::to_string(k + 1)};
  std::size_t first = n - 1;
  while (first > 0 && m[first - 1] == m[n - 1]) --first;
  if (first == 0) {
    if (m[0] == 0 || (n == 2 && m[0] == 1)) return std::nullopt;
    return std::pair{unit(0, m[0] + 1), std::string("constant entries")};
  }
  if (first >= 2) return std::pair{unit(first, m[first] + 1), std::string("I >= 3")};
  const int m1 = m[0], m2 = m[1];
  if ((n >= 3 && m2 >= 1) || (n == 2 && m2 >= 3)) return std::pair{unit(1, m2 + 1), std::string("I = 2")};
  if (n >= 3) {
    if (m1 >= 2) return std::pair{unit(1, 1), std::string("I = 2, m2 = 0")};
    return std::nullopt;
  }
  if (m2 == 2 && m1 > 3) return std::pair{unit(1, 3), std::string("I = 2, m2 = 2, m1 > 3")};
  if (m2 == 2 && m1 == 3) return std::pair{unit(0, 4), std::string("I = 2, m = (3,2)")};
  if (m2 == 1 && m1 >= 3) return std::pair{unit(1, 2), std::string("I = 2, m2 = 1, m1 >= 3")};
  if (m2 == 0 && m1 >= 2) return std::pair{unit(1, 1), std::string("I = 2, m2 = 0, m1 >= 2")};
  return std::nullopt;
}

inline Verdict classify_box_level(const SpectrumIndex& si, const Level& level) {
  const Problem& p = si.problem();
  Verdict v = blank_verdict(si, level);
  if (level.value.is_zero()) {
    v.nu = 1;
    v.sharp = true;
    v.reason = Reason::ground_state;
    v.explanation.push_back("ground state: constant eigenfunction, one nodal domain");
    return v;
  }
  if (v.multiplicity > 1) {
    mark_multiple(v);
    return v;
  }
  const QuantumNumber& m = v.members.front();
  QuantumNumber second(std::vector<int>(m.size(), 0));
  second.m[0] = 1;
  if (m == second) {
    mark_sharp_by_count(v, p, Reason::orthogonality_second);
    v.explanation.insert(v.explanation.begin(), "second eigenvalue: orthogonality to constants forces a sign change");
    return v;
  }
  const auto cand = box_candidate(m);
  if (!cand) {
    mark_sharp_by_count(v, p, Reason::explicit_count);
    return v;
  }
  const auto& [mp, branch] = *cand;
  bool inside = true;
  for (std::size_t j = 0; j < m.size(); ++j) inside = inside && mp[j] <= m[j];
  require(eigenvalue(p, mp) < v.value, "lambda" + to_string(mp) + " < lambda" + to_string(m));
  require(!inside, to_string(mp) + " outside the lattice box of " + to_string(m));
  const auto nu = count_formula(p, m).nu;
  require(nu < static_cast<std::int64_t>(v.n), "nu < N at " + show(v.value));
  v.reason = Reason::box_case_analysis;
  v.nu = nu;
  v.witness.points = {mp};
  v.witness.branch = branch;
  v.explanation.push_back("simple eigenvalue with member " + to_string(m) + ", branch: " + branch);
  v.explanation.push_back("m' = " + to_string(mp) + " has eigenvalue " + show(eigenvalue(p, mp)) + " < " +
                          show(v.value) + " and lies outside the lattice box");
  v.explanation.push_back("so N = " + std::to_string(v.n) + " > nu = " + std::to_string(nu));
  return v;
}

template <class Fn>
std::vector<Verdict> classify_all(const SpectrumIndex& si, Fn&& one) {
  std::vector<Verdict> out(si.size());
  parallel_for(si.size(), [&](std::size_t i) { out[i] = one(si, si[i]); });
  return out;
}

}  // namespace detail

/// Verdicts for every level of a Neumann triangle index.
inline std::vector<Verdict> classify_triangle(const SpectrumIndex& si) {
  const Problem& p = si.problem();
  if (!p.domain.is_triangle() || p.bc != Boundary::neumann)
    throw UnsupportedError("triangle verdicts are implemented for the Neumann triangle only");
  if (si.cutoff() < AlgebraicValue::integer(1, 9)) throw DomainError("triangle verdicts need a cutoff of at least 9");
  return detail::classify_all(si, detail::classify_triangle_level);
}

inline std::vector<Verdict> classify_triangle(const AlgebraicValue& cutoff) {
  return classify_triangle(build_index({Domain::triangle(), Boundary::neumann}, cutoff));
}

/// Verdicts for every level of a Neumann box index.
inline std::vector<Verdict> classify_box(const SpectrumIndex& si) {
  const Problem& p = si.problem();
  if (p.domain.is_triangle() || p.bc != Boundary::neumann)
    throw UnsupportedError("box verdicts are implemented for Neumann boxes only");
  std::size_t below = 0;
  for (const auto& l : si.levels()) below += l.multiplicity();
  if (below < 6) throw DomainError("box verdicts need a cutoff above the sixth eigenvalue");
  return detail::classify_all(si, detail::classify_box_level);
}

inline std::vector<Verdict> classify_box(int n, const AlgebraicValue& cutoff) {
  return classify_box(build_index({Domain::box(n), Boundary::neumann}, cutoff));
}

inline std::vector<Verdict> classify(const SpectrumIndex& si) {
  return si.problem().domain.is_triangle() ? classify_triangle(si) : classify_box(si);
}

/// Positions of the Courant-sharp levels.
inline std::vector<std::size_t> sharp_positions(const std::vector<Verdict>& vs) {
  std::vector<std::size_t> out;
  for (const auto& v : vs)
    if (v.sharp) out.push_back(v.position);
  return out;
}

}  // namespace reptile
