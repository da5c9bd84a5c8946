#pragma once

// Closed-form eigenfunctions and their linear combinations.
//
// Neumann triangle  cos(mx)cos(ny) + cos(nx)cos(my)
// Dirichlet triangle sin(mx)sin(ny) - sin(nx)sin(my)
// Neumann box       prod_j cos(gamma^(j-1) m_j x_j)
// Dirichlet box     prod_j sin(gamma^(j-1) m_j x_j)

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reptile/algebra.hpp"
#include "reptile/folding.hpp"
#include "reptile/qlattice.hpp"
#include "reptile/sampling.hpp"

namespace reptile {

/// One separable product coef * prod_j trig_j(freq_j x_j).
struct Product {
  double coef = 1.0;
  std::vector<char> sine;     // per axis: 1 = sin, 0 = cos
  std::vector<double> freq;   // per axis

  double factor(std::size_t j, double x) const {
    return sine[j] ? std::sin(freq[j] * x) : std::cos(freq[j] * x);
  }

  double operator()(const Point& p) const {
    double v = coef;
    for (std::size_t j = 0; j < freq.size(); ++j) v *= factor(j, p[j]);
    return v;
  }
};

struct Term {
  double coef = 1.0;
  QuantumNumber m;
};

/// sum_i coef_i phi_{m_i}, all terms sharing one eigenvalue.
class EigenfunctionCombo {
 public:
  EigenfunctionCombo(Problem problem, std::vector<Term> terms) : problem_(problem), terms_(std::move(terms)) {
    if (terms_.empty()) throw DomainError("an eigenfunction combination needs at least one term");
    if (std::none_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef != 0.0; }))
      throw DomainError("an eigenfunction combination needs a nonzero coefficient");
    value_ = eigenvalue(problem_, terms_.front().m);
    for (const auto& t : terms_)
      if (!(eigenvalue(problem_, t.m) == value_))
        throw InvalidEigenvalueError("terms " + to_string(terms_.front().m) + " and " + to_string(t.m) +
                                     " have different eigenvalues");
    expand();
  }

  static EigenfunctionCombo basis(const Problem& p, const QuantumNumber& m) { return {p, {{1.0, m}}}; }

  const Problem& problem() const { return problem_; }
  const std::vector<Term>& terms() const { return terms_; }
  const AlgebraicValue& value() const { return value_; }
  const std::vector<Product>& products() const { return products_; }

  /// Evaluation without the domain check.
  double raw(const Point& p) const {
    double s = 0.0;
    for (const auto& pr : products_) s += pr(p);
    return s;
  }

  double operator()(const Point& p) const {
    require_in(problem_.domain, p);
    return raw(p);
  }

  /// sum |coef| over products; bounds sup |f|.
  double sup_bound() const {
    double s = 0.0;
    for (const auto& pr : products_) s += std::abs(pr.coef);
    return s;
  }

  /// Largest frequency along axis j over all products.
  double max_frequency(std::size_t j) const {
    double f = 0.0;
    for (const auto& pr : products_) f = std::max(f, pr.freq[j]);
    return f;
  }

 private:
  void expand() {
    const Domain& d = problem_.domain;
    const bool dir = problem_.bc == Boundary::dirichlet;
    for (const auto& t : terms_) {
      if (t.coef == 0.0) continue;
      if (d.is_triangle()) {
        const double m = t.m[0], n = t.m[1];
        const char s = dir ? 1 : 0;
        products_.push_back({t.coef, {s, s}, {m, n}});
        products_.push_back({dir ? -t.coef : t.coef, {s, s}, {n, m}});
      } else {
        Product pr{t.coef, std::vector<char>(t.m.size(), dir ? 1 : 0), std::vector<double>(t.m.size())};
        for (std::size_t j = 0; j < t.m.size(); ++j)
          pr.freq[j] = std::pow(2.0, static_cast<double>(j) / d.dim) * t.m[j];
        products_.push_back(std::move(pr));
      }
    }
  }

  Problem problem_;
  std::vector<Term> terms_;
  AlgebraicValue value_;
  std::vector<Product> products_;
};

inline double eval(const EigenfunctionCombo& f, const Point& p) { return f(p); }

/// Low-discrepancy points of the domain interior.
inline std::vector<Point> domain_samples(const Domain& d, std::size_t count, double seed = 0.5) {
  const auto l = edge_lengths(d);
  Kronecker seq(l.size(), seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto u = seq(i);
    Point p(l.size());
    if (d.is_triangle()) {
      p = {std::numbers::pi * std::max(u[0], u[1]), std::numbers::pi * std::min(u[0], u[1])};
    } else {
      for (std::size_t j = 0; j < l.size(); ++j) p[j] = u[j] * l[j];
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// max |f| over interior samples.
inline double sup_estimate(const EigenfunctionCombo& f, std::size_t samples = 4096) {
  double m = 0.0;
  for (const auto& p : domain_samples(f.problem().domain, samples, 0.27)) m = std::max(m, std::abs(f.raw(p)));
  return m;
}

enum class Symmetry { even, odd, neither };

inline std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::even: return "even";
    case Symmetry::odd: return "odd";
    default: return "neither";
  }
}

/// Compares f(p) with f(R p) on interior samples.
inline Symmetry symmetry_check(const EigenfunctionCombo& f, std::size_t samples = 256) {
  if (samples == 0) throw DomainError("symmetry check needs at least one sample");
  const Domain& d = f.problem().domain;
  const double tol = 1e-9 * f.sup_bound();
  bool even = true, odd = true;
  for (const auto& p : domain_samples(d, samples, 0.61)) {
    const double a = f.raw(p), b = f.raw(reflect(d, p));
    if (std::abs(a - b) > tol) even = false;
    if (std::abs(a + b) > tol) odd = false;
  }
  if (even && !odd) return Symmetry::even;
  if (odd && !even) return Symmetry::odd;
  return Symmetry::neither;
}

/// Symmetry the parity law predicts: Neumann even iff parity even, Dirichlet
/// flipped.
inline Symmetry expected_symmetry(const Problem& p, const AlgebraicValue& v) {
  const bool even = parity(v) == Parity::even;
  return (even != (p.bc == Boundary::dirichlet)) ? Symmetry::even : Symmetry::odd;
}

/// F phi = phi o U, with quantum numbers mapped by F_Q.
inline EigenfunctionCombo fold_fn(const EigenfunctionCombo& f) {
  if (parity(f.value()) == Parity::odd)
    throw FoldParityError("cannot fold an eigenfunction of the odd eigenvalue " + f.value().to_string());
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back({t.coef, fold_qn(f.problem(), t.m)});
  return {f.problem(), std::move(terms)};
}

/// U phi = phi o F on the half domain, extended evenly; quantum numbers by U_Q.
inline EigenfunctionCombo unfold_fn(const EigenfunctionCombo& f) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back({t.coef, unfold_qn(f.problem(), t.m)});
  return {f.problem(), std::move(terms)};
}

/// max |f| over sampled points of the frame.
inline double frame_vanishing(const EigenfunctionCombo& f, const KFrame& frame, std::size_t samples) {
  if (!(frame.domain == f.problem().domain)) throw DomainError("frame belongs to a different domain");
  double m = 0.0;
  for (const auto& p : frame_samples(frame, samples)) m = std::max(m, std::abs(f.raw(p)));
  return m;
}

/// All quantum numbers with eigenvalue v.
inline std::vector<QuantumNumber> eigenspace(const Problem& p, const AlgebraicValue& v) {
  const auto region = enumerate_below(p, v + AlgebraicValue::integer(v.dim(), 1));
  std::vector<QuantumNumber> out;
  for (const auto& pt : region.points)
    if (pt.value == v) out.push_back(pt.m);
  return out;
}

/// Random combination of the eigenspace of v with coefficients in [-1, 1].
inline EigenfunctionCombo random_combo(const Problem& p, const AlgebraicValue& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Term> terms;
  for (auto& m : eigenspace(p, v)) terms.push_back({coef(rng), std::move(m)});
  if (terms.empty()) throw InvalidEigenvalueError(v.to_string() + " is not an eigenvalue of " + describe(p));
  return {p, std::move(terms)};
}

}  // namespace reptile
