#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "reptile/errors.hpp"

namespace reptile {

enum class Shape { triangle, box };
enum class Boundary { neumann, dirichlet };
enum class Parity { even, odd };

/// The isosceles right triangle D = {0 <= y <= x <= pi}, or the box B^(n)
/// with edges l_j = pi / 2^((j-1)/n).
struct Domain {
  Shape shape = Shape::triangle;
  int dim = 2;  // spatial dimension

  static Domain triangle() { return {Shape::triangle, 2}; }
  static Domain box(int n) {
    if (n < 2) throw DomainError("box dimension must be at least 2");
    return {Shape::box, n};
  }

  bool is_triangle() const { return shape == Shape::triangle; }

  /// Dimension of the eigenvalue ring: 1 (plain integers) for the triangle,
  /// n for B^(n).
  int ring_dim() const { return is_triangle() ? 1 : dim; }

  /// Length of a quantum number vector.
  int qn_size() const { return dim; }

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Problem {
  Domain domain;
  Boundary bc = Boundary::neumann;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Lattice index of one basis eigenfunction: (m, n) with the triangle's
/// ordering constraint, or an n-vector for boxes.
struct QuantumNumber {
  std::vector<int> m;

  QuantumNumber() = default;
  QuantumNumber(std::initializer_list<int> values) : m(values) {}
  explicit QuantumNumber(std::vector<int> values) : m(std::move(values)) {}

  std::size_t size() const { return m.size(); }
  int operator[](std::size_t i) const { return m[i]; }
  int& operator[](std::size_t i) { return m[i]; }

  friend auto operator<=>(const QuantumNumber&, const QuantumNumber&) = default;
  friend bool operator==(const QuantumNumber&, const QuantumNumber&) = default;
};

inline std::string to_string(const QuantumNumber& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(q[i]);
  }
  return s + ")";
}

/// True iff q is in the quantum-number lattice of the problem.
inline bool is_valid(const Problem& p, const QuantumNumber& q) {
  if (static_cast<int>(q.size()) != p.domain.qn_size()) return false;
  if (p.domain.is_triangle()) {
    if (p.bc == Boundary::neumann) return q[0] >= q[1] && q[1] >= 0;
    return q[0] > q[1] && q[1] >= 1;
  }
  const int lo = p.bc == Boundary::neumann ? 0 : 1;
  for (int v : q.m)
    if (v < lo) return false;
  return true;
}

inline void require_valid(const Problem& p, const QuantumNumber& q) {
  if (!is_valid(p, q))
    throw DomainError("quantum number " + to_string(q) +
                      " is not in the lattice of this problem");
}

inline std::string_view to_string(Shape s) {
  return s == Shape::triangle ? "triangle" : "box";
}
inline std::string_view to_string(Boundary b) {
  return b == Boundary::neumann ? "neumann" : "dirichlet";
}
inline std::string_view to_string(Parity p) {
  return p == Parity::odd ? "odd" : "even";
}

inline std::string describe(const Problem& p) {
  std::string s{to_string(p.domain.shape)};
  if (!p.domain.is_triangle()) s += "(" + std::to_string(p.domain.dim) + ")";
  s += " ";
  s += to_string(p.bc);
  return s;
}

}  // namespace reptile
