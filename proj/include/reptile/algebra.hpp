#pragma once

// Exact arithmetic in Z[gamma^2], gamma = 2^(1/n).
//
// Values are integer coefficient vectors over the basis
//   {gamma^j}_{j<n}        for odd n,
//   {gamma^(2j)}_{j<n/2}   for even n,
// with the reduction gamma^n = 2 always applied. The basis is linearly
// independent over Q, so equality is coefficient identity. Dimension 1 is the
// triangle's ring: plain integers whose folding factor is 2.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "reptile/errors.hpp"
#include "reptile/problem.hpp"

namespace reptile {

using Integer = boost::multiprecision::cpp_int;
using Coefficients = boost::container::small_vector<Integer, 6>;

/// Number of basis elements of Z[gamma^2] for ring dimension n.
inline std::size_t basis_size(int n) {
  if (n < 1) throw DomainError("ring dimension must be positive");
  if (n == 1) return 1;
  return n % 2 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n / 2);
}

/// Exponent e such that basis element i is gamma^e.
inline int basis_exponent(int n, std::size_t i) {
  if (n == 1) return 0;
  return n % 2 ? static_cast<int>(i) : 2 * static_cast<int>(i);
}

class AlgebraicValue {
 public:
  AlgebraicValue() : dim_(1), coeffs_(1) {}

  AlgebraicValue(int dim, Coefficients coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_size(dim_))
      throw DomainError("coefficient vector length does not match the basis of Z[gamma^2]");
  }

  static AlgebraicValue zero(int dim) { return AlgebraicValue(dim, Coefficients(basis_size(dim))); }

  static AlgebraicValue integer(int dim, const Integer& v) {
    AlgebraicValue r = zero(dim);
    r.coeffs_[0] = v;
    return r;
  }

  int dim() const { return dim_; }
  const Coefficients& coeffs() const { return coeffs_; }
  const Integer& coeff(std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
  }

  bool is_nonnegative_form() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c >= 0; });
  }

  /// Floating approximation; ordering is never decided from this.
  double to_double() const {
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      s += coeffs_[i].convert_to<double>() * gamma_power(basis_exponent(dim_, i));
    return s;
  }

  /// gamma^e as a double.
  double gamma_power(int e) const {
    if (dim_ == 1) return std::pow(2.0, e / 2.0);
    return std::pow(2.0, static_cast<double>(e) / dim_);
  }

  /// Canonical text form "c0 + c1*g^e1 + ..." with g = 2^(1/n). Zero
  /// coefficients past the constant term are omitted.
  std::string to_string() const {
    std::string s = coeffs_[0].str();
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const bool neg = coeffs_[i] < 0;
      s += neg ? " - " : " + ";
      s += (neg ? Integer(-coeffs_[i]) : coeffs_[i]).str();
      s += "*g^" + std::to_string(basis_exponent(dim_, i));
    }
    return s;
  }

  /// Parses the canonical text form. Exponents must be basis exponents.
  static AlgebraicValue parse(int dim, std::string_view text);

  AlgebraicValue& operator+=(const AlgebraicValue& o) {
    check_same_ring(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  AlgebraicValue& operator-=(const AlgebraicValue& o) {
    check_same_ring(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  AlgebraicValue& operator*=(const Integer& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
  }
  friend AlgebraicValue operator+(AlgebraicValue a, const AlgebraicValue& b) { return a += b; }
  friend AlgebraicValue operator-(AlgebraicValue a, const AlgebraicValue& b) { return a -= b; }
  friend AlgebraicValue operator*(AlgebraicValue a, const Integer& k) { return a *= k; }

  friend bool operator==(const AlgebraicValue& a, const AlgebraicValue& b) {
    return a.dim_ == b.dim_ && std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
  }

  void check_same_ring(const AlgebraicValue& o) const {
    if (dim_ != o.dim_) throw DomainError("values belong to different rings Z[gamma^2]");
  }

 private:
  friend AlgebraicValue scale_gamma2(const AlgebraicValue&, int);
  int dim_;
  Coefficients coeffs_;
};

namespace detail {

inline Integer ipow(const Integer& b, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

/// floor(x^(1/n)) for x >= 0.
inline Integer iroot(const Integer& x, unsigned n) {
  if (x < 2 || n == 1) return x;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  Integer r = Integer(1) << ((bits + n - 1) / n);  // r >= root
  for (;;) {
    Integer y = (Integer(n - 1) * r + x / ipow(r, n - 1)) / n;
    if (y >= r) break;
    r = y;
  }
  return r;
}

/// Bracket [lo, hi] of 2^(e/n) * 2^p for every basis exponent of ring n.
struct Bracket {
  Integer lo, hi;
};

inline const std::vector<Bracket>& basis_brackets(int n, unsigned precision) {
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, std::vector<Bracket>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, precision});
  if (inserted) {
    const std::size_t size = basis_size(n);
    for (std::size_t i = 0; i < size; ++i) {
      const unsigned e = static_cast<unsigned>(basis_exponent(n, i));
      // 2^(e/n) * 2^p = (2^(e + p n))^(1/n)
      const Integer radicand = Integer(1) << (e + precision * static_cast<unsigned>(n));
      Integer lo = iroot(radicand, static_cast<unsigned>(n));
      Integer hi = ipow(lo, static_cast<unsigned>(n)) == radicand ? lo : Integer(lo + 1);
      it->second.push_back({std::move(lo), std::move(hi)});
    }
  }
  return it->second;
}

}  // namespace detail

/// Exact total order. Equality is coefficient identity; otherwise the
/// difference is bracketed in fixed-point interval arithmetic starting at 64
/// bits, doubling the precision until the interval excludes zero.
inline std::strong_ordering compare(const AlgebraicValue& a, const AlgebraicValue& b) {
  a.check_same_ring(b);
  if (a == b) return std::strong_ordering::equal;
  const std::size_t size = a.coeffs().size();
  if (size == 1) return a.coeff(0) < b.coeff(0) ? std::strong_ordering::less : std::strong_ordering::greater;

  Coefficients diff(size);
  for (std::size_t i = 0; i < size; ++i) diff[i] = a.coeff(i) - b.coeff(i);

  for (unsigned precision = 64;; precision *= 2) {
    const auto& brackets = detail::basis_brackets(a.dim(), precision);
    Integer lo = 0, hi = 0;
    for (std::size_t i = 0; i < size; ++i) {
      if (diff[i] >= 0) {
        lo += diff[i] * brackets[i].lo;
        hi += diff[i] * brackets[i].hi;
      } else {
        lo += diff[i] * brackets[i].hi;
        hi += diff[i] * brackets[i].lo;
      }
    }
    if (lo > 0) return std::strong_ordering::greater;
    if (hi < 0) return std::strong_ordering::less;
  }
}

inline bool operator<(const AlgebraicValue& a, const AlgebraicValue& b) { return compare(a, b) < 0; }
inline bool operator<=(const AlgebraicValue& a, const AlgebraicValue& b) { return compare(a, b) <= 0; }
inline bool operator>(const AlgebraicValue& a, const AlgebraicValue& b) { return compare(a, b) > 0; }
inline bool operator>=(const AlgebraicValue& a, const AlgebraicValue& b) { return compare(a, b) >= 0; }

/// gamma^(2k) v. Dimension 1 multiplies by 2^k.
inline AlgebraicValue scale_gamma2(const AlgebraicValue& v, int k) {
  AlgebraicValue r = v;
  auto& c = r.coeffs_;
  if (v.dim() == 1) {
    for (; k > 0; --k) c[0] *= 2;
    for (; k < 0; ++k) {
      if (c[0] % 2 != 0) throw DivisibilityError("gamma^-2 * " + v.to_string() + " is not in Z[gamma^2]");
      c[0] /= 2;
    }
    return r;
  }
  // gamma^2 moves basis index i to i + shift; indices wrapping past the end
  // pick up the factor gamma^n = 2.
  const std::ptrdiff_t shift = v.dim() % 2 ? 2 : 1;
  for (; k > 0; --k) {
    std::rotate(c.begin(), c.end() - shift, c.end());
    for (std::ptrdiff_t i = 0; i < shift; ++i) c[i] <<= 1;
  }
  for (; k < 0; ++k) {
    for (std::ptrdiff_t i = 0; i < shift; ++i) {
      if (boost::multiprecision::bit_test(c[i], 0))
        throw DivisibilityError("gamma^-2 * " + v.to_string() + " is not in Z[gamma^2]");
    }
    for (std::ptrdiff_t i = 0; i < shift; ++i) c[i] >>= 1;
    std::rotate(c.begin(), c.begin() + shift, c.end());
  }
  return r;
}

/// Eigenvalue sum_j gamma^(2(j-1)) m_j^2 in canonical form. For ring
/// dimension 1 (the triangle) m is a pair and the value is m_1^2 + m_2^2.
inline AlgebraicValue from_quantum_number(int n, std::span<const int> m) {
  for (int v : m)
    if (v < 0) throw DomainError("quantum numbers must be nonnegative");
  Coefficients c(basis_size(n));
  if (n == 1) {
    for (int v : m) c[0] += Integer(v) * v;
    return AlgebraicValue(1, std::move(c));
  }
  if (static_cast<int>(m.size()) != n)
    throw DomainError("quantum number length must equal the box dimension");
  // 2j < 2n, so each square picks up at most one factor 2: int64 is enough
  boost::container::small_vector<std::int64_t, 6> acc(c.size(), 0);
  for (int j = 0; j < n; ++j) {
    const int e = 2 * j;  // gamma^(2j), reduced by gamma^n = 2
    const int reduced = e % n;
    const int twos = e / n;
    const std::size_t index = n % 2 ? static_cast<std::size_t>(reduced) : static_cast<std::size_t>(reduced / 2);
    const std::int64_t v = m[static_cast<std::size_t>(j)];
    acc[index] += (v * v) << twos;
  }
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = acc[i];
  return AlgebraicValue(n, std::move(c));
}

inline AlgebraicValue from_quantum_number(int n, const QuantumNumber& q) {
  return from_quantum_number(n, std::span<const int>(q.m));
}

/// Odd iff the coefficient of gamma^0 is odd.
inline Parity parity(const AlgebraicValue& v) {
  return v.coeff(0) % 2 != 0 ? Parity::odd : Parity::even;
}

inline AlgebraicValue AlgebraicValue::parse(int dim, std::string_view text) {
  AlgebraicValue r = zero(dim);
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw DomainError("empty algebraic value");
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw DomainError("malformed algebraic value: " + std::string(text));
    }
    first = false;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    Integer coefficient = 1;
    if (pos > start) coefficient = Integer(s.substr(start, pos - start));
    int exponent = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'g')) {
      if (s[pos] == '*') ++pos;
      if (pos >= s.size() || s[pos] != 'g') throw DomainError("malformed algebraic value: " + std::string(text));
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        const std::size_t estart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == estart) throw DomainError("malformed exponent in: " + std::string(text));
        exponent = std::stoi(s.substr(estart, pos - estart));
      }
    } else if (pos == start) {
      throw DomainError("malformed algebraic value: " + std::string(text));
    }
    // fold exponent into the basis
    Integer scale = 1;
    int e = exponent;
    if (dim == 1) {
      if (e != 0) throw DomainError("the integer ring has no g terms");
    } else {
      scale <<= (e / dim);
      e %= dim;
      if (dim % 2 == 0 && e % 2 != 0)
        throw DomainError("odd powers of g are not in Z[g^2] for even n");
    }
    const std::size_t index = dim == 1 ? 0 : (dim % 2 ? static_cast<std::size_t>(e) : static_cast<std::size_t>(e / 2));
    r.coeffs_[index] += sign * coefficient * scale;
  }
  return r;
}

}  // namespace reptile
