#pragma once

/**
 * @file qpoly.hpp
 * @brief Dense polynomials in one indeterminate q with arbitrary-precision
 * integer coefficients.
 *
 * Every count produced by the library is a polynomial in the field size q.
 * Coefficients never use fixed-width integers: the degree-30 rows of the
 * eigenvalue table already overflow 64 bits when evaluated at q = 5.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eigencount {

using BigInt = boost::multiprecision::cpp_int;

/// Exact division left a remainder. Never recoverable: the caller's
/// mathematical assumption (the quotient is a polynomial) was wrong.
class NonZeroRemainder : public std::domain_error {
 public:
  explicit NonZeroRemainder(const std::string& what) : std::domain_error(what) {}
};

class PolyParseError : public std::invalid_argument {
 public:
  explicit PolyParseError(const std::string& what) : std::invalid_argument(what) {}
};

class IntPoly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr long kMinusInfinity = -1;

  IntPoly() = default;
  IntPoly(std::initializer_list<BigInt> coeffs) : coeffs_(coeffs) { trim(); }
  explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

  /// c * q^power
  static IntPoly monomial(const BigInt& c, std::size_t power) {
    std::vector<BigInt> v(power + 1);
    v[power] = c;
    return IntPoly(std::move(v));
  }

  /// The indeterminate q itself.
  static IntPoly q() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return is_zero() ? kMinusInfinity : static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt coeff(std::size_t power) const { return power < coeffs_.size() ? coeffs_[power] : BigInt{0}; }
  const BigInt& leading() const { return coeffs_.back(); }

  bool operator==(const IntPoly&) const = default;

  IntPoly& operator+=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  IntPoly& operator-=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  IntPoly& operator*=(const BigInt& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator-(IntPoly a) { return a *= BigInt{-1}; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  // coeffs_[i] is the coefficient of q^i; no trailing zeros.
  std::vector<BigInt> coeffs_;
};

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<BigInt> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return IntPoly(std::move(out));
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

/// Long division over Z[q]. Throws NonZeroRemainder unless den divides num
/// exactly (including every intermediate coefficient quotient being integral).
inline IntPoly poly_divexact(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("poly_divexact: division by the zero polynomial");
  if (num.is_zero()) return {};
  if (num.degree() < den.degree()) throw NonZeroRemainder("poly_divexact: divisor degree exceeds dividend degree");

  std::vector<BigInt> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dn = d.size() - 1;
  const BigInt& lead = d.back();
  std::vector<BigInt> quot(rem.size() - dn);

  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt& top = rem[k + dn];
    if (top == 0) continue;
    BigInt r;
    BigInt qk;
    boost::multiprecision::divide_qr(top, lead, qk, r);
    if (r != 0) throw NonZeroRemainder("poly_divexact: non-integral quotient coefficient");
    for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= qk * d[j];
    quot[k] = std::move(qk);
  }
  for (const auto& c : rem) {
    if (c != 0) throw NonZeroRemainder("poly_divexact: nonzero remainder");
  }
  return IntPoly(std::move(quot));
}

/// Horner evaluation, exact.
inline BigInt poly_eval(const IntPoly& p, const BigInt& q0) {
  BigInt acc = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q0 + *it;
  return acc;
}

/// Canonical text: descending powers, unit coefficients omitted, caret
/// exponents, e.g. "q^4-q^3-q^2+q" or "2q^4+2q^3+2q^2". Zero prints as "0".
inline std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    BigInt mag = boost::multiprecision::abs(c[i]);
    if (c[i] < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (i == 0 || mag != 1) out += mag.str();
    if (i >= 1) out += 'q';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

/// Inverse of to_string. Also accepts whitespace, '*' between coefficient
/// and q, and LaTeX-braced exponents ("q^{12}"); like powers are combined.
inline IntPoly parse_poly(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}' && ch != '$') s += ch;
  }
  if (s.empty()) throw PolyParseError("empty polynomial text");

  std::vector<BigInt> acc;
  std::size_t i = 0;
  auto read_digits = [&](std::string& dst) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) dst += s[i++];
  };

  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw PolyParseError("expected '+' or '-' at offset " + std::to_string(i));
    }
    first = false;

    std::string digits;
    read_digits(digits);
    BigInt coeff = digits.empty() ? BigInt{1} : BigInt{digits};
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) throw PolyParseError("dangling '*'");
      ++i;
    }
    if (i < s.size() && s[i] == 'q') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string exp;
        read_digits(exp);
        if (exp.empty()) throw PolyParseError("missing exponent after '^'");
        power = std::stoul(exp);
      }
    } else if (digits.empty()) {
      throw PolyParseError("expected coefficient or 'q' at offset " + std::to_string(i));
    }
    if (acc.size() <= power) acc.resize(power + 1);
    acc[power] += sign * coeff;
  }
  return IntPoly(std::move(acc));
}

}  // namespace eigencount
