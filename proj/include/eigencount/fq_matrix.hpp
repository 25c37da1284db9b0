#pragma once

/// @file fq_matrix.hpp
/// Small dense matrices over a prime field F_p, used by the brute-force
/// oracle. Nothing here depends on the symbolic counting code.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eigencount {

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class PrimeField {
 public:
  static constexpr unsigned kMaxPrime = 257;

  explicit PrimeField(unsigned p) : p_(p) {
    if (p < 2 || p > kMaxPrime) throw std::invalid_argument("prime field modulus must be in [2, 257]");
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
  }

  unsigned p() const { return p_; }

  unsigned add(unsigned a, unsigned b) const { return (a + b) % p_; }
  unsigned sub(unsigned a, unsigned b) const { return (a + p_ - b) % p_; }
  unsigned mul(unsigned a, unsigned b) const { return (a * b) % p_; }
  unsigned neg(unsigned a) const { return (p_ - a) % p_; }

  unsigned inv(unsigned a) const {
    if (a % p_ == 0) throw std::domain_error("zero has no inverse");
    // a^{p-2} by square-and-multiply
    unsigned r = 1, b = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  bool operator==(const PrimeField&) const = default;

 private:
  unsigned p_;
};

class FqMatrix {
 public:
  FqMatrix(std::size_t n, PrimeField field) : n_(n), field_(field), e_(n * n, 0) {}

  FqMatrix(PrimeField field, std::initializer_list<std::initializer_list<unsigned>> rows)
      : n_(rows.size()), field_(field), e_() {
    e_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw DimensionMismatch("matrix literal is not square");
      for (unsigned x : row) e_.push_back(x % field.p());
    }
  }

  static FqMatrix identity(std::size_t n, PrimeField field) { return scalar(n, field, 1); }

  static FqMatrix scalar(std::size_t n, PrimeField field, unsigned c) {
    FqMatrix m(n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c % field.p();
    return m;
  }

  /// Decode a base-p integer (least significant digit = entry (0,0), row-major).
  static FqMatrix from_index(std::size_t n, PrimeField field, std::uint64_t index) {
    FqMatrix m(n, field);
    for (auto& x : m.e_) {
      x = static_cast<unsigned>(index % field.p());
      index /= field.p();
    }
    return m;
  }

  std::uint64_t to_index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = e_.size(); i-- > 0;) idx = idx * field_.p() + e_[i];
    return idx;
  }

  std::size_t n() const { return n_; }
  const PrimeField& field() const { return field_; }
  std::span<const unsigned> entries() const { return e_; }
  std::span<unsigned> entries() { return e_; }

  unsigned& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  unsigned operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

  bool is_zero() const {
    for (unsigned x : e_)
      if (x) return false;
    return true;
  }

  bool operator==(const FqMatrix& o) const { return n_ == o.n_ && field_ == o.field_ && e_ == o.e_; }

 private:
  std::size_t n_;
  PrimeField field_;
  std::vector<unsigned> e_;
};

namespace detail {
inline void check_compatible(const FqMatrix& a, const FqMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("matrix dimensions differ");
  if (!(a.field() == b.field())) throw DimensionMismatch("matrices live over different fields");
}
}  // namespace detail

/// out = a * b; `out` must not alias a or b.
inline void mat_mul_into(const FqMatrix& a, const FqMatrix& b, FqMatrix& out) {
  detail::check_compatible(a, b);
  detail::check_compatible(a, out);
  const std::size_t n = a.n();
  const unsigned p = a.field().p();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      unsigned acc = 0;
      for (std::size_t t = 0; t < n; ++t) acc += a(i, t) * b(t, j);
      out(i, j) = acc % p;
    }
}

inline FqMatrix mat_mul(const FqMatrix& a, const FqMatrix& b) {
  detail::check_compatible(a, b);
  FqMatrix out(a.n(), a.field());
  mat_mul_into(a, b, out);
  return out;
}

/// a - c*I
inline FqMatrix mat_sub_scalar(FqMatrix a, unsigned c) {
  for (std::size_t i = 0; i < a.n(); ++i) a(i, i) = a.field().sub(a(i, i), c % a.field().p());
  return a;
}

inline FqMatrix mat_pow(const FqMatrix& a, std::uint64_t e) {
  FqMatrix result = FqMatrix::identity(a.n(), a.field());
  FqMatrix base = a;
  while (e) {
    if (e & 1) result = mat_mul(result, base);
    e >>= 1;
    if (e) base = mat_mul(base, base);
  }
  return result;
}

/// Row rank by Gaussian elimination with modular inverses.
inline std::size_t mat_rank(FqMatrix a) {
  const std::size_t n = a.n();
  const PrimeField& f = a.field();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(rank, c));
    const unsigned inv = f.inv(a(rank, col));
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const unsigned factor = f.mul(a(r, col), inv);
      for (std::size_t c = col; c < n; ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(rank, c)));
    }
    ++rank;
  }
  return rank;
}

/// Gauss-Jordan inverse; throws std::domain_error for singular input.
inline FqMatrix mat_inverse(const FqMatrix& m) {
  const std::size_t n = m.n();
  const PrimeField& f = m.field();
  FqMatrix a = m;
  FqMatrix inv = FqMatrix::identity(n, f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("matrix is singular");
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const unsigned s = f.inv(a(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = f.mul(a(col, c), s);
      inv(col, c) = f.mul(inv(col, c), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const unsigned factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = f.sub(a(r, c), f.mul(factor, a(col, c)));
        inv(r, c) = f.sub(inv(r, c), f.mul(factor, inv(col, c)));
      }
    }
  }
  return inv;
}

}  // namespace eigencount
