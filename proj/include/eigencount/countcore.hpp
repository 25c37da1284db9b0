#pragma once

/**
 * @file countcore.hpp
 * @brief Symbolic counts of diagonalizable matrices with prescribed spectra
 * over F_q, and exact certification of the (k+1)-potent upper bounds.
 *
 * Semantics used throughout:
 *  - M(a_1..a_k): matrices annihilated by prod_i (x - a_i), i.e.
 *    diagonalizable with every eigenvalue among the a_i.
 *  - E(a_1..a_k): the subset of M in which every a_i actually occurs.
 *
 * Both depend only on n and k. Each conjugacy class of a block-scalar
 * diagonal matrix with block sizes (n_1..n_k) has |GL_n| / prod |GL_{n_i}|
 * elements, so M sums that over weak compositions and E over strict ones.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eigencount/composition.hpp"
#include "eigencount/qpoly.hpp"

namespace eigencount {

/// Raised when the k-th roots of unity are not all present in F_p, so the
/// potent set is not M(0, 1, w, ..., w^{k-1}) there. Use the oracle instead.
class UnsupportedField : public std::domain_error {
 public:
  explicit UnsupportedField(const std::string& what) : std::domain_error(what) {}
};

class ModeMismatch : public std::invalid_argument {
 public:
  explicit ModeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prescribed eigenvalues: either just their number k (symbolic), or k
/// distinct residues of a concrete prime field.
struct SpectrumSpec {
  unsigned k = 0;
  std::optional<unsigned> p;
  std::vector<unsigned> alphas;

  static SpectrumSpec symbolic(unsigned k) {
    if (k == 0) throw std::invalid_argument("spectrum needs k >= 1");
    return SpectrumSpec{k, std::nullopt, {}};
  }

  static SpectrumSpec concrete(unsigned p, std::vector<unsigned> alphas) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (alphas.empty()) throw std::invalid_argument("spectrum needs at least one eigenvalue");
    std::vector<unsigned> sorted = alphas;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] >= p) throw std::invalid_argument("eigenvalue " + std::to_string(sorted[i]) + " not reduced mod p");
      if (i && sorted[i] == sorted[i - 1])
        throw std::invalid_argument("eigenvalue " + std::to_string(sorted[i]) + " listed twice");
    }
    const auto k = static_cast<unsigned>(alphas.size());
    return SpectrumSpec{k, p, std::move(alphas)};
  }

  bool is_concrete() const { return p.has_value(); }
};

/// |GL_n(F_q)| = q^{n(n-1)/2} (q-1)(q^2-1)...(q^n-1); 1 for n = 0.
inline IntPoly gl_order_poly(unsigned n) {
  IntPoly acc = IntPoly::monomial(1, n == 0 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) acc = acc * (IntPoly::monomial(1, i) - IntPoly::constant(1));
  return acc;
}

/// Size of the GL_n-conjugacy class of a block-scalar diagonal matrix with
/// block sizes c.parts (distinct scalars per block). Zero parts are ignored.
inline IntPoly class_size_poly(const Composition& c) {
  IntPoly den = IntPoly::constant(1);
  for (unsigned part : c.parts)
    if (part > 0) den = den * gl_order_poly(part);
  return poly_divexact(gl_order_poly(c.total()), den);
}

namespace detail {

// Class size is symmetric in the parts; memoize on the sorted nonzero parts
// so large sums divide once per multiset.
template <class Stream>
IntPoly sum_class_sizes(Stream stream) {
  std::map<std::vector<unsigned>, std::pair<IntPoly, std::size_t>> by_shape;
  while (auto c = stream.next()) {
    std::vector<unsigned> key;
    for (unsigned x : c->parts)
      if (x) key.push_back(x);
    std::sort(key.begin(), key.end());
    auto [it, inserted] = by_shape.try_emplace(std::move(key));
    if (inserted) it->second.first = class_size_poly(*c);
    ++it->second.second;
  }
  IntPoly total;
  for (const auto& [shape, entry] : by_shape) total += entry.first * BigInt{entry.second};
  return total;
}

}  // namespace detail

/// |M(a_1..a_k)| in M_n(F_q).
inline IntPoly count_m_poly(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("count_m_poly: k must be >= 1");
  return detail::sum_class_sizes(weak_compositions(n, k));
}

/// |E(a_1..a_k)| in M_n(F_q); zero when k > n.
inline IntPoly count_e_poly(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("count_e_poly: k must be >= 1");
  return detail::sum_class_sizes(strict_compositions(n, k));
}

struct TableRow {
  unsigned n;
  unsigned k;
  IntPoly poly;
};

/// E-counts for n = 3..n_max, k = 2..n, row-major in n then k.
inline std::vector<TableRow> eigenvalue_table(unsigned n_max) {
  std::vector<TableRow> rows;
  for (unsigned n = 3; n <= n_max; ++n)
    for (unsigned k = 2; k <= n; ++k) rows.push_back({n, k, count_e_poly(n, k)});
  return rows;
}

/// The 14-row table for n = 3..6.
inline std::vector<TableRow> table_section4() { return eigenvalue_table(6); }

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

/// All x in [1, p) with x^k = 1 mod p, ascending. Length gcd(k, p-1).
inline std::vector<unsigned> roots_of_unity(unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("roots_of_unity: modulus " + std::to_string(p) + " is not prime");
  std::vector<unsigned> out;
  for (unsigned x = 1; x < p; ++x)
    if (pow_mod(x, k, p) == 1) out.push_back(x);
  return out;
}

/// Number of A in M_n(F_p) with A^{k+1} = A, via |M(0, 1, w, ..., w^{k-1})|.
/// Requires k | p - 1.
inline BigInt potent_count(unsigned n, unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("potent_count: modulus " + std::to_string(p) + " is not prime");
  if (k == 0) throw std::invalid_argument("potent_count: k must be >= 1");
  if ((p - 1) % k != 0)
    throw UnsupportedField("potent_count: " + std::to_string(k) + " does not divide p-1 = " + std::to_string(p - 1));
  return poly_eval(count_m_poly(n, k + 1), p);
}

// ---------------------------------------------------------------------------
// Bounds. Every inequality of the form  count <= C * X^{a/(k+1)}  is compared
// after raising both sides to the power k+1, so only integers are involved.

struct BoundVerdict {
  bool holds = false;
  BigInt lhs_certificate;
  BigInt rhs_certificate;

  bool tight() const { return lhs_certificate == rhs_certificate; }
};

inline BoundVerdict make_verdict(BigInt lhs, BigInt rhs) {
  BoundVerdict v;
  v.holds = lhs <= rhs;
  v.lhs_certificate = std::move(lhs);
  v.rhs_certificate = std::move(rhs);
  return v;
}

/// count <= (k+1) p^{2n^2 k/(k+1) - 1}, certified as
/// (count p)^{k+1} <= (k+1)^{k+1} p^{2 n^2 k}.
inline BoundVerdict bound_matrix_ring(unsigned n, unsigned p, unsigned k, const BigInt& count) {
  if (count < 0) throw std::invalid_argument("bound_matrix_ring: negative count");
  if (k == 0) throw std::invalid_argument("bound_matrix_ring: k must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument("bound_matrix_ring: modulus " + std::to_string(p) + " is not prime");
  const BigInt lhs = boost::multiprecision::pow(count * p, k + 1);
  const BigInt rhs = boost::multiprecision::pow(BigInt{k + 1}, k + 1) *
                     boost::multiprecision::pow(BigInt{p}, 2u * n * n * k);
  return make_verdict(lhs, rhs);
}

/// Two coarse estimates used on the way to the matrix-ring bound. They are
/// reported, never enforced: both fail for some small (n, k), e.g. n = 1,
/// and (n, k) = (4, 3) for the second one, while the final bound still holds.
struct EstimateFlags {
  bool composition_sum;  // sum_{s=1..k+1} C(n-1, s-1) <= (k+1)(n-1)^{k+1}
  bool power;            // (k+1)(n-1)^{k+1} <= (k+1)^n
};

inline EstimateFlags intermediate_estimates(unsigned n, unsigned k) {
  using boost::multiprecision::pow;
  BigInt sum = 0;
  for (unsigned s = 1; s <= k + 1; ++s) sum += n_strict(n, s);
  const BigInt middle = BigInt{k + 1} * pow(BigInt{n - 1}, k + 1);
  return {sum <= middle, middle <= pow(BigInt{k + 1}, n)};
}

/// Finite ring described only by |R| = prod p_i^{r_i}.
struct RingSpec {
  std::vector<std::pair<unsigned, unsigned>> prime_powers;  // (p_i, r_i)

  static RingSpec make(std::vector<std::pair<unsigned, unsigned>> pp) {
    if (pp.empty()) throw std::invalid_argument("ring spec needs at least one prime factor");
    std::sort(pp.begin(), pp.end());
    for (std::size_t i = 0; i < pp.size(); ++i) {
      if (!is_prime(pp[i].first)) throw std::invalid_argument(std::to_string(pp[i].first) + " is not prime");
      if (pp[i].second == 0) throw std::invalid_argument("prime exponents must be >= 1");
      if (i && pp[i].first == pp[i - 1].first)
        throw std::invalid_argument("prime " + std::to_string(pp[i].first) + " listed twice");
    }
    return RingSpec{std::move(pp)};
  }

  BigInt cardinality() const {
    BigInt acc = 1;
    for (auto [p, r] : prime_powers) acc *= boost::multiprecision::pow(BigInt{p}, r);
    return acc;
  }
  std::size_t prime_count() const { return prime_powers.size(); }
  unsigned smallest_prime() const { return prime_powers.front().first; }
  BigInt prime_product() const {
    BigInt acc = 1;
    for (auto [p, r] : prime_powers) acc *= p;
    return acc;
  }
};

enum class RingBoundMode { theorem2, theorem3, corollary };

inline std::string to_string(RingBoundMode m) {
  switch (m) {
    case RingBoundMode::theorem2: return "theorem2";
    case RingBoundMode::theorem3: return "theorem3";
    case RingBoundMode::corollary: return "corollary";
  }
  return "?";
}

/// theorem2 (prime-power |R| = p^r): count <= ((k+1)/p) |R|^{2k/(k+1)}
/// theorem3: count <= ((k+1)^m / prod p_i) |R|^{2k/(k+1)}, m distinct primes
/// corollary: count <= ((k+1)/p_min)^m |R|^{2k/(k+1)}
inline BoundVerdict bound_finite_ring(const RingSpec& r, unsigned k, const BigInt& count, RingBoundMode mode) {
  using boost::multiprecision::pow;
  if (count < 0) throw std::invalid_argument("bound_finite_ring: negative count");
  if (k == 0) throw std::invalid_argument("bound_finite_ring: k must be >= 1");
  if (r.prime_powers.empty()) throw std::invalid_argument("bound_finite_ring: empty ring spec");
  const BigInt size_term = pow(r.cardinality(), 2 * k);
  const auto m = static_cast<unsigned>(r.prime_count());
  switch (mode) {
    case RingBoundMode::theorem2: {
      if (m != 1) throw ModeMismatch("theorem2 needs |R| to be a prime power; got " + std::to_string(m) + " primes");
      const unsigned p = r.smallest_prime();
      return make_verdict(pow(count * p, k + 1), pow(BigInt{k + 1}, k + 1) * size_term);
    }
    case RingBoundMode::theorem3:
      return make_verdict(pow(count * r.prime_product(), k + 1), pow(BigInt{k + 1}, m * (k + 1)) * size_term);
    case RingBoundMode::corollary: {
      const BigInt pm = pow(BigInt{r.smallest_prime()}, m);
      return make_verdict(pow(count * pm, k + 1), pow(BigInt{k + 1}, m * (k + 1)) * size_term);
    }
  }
  throw std::invalid_argument("unknown bound mode");
}

}  // namespace eigencount
