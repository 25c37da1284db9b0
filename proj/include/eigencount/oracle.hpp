#pragma once

/**
 * @file oracle.hpp
 * @brief Exhaustive ground truth over M_n(F_p).
 *
 * Every matrix is visited as a base-p integer over its n^2 entries, in
 * ascending order. Full scans are split into contiguous index ranges, one
 * per worker, and the per-worker tallies are summed at the end, so the
 * result does not depend on the number of workers.
 *
 * The oracle never consults the symbolic formulas: it tests membership
 * directly (annihilating products, ranks, powers, conjugation).
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eigencount/composition.hpp"
#include "eigencount/fq_matrix.hpp"
#include "eigencount/qpoly.hpp"

namespace eigencount {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(BigInt required, std::uint64_t budget)
      : std::runtime_error("scan of " + required.str() + " matrices exceeds budget " + std::to_string(budget)),
        required_(std::move(required)),
        budget_(budget) {}

  const BigInt& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  BigInt required_;
  std::uint64_t budget_;
};

class DuplicateAlpha : public std::invalid_argument {
 public:
  explicit DuplicateAlpha(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr std::uint64_t kDefaultScanBudget = std::uint64_t{1} << 26;

/// EIGENCOUNT_BUDGET if set to a positive integer, else 2^26.
inline std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("EIGENCOUNT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultScanBudget;
}

struct ScanOptions {
  std::uint64_t budget = budget_from_env();
  bool force = false;
  unsigned jobs = 1;
};

struct OracleCountReport {
  unsigned n = 0;
  unsigned p = 0;
  std::string spec;  // e.g. "m{0,1}", "e{1,4}", "potent k=3"
  BigInt count;
  std::uint64_t matrices_scanned = 0;
  std::chrono::milliseconds elapsed{0};
};

/// p^{n^2}
inline BigInt scan_size(std::size_t n, unsigned p) { return boost::multiprecision::pow(BigInt{p}, static_cast<unsigned>(n * n)); }

/// Number of matrices to visit, after enforcing the budget.
inline std::uint64_t checked_scan_size(std::size_t n, unsigned p, const ScanOptions& opts) {
  const BigInt total = scan_size(n, p);
  if (total > std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded(total, opts.budget);
  if (!opts.force && total > opts.budget) throw BudgetExceeded(total, opts.budget);
  return static_cast<std::uint64_t>(total);
}

namespace detail {

// In-place base-p increment of the entry vector (entry 0 least significant).
inline void increment(FqMatrix& m) {
  const unsigned p = m.field().p();
  for (auto& x : m.entries()) {
    if (++x < p) return;
    x = 0;
  }
}

/// Counts matrices in [0, total) accepted by a predicate. `make_pred()` is
/// called once per worker so predicates may own mutable scratch space.
template <class MakePred>
std::uint64_t parallel_scan(std::size_t n, PrimeField field, std::uint64_t total, unsigned jobs, MakePred make_pred) {
  jobs = std::max(1u, jobs);
  if (total < jobs) jobs = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));

  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    auto pred = make_pred();
    std::uint64_t hits = 0;
    if (lo >= hi) return hits;
    FqMatrix a = FqMatrix::from_index(n, field, lo);
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (pred(a)) ++hits;
      increment(a);
    }
    return hits;
  };

  if (jobs == 1) return work(0, total);

  std::vector<std::uint64_t> partial(jobs, 0);
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = total / jobs;
    const std::uint64_t extra = total % jobs;
    std::uint64_t lo = 0;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t hi = lo + chunk + (j < extra ? 1 : 0);
      workers.emplace_back([&, j, lo, hi] { partial[j] = work(lo, hi); });
      lo = hi;
    }
  }
  std::uint64_t sum = 0;
  for (auto x : partial) sum += x;
  return sum;
}

inline std::string spec_label(char kind, const std::vector<unsigned>& alphas) {
  std::string s(1, kind);
  s += '{';
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(alphas[i]);
  }
  return s + '}';
}

inline void check_alphas(const PrimeField& field, const std::vector<unsigned>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("at least one eigenvalue is required");
  std::vector<unsigned> sorted = alphas;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= field.p())
      throw std::invalid_argument("eigenvalue " + std::to_string(sorted[i]) + " is not reduced mod " +
                                  std::to_string(field.p()));
    if (i && sorted[i] == sorted[i - 1]) throw DuplicateAlpha("eigenvalue " + std::to_string(sorted[i]) + " repeated");
  }
}

// prod_i (A - alpha_i I) == 0
class AnnihilatedBy {
 public:
  AnnihilatedBy(std::size_t n, PrimeField field, std::vector<unsigned> alphas)
      : alphas_(std::move(alphas)), acc_(n, field), shifted_(n, field), tmp_(n, field) {}

  bool operator()(const FqMatrix& a) {
    acc_ = mat_sub_scalar(a, alphas_[0]);
    for (std::size_t i = 1; i < alphas_.size(); ++i) {
      if (acc_.is_zero()) return true;
      shifted_ = mat_sub_scalar(a, alphas_[i]);
      mat_mul_into(acc_, shifted_, tmp_);
      std::swap(acc_, tmp_);
    }
    return acc_.is_zero();
  }

 private:
  std::vector<unsigned> alphas_;
  FqMatrix acc_, shifted_, tmp_;
};

}  // namespace detail

/// Diagonalizable matrices with spectrum contained in `alphas`.
inline OracleCountReport oracle_count_m(std::size_t n, PrimeField field, const std::vector<unsigned>& alphas,
                                        const ScanOptions& opts = {}) {
  detail::check_alphas(field, alphas);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = checked_scan_size(n, field.p(), opts);
  const auto hits = detail::parallel_scan(n, field, total, opts.jobs,
                                          [&] { return detail::AnnihilatedBy(n, field, alphas); });
  return {static_cast<unsigned>(n), field.p(), detail::spec_label('m', alphas), BigInt{hits}, total,
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)};
}

/// Diagonalizable matrices whose spectrum is exactly `alphas`.
inline OracleCountReport oracle_count_e(std::size_t n, PrimeField field, const std::vector<unsigned>& alphas,
                                        const ScanOptions& opts = {}) {
  detail::check_alphas(field, alphas);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = checked_scan_size(n, field.p(), opts);
  const auto hits = detail::parallel_scan(n, field, total, opts.jobs, [&] {
    return [annihilated = detail::AnnihilatedBy(n, field, alphas), &alphas, n](const FqMatrix& a) mutable {
      if (!annihilated(a)) return false;
      for (unsigned alpha : alphas)
        if (mat_rank(mat_sub_scalar(a, alpha)) == n) return false;
      return true;
    };
  });
  return {static_cast<unsigned>(n), field.p(), detail::spec_label('e', alphas), BigInt{hits}, total,
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)};
}

/// Matrices with A^{k+1} = A. No restriction relating k and p.
inline OracleCountReport oracle_count_potent(std::size_t n, PrimeField field, unsigned k, const ScanOptions& opts = {}) {
  if (k == 0) throw std::invalid_argument("potency exponent k must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = checked_scan_size(n, field.p(), opts);
  const auto hits = detail::parallel_scan(n, field, total, opts.jobs, [k] {
    return [k](const FqMatrix& a) { return mat_pow(a, std::uint64_t{k} + 1) == a; };
  });
  return {static_cast<unsigned>(n), field.p(), "potent k=" + std::to_string(k), BigInt{hits}, total,
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)};
}

/// |GL_n(F_p)| by counting full-rank matrices.
inline BigInt oracle_gl_order(std::size_t n, PrimeField field, const ScanOptions& opts = {}) {
  const std::uint64_t total = checked_scan_size(n, field.p(), opts);
  return detail::parallel_scan(n, field, total, opts.jobs,
                               [n] { return [n](const FqMatrix& a) { return mat_rank(a) == n; }; });
}

/// Block-diagonal T with part i filled by the scalar i (zero parts vanish).
inline FqMatrix block_representative(const Composition& c, PrimeField field) {
  if (c.size() > field.p())
    throw std::invalid_argument("composition " + to_string(c) + " needs more distinct eigenvalues than F_" +
                                std::to_string(field.p()) + " has");
  FqMatrix t(c.total(), field);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (unsigned j = 0; j < c.parts[i]; ++j, ++pos) t(pos, pos) = static_cast<unsigned>(i);
  return t;
}

namespace detail {
template <class Visit>
void for_each_invertible(std::size_t n, PrimeField field, const ScanOptions& opts, Visit visit) {
  const std::uint64_t total = checked_scan_size(n, field.p(), opts);
  FqMatrix p(n, field);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (mat_rank(p) == n) visit(p);
    increment(p);
  }
}
}  // namespace detail

/// Invertible P commuting with the block representative of `parts`.
inline BigInt oracle_centralizer_size(const Composition& parts, PrimeField field, const ScanOptions& opts = {}) {
  const FqMatrix t = block_representative(parts, field);
  std::uint64_t count = 0;
  detail::for_each_invertible(t.n(), field, opts, [&](const FqMatrix& p) {
    if (mat_mul(p, t) == mat_mul(t, p)) ++count;
  });
  return count;
}

/// |{P T P^{-1}}| built explicitly and deduplicated.
inline BigInt oracle_orbit_size(const Composition& parts, PrimeField field, const ScanOptions& opts = {}) {
  const FqMatrix t = block_representative(parts, field);
  std::set<std::uint64_t> orbit;
  detail::for_each_invertible(t.n(), field, opts, [&](const FqMatrix& p) {
    orbit.insert(mat_mul(mat_mul(p, t), mat_inverse(p)).to_index());
  });
  return orbit.size();
}

}  // namespace eigencount
