#pragma once

/// @file composition.hpp
/// Ordered tuples of nonnegative integers with a fixed sum, streamed in
/// lexicographic ascending order.

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigencount/qpoly.hpp"

namespace eigencount {

struct Composition {
  std::vector<unsigned> parts;

  unsigned total() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
  std::size_t size() const { return parts.size(); }
  bool is_strict() const {
    for (unsigned x : parts)
      if (x == 0) return false;
    return true;
  }

  bool operator==(const Composition&) const = default;
  auto operator<=>(const Composition&) const = default;
};

inline std::string to_string(const Composition& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.parts[i]);
  }
  return out + ")";
}

/// Pull-style generator over compositions of `total` into `k` parts.
/// Weak streams allow zero parts; strict streams require every part >= 1.
/// Strict streams are the weak stream of (total - k) shifted up by one,
/// which keeps the lexicographic order.
class CompositionStream {
 public:
  enum class Flavor { weak, strict };

  CompositionStream(unsigned total, unsigned k, Flavor flavor) : k_(k), shift_(flavor == Flavor::strict ? 1u : 0u) {
    if (k == 0) throw std::invalid_argument("composition stream needs k >= 1");
    if (flavor == Flavor::strict && k > total) {
      done_ = true;
      return;
    }
    const unsigned weak_total = total - shift_ * k;
    cur_.assign(k, 0);
    cur_.back() = weak_total;
  }

  std::optional<Composition> next() {
    if (done_) return std::nullopt;
    Composition out{cur_};
    for (auto& x : out.parts) x += shift_;
    advance();
    return out;
  }

 private:
  void advance() {
    // Rightmost position (excluding the last) whose suffix still carries mass
    // gets incremented; everything after it is reset with the remainder last.
    if (k_ == 1) {
      done_ = true;
      return;
    }
    unsigned tail = cur_.back();
    std::size_t i = k_ - 1;
    while (i-- > 0) {
      if (tail > 0) {
        cur_[i] += 1;
        for (std::size_t j = i + 1; j + 1 < k_; ++j) cur_[j] = 0;
        cur_.back() = tail - 1;
        return;
      }
      tail += cur_[i];
    }
    done_ = true;
  }

  std::size_t k_;
  unsigned shift_;
  std::vector<unsigned> cur_;
  bool done_ = false;
};

inline CompositionStream weak_compositions(unsigned n, unsigned k) {
  return CompositionStream(n, k, CompositionStream::Flavor::weak);
}

/// Empty stream when s > n.
inline CompositionStream strict_compositions(unsigned n, unsigned s) {
  return CompositionStream(n, s, CompositionStream::Flavor::strict);
}

inline std::vector<Composition> collect(CompositionStream stream) {
  std::vector<Composition> out;
  while (auto c = stream.next()) out.push_back(std::move(*c));
  return out;
}

inline BigInt binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  BigInt acc = 1;
  for (unsigned i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

/// Number of strict compositions of n into s parts, C(n-1, s-1).
inline BigInt n_strict(unsigned n, unsigned s) {
  if (s == 0) throw std::invalid_argument("n_strict: s must be >= 1");
  if (n == 0) return 0;
  return binomial(n - 1, s - 1);
}

}  // namespace eigencount
