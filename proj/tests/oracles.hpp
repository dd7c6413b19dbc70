#pragma once

// Independent reference computations in plain 64-bit integer arithmetic.
// Nothing here calls into the library.

#include <cstdint>
#include <functional>
#include <vector>

namespace liepke::oracle {

using IntMat = std::vector<std::int64_t>;

inline IntMat mul_mod(const IntMat& a, const IntMat& b, std::size_t n, std::int64_t p) {
  IntMat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(a[i * n + k]) * b[k * n + j];
      c[i * n + j] = static_cast<std::int64_t>(acc % p);
    }
  return c;
}

inline bool is_nilpotent(const IntMat& a, std::size_t n, std::int64_t p) {
  IntMat pw = a;
  for (std::size_t k = 1; k < n; ++k) pw = mul_mod(pw, a, n, p);
  for (std::int64_t v : pw)
    if (v != 0) return false;
  return true;
}

inline std::int64_t inverse_by_search(std::int64_t v, std::int64_t p) {
  v %= p;
  for (std::int64_t k = 1; k < p; ++k)
    if ((v * k) % p == 1) return k;
  return 0;
}

/// sum_{m < n} X^m / m! over the rationals, X lifted to [0, p), with the
/// common denominator (n-1)! cleared at the end and the numerator reduced mod p.
/// The lifted integer X is usually not nilpotent over Z; the terms m >= l it
/// keeps all vanish mod p.
inline IntMat rational_exp(const IntMat& x, std::size_t n, std::int64_t p) {
  std::int64_t denom = 1;
  for (std::size_t m = 2; m < n; ++m) denom *= static_cast<std::int64_t>(m);
  std::vector<__int128> numer(n * n, 0);
  std::vector<__int128> power(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) power[i * n + i] = 1;
  std::int64_t fact = 1;
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) {
      fact *= static_cast<std::int64_t>(m);
      std::vector<__int128> next(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) next[i * n + j] += power[i * n + k] * x[k * n + j];
      power = next;
    }
    for (std::size_t i = 0; i < n * n; ++i) numer[i] += power[i] * (denom / fact);
  }
  const std::int64_t inv = inverse_by_search(denom, p);
  IntMat out(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    __int128 r = numer[i] % p;
    if (r < 0) r += p;
    out[i] = static_cast<std::int64_t>((r * inv) % p);
  }
  return out;
}

/// Calls f on every nilpotent n x n matrix over Z_p (n in {2, 3}). Uses
/// trace = 0 to fix the last diagonal entry, then tests X^n = 0.
inline void for_each_nilpotent(std::size_t n, std::int64_t p, const std::function<void(const IntMat&)>& f) {
  const std::size_t free_cells = n * n - 1;
  IntMat x(n * n, 0);
  std::vector<std::int64_t> digits(free_cells, 0);
  for (;;) {
    std::int64_t trace = 0;
    for (std::size_t i = 0, d = 0; i < n * n - 1; ++i) x[i] = digits[d++];
    for (std::size_t i = 0; i + 1 < n; ++i) trace += x[i * n + i];
    x[n * n - 1] = ((-trace) % p + p) % p;
    if (is_nilpotent(x, n, p)) f(x);
    std::size_t pos = 0;
    while (pos < free_cells && ++digits[pos] == p) digits[pos++] = 0;
    if (pos == free_cells) break;
  }
}

inline bool is_prime_by_trial_division(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

}  // namespace liepke::oracle
