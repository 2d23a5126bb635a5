#pragma once

// Elimination kernels on raw row-major grids. Everything here is exact:
// fraction-free Bareiss over integer types, plain elimination over residues
// and over BigRational, and Laplace expansion as an independent oracle.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aprseq/exactfield.hpp"

namespace aprseq::kernels {

using Int128 = __int128;

/// Determinant of the k x k grid `a` (destroyed). T must support exact
/// division; every intermediate value is a minor of the input.
template <class T>
T bareiss_determinant(std::span<T> a, std::size_t k) {
  if (k == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (a[i * k + i] == 0) {
      std::size_t r = i + 1;
      while (r < k && a[r * k + i] == 0) ++r;
      if (r == k) return T(0);
      for (std::size_t c = i; c < k; ++c) std::swap(a[i * k + c], a[r * k + c]);
      negate = !negate;
    }
    const T pivot = a[i * k + i];
    for (std::size_t r = i + 1; r < k; ++r) {
      const T lead = a[r * k + i];
      for (std::size_t c = i + 1; c < k; ++c) {
        a[r * k + c] = (a[r * k + c] * pivot - lead * a[i * k + c]) / prev;
      }
      a[r * k + i] = 0;
    }
    prev = pivot;
  }
  T det = a[(k - 1) * k + (k - 1)];
  return negate ? T(-det) : det;
}

/// Rank of a rows x cols integer grid (destroyed) by fraction-free echelon
/// elimination. After each pivot every live entry is a minor of the input,
/// so the divisions stay exact.
template <class T>
std::size_t bareiss_rank(std::span<T> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  T prev(1);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[rank * cols + c], a[piv * cols + c]);
    }
    const T pivot = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const T lead = a[r * cols + col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r * cols + c] = (a[r * cols + c] * pivot - lead * a[rank * cols + c]) / prev;
      }
      a[r * cols + col] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

/// True when Bareiss on a k x k (or k-wide) grid with entries bounded by
/// 2^max_log2 keeps every minor below 2^62, so products fit in 128 bits.
inline bool bareiss_fits_int128(double max_log2, std::size_t k) {
  if (k == 0) return true;
  const double kd = static_cast<double>(k);
  const double bound = kd * (std::max(max_log2, 0.0) + 0.5 * std::log2(kd));
  return bound <= 61.0;
}

inline std::uint64_t determinant_mod(std::span<std::uint64_t> a, std::size_t k, std::uint64_t p) {
  std::uint64_t det = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t piv = i;
    while (piv < k && a[piv * k + i] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != i) {
      for (std::size_t c = i; c < k; ++c) std::swap(a[i * k + c], a[piv * k + c]);
      det = det == 0 ? 0 : p - det;
    }
    det = det * a[i * k + i] % p;
    const std::uint64_t inv = detail::mod_inverse(a[i * k + i], p);
    for (std::size_t r = i + 1; r < k; ++r) {
      if (a[r * k + i] == 0) continue;
      const std::uint64_t f = a[r * k + i] * inv % p;
      for (std::size_t c = i; c < k; ++c) {
        a[r * k + c] = (a[r * k + c] + (p - f) * a[i * k + c]) % p;
      }
    }
  }
  return det;
}

inline std::size_t rank_mod(std::span<std::uint64_t> a, std::size_t rows, std::size_t cols, std::uint64_t p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[rank * cols + c], a[piv * cols + c]);
    }
    const std::uint64_t inv = detail::mod_inverse(a[rank * cols + col], p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r * cols + col] == 0) continue;
      const std::uint64_t f = a[r * cols + col] * inv % p;
      for (std::size_t c = col; c < cols; ++c) {
        a[r * cols + c] = (a[r * cols + c] + (p - f) * a[rank * cols + c]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

/// Gaussian elimination with fraction arithmetic.
inline BigRational determinant_fraction(std::span<BigRational> a, std::size_t k) {
  BigRational det(1);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t piv = i;
    while (piv < k && a[piv * k + i] == 0) ++piv;
    if (piv == k) return BigRational(0);
    if (piv != i) {
      for (std::size_t c = i; c < k; ++c) std::swap(a[i * k + c], a[piv * k + c]);
      det = -det;
    }
    det *= a[i * k + i];
    for (std::size_t r = i + 1; r < k; ++r) {
      if (a[r * k + i] == 0) continue;
      const BigRational f = a[r * k + i] / a[i * k + i];
      for (std::size_t c = i; c < k; ++c) a[r * k + c] -= f * a[i * k + c];
    }
  }
  return det;
}

/// Laplace expansion along the first row. Factorial cost; oracle use only.
template <class T>
T cofactor_determinant(std::span<const T> a, std::size_t k) {
  if (k == 0) return T(1);
  if (k == 1) return a[0];
  T total(0);
  std::vector<T> sub((k - 1) * (k - 1));
  for (std::size_t j = 0; j < k; ++j) {
    if (a[j] == 0) continue;
    for (std::size_t r = 1; r < k; ++r) {
      std::size_t out = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == j) continue;
        sub[(r - 1) * (k - 1) + out++] = a[r * k + c];
      }
    }
    T term = a[j] * cofactor_determinant<T>(std::span<const T>(sub), k - 1);
    if (j % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace aprseq::kernels
