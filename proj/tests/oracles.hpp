#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's elimination kernels or minor enumeration: determinants come from
// the Leibniz permutation sum and minors are enumerated over all pairs of
// index masks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "aprseq/symmatrix.hpp"

namespace oracle {

using aprseq::BigRational;
using aprseq::SymMatrix;

/// Entries of B as rationals (GF(p) entries as their residues).
inline std::vector<BigRational> values(const SymMatrix& b) {
  std::vector<BigRational> out;
  for (const auto& e : b.entries()) out.push_back(b.field().is_rational() ? e.value() : BigRational(e.residue()));
  return out;
}

inline std::vector<std::size_t> members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if ((mask >> i) & 1U) out.push_back(i);
  }
  return out;
}

/// sum over permutations of sign * prod a[r][perm[r]], exact over Q.
inline BigRational leibniz(const std::vector<BigRational>& a, std::size_t k) {
  if (k == 0) return BigRational(1);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  BigRational total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    }
    BigRational term(1);
    for (std::size_t r = 0; r < k && term != 0; ++r) term *= a[r * k + perm[r]];
    total += inversions % 2 ? BigRational(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// det B[rows, cols] over Q, or reduced mod p for prime fields.
inline BigRational minor(const SymMatrix& b, std::uint32_t rows, std::uint32_t cols) {
  const auto v = values(b);
  const auto r = members(rows), c = members(cols);
  const std::size_t n = b.order();
  std::vector<BigRational> sub;
  for (auto i : r) {
    for (auto j : c) sub.push_back(v[i * n + j]);
  }
  BigRational d = leibniz(sub, r.size());
  if (b.field().is_prime_field()) {
    const aprseq::BigInt p(b.field().modulus());
    aprseq::BigInt num = boost::multiprecision::numerator(d) % p;
    if (num < 0) num += p;
    d = BigRational(num);
  }
  return d;
}

inline bool nonzero_minor(const SymMatrix& b, std::uint32_t rows, std::uint32_t cols) { return minor(b, rows, cols) != 0; }

enum class Kind { principal, almost_principal, quasi_principal };

/// Letter of order k computed over every (rows, cols) mask pair of size k.
inline char letter(const SymMatrix& b, std::size_t k, Kind kind) {
  const std::size_t n = b.order();
  bool zero = false, nonzero = false;
  for (std::uint32_t r = 0; r < (1U << n); ++r) {
    if (static_cast<std::size_t>(std::popcount(r)) != k) continue;
    for (std::uint32_t c = 0; c < (1U << n); ++c) {
      if (static_cast<std::size_t>(std::popcount(c)) != k) continue;
      const auto common = static_cast<std::size_t>(std::popcount(r & c));
      const bool principal = r == c;
      const bool almost = common + 1 == k;
      const bool wanted = kind == Kind::principal ? principal : kind == Kind::almost_principal ? almost : (principal || almost);
      if (!wanted) continue;
      (nonzero_minor(b, r, c) ? nonzero : zero) = true;
    }
  }
  if (zero && nonzero) return 'S';
  return nonzero ? 'A' : 'N';
}

inline std::string apr(const SymMatrix& b) {
  std::string w;
  for (std::size_t k = 1; k < b.order(); ++k) w.push_back(letter(b, k, Kind::almost_principal));
  return w;
}

inline std::string epr(const SymMatrix& b) {
  std::string w;
  for (std::size_t k = 1; k <= b.order(); ++k) w.push_back(letter(b, k, Kind::principal));
  return w;
}

inline std::string qpr(const SymMatrix& b) {
  std::string w;
  for (std::size_t k = 1; k <= b.order(); ++k) w.push_back(letter(b, k, Kind::quasi_principal));
  return w;
}

/// Largest order of a nonzero minor of any kind.
inline std::size_t rank(const SymMatrix& b) {
  const std::size_t n = b.order();
  for (std::size_t k = n; k >= 1; --k) {
    for (std::uint32_t r = 0; r < (1U << n); ++r) {
      if (static_cast<std::size_t>(std::popcount(r)) != k) continue;
      for (std::uint32_t c = 0; c < (1U << n); ++c) {
        if (static_cast<std::size_t>(std::popcount(c)) == k && nonzero_minor(b, r, c)) return k;
      }
    }
  }
  return 0;
}

/// Largest order of a nonsingular almost-principal submatrix.
inline std::size_t ap_rank(const SymMatrix& b) {
  const std::string w = apr(b);
  for (std::size_t k = w.size(); k >= 1; --k) {
    if (w[k - 1] != 'N') return k;
  }
  return 0;
}

/// Dense random symmetric integer matrix drawn with the standard library
/// generator (independent of the library's sampler).
inline SymMatrix random_int_matrix(std::mt19937& gen, std::size_t n, int bound, int zero_weight = 0) {
  std::uniform_int_distribution<int> val(-bound, bound);
  std::uniform_int_distribution<int> coin(0, 9);
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g[i][j] = g[j][i] = coin(gen) < zero_weight ? 0 : val(gen);
    }
  }
  return SymMatrix::from_ints(aprseq::FieldSpec::rationals(), g);
}

}  // namespace oracle
