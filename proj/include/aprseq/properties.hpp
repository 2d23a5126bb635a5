#pragma once

// Randomized property suites over symmetric rational matrices. Each suite
// draws seeded matrices from a mix of structured generators and checks one
// family of statements about apr/epr/qpr-sequences, ranks and Schur
// complements, stopping at the first counterexample.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aprseq/attain.hpp"
#include "aprseq/minorseq.hpp"
#include "aprseq/random.hpp"
#include "aprseq/symmatrix.hpp"

namespace aprseq {

enum class Flavor { dense, sparse, low_rank, zero_padded, zero_one, fractions, diagonal, canonical };

inline const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::dense: return "dense";
    case Flavor::sparse: return "sparse";
    case Flavor::low_rank: return "low_rank";
    case Flavor::zero_padded: return "zero_padded";
    case Flavor::zero_one: return "zero_one";
    case Flavor::fractions: return "fractions";
    case Flavor::diagonal: return "diagonal";
    case Flavor::canonical: return "canonical";
  }
  return "?";
}

namespace detail {

inline Scalar small_int(Rng& rng, std::int64_t bound) { return Scalar::from_int(FieldSpec::rationals(), uniform_int(rng, -bound, bound)); }

inline Scalar small_nonzero(Rng& rng, std::int64_t bound) {
  std::int64_t v = 0;
  while (v == 0) v = uniform_int(rng, -bound, bound);
  return Scalar::from_int(FieldSpec::rationals(), v);
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i + 1;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
  return p;
}

template <class Entry>
SymMatrix symmetric_from(std::size_t n, Entry&& entry) {
  const auto q = FieldSpec::rationals();
  std::vector<Scalar> e(n * n, Scalar::zero(q));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      e[i * n + j] = entry(i, j);
      e[j * n + i] = e[i * n + j];
    }
  }
  return SymMatrix(q, n, std::move(e));
}

inline SymMatrix low_rank_matrix(Rng& rng, std::size_t n, std::size_t r) {
  const auto q = FieldSpec::rationals();
  std::vector<Scalar> e(n * n, Scalar::zero(q));
  for (std::size_t t = 0; t < r; ++t) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(bernoulli(rng, 1, 4) ? Scalar::zero(q) : small_int(rng, 2));
    const Scalar s = Scalar::from_int(q, bernoulli(rng, 1, 2) ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += s * v[i] * v[j];
    }
  }
  return SymMatrix(q, n, std::move(e));
}

/// P^T D B D P with random nonzero diagonal D and random permutation P.
inline SymMatrix scramble(Rng& rng, const SymMatrix& b) {
  std::vector<Scalar> d;
  for (std::size_t i = 0; i < b.order(); ++i) d.push_back(small_nonzero(rng, 3));
  return b.diagonally_scaled(d).permuted(random_permutation(rng, b.order()));
}

inline SymMatrix canonical_sample(Rng& rng, std::size_t n) {
  const auto q = FieldSpec::rationals();
  SymMatrix base = SymMatrix::zero(q, n);
  switch (uniform_below(rng, 5)) {
    case 0: {
      const std::size_t k = uniform_below(rng, n - 1);
      base = direct_sum(SymMatrix::ones(q, n - k), SymMatrix::zero(q, k));
      break;
    }
    case 1:
      base = direct_sum(l2(q, small_int(rng, 2)), SymMatrix::zero(q, n - 2));
      break;
    case 2: {
      const std::size_t p = 1 + uniform_below(rng, n / 2);
      base = matching_blocks(q, p, n - 2 * p);
      break;
    }
    case 3:
      base = direct_sum(SymMatrix::ones(q, 2), SymMatrix::identity(q, n - 2));
      break;
    default: {
      const std::size_t k = uniform_below(rng, n + 1);
      base = direct_sum(SymMatrix::identity(q, n - k), SymMatrix::zero(q, k));
      break;
    }
  }
  return scramble(rng, base).scaled(small_nonzero(rng, 3));
}

}  // namespace detail

/// A random symmetric rational matrix of order n >= 2 of the given flavor.
inline SymMatrix random_symmetric(Rng& rng, std::size_t n, Flavor flavor) {
  using namespace detail;
  if (n < 2) throw std::invalid_argument("random_symmetric needs order at least 2");
  const auto q = FieldSpec::rationals();
  switch (flavor) {
    case Flavor::dense:
      return symmetric_from(n, [&](std::size_t, std::size_t) { return small_int(rng, 3); });
    case Flavor::sparse:
      return symmetric_from(n, [&](std::size_t, std::size_t) {
        return bernoulli(rng, 1, 3) ? small_nonzero(rng, 2) : Scalar::zero(q);
      });
    case Flavor::low_rank:
      return low_rank_matrix(rng, n, 1 + uniform_below(rng, n - 1));
    case Flavor::zero_padded: {
      const std::size_t m = 2 + uniform_below(rng, n - 1);
      SymMatrix core = bernoulli(rng, 1, 2) ? random_symmetric(rng, m, Flavor::dense) : low_rank_matrix(rng, m, 1 + uniform_below(rng, m));
      return direct_sum(core, SymMatrix::zero(q, n - m)).permuted(random_permutation(rng, n));
    }
    case Flavor::zero_one:
      return symmetric_from(n, [&](std::size_t, std::size_t) { return Scalar::from_int(q, bernoulli(rng, 1, 2) ? 1 : 0); });
    case Flavor::fractions:
      return symmetric_from(n, [&](std::size_t, std::size_t) {
        return Scalar::rational(uniform_int(rng, -3, 3), uniform_int(rng, 1, 4));
      });
    case Flavor::diagonal:
      return symmetric_from(n, [&](std::size_t i, std::size_t j) { return i == j ? small_int(rng, 2) : Scalar::zero(q); });
    case Flavor::canonical:
      return canonical_sample(rng, n);
  }
  throw std::invalid_argument("unknown flavor");
}

/// Draws a flavor (structured flavors weighted so N letters and zero rows
/// show up regularly) and then a matrix.
inline SymMatrix random_symmetric(Rng& rng, std::size_t n) {
  static constexpr Flavor table[] = {Flavor::dense,       Flavor::dense,    Flavor::sparse,    Flavor::sparse,
                                     Flavor::low_rank,    Flavor::low_rank, Flavor::low_rank,  Flavor::zero_padded,
                                     Flavor::zero_padded, Flavor::zero_one, Flavor::fractions, Flavor::diagonal,
                                     Flavor::canonical,   Flavor::canonical};
  return random_symmetric(rng, n, table[uniform_below(rng, std::size(table))]);
}

// ---------------------------------------------------------------------------
// suites

struct SuiteOptions {
  std::size_t trials = 1000;
  std::size_t n_max = 7;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  /// Trials in which at least one hypothesis of the suite applied.
  std::size_t hits = 0;
  bool passed = true;
  std::string failure;
  std::optional<SymMatrix> counterexample;
};

/// A check returns a failure description, or nothing when the matrix
/// satisfies every statement; it sets hit when some hypothesis applied.
using PropertyCheck = std::function<std::optional<std::string>(const SymMatrix&, Rng&, bool& hit)>;

struct Suite {
  std::string name;
  std::string description;
  std::size_t n_min;
  std::size_t n_max;  // hard cap, combined with SuiteOptions::n_max
  PropertyCheck check;
};

namespace detail {

inline std::string reversed(std::string s) {
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string fail_word(const std::string& what, const std::string& word) { return what + " (apr = " + word + ")"; }

inline bool is_singular(const SymMatrix& b) { return rank(b) < b.order(); }

inline std::size_t grid_rank(std::vector<Scalar> a, std::size_t rows, std::size_t cols) { return rref(a, rows, cols, cols).size(); }

/// [[B, y], [z^T, t]] as a row-major grid.
inline std::vector<Scalar> general_border(const SymMatrix& b, const std::vector<Scalar>& y, const std::vector<Scalar>& z, const Scalar& t) {
  const std::size_t n = b.order();
  std::vector<Scalar> g;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.push_back(b.at0(i, j));
    g.push_back(y[i]);
  }
  for (const auto& v : z) g.push_back(v);
  g.push_back(t);
  return g;
}

inline std::vector<Scalar> random_vector(Rng& rng, std::size_t n, std::int64_t bound) {
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(small_int(rng, bound));
  return v;
}

/// A vector outside CS(B), or nothing if B is nonsingular or sampling misses.
inline std::optional<std::vector<Scalar>> outside_column_space(const SymMatrix& b, Rng& rng) {
  if (!is_singular(b)) return std::nullopt;
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto y = random_vector(rng, b.order(), 5);
    if (!solve_in_column_space(b, y)) return y;
  }
  return std::nullopt;
}

/// Sign of the permutation taking gamma-then-alpha to increasing order.
inline int ordering_sign(const IndexSet& alpha, const IndexSet& gamma) {
  std::size_t inversions = 0;
  for (auto a : alpha.members()) {
    for (auto g : gamma.members()) inversions += a < g ? 1 : 0;
  }
  return inversions % 2 ? -1 : 1;
}

inline SymMatrix without_zero_rows(const SymMatrix& b) {
  return b.principal_submatrix(structure_flags(b).zero_rows.complement());
}

// Checks on the apr word alone.

inline std::optional<std::string> check_nn(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  const auto pos = w.find("NN");
  if (pos == std::string::npos) return std::nullopt;
  hit = true;
  if (w.find_first_not_of('N', pos) != std::string::npos) return fail_word("NN is followed by a letter other than N", w);
  // a word with NN that is not all N comes from a singular matrix
  if (w.find_first_not_of('N') != std::string::npos && !is_singular(b)) return fail_word("nonsingular matrix whose apr-sequence contains NN", w);
  return std::nullopt;
}

inline std::optional<std::string> check_na(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  hit = w.find('N') != std::string::npos;
  if (w.find("NA") != std::string::npos) return fail_word("NA occurs", w);
  return std::nullopt;
}

inline std::optional<std::string> check_a_tail(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  if (w.find('A') == std::string::npos) return std::nullopt;
  const auto first_n = w.find('N');
  if (first_n == std::string::npos) return std::nullopt;
  hit = true;
  if (w.find_first_not_of('N', first_n) != std::string::npos) return fail_word("A present but a letter after the first N is not N", w);
  return std::nullopt;
}

inline std::optional<std::string> check_ns(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  if (w.find("NS") == std::string::npos) return std::nullopt;
  hit = true;
  if (w.compare(0, 2, "SN") != 0) return fail_word("NS occurs but the word does not start with SN", w);
  return std::nullopt;
}

inline std::optional<std::string> check_necessary_condition(const SymMatrix& b, Rng&, bool& hit) {
  const auto seq = apr_sequence(b);
  if (seq.length() < 2) return std::nullopt;
  hit = true;
  const auto v = check_necessary(seq);
  if (!v.attainable) return fail_word("observed word fails the necessary condition: " + v.reason, seq.word());
  if (!seq.contains(Letter::A) && classify_no_A(seq).form == FormKind::NotNoA) return fail_word("word without A has none of the attainable forms", seq.word());
  return std::nullopt;
}

inline std::optional<std::string> check_start_end(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  if (w.front() == 'N') {
    hit = true;
    if (!structure_flags(b).is_diagonal) return fail_word("a_1 = N but the matrix is not diagonal", w);
    if (w.find_first_not_of('N') != std::string::npos) return fail_word("a_1 = N but the word is not all N", w);
  } else if (w.back() == 'N') {
    hit = true;
    if (!is_singular(b)) return fail_word("word starts with A or S and ends with N but the matrix is nonsingular", w);
  }
  return std::nullopt;
}

// Matrix-side transformations.

inline std::optional<std::string> check_inverse(const SymMatrix& b, Rng&, bool& hit) {
  if (is_singular(b)) return std::nullopt;
  hit = true;
  const auto w = apr_sequence(b).word();
  const auto wi = apr_sequence(inverse(b)).word();
  if (wi != reversed(w)) return "apr(B) = " + w + " but apr(B^-1) = " + wi;
  return std::nullopt;
}

inline std::optional<std::string> check_append(const SymMatrix& b, Rng&, bool& hit) {
  hit = true;
  const auto w = apr_sequence(b).word();
  std::string expect;
  for (char c : w) expect.push_back(c == 'N' ? 'N' : 'S');
  expect.push_back('N');
  const auto got = apr_sequence(direct_sum(b, SymMatrix::zero(b.field(), 1))).word();
  if (got != expect) return "apr(B) = " + w + ", expected apr(B+O1) = " + expect + ", got " + got;
  return std::nullopt;
}

inline std::optional<std::string> check_inheritance(const SymMatrix& b, Rng&, bool& hit) {
  const std::size_t n = b.order();
  const auto w = apr_sequence(b).word();
  for (std::size_t m = 6; m <= n; ++m) {
    std::vector<std::string> sub;
    for_each_subset_mask(n, m, [&](std::uint32_t s) {
      sub.push_back(apr_sequence(b.principal_submatrix(IndexSet::from_mask(n, s))).word());
      return true;
    });
    for (std::size_t k = 1; k <= m - 1; ++k) {
      const char a = w[k - 1];
      if (a == 'N' || a == 'A') {
        hit = true;
        for (const auto& c : sub) {
          if (c[k - 1] != a) return fail_word("a_" + std::to_string(k) + " = " + a + " not inherited by an order-" + std::to_string(m) + " principal submatrix (" + c + ")", w);
        }
      } else if (k + 5 <= m) {
        hit = true;
        const bool kept = std::any_of(sub.begin(), sub.end(), [&](const std::string& c) { return c[k - 1] == 'S'; });
        if (!kept) return fail_word("a_" + std::to_string(k) + " = S but no order-" + std::to_string(m) + " principal submatrix keeps S", w);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_schur(const SymMatrix& b, Rng& rng, bool& hit) {
  const std::size_t n = b.order();
  const std::size_t r = rank(b);
  if (r == 0) return std::nullopt;
  const std::size_t kmax = std::min<std::size_t>({3, r, n - 1});
  // pick a random gamma with B[gamma] nonsingular
  std::optional<IndexSet> gamma;
  for (int attempt = 0; attempt < 12 && !gamma; ++attempt) {
    const std::size_t k = 1 + uniform_below(rng, kmax);
    const auto perm = random_permutation(rng, n);
    IndexSet g(n, std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k)));
    if (!minor_det(b, g, g).is_zero()) gamma = g;
  }
  if (!gamma) return std::nullopt;
  hit = true;
  const std::size_t k = gamma->size();
  const Scalar pivot = minor_det(b, *gamma, *gamma);
  const auto sc = schur_complement(b, *gamma);
  const auto rest = gamma->complement();
  const std::size_t m = rest.size();
  const std::string tag = " for gamma = " + gamma->to_string();

  std::optional<std::string> bad;
  for (std::size_t s = 1; s <= m && !bad; ++s) {
    for_each_subset_mask(n, s, [&](std::uint32_t am) {
      const IndexSet alpha = IndexSet::from_mask(n, am);
      if (!alpha.is_subset_of(rest)) return true;
      return for_each_subset_mask(n, s, [&](std::uint32_t bm) {
        const IndexSet beta = IndexSet::from_mask(n, bm);
        if (!beta.is_subset_of(rest)) return true;
        Scalar lhs = minor_det(sc.matrix, sc.local(alpha), sc.local(beta)) * pivot;
        if (ordering_sign(alpha, *gamma) != ordering_sign(beta, *gamma)) lhs = -lhs;
        const Scalar rhs = minor_det(b, alpha | *gamma, beta | *gamma);
        if (lhs == rhs) return true;
        bad = "det C[" + alpha.to_string() + "," + beta.to_string() + "] * det B[gamma] != +-det B[alpha+gamma, beta+gamma]" + tag;
        return false;
      });
    });
  }
  if (bad) return bad;
  if (rank(sc.matrix) != r - k) {
    return "rank(C) = " + std::to_string(rank(sc.matrix)) + " but rank(B) - |gamma| = " + std::to_string(r - k) + tag;
  }
  if (m >= 2) {
    const auto w = apr_sequence(b).word();
    const auto wc = apr_sequence(sc.matrix).word();
    for (std::size_t j = 1; j + k <= n - 1 && j <= m - 1; ++j) {
      const char a = w[j + k - 1];
      if ((a == 'A' || a == 'N') && wc[j - 1] != a) {
        return "apr(B) = " + w + ", apr(C) = " + wc + ": letter " + std::to_string(j) + " of C should equal " + a + tag;
      }
    }
  }
  return std::nullopt;
}

// Rank statements.

inline std::optional<std::string> check_qpr_rank(const SymMatrix& b, Rng&, bool& hit) {
  hit = true;
  const auto w = qpr_sequence(b).word();
  const std::size_t r = rank(b);
  if (last_nonzero_index(w) != r) return "qpr = " + w + " but rank = " + std::to_string(r);
  return std::nullopt;
}

inline std::optional<std::string> check_qpr_ntail(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = qpr_sequence(b).word();
  const auto first = w.find('N');
  if (first == std::string::npos) return std::nullopt;
  hit = true;
  if (w.find_first_not_of('N', first) != std::string::npos) return "qpr = " + w + " has a letter other than N after an N";
  return std::nullopt;
}

inline std::optional<std::string> check_principal_rank(const SymMatrix& b, Rng&, bool& hit) {
  hit = true;
  const auto g = principal_rank_witness(b);
  const std::size_t r = rank(b);
  if (g.size() != r) return "largest nonsingular principal submatrix has order " + std::to_string(g.size()) + " but rank = " + std::to_string(r);
  if (r > 0 && minor_det(b, g, g).is_zero()) return "witness " + g.to_string() + " is singular";
  const auto e = epr_sequence(b).word();
  if (last_nonzero_index(e) != r) return "epr = " + e + " but rank = " + std::to_string(r);
  return std::nullopt;
}

inline std::optional<std::string> check_aprank_bounds(const SymMatrix& b, Rng&, bool& hit) {
  const std::size_t n = b.order();
  const auto w = apr_sequence(b).word();
  const std::size_t ar = ap_rank(b);
  const std::size_t r = rank(b);
  const auto flags = structure_flags(b);
  const std::string tag = " (apr = " + w + ", rank = " + std::to_string(r) + ", aprank = " + std::to_string(ar) + ")";
  if (ar != last_nonzero_index(w)) return "aprank is not the index of the last A or S" + tag;
  if (ar > r) return "aprank exceeds rank" + tag;
  if ((ar == 0) != flags.is_diagonal) return "aprank = 0 does not match diagonality" + tag;
  if (flags.is_diagonal) return std::nullopt;
  hit = true;
  if (ar + 1 < r) return "aprank < rank - 1 for a non-diagonal matrix" + tag;
  const bool reduced_singular = is_singular(without_zero_rows(b));
  if ((ar == r) != reduced_singular) {
    return std::string("aprank = rank should hold exactly when B without its zero rows is singular; that matrix is ") +
           (reduced_singular ? "singular" : "nonsingular") + tag;
  }
  if (r == n && ar != n - 1) return "nonsingular non-diagonal matrix with aprank != n - 1" + tag;
  return std::nullopt;
}

inline std::optional<std::string> check_aprank_equals_rank(const SymMatrix& b, Rng&, bool& hit) {
  const auto flags = structure_flags(b);
  if (flags.is_diagonal || flags.has_zero_row || !is_singular(b)) return std::nullopt;
  hit = true;
  const std::size_t ar = ap_rank(b), r = rank(b);
  if (ar != r) return "aprank = " + std::to_string(ar) + " but rank = " + std::to_string(r);
  return std::nullopt;
}

inline std::optional<std::string> check_zero_row(const SymMatrix& b, Rng&, bool& hit) {
  const auto w = apr_sequence(b).word();
  if (w.back() != 'N' || rank(b) != b.order() - 1) return std::nullopt;
  hit = true;
  if (!structure_flags(b).has_zero_row) return fail_word("apr ends in N and rank = n - 1 but there is no zero row", w);
  return std::nullopt;
}

inline std::optional<std::string> check_deletion_rank(const SymMatrix& b, Rng&, bool& hit) {
  const std::size_t n = b.order();
  if (is_singular(b)) return std::nullopt;
  hit = true;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto rows = IndexSet::full(n).without(i), cols = IndexSet::full(n).without(j);
      if (submatrix_rank(b, rows, cols) + 2 < n) return "deleting row " + std::to_string(i) + " and column " + std::to_string(j) + " drops rank below n - 2";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_bordered_rank(const SymMatrix& b, Rng& rng, bool& hit) {
  const std::size_t n = b.order();
  const std::size_t r = rank(b);
  const auto q = b.field();
  auto expect = [&](const std::vector<Scalar>& grid, std::size_t want, const std::string& what) -> std::optional<std::string> {
    const std::size_t got = grid_rank(grid, n + 1, n + 1);
    if (got == want) return std::nullopt;
    return what + ": rank(B) = " + std::to_string(r) + ", bordered rank " + std::to_string(got) + ", expected " + std::to_string(want);
  };
  const auto u = random_vector(rng, n, 3), v = random_vector(rng, n, 3);
  const auto bu = multiply(b, u), bv = multiply(b, v);
  const Scalar vbu = dot(v, bu);
  const Scalar t = small_int(rng, 5);
  hit = true;

  // both border vectors in the column space
  if (auto f = expect(general_border(b, bu, bv, vbu), r, "y = Bu, z = Bv, t = v^T B u")) return f;
  if (auto f = expect(general_border(b, bu, bv, vbu + Scalar::one(q)), r + 1, "y = Bu, z = Bv, t != v^T B u")) return f;
  // symmetric border
  const Scalar ubu = dot(u, bu);
  if (auto f = expect(border(b, bu, ubu).entries(), r, "symmetric y = Bx, t = x^T B x")) return f;
  if (auto f = expect(border(b, bu, ubu + Scalar::one(q)).entries(), r + 1, "symmetric y = Bx, t != x^T B x")) return f;

  const auto y_out = outside_column_space(b, rng);
  const auto z_out = outside_column_space(b, rng);
  if (y_out && z_out) {
    if (auto f = expect(general_border(b, *y_out, *z_out, t), r + 2, "y and z outside the column space")) return f;
  }
  if (z_out) {
    if (auto f = expect(general_border(b, bu, *z_out, t), r + 1, "y inside, z outside the column space")) return f;
  }
  if (y_out) {
    if (auto f = expect(general_border(b, *y_out, bv, t), r + 1, "y outside, z inside the column space")) return f;
    if (auto f = expect(border(b, *y_out, t).entries(), r + 2, "symmetric y outside the column space")) return f;
  }
  return std::nullopt;
}

inline std::optional<std::string> check_sn_structure(const SymMatrix& b, Rng&, bool& hit) {
  if (b.order() < 3) return std::nullopt;
  const auto w = apr_sequence(b).word();
  if (w.compare(0, 2, "SN") != 0) return std::nullopt;
  hit = true;
  const auto rep = recognize_SN(b);
  if (rep.which == StructureCase::None) return fail_word("apr starts with SN but no structure case matched: " + rep.note, w);
  if (!rep.verify(b)) return fail_word(std::string("structure witness for ") + to_string(rep.which) + " does not reproduce the canonical matrix", w);
  return std::nullopt;
}

}  // namespace detail

inline const std::vector<Suite>& property_suites() {
  using namespace detail;
  static const std::vector<Suite> suites = {
      {"nn-theorem", "NN in apr forces an all-N tail; such words (not all N) come from singular matrices", 3, 7, check_nn},
      {"na", "NA never occurs in an apr-sequence", 3, 7, check_na},
      {"a-tail", "if A occurs, every letter after the first N is N", 3, 7, check_a_tail},
      {"ns-theorem", "NS anywhere forces the word to start with SN", 3, 7, check_ns},
      {"necessary", "every observed apr word satisfies the necessary condition for attainability", 3, 7, check_necessary_condition},
      {"start-end", "a_1 = N only for diagonal matrices; A/S...N words come from singular matrices", 2, 7, check_start_end},
      {"inverse", "apr(B^-1) is apr(B) reversed for nonsingular B", 2, 7, check_inverse},
      {"append", "apr(B + O1) turns A into S, keeps N and appends N", 2, 6, check_append},
      {"inheritance", "N and A letters pass to order-m principal submatrices; S survives in one of them when k <= m - 5", 6, 7, check_inheritance},
      {"schur", "Schur complement minor identity, rank drop and letter transfer", 2, 6, check_schur},
      {"qpr-rank", "rank is the index of the last A or S in qpr", 2, 7, check_qpr_rank},
      {"qpr-ntail", "an N in qpr is followed only by N", 2, 7, check_qpr_ntail},
      {"principal-rank", "rank is the order of a largest nonsingular principal submatrix", 2, 7, check_principal_rank},
      {"aprank-bounds", "rank - 1 <= aprank <= rank off the diagonal, equality iff B without zero rows is singular", 2, 7, check_aprank_bounds},
      {"aprank-equals-rank", "aprank = rank for non-diagonal singular matrices without zero rows", 2, 7, check_aprank_equals_rank},
      {"zero-row", "apr ending in N with rank n - 1 forces a zero row", 2, 7, check_zero_row},
      {"deletion-rank", "deleting a row and a column of a nonsingular matrix leaves rank at least n - 2", 2, 7, check_deletion_rank},
      {"bordered-rank", "rank of [[B, y], [z^T, t]] in each column-space case", 2, 7, check_bordered_rank},
      {"sn-structure", "matrices with apr starting SN are scaled permuted J+O, L2+O or matching blocks", 3, 7, check_sn_structure},
  };
  return suites;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : property_suites()) out.push_back(s.name);
  return out;
}

inline const Suite& find_suite(const std::string& name) {
  for (const auto& s : property_suites()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

/// Runs one suite. Trial t uses a generator seeded from (seed, suite index, t)
/// and an order drawn from [n_min, min(n_max, suite cap)]; suites whose
/// smallest order exceeds n_max run at their smallest order.
inline SuiteResult run_suite(const Suite& suite, const SuiteOptions& opts) {
  const auto& all = property_suites();
  std::uint64_t idx = 0;
  while (idx < all.size() && all[idx].name != suite.name) ++idx;
  const std::size_t hi = std::max(suite.n_min, std::min(suite.n_max, opts.n_max));
  SuiteResult res;
  res.name = suite.name;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(derive_seed(opts.seed, idx), t));
    const std::size_t n = suite.n_min + uniform_below(rng, hi - suite.n_min + 1);
    const SymMatrix b = random_symmetric(rng, n);
    bool hit = false;
    auto failure = suite.check(b, rng, hit);
    ++res.trials;
    if (hit) ++res.hits;
    if (failure) {
      res.passed = false;
      res.failure = *failure;
      res.counterexample = b;
      break;
    }
  }
  return res;
}

inline SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) { return run_suite(find_suite(name), opts); }

}  // namespace aprseq
