#pragma once

// Immutable symmetric matrices over an exact field, 1-indexed, with
// determinants of arbitrary minors, rank, inverse, Schur complements,
// bordering and direct sums.

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aprseq/exactfield.hpp"
#include "aprseq/index_set.hpp"
#include "aprseq/kernels.hpp"

namespace aprseq {

/// Raised by make_symmetric for an asymmetric grid; names the first offending pair.
class SymmetryError : public std::invalid_argument {
 public:
  SymmetryError(std::size_t row, std::size_t col)
      : std::invalid_argument("matrix is not symmetric at (" + std::to_string(row) + "," + std::to_string(col) +
                              ")/(" + std::to_string(col) + "," + std::to_string(row) + ")"),
        row_(row),
        col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SymMatrix {
 public:
  SymMatrix() = default;

  /// Row-major n x n entries. Order 0 is permitted only as a vacuous direct summand.
  SymMatrix(const FieldSpec& field, std::size_t n, std::vector<Scalar> entries)
      : field_(field), n_(n), entries_(std::move(entries)) {
    if (n > IndexSet::max_universe) throw DimensionError("order larger than 32");
    if (entries_.size() != n * n) throw DimensionError("expected " + std::to_string(n * n) + " entries");
    for (const auto& e : entries_) {
      if (!(e.field() == field_)) throw FieldError("entry over " + e.field().to_string() + " in a matrix over " + field_.to_string());
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(entries_[i * n + j] == entries_[j * n + i])) throw SymmetryError(i + 1, j + 1);
      }
    }
  }

  static SymMatrix from_rows(const FieldSpec& field, const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Scalar> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw DimensionError("grid is not square");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return SymMatrix(field, n, std::move(entries));
  }

  static SymMatrix from_ints(const FieldSpec& field, const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<Scalar>> grid;
    for (const auto& row : rows) {
      std::vector<Scalar> r;
      for (auto v : row) r.push_back(Scalar::from_int(field, v));
      grid.push_back(std::move(r));
    }
    return from_rows(field, grid);
  }

  static SymMatrix zero(const FieldSpec& field, std::size_t n) {
    return SymMatrix(field, n, std::vector<Scalar>(n * n, Scalar::zero(field)));
  }
  static SymMatrix identity(const FieldSpec& field, std::size_t n) {
    auto e = std::vector<Scalar>(n * n, Scalar::zero(field));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Scalar::one(field);
    return SymMatrix(field, n, std::move(e));
  }
  static SymMatrix ones(const FieldSpec& field, std::size_t n) {
    return SymMatrix(field, n, std::vector<Scalar>(n * n, Scalar::one(field)));
  }

  std::size_t order() const { return n_; }
  const FieldSpec& field() const { return field_; }

  /// 1-indexed entry access.
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw std::out_of_range("matrix index out of range");
    return entries_[(i - 1) * n_ + (j - 1)];
  }
  const Scalar& at0(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  bool is_integral() const {
    for (const auto& e : entries_) {
      if (!e.is_integer()) return false;
    }
    return true;
  }

  SymMatrix principal_submatrix(const IndexSet& idx) const {
    const auto m = idx.members();
    std::vector<Scalar> e;
    e.reserve(m.size() * m.size());
    for (auto i : m) {
      for (auto j : m) e.push_back((*this)(i, j));
    }
    return SymMatrix(field_, m.size(), std::move(e));
  }

  /// P^T B P for the permutation sending new position r to old index order[r-1].
  SymMatrix permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != n_) throw DimensionError("permutation length differs from order");
    std::vector<bool> seen(n_ + 1, false);
    for (auto i : order) {
      if (i < 1 || i > n_ || seen[i]) throw std::invalid_argument("not a permutation of 1..n");
      seen[i] = true;
    }
    std::vector<Scalar> e;
    e.reserve(n_ * n_);
    for (auto i : order) {
      for (auto j : order) e.push_back((*this)(i, j));
    }
    return SymMatrix(field_, n_, std::move(e));
  }

  SymMatrix scaled(const Scalar& c) const {
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(x * c);
    return SymMatrix(field_, n_, std::move(e));
  }

  /// D B D for D = diag(d).
  SymMatrix diagonally_scaled(const std::vector<Scalar>& d) const {
    if (d.size() != n_) throw DimensionError("scaling vector length differs from order");
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) e.push_back(d[i] * at0(i, j) * d[j]);
    }
    return SymMatrix(field_, n_, std::move(e));
  }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    if (!(a.field_ == b.field_) || a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (!(a.entries_[i] == b.entries_[i])) return false;
    }
    return true;
  }

  /// Rows of space-separated scalar tokens.
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) os << (j ? " " : "") << at0(i, j).to_string();
      os << '\n';
    }
    return os.str();
  }

 private:
  FieldSpec field_{};
  std::size_t n_ = 0;
  std::vector<Scalar> entries_;
};

/// Validating constructor from a scalar grid.
inline SymMatrix make_symmetric(std::size_t n, const FieldSpec& field, const std::vector<std::vector<Scalar>>& grid) {
  if (n == 0) throw DimensionError("order must be at least 1");
  if (grid.size() != n) throw DimensionError("grid has " + std::to_string(grid.size()) + " rows, expected " + std::to_string(n));
  return SymMatrix::from_rows(field, grid);
}

/// Prepared form of a matrix for repeated minor zero-tests and ranks.
/// Rational matrices are scaled by the lcm of their denominators, which changes
/// no rank and no zero pattern of minors; small integer grids use a 128-bit
/// Bareiss path when the determinant bound allows it.
class MinorEvaluator {
 public:
  explicit MinorEvaluator(const SymMatrix& b) : n_(b.order()), field_(b.field()) {
    const std::size_t count = n_ * n_;
    if (field_.is_prime_field()) {
      residues_.reserve(count);
      for (const auto& e : b.entries()) residues_.push_back(e.residue());
      return;
    }
    BigInt scale(1);
    for (const auto& e : b.entries()) {
      const BigInt den = e.denominator();
      if (den != 1) scale = boost::multiprecision::lcm(scale, den);
    }
    big_.reserve(count);
    BigInt max_abs(0);
    for (const auto& e : b.entries()) {
      BigInt v = e.numerator() * (scale / e.denominator());
      const BigInt a = abs(v);
      if (a > max_abs) max_abs = a;
      big_.push_back(std::move(v));
    }
    max_log2_ = max_abs == 0 ? 0.0 : static_cast<double>(boost::multiprecision::msb(max_abs)) + 1.0;
    small_ok_ = max_log2_ <= 62.0;
    if (small_ok_) {
      small_.reserve(count);
      for (const auto& v : big_) small_.push_back(static_cast<std::int64_t>(v));
    }
  }

  std::size_t order() const { return n_; }
  const FieldSpec& field() const { return field_; }

  /// det B[rows, cols] != 0 for equal-size masks (bit i-1 = index i).
  bool nonzero(std::uint32_t rows, std::uint32_t cols) const {
    const std::size_t k = static_cast<std::size_t>(std::popcount(rows));
    if (k != static_cast<std::size_t>(std::popcount(cols))) throw DimensionError("minor needs |rows| = |cols|");
    if (k == 0) return true;
    if (field_.is_prime_field()) {
      std::array<std::uint64_t, 32 * 32> buf{};
      gather(residues_, rows, cols, buf.data());
      return kernels::determinant_mod(std::span(buf.data(), k * k), k, field_.modulus()) != 0;
    }
    if (small_ok_ && k <= 16 && kernels::bareiss_fits_int128(max_log2_, k)) {
      std::array<kernels::Int128, 16 * 16> buf{};
      gather(small_, rows, cols, buf.data());
      return kernels::bareiss_determinant<kernels::Int128>(std::span(buf.data(), k * k), k) != 0;
    }
    std::vector<BigInt> buf(k * k);
    gather(big_, rows, cols, buf.data());
    return kernels::bareiss_determinant<BigInt>(std::span(buf), k) != 0;
  }

  /// Rank of the (possibly rectangular) submatrix B[rows, cols].
  std::size_t rank(std::uint32_t rows, std::uint32_t cols) const {
    const auto r = static_cast<std::size_t>(std::popcount(rows));
    const auto c = static_cast<std::size_t>(std::popcount(cols));
    if (r == 0 || c == 0) return 0;
    if (field_.is_prime_field()) {
      std::vector<std::uint64_t> buf(r * c);
      gather(residues_, rows, cols, buf.data());
      return kernels::rank_mod(std::span(buf), r, c, field_.modulus());
    }
    const std::size_t k = std::min(r, c);
    if (small_ok_ && kernels::bareiss_fits_int128(max_log2_, k)) {
      std::vector<kernels::Int128> buf(r * c);
      gather(small_, rows, cols, buf.data());
      return kernels::bareiss_rank<kernels::Int128>(std::span(buf), r, c);
    }
    std::vector<BigInt> buf(r * c);
    gather(big_, rows, cols, buf.data());
    return kernels::bareiss_rank<BigInt>(std::span(buf), r, c);
  }

  std::size_t rank() const {
    const auto full = IndexSet::full(n_).mask();
    return rank(full, full);
  }

 private:
  template <class Src, class Dst>
  void gather(const std::vector<Src>& src, std::uint32_t rows, std::uint32_t cols, Dst* out) const {
    std::size_t pos = 0;
    for (std::uint32_t rm = rows; rm != 0; rm &= rm - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rm));
      for (std::uint32_t cm = cols; cm != 0; cm &= cm - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(cm));
        out[pos++] = Dst(src[i * n_ + j]);
      }
    }
  }

  std::size_t n_;
  FieldSpec field_;
  std::vector<std::uint64_t> residues_;
  std::vector<BigInt> big_;
  std::vector<std::int64_t> small_;
  bool small_ok_ = false;
  double max_log2_ = 0.0;
};

namespace detail {

inline void check_minor_sets(const SymMatrix& b, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() != b.order() || cols.universe() != b.order()) {
    throw DimensionError("index sets must range over {1.." + std::to_string(b.order()) + "}");
  }
  if (rows.size() != cols.size()) throw DimensionError("minor needs |rows| = |cols|");
}

/// Reduced row echelon form over Scalars; returns pivot columns (0-based).
/// Only the first `pivot_cols` columns are eligible as pivots.
inline std::vector<std::size_t> rref(std::vector<Scalar>& a, std::size_t rows, std::size_t cols, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    }
    const Scalar inv = a[r * cols + c].inv();
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c].is_zero()) continue;
      const Scalar f = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Exact det B[rows, cols]: Bareiss when every entry is an integer (or the
/// field is GF(p)), fraction elimination otherwise.
inline Scalar minor_det(const SymMatrix& b, const IndexSet& rows, const IndexSet& cols) {
  detail::check_minor_sets(b, rows, cols);
  const std::size_t k = rows.size();
  const auto& f = b.field();
  if (k == 0) return Scalar::one(f);
  const auto r = rows.members();
  const auto c = cols.members();
  if (f.is_prime_field()) {
    std::vector<std::uint64_t> buf;
    buf.reserve(k * k);
    for (auto i : r) {
      for (auto j : c) buf.push_back(b(i, j).residue());
    }
    return Scalar::residue(f, kernels::determinant_mod(std::span(buf), k, f.modulus()));
  }
  bool integral = true;
  for (auto i : r) {
    for (auto j : c) integral = integral && b(i, j).is_integer();
  }
  if (integral) {
    std::vector<BigInt> buf;
    buf.reserve(k * k);
    for (auto i : r) {
      for (auto j : c) buf.push_back(b(i, j).numerator());
    }
    return Scalar::from_bigint(f, kernels::bareiss_determinant<BigInt>(std::span(buf), k));
  }
  std::vector<BigRational> buf;
  buf.reserve(k * k);
  for (auto i : r) {
    for (auto j : c) buf.push_back(b(i, j).value());
  }
  return Scalar::rational(kernels::determinant_fraction(std::span(buf), k));
}

inline Scalar det(const SymMatrix& b) {
  const auto full = IndexSet::full(b.order());
  return minor_det(b, full, full);
}

/// Laplace-expansion determinant of B[rows, cols]; an oracle for minor_det.
inline Scalar det_cofactor(const SymMatrix& b, const IndexSet& rows, const IndexSet& cols) {
  detail::check_minor_sets(b, rows, cols);
  const std::size_t k = rows.size();
  if (k > 8) throw DimensionError("det_cofactor is limited to order 8");
  const auto& f = b.field();
  const auto r = rows.members();
  const auto c = cols.members();
  if (f.is_prime_field()) {
    std::vector<BigInt> buf;
    for (auto i : r) {
      for (auto j : c) buf.emplace_back(b(i, j).residue());
    }
    return Scalar::from_bigint(f, kernels::cofactor_determinant<BigInt>(std::span<const BigInt>(buf), k));
  }
  std::vector<BigRational> buf;
  for (auto i : r) {
    for (auto j : c) buf.push_back(b(i, j).value());
  }
  return Scalar::rational(kernels::cofactor_determinant<BigRational>(std::span<const BigRational>(buf), k));
}

inline Scalar det_cofactor(const SymMatrix& b) {
  const auto full = IndexSet::full(b.order());
  return det_cofactor(b, full, full);
}

inline std::size_t rank(const SymMatrix& b) {
  if (b.order() == 0) return 0;
  return MinorEvaluator(b).rank();
}

/// Rank of the rectangular submatrix B[rows, cols].
inline std::size_t submatrix_rank(const SymMatrix& b, const IndexSet& rows, const IndexSet& cols) {
  return MinorEvaluator(b).rank(rows.mask(), cols.mask());
}

namespace detail {

inline std::optional<std::vector<Scalar>> invert_grid(const std::vector<Scalar>& grid, std::size_t k, const FieldSpec& f) {
  std::vector<Scalar> aug(k * 2 * k, Scalar::zero(f));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i * 2 * k + j] = grid[i * k + j];
    aug[i * 2 * k + k + i] = Scalar::one(f);
  }
  if (rref(aug, k, 2 * k, k).size() < k) return std::nullopt;
  std::vector<Scalar> inv(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) inv[i * k + j] = aug[i * 2 * k + k + j];
  }
  return inv;
}

}  // namespace detail

inline SymMatrix inverse(const SymMatrix& b) {
  auto inv = detail::invert_grid(b.entries(), b.order(), b.field());
  if (!inv) throw SingularError("matrix is singular");
  return SymMatrix(b.field(), b.order(), std::move(*inv));
}

/// B / B[gamma], with the complement's indices (increasing) as labels.
struct SchurComplement {
  SymMatrix matrix;
  std::vector<std::size_t> labels;

  /// Maps a set of inherited labels to positions in `matrix`.
  IndexSet local(const IndexSet& inherited) const {
    IndexSet out(labels.size());
    for (auto i : inherited.members()) {
      bool found = false;
      for (std::size_t p = 0; p < labels.size(); ++p) {
        if (labels[p] == i) {
          out.insert(p + 1);
          found = true;
        }
      }
      if (!found) throw std::out_of_range("index " + std::to_string(i) + " is not a label of the complement");
    }
    return out;
  }
};

inline SchurComplement schur_complement(const SymMatrix& b, const IndexSet& gamma) {
  if (gamma.universe() != b.order()) throw DimensionError("gamma must range over {1.." + std::to_string(b.order()) + "}");
  const auto& f = b.field();
  const auto g = gamma.members();
  const auto rest = gamma.complement().members();
  const std::size_t k = g.size();
  std::vector<Scalar> pivot;
  for (auto i : g) {
    for (auto j : g) pivot.push_back(b(i, j));
  }
  auto inv = detail::invert_grid(pivot, k, f);
  if (!inv) throw SingularError("det B[" + gamma.to_string() + "] = 0");
  const std::size_t m = rest.size();
  // X = B[gamma]^{-1} B[gamma, rest]
  std::vector<Scalar> x(k * m, Scalar::zero(f));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < m; ++c) {
      Scalar acc = Scalar::zero(f);
      for (std::size_t t = 0; t < k; ++t) acc += (*inv)[a * k + t] * b(g[t], rest[c]);
      x[a * m + c] = acc;
    }
  }
  std::vector<Scalar> out(m * m, Scalar::zero(f));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r; c < m; ++c) {
      Scalar acc = b(rest[r], rest[c]);
      for (std::size_t a = 0; a < k; ++a) acc -= b(rest[r], g[a]) * x[a * m + c];
      out[r * m + c] = acc;
      out[c * m + r] = acc;
    }
  }
  return SchurComplement{SymMatrix(f, m, std::move(out)), rest};
}

inline SymMatrix direct_sum(const SymMatrix& b, const SymMatrix& c) {
  if (!(b.field() == c.field())) throw FieldError("direct sum of matrices over different fields");
  const std::size_t n = b.order() + c.order();
  std::vector<Scalar> e(n * n, Scalar::zero(b.field()));
  for (std::size_t i = 0; i < b.order(); ++i) {
    for (std::size_t j = 0; j < b.order(); ++j) e[i * n + j] = b.at0(i, j);
  }
  const std::size_t off = b.order();
  for (std::size_t i = 0; i < c.order(); ++i) {
    for (std::size_t j = 0; j < c.order(); ++j) e[(off + i) * n + off + j] = c.at0(i, j);
  }
  return SymMatrix(b.field(), n, std::move(e));
}

/// [[B, y], [y^T, t]]
inline SymMatrix border(const SymMatrix& b, const std::vector<Scalar>& y, const Scalar& t) {
  if (y.size() != b.order()) throw DimensionError("border vector length differs from order");
  const std::size_t n = b.order() + 1;
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < b.order(); ++i) {
    for (std::size_t j = 0; j < b.order(); ++j) e.push_back(b.at0(i, j));
    e.push_back(y[i]);
  }
  for (const auto& v : y) e.push_back(v);
  e.push_back(t);
  return SymMatrix(b.field(), n, std::move(e));
}

inline std::vector<Scalar> multiply(const SymMatrix& b, const std::vector<Scalar>& x) {
  if (x.size() != b.order()) throw DimensionError("vector length differs from order");
  std::vector<Scalar> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < b.order(); ++i) {
    Scalar acc = Scalar::zero(b.field());
    for (std::size_t j = 0; j < b.order(); ++j) acc += b.at0(i, j) * x[j];
    out.push_back(acc);
  }
  return out;
}

inline Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionError("dot product of different lengths");
  if (a.empty()) throw DimensionError("dot product of empty vectors");
  Scalar acc = Scalar::zero(a.front().field());
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Some x with Bx = y, or nullopt when y is not in the column space of B.
inline std::optional<std::vector<Scalar>> solve_in_column_space(const SymMatrix& b, const std::vector<Scalar>& y) {
  const std::size_t n = b.order();
  if (y.size() != n) throw DimensionError("right-hand side length differs from order");
  const auto& f = b.field();
  std::vector<Scalar> aug;
  aug.reserve(n * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.push_back(b.at0(i, j));
    aug.push_back(y[i]);
  }
  const auto pivots = detail::rref(aug, n, n + 1, n);
  for (std::size_t r = pivots.size(); r < n; ++r) {
    if (!aug[r * (n + 1) + n].is_zero()) return std::nullopt;
  }
  std::vector<Scalar> x(n, Scalar::zero(f));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r * (n + 1) + n];
  return x;
}

struct StructureFlags {
  bool is_diagonal = true;
  bool has_zero_row = false;
  IndexSet zero_rows;
};

inline StructureFlags structure_flags(const SymMatrix& b) {
  StructureFlags out;
  out.zero_rows = IndexSet(b.order());
  for (std::size_t i = 1; i <= b.order(); ++i) {
    bool zero_row = true;
    for (std::size_t j = 1; j <= b.order(); ++j) {
      if (b(i, j).is_zero()) continue;
      zero_row = false;
      if (i != j) out.is_diagonal = false;
    }
    if (zero_row) out.zero_rows.insert(i);
  }
  out.has_zero_row = !out.zero_rows.empty();
  return out;
}

}  // namespace aprseq
