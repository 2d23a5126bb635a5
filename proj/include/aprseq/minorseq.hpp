#pragma once

// Minor enumeration by order and the rank characteristic sequences built on
// it: apr (almost-principal minors), epr (principal minors) and qpr (both).

#include <string>
#include <string_view>
#include <vector>

#include "aprseq/index_set.hpp"
#include "aprseq/symmatrix.hpp"

namespace aprseq {

enum class Letter : char { A = 'A', N = 'N', S = 'S' };

enum class SeqKind { apr, epr, qpr };

inline const char* to_string(SeqKind k) {
  switch (k) {
    case SeqKind::apr: return "apr";
    case SeqKind::epr: return "epr";
    case SeqKind::qpr: return "qpr";
  }
  return "?";
}

/// A word over {A, N, S} describing a matrix of order order_n. APR words have
/// length order_n - 1 (so order_n >= 2); EPR and QPR words have length order_n.
class CharSeq {
 public:
  CharSeq(SeqKind kind, std::size_t order_n, std::string word) : kind_(kind), order_n_(order_n), word_(std::move(word)) {
    for (char c : word_) {
      if (c != 'A' && c != 'N' && c != 'S') throw ParseError("letter '" + std::string(1, c) + "' is not one of A, N, S");
    }
    const std::size_t expected = kind == SeqKind::apr ? order_n - 1 : order_n;
    if (kind == SeqKind::apr && order_n < 2) throw std::invalid_argument("apr-sequence needs order at least 2");
    if (order_n == 0 || word_.size() != expected) {
      throw std::invalid_argument(std::string(aprseq::to_string(kind)) + " word of length " + std::to_string(word_.size()) +
                                  " does not describe order " + std::to_string(order_n));
    }
  }

  /// Parses an uppercase word; the order is inferred from its length.
  static CharSeq parse(std::string_view word, SeqKind kind = SeqKind::apr) {
    if (word.empty()) throw ParseError("empty sequence");
    for (char c : word) {
      if (c != 'A' && c != 'N' && c != 'S') throw ParseError("invalid letter '" + std::string(1, c) + "' in '" + std::string(word) + "'");
    }
    const std::size_t n = kind == SeqKind::apr ? word.size() + 1 : word.size();
    return CharSeq(kind, n, std::string(word));
  }

  SeqKind kind() const { return kind_; }
  std::size_t order_n() const { return order_n_; }
  std::size_t length() const { return word_.size(); }
  const std::string& word() const { return word_; }
  /// 1-indexed, so letter(k) is a_k.
  Letter letter(std::size_t k) const { return static_cast<Letter>(word_.at(k - 1)); }

  bool contains(Letter l) const { return word_.find(static_cast<char>(l)) != std::string::npos; }

  friend bool operator==(const CharSeq&, const CharSeq&) = default;

 private:
  SeqKind kind_;
  std::size_t order_n_;
  std::string word_;
};

/// 1-based index of the last A or S, or 0 when every letter is N.
inline std::size_t last_nonzero_index(const std::string& word) {
  const auto pos = word.find_last_not_of('N');
  return pos == std::string::npos ? 0 : pos + 1;
}

inline void check_minor_order(std::size_t n, std::size_t k, MinorKind kind) {
  const std::size_t hi = kind == MinorKind::almost_principal ? n - 1 : n;
  if (kind == MinorKind::general) throw std::invalid_argument("enumeration supports principal, almost-principal and quasi-principal minors");
  if (n == 0 || k < 1 || k > hi) {
    throw std::out_of_range(std::string(to_string(kind)) + " minors of order " + std::to_string(k) + " do not exist for n = " +
                            std::to_string(n));
  }
}

/// Visits fn(row_mask, col_mask) for each minor of order k of the given kind.
/// Almost-principal minors come as rows = alpha+{i}, cols = alpha+{j} with
/// i < j (the transpose has the same determinant for symmetric B), alpha in
/// colexicographic order and then (i, j) lexicographic. Quasi-principal
/// enumeration lists the principal minors first. Returns false if fn stopped.
template <class Fn>
bool for_each_minor_mask(std::size_t n, std::size_t k, MinorKind kind, Fn&& fn) {
  if (kind == MinorKind::principal || kind == MinorKind::quasi_principal) {
    if (!for_each_subset_mask(n, k, [&](std::uint32_t s) { return fn(s, s); })) return false;
  }
  if (kind == MinorKind::almost_principal || kind == MinorKind::quasi_principal) {
    if (k + 1 > n) return true;
    return for_each_subset_mask(n, k - 1, [&](std::uint32_t alpha) {
      for (std::size_t i = 0; i < n; ++i) {
        if ((alpha >> i) & 1U) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if ((alpha >> j) & 1U) continue;
          if (!fn(alpha | (std::uint32_t{1} << i), alpha | (std::uint32_t{1} << j))) return false;
        }
      }
      return true;
    });
  }
  return true;
}

inline std::vector<MinorSpec> minors_of_order(std::size_t n, std::size_t k, MinorKind kind) {
  check_minor_order(n, k, kind);
  std::vector<MinorSpec> out;
  for_each_minor_mask(n, k, kind, [&](std::uint32_t r, std::uint32_t c) {
    out.emplace_back(IndexSet::from_mask(n, r), IndexSet::from_mask(n, c));
    return true;
  });
  return out;
}

/// Resolves a letter from a nonzero-test, stopping as soon as both a zero and
/// a nonzero minor have been seen.
template <class NonzeroFn>
Letter resolve_letter(std::size_t n, std::size_t k, MinorKind kind, NonzeroFn&& nonzero) {
  bool seen_zero = false;
  bool seen_nonzero = false;
  for_each_minor_mask(n, k, kind, [&](std::uint32_t r, std::uint32_t c) {
    if (nonzero(r, c)) {
      seen_nonzero = true;
    } else {
      seen_zero = true;
    }
    return !(seen_zero && seen_nonzero);
  });
  if (seen_zero && seen_nonzero) return Letter::S;
  return seen_nonzero ? Letter::A : Letter::N;
}

inline Letter letter(const MinorEvaluator& ev, std::size_t k, MinorKind kind) {
  check_minor_order(ev.order(), k, kind);
  return resolve_letter(ev.order(), k, kind, [&](std::uint32_t r, std::uint32_t c) { return ev.nonzero(r, c); });
}

inline Letter letter(const SymMatrix& b, std::size_t k, MinorKind kind) { return letter(MinorEvaluator(b), k, kind); }

/// Evaluates every minor with minor_det and no early exit.
inline Letter letter_exhaustive(const SymMatrix& b, std::size_t k, MinorKind kind) {
  std::size_t zeros = 0, nonzeros = 0;
  for (const auto& m : minors_of_order(b.order(), k, kind)) {
    if (minor_det(b, m.rows(), m.cols()).is_zero()) {
      ++zeros;
    } else {
      ++nonzeros;
    }
  }
  if (zeros && nonzeros) return Letter::S;
  return nonzeros ? Letter::A : Letter::N;
}

class UndefinedSequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline CharSeq apr_sequence(const MinorEvaluator& ev) {
  const std::size_t n = ev.order();
  if (n < 2) throw UndefinedSequenceError("the apr-sequence of a 1x1 matrix is undefined");
  std::string word;
  for (std::size_t k = 1; k < n; ++k) word.push_back(static_cast<char>(letter(ev, k, MinorKind::almost_principal)));
  return CharSeq(SeqKind::apr, n, std::move(word));
}

inline CharSeq epr_sequence(const MinorEvaluator& ev) {
  std::string word;
  for (std::size_t k = 1; k <= ev.order(); ++k) word.push_back(static_cast<char>(letter(ev, k, MinorKind::principal)));
  return CharSeq(SeqKind::epr, ev.order(), std::move(word));
}

inline CharSeq qpr_sequence(const MinorEvaluator& ev) {
  std::string word;
  for (std::size_t k = 1; k <= ev.order(); ++k) word.push_back(static_cast<char>(letter(ev, k, MinorKind::quasi_principal)));
  return CharSeq(SeqKind::qpr, ev.order(), std::move(word));
}

inline CharSeq apr_sequence(const SymMatrix& b) { return apr_sequence(MinorEvaluator(b)); }
inline CharSeq epr_sequence(const SymMatrix& b) { return epr_sequence(MinorEvaluator(b)); }
inline CharSeq qpr_sequence(const SymMatrix& b) { return qpr_sequence(MinorEvaluator(b)); }

/// Order of a largest nonsingular almost-principal submatrix; 0 if none.
inline std::size_t ap_rank(const MinorEvaluator& ev) {
  const std::size_t n = ev.order();
  for (std::size_t k = n > 0 ? n - 1 : 0; k >= 1; --k) {
    const bool found = !for_each_minor_mask(n, k, MinorKind::almost_principal,
                                            [&](std::uint32_t r, std::uint32_t c) { return !ev.nonzero(r, c); });
    if (found) return k;
  }
  return 0;
}

inline std::size_t ap_rank(const SymMatrix& b) { return ap_rank(MinorEvaluator(b)); }

/// A principal index set gamma with det B[gamma] != 0 and |gamma| maximal
/// (empty for the zero matrix). Searches from the largest order down.
inline IndexSet principal_rank_witness(const MinorEvaluator& ev) {
  const std::size_t n = ev.order();
  for (std::size_t k = n; k >= 1; --k) {
    std::uint32_t hit = 0;
    const bool found = !for_each_subset_mask(n, k, [&](std::uint32_t s) {
      if (!ev.nonzero(s, s)) return true;
      hit = s;
      return false;
    });
    if (found) return IndexSet::from_mask(n, hit);
  }
  return IndexSet(n);
}

inline IndexSet principal_rank_witness(const SymMatrix& b) { return principal_rank_witness(MinorEvaluator(b)); }

}  // namespace aprseq
