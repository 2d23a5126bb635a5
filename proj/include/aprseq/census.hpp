#pragma once

// Exhaustive enumeration of symmetric matrices over GF(p) with the attainable
// apr/epr/qpr words, per-matrix consistency checks and word-level checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aprseq/attain.hpp"
#include "aprseq/kernels.hpp"
#include "aprseq/minorseq.hpp"
#include "aprseq/symmatrix.hpp"

namespace aprseq {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("census needs " + std::to_string(required) + " matrices, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t default_census_budget = std::uint64_t{1} << 24;

/// p^(n(n+1)/2), or nullopt past 2^63.
inline std::optional<std::uint64_t> symmetric_count(std::uint64_t p, std::size_t n) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n * (n + 1) / 2; ++i) {
    if (count > (std::uint64_t{1} << 63) / p) return std::nullopt;
    count *= p;
  }
  return count;
}

/// Odometer over the free entries b_ij (i <= j) in row-major order; the last
/// free entry b_nn is the fastest-moving digit.
class SymmetricEnumerator {
 public:
  SymmetricEnumerator(const FieldSpec& field, std::size_t n, std::uint64_t budget = default_census_budget)
      : field_(field), n_(n) {
    if (!field.is_prime_field()) throw FieldError("enumeration needs a prime field");
    if (n < 1) throw DimensionError("order must be at least 1");
    const auto c = symmetric_count(field.modulus(), n);
    if (!c || *c > budget) throw BudgetExceeded(c.value_or(~std::uint64_t{0}), budget);
    count_ = *c;
  }

  std::uint64_t count() const { return count_; }
  std::size_t order() const { return n_; }
  const FieldSpec& field() const { return field_; }

  /// Residues of matrix `index`, row-major n x n.
  void decode(std::uint64_t index, std::uint64_t* out) const {
    const std::uint64_t p = field_.modulus();
    for (std::size_t i = n_; i-- > 0;) {
      for (std::size_t j = n_; j-- > i;) {
        const std::uint64_t v = index % p;
        index /= p;
        out[i * n_ + j] = v;
        out[j * n_ + i] = v;
      }
    }
  }

  SymMatrix matrix(std::uint64_t index) const {
    std::vector<std::uint64_t> r(n_ * n_);
    decode(index, r.data());
    std::vector<Scalar> e;
    for (auto v : r) e.push_back(Scalar::residue(field_, v));
    return SymMatrix(field_, n_, std::move(e));
  }

 private:
  FieldSpec field_;
  std::size_t n_;
  std::uint64_t count_ = 0;
};

/// Calls fn(index, matrix) for every symmetric matrix in odometer order.
template <class Fn>
void for_each_symmetric(const FieldSpec& field, std::size_t n, Fn&& fn, std::uint64_t budget = default_census_budget) {
  SymmetricEnumerator en(field, n, budget);
  for (std::uint64_t i = 0; i < en.count(); ++i) fn(i, en.matrix(i));
}

inline std::vector<SymMatrix> enumerate_symmetric(const FieldSpec& field, std::size_t n, std::uint64_t budget = default_census_budget) {
  std::vector<SymMatrix> out;
  for_each_symmetric(field, n, [&](std::uint64_t, const SymMatrix& b) { out.push_back(b); }, budget);
  return out;
}

/// Every minor det B[R, C] with |R| = |C| over GF(p), filled level by level
/// by Laplace expansion along the smallest row of R. The plan is built once
/// per order and reused for every matrix of a census.
class MinorTable {
 public:
  static constexpr std::size_t max_order = 8;

  MinorTable(std::size_t n, std::uint64_t p) : n_(n), p_(p) {
    if (n < 1 || n > max_order) throw DimensionError("minor table supports orders 1 through 8");
    if (p >= (std::uint64_t{1} << 27)) throw FieldError("minor table needs p < 2^27");
    values_.assign(std::size_t{1} << (2 * n), 0);
    for (std::size_t k = 2; k <= n; ++k) {
      for_each_subset_mask(n, k, [&](std::uint32_t r) {
        const auto r0 = static_cast<std::uint32_t>(std::countr_zero(r));
        const std::uint32_t rest = r & (r - 1);
        for_each_subset_mask(n, k, [&](std::uint32_t c) {
          Target t{slot(r, c), static_cast<std::uint32_t>(terms_.size()), 0};
          std::uint32_t pos = 0;
          for (std::uint32_t cm = c; cm != 0; cm &= cm - 1, ++pos) {
            const auto col = static_cast<std::uint32_t>(std::countr_zero(cm));
            terms_.push_back({r0 * static_cast<std::uint32_t>(n) + col, slot(rest, c & ~(1U << col)), (pos & 1U) != 0});
          }
          t.term_end = static_cast<std::uint32_t>(terms_.size());
          targets_.push_back(t);
          return true;
        });
        return true;
      });
    }
  }

  std::size_t order() const { return n_; }

  void fill(const std::uint64_t* entries) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) values_[slot(1U << i, 1U << j)] = static_cast<std::uint32_t>(entries[i * n_ + j]);
    }
    if (p_ == 2) {
      for (const auto& t : targets_) {
        std::uint32_t acc = 0;
        for (std::uint32_t q = t.term_begin; q < t.term_end; ++q) {
          acc ^= static_cast<std::uint32_t>(entries[terms_[q].entry]) & values_[terms_[q].sub];
        }
        values_[t.slot] = acc;
      }
      return;
    }
    // p < 2^27 and at most eight terms per minor keep both sums below 2^57
    const std::uint64_t wrap = p_ * p_ * 8;
    for (const auto& t : targets_) {
      std::uint64_t plus = 0, minus = 0;
      for (std::uint32_t q = t.term_begin; q < t.term_end; ++q) {
        const Term& term = terms_[q];
        const std::uint64_t prod = entries[term.entry] * values_[term.sub];
        (term.negative ? minus : plus) += prod;
      }
      values_[t.slot] = static_cast<std::uint32_t>((plus + (wrap - minus)) % p_);
    }
  }

  std::uint32_t det(std::uint32_t rows, std::uint32_t cols) const { return values_[slot(rows, cols)]; }
  bool nonzero(std::uint32_t rows, std::uint32_t cols) const { return values_[slot(rows, cols)] != 0; }

 private:
  struct Term {
    std::uint32_t entry;
    std::uint32_t sub;
    bool negative;
  };
  struct Target {
    std::uint32_t slot;
    std::uint32_t term_begin;
    std::uint32_t term_end;
  };

  std::uint32_t slot(std::uint32_t r, std::uint32_t c) const { return (r << n_) | c; }

  std::size_t n_;
  std::uint64_t p_;
  std::vector<Term> terms_;
  std::vector<Target> targets_;
  std::vector<std::uint32_t> values_;
};

/// Words encoded in base 3 with A = 0, N = 1, S = 2 and the first letter most significant.
inline int letter_digit(Letter l) { return l == Letter::A ? 0 : (l == Letter::N ? 1 : 2); }
inline Letter digit_letter(int d) { return d == 0 ? Letter::A : (d == 1 ? Letter::N : Letter::S); }

inline std::string decode_word(std::uint32_t code, std::size_t len) {
  std::string w(len, 'A');
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<char>(digit_letter(static_cast<int>(code % 3)));
    code /= 3;
  }
  return w;
}

struct WordStat {
  std::uint64_t count = 0;
  std::uint64_t witness = 0;  // smallest odometer index attaining the word
};

struct CensusViolation {
  std::string check;
  std::string detail;
  std::optional<std::uint64_t> witness;
};

struct CensusReport {
  FieldSpec field;
  std::size_t n = 0;
  std::uint64_t matrix_count = 0;
  std::uint64_t visited = 0;
  bool deduplicated = false;
  std::map<std::string, WordStat> apr;
  std::map<std::string, WordStat> epr;
  std::map<std::string, WordStat> qpr;
  std::vector<CensusViolation> violations;

  bool ok() const { return violations.empty(); }
};

struct CensusOptions {
  std::uint64_t budget = default_census_budget;
  unsigned threads = 1;
  /// Visit only matrices whose diagonal is non-decreasing. Every matrix is
  /// permutation-similar to one of these, so the word sets are unchanged;
  /// counts then refer to visited matrices only.
  bool sorted_diagonal_only = false;
};

namespace detail {

struct LetterPlan {
  std::vector<std::vector<std::uint32_t>> principal;  // [k] -> packed (rows, cols) pairs
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> almost;

  explicit LetterPlan(std::size_t n) : principal(n + 1), almost(n + 1) {
    for (std::size_t k = 1; k <= n; ++k) {
      for_each_subset_mask(n, k, [&](std::uint32_t s) {
        principal[k].push_back(s);
        return true;
      });
      if (k < n) {
        for_each_minor_mask(n, k, MinorKind::almost_principal, [&](std::uint32_t r, std::uint32_t c) {
          almost[k].emplace_back(r, c);
          return true;
        });
      }
    }
  }
};

struct Tally {
  std::vector<WordStat> apr, epr, qpr;
  std::vector<CensusViolation> violations;
  std::uint64_t visited = 0;
};

inline void record(std::vector<WordStat>& v, std::uint32_t code, std::uint64_t index) {
  WordStat& s = v[code];
  if (s.count == 0 || index < s.witness) s.witness = index;
  ++s.count;
}

inline int letter_of(bool any_zero, bool any_nonzero) { return any_zero && any_nonzero ? 2 : (any_nonzero ? 0 : 1); }

inline std::size_t ipow3(std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= 3;
  return r;
}

inline void census_range(const SymmetricEnumerator& en, const LetterPlan& plan, bool sorted_only, std::uint64_t lo, std::uint64_t hi,
                         Tally& tally) {
  const std::size_t n = en.order();
  const std::uint64_t p = en.field().modulus();
  MinorTable table(n, p);
  std::vector<std::uint64_t> entries(n * n), scratch(n * n);
  tally.apr.assign(ipow3(n > 1 ? n - 1 : 0), {});
  tally.epr.assign(ipow3(n), {});
  tally.qpr.assign(ipow3(n), {});
  std::vector<int> a(n + 1), e(n + 1), q(n + 1);

  auto violation = [&](const char* check, const std::string& why, std::uint64_t index) {
    if (tally.violations.size() < 64) tally.violations.push_back({check, why, index});
  };

  for (std::uint64_t index = lo; index < hi; ++index) {
    en.decode(index, entries.data());
    if (sorted_only) {
      bool sorted = true;
      for (std::size_t i = 1; i < n && sorted; ++i) sorted = entries[(i - 1) * n + (i - 1)] <= entries[i * n + i];
      if (!sorted) continue;
    }
    ++tally.visited;
    table.fill(entries.data());

    std::size_t last_q = 0, principal_rank = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      bool pz = false, pnz = false;
      for (auto s : plan.principal[k]) {
        (table.nonzero(s, s) ? pnz : pz) = true;
        if (pz && pnz) break;
      }
      if (pnz) principal_rank = k;
      e[k] = letter_of(pz, pnz);
      if (k < n) {
        bool az = false, anz = false;
        for (const auto& [r, c] : plan.almost[k]) {
          (table.nonzero(r, c) ? anz : az) = true;
          if (az && anz) break;
        }
        a[k] = letter_of(az, anz);
        q[k] = letter_of(pz || az, pnz || anz);
        // quasi-principal letter from its two halves
        const bool consistent = (q[k] == 1) == (e[k] == 1 && a[k] == 1) && (q[k] == 0) == (e[k] == 0 && a[k] == 0);
        if (!consistent) violation("qpr-consistency", "order " + std::to_string(k), index);
      } else {
        q[k] = e[k];
      }
      if (q[k] != 1) last_q = k;
    }

    std::uint32_t acode = 0, ecode = 0, qcode = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (k < n) acode = acode * 3 + static_cast<std::uint32_t>(a[k]);
      ecode = ecode * 3 + static_cast<std::uint32_t>(e[k]);
      qcode = qcode * 3 + static_cast<std::uint32_t>(q[k]);
    }
    if (n >= 2) record(tally.apr, acode, index);
    record(tally.epr, ecode, index);
    record(tally.qpr, qcode, index);

    // apr: two consecutive N force N from there on; qpr: one N forces N from there on
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (a[k] == 1 && a[k + 1] == 1) {
        for (std::size_t j = k + 2; j < n; ++j) {
          if (a[j] != 1) violation("apr-NN-tail", "NN at " + std::to_string(k) + " followed by a non-N letter", index);
        }
        break;
      }
    }
    for (std::size_t k = 1; k <= n; ++k) {
      if (q[k] != 1) continue;
      for (std::size_t j = k + 1; j <= n; ++j) {
        if (q[j] != 1) violation("qpr-N-tail", "N at " + std::to_string(k) + " followed by a non-N letter", index);
      }
      break;
    }
    std::copy(entries.begin(), entries.end(), scratch.begin());
    const std::size_t r = kernels::rank_mod(std::span(scratch), n, n, p);
    if (r != last_q) violation("rank-qpr", "rank " + std::to_string(r) + " vs last A/S of qpr at " + std::to_string(last_q), index);
    if (r != principal_rank) violation("principal-rank", "rank " + std::to_string(r) + " vs principal rank " + std::to_string(principal_rank), index);
  }
}

inline void merge_words(std::map<std::string, WordStat>& out, const std::vector<WordStat>& v, std::size_t len) {
  for (std::size_t code = 0; code < v.size(); ++code) {
    if (v[code].count == 0) continue;
    WordStat& s = out[decode_word(static_cast<std::uint32_t>(code), len)];
    if (s.count == 0 || v[code].witness < s.witness) s.witness = v[code].witness;
    s.count += v[code].count;
  }
}

}  // namespace detail

/// Word-level checks that hold over every field: the necessary condition (n >= 3),
/// no NA, the NN tail, NS only after a leading SN, and no length-1 S.
inline std::vector<CensusViolation> word_level_violations(const std::map<std::string, WordStat>& apr, std::size_t n) {
  std::vector<CensusViolation> out;
  for (const auto& [w, stat] : apr) {
    const CharSeq seq(SeqKind::apr, n, w);
    const auto scan = scan_patterns(w);
    if (n == 2 && w == "S") out.push_back({"length-1-S", "S observed for a 2x2 matrix", stat.witness});
    if (n >= 3 && !check_necessary(seq).attainable) out.push_back({"necessary-condition", w, stat.witness});
    if (scan.has_NA) out.push_back({"NA", w, stat.witness});
    if (scan.has_NN) {
      const auto nn = w.find("NN");
      if (w.find_first_not_of('N', nn) != std::string::npos) out.push_back({"NN-tail", w, stat.witness});
    }
    if (scan.has_NS && w.compare(0, 2, "SN") != 0) out.push_back({"NS-start", w, stat.witness});
  }
  return out;
}

inline CensusReport apr_census(const FieldSpec& field, std::size_t n, const CensusOptions& opts = {}) {
  SymmetricEnumerator en(field, n, opts.budget);
  if (n > MinorTable::max_order) throw DimensionError("census supports orders up to 8");
  const detail::LetterPlan plan(n);
  const unsigned threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(opts.threads == 0 ? std::thread::hardware_concurrency() : opts.threads, en.count())));
  std::vector<detail::Tally> tallies(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = en.count() * t / threads, hi = en.count() * (t + 1) / threads;
    auto job = [&, lo, hi, t] { detail::census_range(en, plan, opts.sorted_diagonal_only, lo, hi, tallies[t]); };
    if (t + 1 == threads) {
      job();
    } else {
      pool.emplace_back(job);
    }
  }
  for (auto& th : pool) th.join();

  CensusReport rep;
  rep.field = field;
  rep.n = n;
  rep.matrix_count = en.count();
  rep.deduplicated = opts.sorted_diagonal_only;
  for (const auto& t : tallies) {
    rep.visited += t.visited;
    if (n >= 2) detail::merge_words(rep.apr, t.apr, n - 1);
    detail::merge_words(rep.epr, t.epr, n);
    detail::merge_words(rep.qpr, t.qpr, n);
    rep.violations.insert(rep.violations.end(), t.violations.begin(), t.violations.end());
  }
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const CensusViolation& x, const CensusViolation& y) { return x.witness < y.witness; });
  auto words = word_level_violations(rep.apr, n);
  rep.violations.insert(rep.violations.end(), words.begin(), words.end());
  return rep;
}

struct CrossCheck {
  std::size_t observed_no_A = 0;
  std::size_t predicted_no_A = 0;
  std::vector<CensusViolation> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Compares the observed apr words with the word-level theory: every observed
/// word passes the necessary condition, and the observed words over {S, N}
/// are exactly those with an attainable shape.
inline CrossCheck census_cross_check(const CensusReport& rep) {
  CrossCheck out;
  if (rep.n < 2) return out;
  const std::size_t len = rep.n - 1;
  for (const auto& [w, stat] : rep.apr) {
    const CharSeq seq(SeqKind::apr, rep.n, w);
    if (len >= 2 && !check_necessary(seq).attainable) out.mismatches.push_back({"necessary-condition", w, stat.witness});
    if (seq.contains(Letter::A)) continue;
    ++out.observed_no_A;
    if (classify_no_A(seq).form == FormKind::NotNoA) out.mismatches.push_back({"no-A-shape", "observed " + w + " has no attainable shape", stat.witness});
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << len); ++mask) {
    std::string w(len, 'N');
    for (std::size_t i = 0; i < len; ++i) {
      if ((mask >> (len - 1 - i)) & 1U) w[i] = 'S';
    }
    if (classify_no_A(CharSeq(SeqKind::apr, rep.n, w)).form == FormKind::NotNoA) continue;
    ++out.predicted_no_A;
    if (!rep.apr.contains(w)) out.mismatches.push_back({"no-A-shape", "shape-conforming " + w + " not observed", std::nullopt});
  }
  return out;
}

inline CrossCheck census_cross_check(const FieldSpec& field, std::size_t n, const CensusOptions& opts = {}) {
  return census_cross_check(apr_census(field, n, opts));
}

}  // namespace aprseq
