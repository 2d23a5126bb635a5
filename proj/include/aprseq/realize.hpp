#pragma once

// Witness construction over the rationals for every attainable apr word:
// canonical 0/1 families where they apply, otherwise explicit 3x3 seeds grown
// by random bordering. Every step is recomputed and resampled on mismatch, so
// a returned matrix is always verified.

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aprseq/attain.hpp"
#include "aprseq/minorseq.hpp"
#include "aprseq/random.hpp"
#include "aprseq/symmatrix.hpp"

namespace aprseq {

class RejectedSequence : public std::invalid_argument {
 public:
  RejectedSequence(const std::string& word, const std::string& reason)
      : std::invalid_argument("'" + word + "' is not attainable over the rationals: " + reason), reason_(reason) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

class RetryExhausted : public std::runtime_error {
 public:
  RetryExhausted(const std::string& word, std::size_t order, std::size_t attempts)
      : std::runtime_error("realizing '" + word + "': bordering to order " + std::to_string(order) + " failed after " +
                           std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}
  std::size_t attempts() const { return attempts_; }

 private:
  std::size_t attempts_;
};

/// One of the explicit 3x3 matrices with apr-sequence `pair`.
inline SymMatrix seed_3x3(const std::string& pair, bool singular, const FieldSpec& f = FieldSpec::rationals()) {
  using Grid = std::vector<std::vector<std::int64_t>>;
  Grid g;
  if (!singular) {
    if (pair == "AA") g = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    if (pair == "AS") g = {{1, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    if (pair == "SA") g = {{1, 1, 0}, {1, 1, 1}, {0, 1, 1}};
    if (pair == "SS") g = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  } else {
    if (pair == "AA") g = {{2, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    if (pair == "AS") g = {{1, 1, 1}, {1, 1, 1}, {1, 1, 0}};
    if (pair == "SA") g = {{1, 1, 0}, {1, 2, 1}, {0, 1, 1}};
    if (pair == "SS") g = {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  }
  if (g.empty()) throw std::invalid_argument("seed pair must be one of AA, AS, SA, SS (got '" + pair + "')");
  return SymMatrix::from_ints(f, g);
}

enum class BorderMode { nonsingular, singular, rank_preserving };

inline const char* to_string(BorderMode m) {
  switch (m) {
    case BorderMode::nonsingular: return "nonsingular";
    case BorderMode::singular: return "singular";
    case BorderMode::rank_preserving: return "rank_preserving";
  }
  return "?";
}

/// Borders B with y = Bx for a random integer vector x and t = x^T B x (+1 in
/// nonsingular mode). For S coordinate `excluded` of x is 0, which puts y in
/// the span of the other columns of B (columns 2..n by default). The letter is
/// ignored in rank-preserving mode.
inline SymMatrix border_probe(const SymMatrix& b, Letter next, BorderMode mode, Rng& rng, std::uint64_t bound = 100,
                              std::size_t excluded = 1) {
  if (b.order() == 0) throw std::invalid_argument("border_probe needs a matrix of order at least 1");
  if (mode != BorderMode::rank_preserving) {
    if (next == Letter::N) throw std::invalid_argument("nonsingular and singular bordering target A or S");
    if (det(b).is_zero()) throw std::invalid_argument(std::string(to_string(mode)) + " bordering needs a nonsingular matrix");
  }
  const auto& f = b.field();
  const std::size_t n = b.order();
  const bool s_mode = mode != BorderMode::rank_preserving && next == Letter::S;
  if (s_mode && n < 2) throw std::invalid_argument("S-bordering needs order at least 2");
  if (excluded < 1 || excluded > n) throw std::out_of_range("excluded column outside 1..n");
  const auto lim = static_cast<std::int64_t>(bound);
  std::vector<Scalar> x;
  for (;;) {
    x.clear();
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t v = (s_mode && i + 1 == excluded) ? 0 : uniform_int(rng, -lim, lim);
      nonzero = nonzero || v != 0;
      x.push_back(Scalar::from_int(f, v));
    }
    // B is nonsingular in the modes that need y != 0, so x != 0 suffices
    if (mode != BorderMode::singular || nonzero) break;
  }
  const auto y = multiply(b, x);
  Scalar t = dot(x, y);
  if (mode == BorderMode::nonsingular) t += Scalar::one(f);
  return border(b, y, t);
}

struct RealizeOptions {
  std::uint64_t seed = 1;
  std::uint64_t entry_bound = 100;
  std::size_t max_retries = 32;
};

struct Realization {
  SymMatrix matrix;
  /// How the witness was obtained, e.g. "zero", "no_A", "ones", "seed+nonsingular", "seed+singular+rank_preserving".
  std::string path;
  /// Extra samples drawn beyond the first attempt, summed over all steps.
  std::size_t retries = 0;
};

namespace detail {

/// Grows `current` by one bordering step so that its apr-sequence becomes
/// target[0 .. order]; resamples until verified or the budget runs out.
/// S-steps start with y in the span of columns 2..n and move the excluded
/// column on each retry: for some matrices that span forces a minor to vanish
/// (the seed for SA followed by S has y_2 = y_3 for every such y).
inline SymMatrix grow_verified(const SymMatrix& current, const std::string& word, Letter next, BorderMode mode, Rng& rng,
                               const RealizeOptions& opts, std::size_t& retries) {
  const std::size_t order = current.order() + 1;
  const std::string target = word.substr(0, order - 1);
  const std::size_t base_rank = mode == BorderMode::rank_preserving ? rank(current) : 0;
  for (std::size_t attempt = 1; attempt <= opts.max_retries; ++attempt) {
    const std::size_t excluded = (attempt - 1) % current.order() + 1;
    SymMatrix cand = border_probe(current, next, mode, rng, opts.entry_bound, excluded);
    bool ok = apr_sequence(cand).word() == target;
    if (ok && mode == BorderMode::nonsingular) ok = !det(cand).is_zero() && !structure_flags(cand).is_diagonal;
    if (ok && mode == BorderMode::singular) ok = det(cand).is_zero();
    if (ok && mode == BorderMode::rank_preserving) ok = rank(cand) == base_rank;
    if (ok) return cand;
    ++retries;
  }
  throw RetryExhausted(word, order, opts.max_retries);
}

/// Nonsingular witness for a word over {A, S} of length at least 2.
inline SymMatrix nonsingular_chain(const std::string& word, const std::string& full, Rng& rng, const RealizeOptions& opts,
                                   std::size_t& retries) {
  SymMatrix b = seed_3x3(word.substr(0, 2), false);
  for (std::size_t i = 2; i < word.size(); ++i) {
    b = grow_verified(b, full, static_cast<Letter>(word[i]), BorderMode::nonsingular, rng, opts, retries);
  }
  return b;
}

}  // namespace detail

inline Realization realize(const CharSeq& seq, const FieldSpec& field, const RealizeOptions& opts) {
  if (!field.is_rational()) throw FieldError("realization is implemented over the rationals only");
  if (seq.kind() != SeqKind::apr) throw std::invalid_argument("realize expects an apr word");
  if (opts.entry_bound == 0 || opts.max_retries == 0) throw std::invalid_argument("entry_bound and max_retries must be positive");
  const std::string& w = seq.word();
  const Verdict v = check_char0(seq);
  if (!v.attainable) throw RejectedSequence(w, v.reason);

  const std::size_t n = seq.order_n();
  Rng rng(opts.seed);
  Realization out;
  const auto scan = scan_patterns(w);
  const std::size_t head = scan.first_N == 0 ? w.size() : scan.first_N - 1;  // letters before the N tail

  if (w == "A") {
    out.matrix = SymMatrix::ones(field, 2);
    out.path = "ones";
  } else if (head == 0) {
    out.matrix = SymMatrix::zero(field, n);
    out.path = "zero";
  } else if (!scan.contains_A) {
    out.matrix = construct_no_A(seq, field);
    out.path = "no_A";
  } else if (head == 1) {
    out.matrix = SymMatrix::ones(field, n);
    out.path = "ones";
  } else if (head == w.size()) {
    out.matrix = detail::nonsingular_chain(w, w, rng, opts, out.retries);
    out.path = "seed+nonsingular";
  } else {
    const std::string prefix = w.substr(0, head);
    SymMatrix b;
    if (prefix.size() == 2) {
      b = seed_3x3(prefix, true);
      out.path = "seed_singular";
    } else {
      b = detail::nonsingular_chain(prefix.substr(0, prefix.size() - 1), w, rng, opts, out.retries);
      b = detail::grow_verified(b, w, static_cast<Letter>(prefix.back()), BorderMode::singular, rng, opts, out.retries);
      out.path = "seed+nonsingular+singular";
    }
    while (b.order() < n) b = detail::grow_verified(b, w, Letter::N, BorderMode::rank_preserving, rng, opts, out.retries);
    out.path += "+rank_preserving";
    out.matrix = std::move(b);
  }

  if (apr_sequence(out.matrix) != seq) {
    throw std::logic_error("internal error: witness for '" + w + "' has apr-sequence " + apr_sequence(out.matrix).word());
  }
  return out;
}

inline Realization realize(const CharSeq& seq, const RealizeOptions& opts = {}) {
  return realize(seq, FieldSpec::rationals(), opts);
}

/// The i-th word of length len over {A, N, S} in lexicographic order.
inline std::string word_at(std::size_t len, std::size_t index) {
  static const char letters[] = {'A', 'N', 'S'};
  std::string w(len, 'A');
  for (std::size_t i = len; i-- > 0;) {
    w[i] = letters[index % 3];
    index /= 3;
  }
  return w;
}

enum class SweepStatus { realized, rejected, failed };

inline const char* to_string(SweepStatus s) {
  switch (s) {
    case SweepStatus::realized: return "realized";
    case SweepStatus::rejected: return "rejected";
    case SweepStatus::failed: return "failed";
  }
  return "?";
}

struct SweepEntry {
  std::string word;
  SweepStatus status = SweepStatus::failed;
  std::optional<Realization> witness;
  std::string reason;
};

struct SweepReport {
  std::size_t n = 0;
  std::vector<SweepEntry> entries;

  std::size_t count(SweepStatus s) const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const SweepEntry& e) { return e.status == s; }));
  }
};

/// Resolves all 3^(n-1) words for order n. Word i uses the seed derived from
/// (opts.seed, i), so the report does not depend on the thread count.
inline SweepReport realize_all(std::size_t n, const RealizeOptions& opts = {}, unsigned threads = 0) {
  if (n < 2 || n > 8) throw std::out_of_range("realize_all supports orders 2 through 8");
  std::size_t total = 1;
  for (std::size_t i = 1; i < n; ++i) total *= 3;
  SweepReport rep;
  rep.n = n;
  rep.entries.resize(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      SweepEntry& e = rep.entries[i];
      e.word = word_at(n - 1, i);
      const CharSeq seq(SeqKind::apr, n, e.word);
      const Verdict v = check_char0(seq);
      if (!v.attainable) {
        e.status = SweepStatus::rejected;
        e.reason = v.reason;
        continue;
      }
      RealizeOptions o = opts;
      o.seed = derive_seed(opts.seed, i);
      try {
        e.witness = realize(seq, o);
        e.status = SweepStatus::realized;
      } catch (const std::exception& ex) {
        e.status = SweepStatus::failed;
        e.reason = ex.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rep;
}

}  // namespace aprseq
