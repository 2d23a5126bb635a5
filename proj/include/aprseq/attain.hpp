#pragma once

// Word-level attainability classifiers, the canonical 0/1 witness families
// for words without A, and recognition of the three structures a matrix whose
// apr-sequence starts with SN can have.

#include <optional>
#include <string>
#include <vector>

#include "aprseq/minorseq.hpp"
#include "aprseq/symmatrix.hpp"

namespace aprseq {

struct PatternScan {
  bool has_NA = false;
  bool has_NS = false;
  bool has_NN = false;
  bool contains_A = false;
  std::size_t first_N = 0;    // 1-based, 0 if absent
  std::size_t last_nonN = 0;  // 1-based, 0 if absent
  std::size_t first_NA = 0;   // 1-based start of the first NA pair
  std::size_t first_NS = 0;
};

inline PatternScan scan_patterns(const std::string& w) {
  PatternScan s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'A') s.contains_A = true;
    if (w[i] == 'N' && s.first_N == 0) s.first_N = i + 1;
    if (w[i] != 'N') s.last_nonN = i + 1;
    if (i + 1 < w.size() && w[i] == 'N') {
      if (w[i + 1] == 'A' && !s.has_NA) s.has_NA = true, s.first_NA = i + 1;
      if (w[i + 1] == 'S' && !s.has_NS) s.has_NS = true, s.first_NS = i + 1;
      if (w[i + 1] == 'N') s.has_NN = true;
    }
  }
  return s;
}

inline PatternScan scan_patterns(const CharSeq& seq) { return scan_patterns(seq.word()); }

enum class FormKind { AllN, SN_tail, SNS_alternating, SS_then_N, NotNoA };

inline const char* to_string(FormKind f) {
  switch (f) {
    case FormKind::AllN: return "AllN";
    case FormKind::SN_tail: return "SN_tail";
    case FormKind::SNS_alternating: return "SNS_alternating";
    case FormKind::SS_then_N: return "SS_then_N";
    case FormKind::NotNoA: return "NotNoA";
  }
  return "?";
}

/// Pattern text of each attainable shape; "*" marks a block repeated zero or more times.
inline const char* form_pattern(FormKind f) {
  switch (f) {
    case FormKind::AllN: return "NN*";
    case FormKind::SN_tail: return "SNN*";
    case FormKind::SNS_alternating: return "SNS(NS)*N*";
    case FormKind::SS_then_N: return "SSS*N*";
    case FormKind::NotNoA: return "none";
  }
  return "?";
}

/// Shape of a word over {S, N}. Parameters:
///   AllN, SN_tail:    trailing_n = number of N letters
///   SNS_alternating:  ns_repeats = r in S(NS)^r N^q (r >= 1), trailing_n = q
///   SS_then_N:        s_count = number of S letters (>= 2), trailing_n = number of N letters
struct SeqForm {
  FormKind form = FormKind::NotNoA;
  std::size_t trailing_n = 0;
  std::size_t ns_repeats = 0;
  std::size_t s_count = 0;
};

/// S(NS)^r N^q with r >= 0 and q >= 0, or nullopt if the word has another shape.
inline std::optional<std::pair<std::size_t, std::size_t>> match_alternating(const std::string& w) {
  if (w.empty() || w[0] != 'S') return std::nullopt;
  std::size_t i = 1, r = 0;
  while (i + 1 < w.size() && w[i] == 'N' && w[i + 1] == 'S') i += 2, ++r;
  const std::size_t q = w.size() - i;
  for (; i < w.size(); ++i) {
    if (w[i] != 'N') return std::nullopt;
  }
  return std::make_pair(r, q);
}

inline SeqForm classify_no_A(const CharSeq& seq) {
  const std::string& w = seq.word();
  if (seq.kind() != SeqKind::apr) throw std::invalid_argument("classification applies to apr-sequences");
  if (seq.contains(Letter::A)) throw std::invalid_argument("sequence '" + w + "' contains A");
  SeqForm out;
  if (w.find('S') == std::string::npos) {
    out.form = FormKind::AllN;
    out.trailing_n = w.size();
    return out;
  }
  if (w[0] != 'S' || w.size() < 2) return out;
  if (w[1] == 'N') {
    const auto m = match_alternating(w);
    if (!m) return out;
    out.form = m->first == 0 ? FormKind::SN_tail : FormKind::SNS_alternating;
    out.ns_repeats = m->first;
    out.trailing_n = m->second;
    return out;
  }
  const auto n_start = w.find('N');
  const std::size_t s_count = n_start == std::string::npos ? w.size() : n_start;
  if (n_start != std::string::npos && w.find('S', n_start) != std::string::npos) return out;
  out.form = FormKind::SS_then_N;
  out.s_count = s_count;
  out.trailing_n = w.size() - s_count;
  return out;
}

struct Verdict {
  bool attainable = false;
  /// 1 or 2 for the statement of the necessary condition that holds; 0 otherwise.
  int clause = 0;
  std::string reason;
};

inline Verdict check_necessary(const CharSeq& seq) {
  if (seq.kind() != SeqKind::apr) throw std::invalid_argument("the necessary condition applies to apr-sequences");
  const std::string& w = seq.word();
  if (w.size() < 2) throw std::invalid_argument("the necessary condition needs a word of length at least 2");
  const auto alt = match_alternating(w);
  if (alt && alt->first >= 1) return {true, 1, "word has the form SNS(NS)*N*"};
  const auto scan = scan_patterns(w);
  if (!scan.has_NA && !scan.has_NS) return {true, 2, "neither NA nor NS occurs"};
  if (scan.has_NA) {
    return {false, 0, "NA occurs at position " + std::to_string(scan.first_NA) + " and the word is not of the form SNS(NS)*N*"};
  }
  return {false, 0, "NS occurs at position " + std::to_string(scan.first_NS) + " and the word is not of the form SNS(NS)*N*"};
}

/// Attainability over a field of characteristic 0. For words of length at
/// least 2 this is exactly the necessary condition.
inline Verdict check_char0(const CharSeq& seq) {
  if (seq.kind() != SeqKind::apr) throw std::invalid_argument("attainability applies to apr-sequences");
  if (seq.length() == 1) {
    if (seq.word() == "S") return {false, 0, "length-1 S unattainable: a 2x2 matrix has a single almost-principal minor"};
    return {true, 0, "length-1 " + seq.word() + " is attained by a 2x2 matrix"};
  }
  return check_necessary(seq);
}

// ---------------------------------------------------------------------------
// canonical families

enum class Family { zero, identity, ones, j_plus_o, l2_plus_o, ak2_blocks, j2_plus_i };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::zero: return "zero";
    case Family::identity: return "identity";
    case Family::ones: return "ones";
    case Family::j_plus_o: return "J_plus_O";
    case Family::l2_plus_o: return "L2_plus_O";
    case Family::ak2_blocks: return "AK2_blocks";
    case Family::j2_plus_i: return "J2_plus_I";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  for (auto f : {Family::zero, Family::identity, Family::ones, Family::j_plus_o, Family::l2_plus_o, Family::ak2_blocks, Family::j2_plus_i}) {
    if (name == to_string(f)) return f;
  }
  throw ParseError("unknown matrix family '" + name + "'");
}

/// n is the order for every family except ak2_blocks, whose order is 2p + q.
struct FamilyParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::int64_t a = 0;
};

inline SymMatrix ak2(const FieldSpec& f) { return SymMatrix::from_ints(f, {{0, 1}, {1, 0}}); }

inline SymMatrix l2(const FieldSpec& f, const Scalar& a) {
  return SymMatrix::from_rows(f, {{Scalar::one(f), Scalar::one(f)}, {Scalar::one(f), a}});
}

/// p copies of A(K2) followed by O_q.
inline SymMatrix matching_blocks(const FieldSpec& f, std::size_t p, std::size_t q) {
  SymMatrix out = SymMatrix::zero(f, 0);
  for (std::size_t i = 0; i < p; ++i) out = direct_sum(out, ak2(f));
  return direct_sum(out, SymMatrix::zero(f, q));
}

inline SymMatrix canonical_matrix(Family family, const FamilyParams& fp, const FieldSpec& f) {
  const std::size_t n = fp.n;
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw std::out_of_range(what);
  };
  switch (family) {
    case Family::zero:
      need(n >= 1, "zero: n must be at least 1");
      return SymMatrix::zero(f, n);
    case Family::identity:
      need(n >= 1, "identity: n must be at least 1");
      return SymMatrix::identity(f, n);
    case Family::ones:
      need(n >= 1, "ones: n must be at least 1");
      return SymMatrix::ones(f, n);
    case Family::j_plus_o:
      need(n >= 2 && fp.k >= 1 && fp.k <= n - 1, "J_plus_O: need 1 <= k <= n-1");
      return direct_sum(SymMatrix::ones(f, n - fp.k), SymMatrix::zero(f, fp.k));
    case Family::l2_plus_o:
      need(n >= 2, "L2_plus_O: n must be at least 2");
      return direct_sum(l2(f, Scalar::from_int(f, fp.a)), SymMatrix::zero(f, n - 2));
    case Family::ak2_blocks:
      need(fp.p >= 1, "AK2_blocks: p must be at least 1");
      need(2 * fp.p + fp.q <= IndexSet::max_universe, "AK2_blocks: order too large");
      return matching_blocks(f, fp.p, fp.q);
    case Family::j2_plus_i:
      need(n >= 2, "J2_plus_I: n must be at least 2");
      return direct_sum(SymMatrix::ones(f, 2), SymMatrix::identity(f, n - 2));
  }
  throw std::invalid_argument("unknown family");
}

/// 0/1 witness for a word without A that has one of the attainable shapes.
inline SymMatrix construct_no_A(const CharSeq& seq, const FieldSpec& f) {
  const SeqForm form = classify_no_A(seq);
  const std::size_t n = seq.order_n();
  switch (form.form) {
    case FormKind::AllN:
      return SymMatrix::zero(f, n);
    case FormKind::SN_tail:
      return direct_sum(SymMatrix::ones(f, 2), SymMatrix::zero(f, n - 2));
    case FormKind::SNS_alternating:
      return matching_blocks(f, form.ns_repeats + 1, form.trailing_n);
    case FormKind::SS_then_N:
      return direct_sum(direct_sum(SymMatrix::ones(f, 2), SymMatrix::identity(f, form.s_count - 1)),
                        SymMatrix::zero(f, form.trailing_n));
    case FormKind::NotNoA:
      break;
  }
  throw std::invalid_argument("'" + seq.word() + "' is not the apr-sequence of any symmetric matrix");
}

// ---------------------------------------------------------------------------
// structure of matrices whose apr-sequence starts with SN

enum class StructureCase { ScaledJ_plus_O, ScaledL2_plus_O, MatchingBlocks_Tpq, None };

inline const char* to_string(StructureCase c) {
  switch (c) {
    case StructureCase::ScaledJ_plus_O: return "ScaledJ_plus_O";
    case StructureCase::ScaledL2_plus_O: return "ScaledL2_plus_O";
    case StructureCase::MatchingBlocks_Tpq: return "MatchingBlocks_Tpq";
    case StructureCase::None: return "None";
  }
  return "?";
}

/// Witness for c * P^T B P = canonical, where P = (permutation) * diag(d):
/// position r of the canonical matrix takes index order[r-1] of B, scaled by d[r-1].
struct StructureReport {
  StructureCase which = StructureCase::None;
  std::size_t k = 0;  // zero rows (J and L2 cases; q of T^p_q)
  std::size_t p = 0;  // A(K2) blocks
  std::optional<Scalar> a;
  std::optional<Scalar> c;
  std::vector<std::size_t> order;
  std::vector<Scalar> d;
  std::string note;

  SymMatrix canonical(const FieldSpec& f) const {
    const std::size_t n = order.size();
    switch (which) {
      case StructureCase::ScaledJ_plus_O:
        return direct_sum(SymMatrix::ones(f, n - k), SymMatrix::zero(f, k));
      case StructureCase::ScaledL2_plus_O:
        return direct_sum(l2(f, *a), SymMatrix::zero(f, n - 2));
      case StructureCase::MatchingBlocks_Tpq:
        return matching_blocks(f, p, k);
      case StructureCase::None:
        break;
    }
    throw std::logic_error("no canonical form for an unrecognized structure");
  }

  /// Applies the witness to B.
  SymMatrix transform(const SymMatrix& b) const {
    SymMatrix t = b.permuted(order).diagonally_scaled(d);
    return c ? t.scaled(*c) : t;
  }

  bool verify(const SymMatrix& b) const { return which != StructureCase::None && transform(b) == canonical(b.field()); }
};

inline StructureReport recognize_SN(const SymMatrix& b) {
  StructureReport rep;
  const std::size_t n = b.order();
  if (n < 3) {
    rep.note = "order below 3";
    return rep;
  }
  const CharSeq apr = apr_sequence(b);
  if (apr.word().compare(0, 2, "SN") != 0) {
    rep.note = "apr-sequence " + apr.word() + " does not begin with SN";
    return rep;
  }
  const auto& f = b.field();
  const auto flags = structure_flags(b);
  const auto zero_rows = flags.zero_rows.members();
  const auto live = flags.zero_rows.complement().members();
  auto with_zero_tail = [&](std::vector<std::size_t> head) {
    head.insert(head.end(), zero_rows.begin(), zero_rows.end());
    return head;
  };
  auto fill_d = [&](std::vector<Scalar> head) {
    head.resize(n, Scalar::one(f));
    return head;
  };

  // (1) the nonzero block is a rank-one matrix with no zero entry
  bool all_nonzero = true;
  for (auto i : live) {
    for (auto j : live) all_nonzero = all_nonzero && !b(i, j).is_zero();
  }
  if (all_nonzero && live.size() >= 2 && rank(b) == 1) {
    const std::size_t i0 = live.front();
    const Scalar b11 = b(i0, i0);
    std::vector<Scalar> d;
    for (auto j : live) d.push_back(b11 / b(i0, j));
    rep.which = StructureCase::ScaledJ_plus_O;
    rep.k = zero_rows.size();
    rep.c = b11.inv();
    rep.order = with_zero_tail(live);
    rep.d = fill_d(std::move(d));
    return rep;
  }

  // (2) a single 2x2 block [[x, y], [y, z]] with y != 0 and x or z nonzero
  if (live.size() == 2) {
    std::size_t i = live[0], j = live[1];
    if (b(i, i).is_zero()) std::swap(i, j);
    const Scalar x = b(i, i), y = b(i, j), z = b(j, j);
    if (!x.is_zero() && !y.is_zero()) {
      rep.which = StructureCase::ScaledL2_plus_O;
      rep.k = n - 2;
      rep.c = x.inv();
      rep.a = x * z / (y * y);
      rep.order = with_zero_tail({i, j});
      rep.d = fill_d({Scalar::one(f), x / y});
      return rep;
    }
  }

  // (3) zero diagonal and exactly one nonzero off-diagonal entry per live row
  std::vector<std::size_t> order;
  std::vector<Scalar> d;
  std::vector<bool> used(n + 1, false);
  bool matching = !live.empty();
  for (auto i : live) {
    if (!matching) break;
    if (!b(i, i).is_zero()) {
      matching = false;
      break;
    }
    std::size_t partner = 0, count = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (j != i && !b(i, j).is_zero()) partner = j, ++count;
    }
    if (count != 1) {
      matching = false;
      break;
    }
    if (used[i]) continue;
    used[i] = used[partner] = true;
    order.push_back(i);
    order.push_back(partner);
    d.push_back(Scalar::one(f));
    d.push_back(b(i, partner).inv());
  }
  if (matching) {
    rep.which = StructureCase::MatchingBlocks_Tpq;
    rep.p = live.size() / 2;
    rep.k = zero_rows.size();
    rep.order = with_zero_tail(std::move(order));
    rep.d = fill_d(std::move(d));
    return rep;
  }

  rep.note = "apr-sequence begins with SN but no structure matched";
  return rep;
}

}  // namespace aprseq
