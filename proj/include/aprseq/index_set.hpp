#pragma once

// Index sets over {1, ..., n} with bitmask storage (bit i-1 holds index i),
// and row/column pairs describing minors.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace aprseq {

class IndexSet {
 public:
  static constexpr std::size_t max_universe = 32;

  IndexSet() = default;

  explicit IndexSet(std::size_t universe) : universe_(universe) { check_universe(universe); }

  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : IndexSet(universe) {
    for (auto i : members) insert(i);
  }

  IndexSet(std::size_t universe, const std::vector<std::size_t>& members) : IndexSet(universe) {
    for (auto i : members) insert(i);
  }

  static IndexSet from_mask(std::size_t universe, std::uint32_t mask) {
    IndexSet s(universe);
    if (universe < max_universe && (mask >> universe) != 0) {
      throw std::out_of_range("index mask has bits outside {1.." + std::to_string(universe) + "}");
    }
    s.mask_ = mask;
    return s;
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    s.mask_ = universe == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << universe) - 1);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::uint32_t mask() const { return mask_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }

  bool contains(std::size_t i) const { return i >= 1 && i <= universe_ && ((mask_ >> (i - 1)) & 1U); }

  void insert(std::size_t i) {
    check_index(i);
    mask_ |= std::uint32_t{1} << (i - 1);
  }
  void erase(std::size_t i) {
    check_index(i);
    mask_ &= ~(std::uint32_t{1} << (i - 1));
  }

  IndexSet with(std::size_t i) const {
    IndexSet s = *this;
    s.insert(i);
    return s;
  }
  IndexSet without(std::size_t i) const {
    IndexSet s = *this;
    s.erase(i);
    return s;
  }

  /// Members in increasing order, 1-indexed.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)) + 1);
    return out;
  }

  IndexSet operator|(const IndexSet& o) const { return combine(o, mask_ | o.mask_); }
  IndexSet operator&(const IndexSet& o) const { return combine(o, mask_ & o.mask_); }
  IndexSet operator-(const IndexSet& o) const { return combine(o, mask_ & ~o.mask_); }
  IndexSet complement() const { return full(universe_) - *this; }

  bool is_subset_of(const IndexSet& o) const { return (mask_ & ~o.mask_) == 0; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto i : members()) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }

 private:
  static void check_universe(std::size_t universe) {
    if (universe > max_universe) throw std::out_of_range("index universe larger than 32");
  }
  void check_index(std::size_t i) const {
    if (i < 1 || i > universe_) {
      throw std::out_of_range("index " + std::to_string(i) + " outside {1.." + std::to_string(universe_) + "}");
    }
  }
  IndexSet combine(const IndexSet& o, std::uint32_t mask) const {
    if (universe_ != o.universe_) throw std::invalid_argument("index sets over different universes");
    IndexSet s(universe_);
    s.mask_ = mask;
    return s;
  }

  std::size_t universe_ = 0;
  std::uint32_t mask_ = 0;
};

enum class MinorKind { principal, almost_principal, quasi_principal, general };

inline const char* to_string(MinorKind k) {
  switch (k) {
    case MinorKind::principal: return "principal";
    case MinorKind::almost_principal: return "almost-principal";
    case MinorKind::quasi_principal: return "quasi-principal";
    case MinorKind::general: return "general";
  }
  return "?";
}

/// A square submatrix B[rows, cols]. The kind is derived from the overlap.
class MinorSpec {
 public:
  MinorSpec(IndexSet rows, IndexSet cols) : rows_(rows), cols_(cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor needs |rows| = |cols|");
    if (rows.universe() != cols.universe()) throw std::invalid_argument("rows and cols over different universes");
  }

  const IndexSet& rows() const { return rows_; }
  const IndexSet& cols() const { return cols_; }
  std::size_t order() const { return rows_.size(); }

  /// principal, almost_principal, or general. Never quasi_principal: that is
  /// an enumeration request covering the first two.
  MinorKind kind() const {
    if (rows_ == cols_) return MinorKind::principal;
    if ((rows_ & cols_).size() + 1 == rows_.size()) return MinorKind::almost_principal;
    return MinorKind::general;
  }

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;

 private:
  IndexSet rows_;
  IndexSet cols_;
};

/// Calls fn(mask) for every k-subset of {0..n-1} in increasing numeric
/// (colexicographic) order; stops early when fn returns false.
template <class Fn>
bool for_each_subset_mask(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  if (k == 0) return fn(std::uint32_t{0});
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  while (s < limit) {
    if (!fn(static_cast<std::uint32_t>(s))) return false;
    // Gosper's hack
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return true;
}

}  // namespace aprseq
