#pragma once

// Exact scalars over the rationals and over prime fields GF(p).

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "aprseq/random.hpp"

namespace aprseq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Raised on field mismatches, division by zero and invalid field specs.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when scalar or field text cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

class FieldSpec {
 public:
  enum class Kind { rationals, prime };

  // Largest admissible modulus; residues are multiplied in 64-bit registers.
  static constexpr std::uint64_t max_modulus = (std::uint64_t{1} << 32) - 1;

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p > max_modulus) throw FieldError("modulus " + std::to_string(p) + " exceeds 2^32 - 1");
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    FieldSpec f;
    f.kind_ = Kind::prime;
    f.modulus_ = p;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rationals; }
  bool is_prime_field() const { return kind_ == Kind::prime; }
  /// 0 for the rationals.
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t characteristic() const { return modulus_; }

  /// "rational" or "gf <p>", the spelling used by the matrix file header.
  std::string to_string() const {
    return is_rational() ? std::string("rational") : "gf " + std::to_string(modulus_);
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::rationals;
  std::uint64_t modulus_ = 0;
};

/// Accepts "rational", "char0", "q", "gf:p", "gf p" and "gfp".
inline FieldSpec parse_field_spec(std::string_view text) {
  std::string t(text);
  for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "rational" || t == "rationals" || t == "q" || t == "char0") return FieldSpec::rationals();
  if (t.rfind("gf", 0) == 0) {
    std::string rest = t.substr(2);
    if (!rest.empty() && (rest.front() == ':' || rest.front() == ' ')) rest.erase(0, 1);
    if (rest.empty() || rest.size() > 10) throw ParseError("bad field spec '" + std::string(text) + "'");
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad field spec '" + std::string(text) + "'");
    }
    return FieldSpec::prime(std::stoull(rest));
  }
  throw ParseError("bad field spec '" + std::string(text) + "'");
}

namespace detail {

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 64-bit values; p < 2^32 keeps everything in range
  std::int64_t old_r = static_cast<std::int64_t>(a % p), r = static_cast<std::int64_t>(p);
  std::int64_t old_s = 1, s = 0;
  if (old_r == 0) throw FieldError("inverse of zero");
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(p);
  if (inv < 0) inv += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(inv);
}

}  // namespace detail

/// Immutable exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues lie in [0, p).
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
  static Scalar one(const FieldSpec& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldSpec& f, std::int64_t v) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational()) {
      s.q_ = v;
    } else {
      const auto p = static_cast<std::int64_t>(f.modulus());
      std::int64_t r = v % p;
      if (r < 0) r += p;
      s.r_ = static_cast<std::uint64_t>(r);
    }
    return s;
  }

  static Scalar from_bigint(const FieldSpec& f, const BigInt& v) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational()) {
      s.q_ = BigRational(v);
    } else {
      BigInt r = v % f.modulus();
      if (r < 0) r += f.modulus();
      s.r_ = static_cast<std::uint64_t>(r);
    }
    return s;
  }

  static Scalar rational(BigRational v) {
    Scalar s;
    s.q_ = std::move(v);
    return s;
  }

  static Scalar rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw FieldError("zero denominator");
    if (den < 0) return rational(BigRational(-BigInt(num), -BigInt(den)));
    return rational(BigRational(BigInt(num), BigInt(den)));
  }

  static Scalar residue(const FieldSpec& f, std::uint64_t v) {
    if (!f.is_prime_field()) throw FieldError("residue requires a prime field");
    Scalar s;
    s.field_ = f;
    s.r_ = v % f.modulus();
    return s;
  }

  const FieldSpec& field() const { return field_; }

  bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  /// True for rationals with denominator 1 and for every residue.
  bool is_integer() const {
    return field_.is_prime_field() || boost::multiprecision::denominator(q_) == 1;
  }

  const BigRational& value() const {
    if (!field_.is_rational()) throw FieldError("value() on a prime-field scalar");
    return q_;
  }
  BigInt numerator() const { return field_.is_rational() ? BigInt(boost::multiprecision::numerator(q_)) : BigInt(r_); }
  BigInt denominator() const { return field_.is_rational() ? BigInt(boost::multiprecision::denominator(q_)) : BigInt(1); }

  std::uint64_t residue() const {
    if (!field_.is_prime_field()) throw FieldError("residue() on a rational scalar");
    return r_;
  }

  Scalar operator+(const Scalar& rhs) const {
    check_same(rhs);
    Scalar out;
    out.field_ = field_;
    if (field_.is_rational()) {
      out.q_ = q_ + rhs.q_;
    } else {
      out.r_ = (r_ + rhs.r_) % field_.modulus();
    }
    return out;
  }

  Scalar operator-(const Scalar& rhs) const { return *this + (-rhs); }

  Scalar operator-() const {
    Scalar out;
    out.field_ = field_;
    if (field_.is_rational()) {
      out.q_ = -q_;
    } else {
      out.r_ = r_ == 0 ? 0 : field_.modulus() - r_;
    }
    return out;
  }

  Scalar operator*(const Scalar& rhs) const {
    check_same(rhs);
    Scalar out;
    out.field_ = field_;
    if (field_.is_rational()) {
      out.q_ = q_ * rhs.q_;
    } else {
      out.r_ = (r_ * rhs.r_) % field_.modulus();
    }
    return out;
  }

  Scalar inv() const {
    if (is_zero()) throw FieldError("inverse of zero");
    Scalar out;
    out.field_ = field_;
    if (field_.is_rational()) {
      out.q_ = 1 / q_;
    } else {
      out.r_ = detail::mod_inverse(r_, field_.modulus());
    }
    return out;
  }

  Scalar operator/(const Scalar& rhs) const {
    check_same(rhs);
    if (rhs.is_zero()) throw FieldError("division by zero");
    return *this * rhs.inv();
  }

  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }
  Scalar& operator/=(const Scalar& rhs) { return *this = *this / rhs; }

  /// Exact equality. Comparing scalars of different fields is an error.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  std::string to_string() const {
    if (field_.is_prime_field()) return std::to_string(r_);
    const auto& num = boost::multiprecision::numerator(q_);
    const auto& den = boost::multiprecision::denominator(q_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  void check_same(const Scalar& rhs) const {
    if (!(field_ == rhs.field_)) {
      throw FieldError("field mismatch: " + field_.to_string() + " vs " + rhs.field_.to_string());
    }
  }

  FieldSpec field_{};
  BigRational q_{};
  std::uint64_t r_ = 0;
};

/// Parses `[-]?digits(/digits)?` over the rationals and `digits` over GF(p).
inline Scalar parse_scalar(std::string_view text, const FieldSpec& field) {
  const std::string token(text);
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad scalar '" + token + "': " + why);
  };
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  if (field.is_prime_field()) {
    if (!all_digits(text)) throw fail("expected digits for " + field.to_string());
    return Scalar::from_bigint(field, BigInt(token));
  }

  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  if (!all_digits(num_text)) throw fail("expected [-]digits[/digits]");
  BigInt num(std::string{num_text});
  BigInt den(1);
  if (slash != std::string_view::npos) {
    const std::string_view den_text = body.substr(slash + 1);
    if (!all_digits(den_text)) throw fail("expected [-]digits[/digits]");
    den = BigInt(std::string{den_text});
    if (den == 0) throw fail("zero denominator");
  }
  if (negative) num = -num;
  return Scalar::rational(BigRational(num, den));
}

/// Rationals: uniform integer in [-bound, bound]. GF(p): uniform residue.
inline Scalar sample_scalar(Rng& rng, const FieldSpec& field, std::uint64_t bound = 100) {
  if (bound == 0) throw std::invalid_argument("sample_scalar: bound must be positive");
  if (field.is_prime_field()) return Scalar::residue(field, uniform_below(rng, field.modulus()));
  const auto b = static_cast<std::int64_t>(bound);
  return Scalar::from_int(field, uniform_int(rng, -b, b));
}

}  // namespace aprseq
