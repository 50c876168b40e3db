#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace hmpack {

/// Arbitrary-precision integer used where int64 is not enough (sizes of sums, LCMs).
using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 62 bits are kept inline and
/// handled with 128-bit intermediates; anything larger is promoted to a shared,
/// immutable GMP rational. Promotion and demotion are transparent.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);
  explicit Rational(const BigInt& z);

  /// Parses "p", "-p" or "p/q". Throws InputError on malformed text or q == 0.
  static Rational parse(std::string_view text);

  bool is_small() const noexcept { return !big_; }
  bool is_integer() const;
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  int sign() const;

  BigInt numerator() const;
  BigInt denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;

  /// Integer value; throws InputError when not an integer or out of int64 range.
  std::int64_t to_int64() const;
  BigInt floor() const;
  BigInt ceil() const;

  /// "p/q", or "p" when q == 1.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);
  static Rational from_mpq(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Converts a GMP integer to int64, throwing InputError when it does not fit.
std::int64_t to_int64(const BigInt& z);

}  // namespace hmpack
