#include "hmpack/rational.hpp"

#include <ostream>

#include "hmpack/errors.hpp"

namespace hmpack {
namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

using u128 = unsigned __int128;

u128 abs128(__int128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
      while (y != 0) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_small(__int128 v) { return v > -kSmallLimit && v < kSmallLimit; }

mpz_class mpz_from_128(__int128 v) {
  const bool neg = v < 0;
  u128 u = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class mpz_from_64(std::int64_t v) { return mpz_from_128(v); }

bool mpz_fits_small(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

// callers guarantee |z| < 2^62
std::int64_t mpz_to_64(const mpz_class& z) { return z.get_si(); }

}  // namespace

Rational::Rational(std::int64_t n) {
  if (n > -kSmallLimit && n < kSmallLimit) {
    num_ = n;
  } else {
    *this = from_mpq(mpq_class(mpz_from_64(n)));
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational::Rational(const BigInt& z) { *this = from_mpq(mpq_class(z)); }

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(abs128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  Rational r;
  if (fits_small(num) && fits_small(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from_128(num), mpz_from_128(den));
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(mpq_class q) {
  q.canonicalize();
  Rational r;
  if (mpz_fits_small(q.get_num()) && mpz_fits_small(q.get_den())) {
    r.num_ = mpz_to_64(q.get_num());
    r.den_ = mpz_to_64(q.get_den());
    return r;
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return InputError("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw bad();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw bad();
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  return from_mpq(mpq_class(num, den));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

BigInt Rational::numerator() const { return big_ ? BigInt(big_->get_num()) : mpz_from_64(num_); }
BigInt Rational::denominator() const { return big_ ? BigInt(big_->get_den()) : mpz_from_64(den_); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_from_64(num_), mpz_from_64(den_));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::int64_t Rational::to_int64() const {
  if (!is_integer()) throw InputError("rational " + str() + " is not an integer");
  if (!big_) return num_;
  return hmpack::to_int64(big_->get_num());
}

BigInt Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return mpz_from_64(q);
  }
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return mpz_from_64(q);
  }
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_mpq(-*big_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Rational::from_wide(__int128(a.num_) + b.num_, a.den_);
    return Rational::from_wide(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                               __int128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Rational::from_wide(__int128(a.num_) - b.num_, a.den_);
    return Rational::from_wide(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                               __int128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    return Rational::from_wide(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InputError("division by zero");
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  // both sides are canonical, and a value is big only when it cannot be small
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw InputError("integer " + z.get_str() + " exceeds 64-bit range");
  return z.get_si();
}

}  // namespace hmpack
