#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace fanocert {

using BigInt = mpz_class;
using Rational = mpq_class;
using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultPrecision = 128;

// Raised when an operation leaves its real domain (log of a non-positive
// interval, division by an interval containing zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Owning handle for one MPFR number. Every finite MPFR value is a dyadic
// rational m * 2^e, which is what interval endpoints are.
class Dyadic {
 public:
  explicit Dyadic(Bits precision = kDefaultPrecision);
  Dyadic(const Dyadic& other);
  Dyadic(Dyadic&& other) noexcept;
  Dyadic& operator=(const Dyadic& other);
  Dyadic& operator=(Dyadic&& other) noexcept;
  ~Dyadic();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Bits precision() const { return mpfr_get_prec(value_); }

  // Exact conversions; both throw on NaN/inf.
  Rational to_rational() const;
  std::string to_decimal() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  int sign() const { return mpfr_sgn(value_); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

// Closed interval [lo, hi] with dyadic endpoints. Every operation rounds the
// lower endpoint toward -inf and the upper toward +inf, so the result contains
// the exact image of the operands. Results carry the larger operand precision.
class Interval {
 public:
  explicit Interval(Bits precision = kDefaultPrecision);

  static Interval from_integer(long value, Bits precision = kDefaultPrecision);
  static Interval from_integer(const BigInt& value, Bits precision = kDefaultPrecision);
  static Interval from_rational(const Rational& value, Bits precision = kDefaultPrecision);
  // Smallest representable interval containing [lo, hi]; requires lo <= hi.
  static Interval from_bounds(const Rational& lo, const Rational& hi, Bits precision = kDefaultPrecision);
  static Interval from_endpoints(Dyadic lo, Dyadic hi);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Bits precision() const { return lo_.precision(); }

  bool is_point() const { return lo_ == hi_; }
  bool strictly_positive() const { return lo_.sign() > 0; }
  bool strictly_negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Rational& value) const;
  bool contains(const Interval& other) const;
  bool intersects(const Interval& other) const;

  Rational width() const;
  double width_double() const;
  // Split point lies strictly inside when the interval is wide enough.
  std::pair<Interval, Interval> bisect() const;
  // Same endpoints rounded outward to a new precision.
  Interval with_precision(Bits precision) const;

  std::string to_string() const;

  friend Interval operator-(const Interval& a);
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator+(const Interval& a, long b);
  friend Interval operator-(const Interval& a, long b);
  friend Interval operator*(const Interval& a, long b);
  friend Interval operator/(const Interval& a, long b);
  friend Interval operator+(long a, const Interval& b) { return b + a; }
  friend Interval operator-(long a, const Interval& b) { return -(b - a); }
  friend Interval operator*(long a, const Interval& b) { return b * a; }
  friend Interval operator/(long a, const Interval& b) { return from_integer(a, b.precision()) / b; }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

 private:
  Interval(Dyadic lo, Dyadic hi);

  Dyadic lo_;
  Dyadic hi_;
};

Interval sqr(const Interval& x);
Interval abs(const Interval& x);
Interval hull(const Interval& a, const Interval& b);
Interval scale_pow2(const Interval& x, long exponent);

// Transcendentals. Each returns an enclosure at the precision of its
// argument (or the explicit precision), computed with guard bits.
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
// u^v = exp(v log u); u must be strictly positive.
Interval pow(const Interval& u, const Interval& v);

Interval pi_enclosure(Bits precision);
Interval ln2_enclosure(Bits precision);
Interval e_enclosure(Bits precision);

enum class Transcendental { log, exp, sqrt };

Interval iv_transcendental(Transcendental fn, const Interval& x, Bits precision);

}  // namespace fanocert
