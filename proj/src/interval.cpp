#include "fanocert/interval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace fanocert {

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(Bits precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Dyadic::Dyadic(const Dyadic& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Dyadic::Dyadic(Dyadic&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Dyadic& Dyadic::operator=(const Dyadic& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Dyadic& Dyadic::operator=(Dyadic&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Dyadic::~Dyadic() { mpfr_clear(value_); }

Rational Dyadic::to_rational() const {
  if (!mpfr_number_p(value_)) throw DomainError("non-finite dyadic value");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Dyadic::to_decimal() const {
  if (!mpfr_number_p(value_)) throw DomainError("non-finite dyadic value");
  if (mpfr_zero_p(value_)) return "0";
  BigInt mantissa;
  mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  bool negative = mantissa < 0;
  if (negative) mantissa = -mantissa;
  std::string out;
  if (e >= 0) {
    BigInt whole = mantissa;
    mpz_mul_2exp(whole.get_mpz_t(), whole.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    out = whole.get_str();
  } else {
    // m / 2^n == m * 5^n / 10^n
    auto n = static_cast<unsigned long>(-e);
    BigInt five_pow;
    mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, n);
    std::string digits = BigInt(mantissa * five_pow).get_str();
    if (digits.size() <= n) digits.insert(0, n - digits.size() + 1, '0');
    std::string int_part = digits.substr(0, digits.size() - n);
    std::string frac_part = digits.substr(digits.size() - n);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    out = frac_part.empty() ? int_part : int_part + "." + frac_part;
  }
  return negative ? "-" + out : out;
}

// -------------------------------------------------------------- Interval

namespace {

Dyadic make(Bits precision) { return Dyadic(precision); }

Bits max_prec(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Lower bound is the min of the four endpoint products rounded down, upper the
// max rounded up. Valid for * and for / when the divisor excludes zero.
Interval corner_op(const Interval& a, const Interval& b, BinaryOp op) {
  Bits p = max_prec(a, b);
  const Dyadic* xs[2] = {&a.lo(), &a.hi()};
  const Dyadic* ys[2] = {&b.lo(), &b.hi()};
  Dyadic lo = make(p), hi = make(p), tmp = make(p);
  bool first = true;
  for (const Dyadic* x : xs) {
    for (const Dyadic* y : ys) {
      op(tmp.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || tmp < lo) lo = tmp;
      op(tmp.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || hi < tmp) hi = tmp;
      first = false;
    }
  }
  return Interval::from_endpoints(std::move(lo), std::move(hi));
}

}  // namespace

Interval::Interval(Bits precision) : lo_(precision), hi_(precision) {}

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get())) throw DomainError("non-finite interval endpoint");
  if (hi_ < lo_) throw std::invalid_argument("interval endpoints out of order");
}

Interval Interval::from_endpoints(Dyadic lo, Dyadic hi) {
  Bits p = std::max(lo.precision(), hi.precision());
  if (lo.precision() != p) {
    Dyadic t(p);
    mpfr_set(t.get(), lo.get(), MPFR_RNDD);
    lo = std::move(t);
  }
  if (hi.precision() != p) {
    Dyadic t(p);
    mpfr_set(t.get(), hi.get(), MPFR_RNDU);
    hi = std::move(t);
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::from_integer(long value, Bits precision) {
  Dyadic lo(precision), hi(precision);
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::from_integer(const BigInt& value, Bits precision) {
  Dyadic lo(precision), hi(precision);
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::from_rational(const Rational& value, Bits precision) {
  return from_bounds(value, value, precision);
}

Interval Interval::from_bounds(const Rational& lo_q, const Rational& hi_q, Bits precision) {
  if (hi_q < lo_q) throw std::invalid_argument("interval bounds out of order");
  Dyadic lo(precision), hi(precision);
  mpfr_set_q(lo.get(), lo_q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), hi_q.get_mpq_t(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

bool Interval::contains(const Rational& value) const {
  return lo_.to_rational() <= value && value <= hi_.to_rational();
}

bool Interval::contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

bool Interval::intersects(const Interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

Rational Interval::width() const { return Rational(hi_.to_rational() - lo_.to_rational()); }

double Interval::width_double() const {
  Dyadic w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double();
}

std::pair<Interval, Interval> Interval::bisect() const {
  // The split point only has to lie in [lo, hi]; both halves share it exactly.
  Bits p = precision() + 2;
  Dyadic mid(p);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  Dyadic left_hi(p), right_lo(p);
  mpfr_set(left_hi.get(), mid.get(), MPFR_RNDN);
  mpfr_set(right_lo.get(), mid.get(), MPFR_RNDN);
  Dyadic lo(p), hi(p);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDN);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDN);
  return {Interval(std::move(lo), std::move(left_hi)), Interval(std::move(right_lo), std::move(hi))};
}

Interval Interval::with_precision(Bits precision) const {
  Dyadic lo(precision), hi(precision);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

std::string Interval::to_string() const {
  std::ostringstream os;
  os << "[" << lo_.to_decimal() << ", " << hi_.to_decimal() << "]";
  return os.str();
}

Interval operator-(const Interval& a) {
  Dyadic lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator+(const Interval& a, const Interval& b) {
  Bits p = max_prec(a, b);
  Dyadic lo(p), hi(p);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a, const Interval& b) {
  Bits p = max_prec(a, b);
  Dyadic lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, const Interval& b) { return corner_op(a, b, mpfr_mul); }

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  return corner_op(a, b, mpfr_div);
}

Interval operator+(const Interval& a, long b) {
  Dyadic lo(a.precision()), hi(a.precision());
  mpfr_add_si(lo.get(), a.lo_.get(), b, MPFR_RNDD);
  mpfr_add_si(hi.get(), a.hi_.get(), b, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a, long b) {
  Dyadic lo(a.precision()), hi(a.precision());
  mpfr_sub_si(lo.get(), a.lo_.get(), b, MPFR_RNDD);
  mpfr_sub_si(hi.get(), a.hi_.get(), b, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, long b) {
  Dyadic lo(a.precision()), hi(a.precision());
  const Dyadic& x = b >= 0 ? a.lo_ : a.hi_;
  const Dyadic& y = b >= 0 ? a.hi_ : a.lo_;
  mpfr_mul_si(lo.get(), x.get(), b, MPFR_RNDD);
  mpfr_mul_si(hi.get(), y.get(), b, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator/(const Interval& a, long b) {
  if (b == 0) throw DomainError("division by zero");
  Dyadic lo(a.precision()), hi(a.precision());
  const Dyadic& x = b > 0 ? a.lo_ : a.hi_;
  const Dyadic& y = b > 0 ? a.hi_ : a.lo_;
  mpfr_div_si(lo.get(), x.get(), b, MPFR_RNDD);
  mpfr_div_si(hi.get(), y.get(), b, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval sqr(const Interval& x) {
  Bits p = x.precision();
  Dyadic lo(p), hi(p);
  if (x.lo().sign() >= 0) {
    mpfr_sqr(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), x.hi().get(), MPFR_RNDU);
  } else if (x.hi().sign() <= 0) {
    mpfr_sqr(lo.get(), x.hi().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), x.lo().get(), MPFR_RNDU);
  } else {
    Dyadic a(p), b(p);
    mpfr_sqr(a.get(), x.lo().get(), MPFR_RNDU);
    mpfr_sqr(b.get(), x.hi().get(), MPFR_RNDU);
    hi = a < b ? b : a;
  }
  return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval abs(const Interval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  Bits p = x.precision();
  Dyadic neg_lo(p);
  mpfr_neg(neg_lo.get(), x.lo().get(), MPFR_RNDU);
  Dyadic hi = neg_lo < x.hi() ? x.hi() : neg_lo;
  return Interval::from_endpoints(Dyadic(p), std::move(hi));
}

Interval hull(const Interval& a, const Interval& b) {
  Dyadic lo = b.lo() < a.lo() ? b.lo() : a.lo();
  Dyadic hi = a.hi() < b.hi() ? b.hi() : a.hi();
  return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval scale_pow2(const Interval& x, long exponent) {
  Dyadic lo = x.lo(), hi = x.hi();
  mpfr_mul_2si(lo.get(), lo.get(), exponent, MPFR_RNDD);
  mpfr_mul_2si(hi.get(), hi.get(), exponent, MPFR_RNDU);
  return Interval::from_endpoints(std::move(lo), std::move(hi));
}

// -------------------------------------------------------- transcendentals

namespace {

constexpr Bits kGuardBits = 32;

// [-bound, bound] where bound >= |x| for every x in the interval.
Interval symmetric(const Interval& magnitude) {
  Dyadic bound = abs(magnitude).hi();
  Dyadic neg(bound.precision());
  mpfr_neg(neg.get(), bound.get(), MPFR_RNDN);  // exact
  return Interval::from_endpoints(std::move(neg), std::move(bound));
}

// True when every point of the interval has magnitude below 2^-bits.
bool below_pow2(const Interval& x, Bits bits) {
  Interval m = abs(x);
  if (mpfr_zero_p(m.hi().get())) return true;
  return mpfr_get_exp(m.hi().get()) < -static_cast<mpfr_exp_t>(bits);
}

// sum_{n>=0} z^(2n+1)/(2n+1) for |z| <= 1/3, with the geometric tail bound
// |z|^(2N+1) / ((2N+1)(1 - z^2)) <= |z|^(2N+1) * 9/8 / (2N+1).
Interval atanh_series(const Interval& z, Bits work) {
  Interval z2 = sqr(z);
  Interval power = z;
  Interval sum(work);
  for (long n = 0;; ++n) {
    Interval term = power / (2 * n + 1);
    if (below_pow2(term, work + 4)) {
      Interval tail = abs(term) * 9 / 8;
      return sum + symmetric(tail);
    }
    sum += term;
    power *= z2;
  }
}

// sum (-1)^i / ((2i+1) n^(2i+1)); alternating, decreasing terms.
Interval arctan_inverse(long n, Bits work) {
  Interval inv = Interval::from_integer(1, work) / n;
  Interval inv2 = sqr(inv);
  Interval power = inv;
  Interval sum(work);
  for (long i = 0;; ++i) {
    Interval term = power / (2 * i + 1);
    if (below_pow2(term, work + 4)) return sum + symmetric(term);
    if (i % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power *= inv2;
  }
}

Interval round_to(const Interval& x, Bits precision) { return x.with_precision(precision); }

template <class Compute>
const Interval& cached(std::map<Bits, Interval>& cache, Bits precision, Compute compute) {
  auto it = cache.find(precision);
  if (it == cache.end()) it = cache.emplace(precision, compute()).first;
  return it->second;
}

Interval log_point(const Dyadic& x, Bits precision) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  Bits work = precision + kGuardBits;
  // x = m * 2^e with m in [0.75, 1.5)
  Dyadic m(std::max(work, x.precision()));
  mpfr_set(m.get(), x.get(), MPFR_RNDN);  // exact, precision not reduced
  long e = mpfr_get_exp(m.get());
  mpfr_set_exp(m.get(), 0);  // m in [0.5, 1)
  if (mpfr_cmp_d(m.get(), 0.75) < 0) {
    mpfr_mul_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    e -= 1;
  }
  Interval mi = Interval::from_endpoints(m, m);
  Interval z = (mi - 1) / (mi + 1);
  Interval result = atanh_series(z, work) * 2;
  if (e != 0) result += ln2_enclosure(work) * e;
  return round_to(result, precision);
}

Interval exp_point(const Dyadic& x, Bits precision) {
  if (x.sign() == 0) return Interval::from_integer(1, precision);
  double approx = x.to_double();
  if (std::fabs(approx) > 1e15) throw DomainError("exp argument out of range");
  auto n = static_cast<long>(std::nearbyint(approx / std::log(2.0)));
  long n_bits = n == 0 ? 0 : static_cast<long>(std::log2(std::fabs(static_cast<double>(n)))) + 1;
  constexpr long kHalvings = 10;
  Bits work = precision + kGuardBits + kHalvings + n_bits;
  Dyadic xw(std::max(work, x.precision()));
  mpfr_set(xw.get(), x.get(), MPFR_RNDN);
  Interval r = Interval::from_endpoints(xw, xw).with_precision(std::max(work, x.precision()));
  if (n != 0) r -= ln2_enclosure(work) * n;
  Interval y = scale_pow2(r, -kHalvings);  // |y| < 2^-10
  // Taylor sum; remainder |y|^(N+1)/(N+1)! * 1/(1-|y|) <= 2 * next term.
  Interval sum = Interval::from_integer(1, work);
  Interval term = Interval::from_integer(1, work);
  for (long i = 1;; ++i) {
    term = term * y / i;
    if (below_pow2(term, work + 4)) {
      sum += symmetric(term * 2);
      break;
    }
    sum += term;
  }
  for (long i = 0; i < kHalvings; ++i) sum = sqr(sum);
  return round_to(scale_pow2(sum, n), precision);
}

}  // namespace

Interval ln2_enclosure(Bits precision) {
  thread_local std::map<Bits, Interval> cache;
  return cached(cache, precision, [precision] {
    Bits work = precision + kGuardBits;
    Interval third = Interval::from_integer(1, work) / 3;
    return round_to(atanh_series(third, work) * 2, precision);
  });
}

Interval pi_enclosure(Bits precision) {
  thread_local std::map<Bits, Interval> cache;
  return cached(cache, precision, [precision] {
    Bits work = precision + kGuardBits;
    return round_to(arctan_inverse(5, work) * 16 - arctan_inverse(239, work) * 4, precision);
  });
}

Interval e_enclosure(Bits precision) {
  thread_local std::map<Bits, Interval> cache;
  return cached(cache, precision, [precision] {
    Dyadic one(precision);
    mpfr_set_si(one.get(), 1, MPFR_RNDN);
    return exp_point(one, precision);
  });
}

Interval log(const Interval& x) {
  if (!x.strictly_positive()) throw DomainError("log of an interval touching zero");
  Bits p = x.precision();
  Interval lo = log_point(x.lo(), p);
  if (x.is_point()) return lo;
  Interval hi = log_point(x.hi(), p);
  return Interval::from_endpoints(Dyadic(lo.lo()), Dyadic(hi.hi()));
}

Interval exp(const Interval& x) {
  Bits p = x.precision();
  Interval lo = exp_point(x.lo(), p);
  if (x.is_point()) return lo;
  Interval hi = exp_point(x.hi(), p);
  return Interval::from_endpoints(Dyadic(lo.lo()), Dyadic(hi.hi()));
}

Interval sqrt(const Interval& x) {
  if (x.lo().sign() < 0) throw DomainError("sqrt of an interval with negative part");
  Bits p = x.precision();
  Dyadic lo(p), hi(p);
  mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
  return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval pow(const Interval& u, const Interval& v) { return exp(v * log(u)); }

Interval iv_transcendental(Transcendental fn, const Interval& x, Bits precision) {
  Interval xp = x.precision() == precision ? x : x.with_precision(std::max(precision, x.precision()));
  Interval out(precision);
  switch (fn) {
    case Transcendental::log:
      out = log(xp);
      break;
    case Transcendental::exp:
      out = exp(xp);
      break;
    case Transcendental::sqrt:
      out = sqrt(xp);
      break;
  }
  return out.with_precision(precision);
}

}  // namespace fanocert
