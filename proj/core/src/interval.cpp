#include "thetaspec/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "thetaspec/error.hpp"

namespace thetaspec {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

long double widen_down(long double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -kInf);
  return v;
}

long double widen_up(long double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, kInf);
  return v;
}

long double rational_to_ld(const mpq_class& q, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, std::numeric_limits<long double>::digits);
  mpfr_set_q(t, q.get_mpq_t(), rnd);
  long double v = mpfr_get_ld(t, rnd);
  mpfr_clear(t);
  return v;
}

mpq_class ld_to_rational(long double v) {
  mpfr_t t;
  mpfr_init2(t, std::numeric_limits<long double>::digits);
  mpfr_set_ld(t, v, MPFR_RNDN);
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), t);
  mpfr_clear(t);
  return q;
}

}  // namespace

long double round_down(long double v) { return widen_down(v, 1); }
long double round_up(long double v) { return widen_up(v, 1); }

IntervalReal::IntervalReal(long double lo, long double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) raise(ErrorKind::DomainError, "interval with lo > hi");
}

IntervalReal IntervalReal::from_rational(const mpq_class& q) {
  IntervalReal r;
  r.lo_ = rational_to_ld(q, MPFR_RNDD);
  r.hi_ = rational_to_ld(q, MPFR_RNDU);
  return r;
}

IntervalReal IntervalReal::from_decimal(const std::string& s) {
  return from_rational(parse_rational(s));
}

IntervalReal IntervalReal::hull(const IntervalReal& a, const IntervalReal& b) {
  return IntervalReal(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

IntervalReal IntervalReal::pi() {
  long double p = std::numbers::pi_v<long double>;
  return IntervalReal(round_down(p), round_up(p));
}

long double IntervalReal::mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

long double IntervalReal::mig() const {
  if (contains_zero()) return 0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

bool IntervalReal::contains(const mpq_class& v) const {
  return ld_to_rational(lo_) <= v && v <= ld_to_rational(hi_);
}

IntervalReal& IntervalReal::operator+=(const IntervalReal& o) {
  lo_ = round_down(lo_ + o.lo_);
  hi_ = round_up(hi_ + o.hi_);
  return *this;
}

IntervalReal& IntervalReal::operator-=(const IntervalReal& o) {
  long double l = round_down(lo_ - o.hi_);
  hi_ = round_up(hi_ - o.lo_);
  lo_ = l;
  return *this;
}

IntervalReal& IntervalReal::operator*=(const IntervalReal& o) {
  long double p[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
  long double l = *std::min_element(p, p + 4);
  long double h = *std::max_element(p, p + 4);
  lo_ = (l == 0 && (lo_ == 0 || hi_ == 0 || o.lo_ == 0 || o.hi_ == 0)) ? l : round_down(l);
  hi_ = (h == 0 && (lo_ == 0 || hi_ == 0 || o.lo_ == 0 || o.hi_ == 0)) ? h : round_up(h);
  return *this;
}

IntervalReal& IntervalReal::operator/=(const IntervalReal& o) {
  if (o.contains_zero()) raise(ErrorKind::DomainError, "interval division by an interval containing 0");
  long double p[4] = {lo_ / o.lo_, lo_ / o.hi_, hi_ / o.lo_, hi_ / o.hi_};
  lo_ = round_down(*std::min_element(p, p + 4));
  hi_ = round_up(*std::max_element(p, p + 4));
  return *this;
}

IntervalReal abs(const IntervalReal& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return IntervalReal(0, a.mag());
}

IntervalReal sqr(const IntervalReal& a) {
  IntervalReal m = abs(a);
  return IntervalReal(m.lo() == 0 ? 0 : round_down(m.lo() * m.lo()), round_up(m.hi() * m.hi()));
}

IntervalReal sqrt(const IntervalReal& a) {
  if (a.lo() < 0) raise(ErrorKind::DomainError, "sqrt of negative interval");
  long double l = std::sqrt(a.lo());
  return IntervalReal(l == 0 ? 0 : round_down(l), round_up(std::sqrt(a.hi())));
}

IntervalReal pow(const IntervalReal& a, unsigned n) {
  IntervalReal acc(1);
  IntervalReal base = a;
  while (n) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base = sqr(base);
  }
  return acc;
}

IntervalReal exp(const IntervalReal& a) {
  long double l = std::exp(a.lo());
  return IntervalReal(std::max(0.0L, widen_down(l, 4)), widen_up(std::exp(a.hi()), 4));
}

IntervalReal log(const IntervalReal& a) {
  if (a.lo() <= 0) raise(ErrorKind::DomainError, "log of nonpositive interval");
  return IntervalReal(widen_down(std::log(a.lo()), 4), widen_up(std::log(a.hi()), 4));
}

IntervalReal pow(const IntervalReal& a, const IntervalReal& e) {
  if (a.lo() == 0 && a.hi() == 0) return IntervalReal(0);
  if (a.lo() <= 0) raise(ErrorKind::DomainError, "real power of nonpositive interval");
  return exp(e * log(a));
}

IntervalReal cos(const IntervalReal& a) {
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  if (a.width() >= two_pi) return IntervalReal(-1, 1);
  long double c1 = std::cos(a.lo());
  long double c2 = std::cos(a.hi());
  long double lo = std::min(c1, c2);
  long double hi = std::max(c1, c2);
  // Extrema at multiples of pi inside the interval.
  long double k0 = std::ceil(a.lo() / std::numbers::pi_v<long double>);
  for (long double k = k0; k * std::numbers::pi_v<long double> <= a.hi(); k += 1) {
    if (std::fmod(std::fabs(k), 2.0L) == 0) hi = 1; else lo = -1;
  }
  return IntervalReal(std::max(-1.0L, widen_down(lo, 4)), std::min(1.0L, widen_up(hi, 4)));
}

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) raise(ErrorKind::DomainError, "empty number literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q(parse_rational(s.substr(0, slash)) / parse_rational(s.substr(slash + 1)));
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  std::string digits;
  long exp10 = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (after_point) --exp10;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else if (ch == 'e' || ch == 'E') {
      exp10 += std::stol(s.substr(i + 1));
      break;
    } else {
      raise(ErrorKind::DomainError, "malformed number literal '" + text + "'");
    }
  }
  if (!seen_digit) raise(ErrorKind::DomainError, "malformed number literal '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class q = exp10 < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::string rational_to_decimal(const mpq_class& q, int digits) {
  mpfr_t t;
  mpfr_init2(t, 256);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  std::vector<char> buf(digits + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, t);
  mpfr_clear(t);
  return std::string(buf.data());
}

}  // namespace thetaspec
