#pragma once

#include <gmpxx.h>

#include <string>

namespace thetaspec {

// Closed real interval [lo, hi] in long double. Every operation rounds the
// lower end down and the upper end up.
class IntervalReal {
 public:
  IntervalReal() = default;
  IntervalReal(long double v) : lo_(v), hi_(v) {}  // NOLINT
  IntervalReal(long double lo, long double hi);

  static IntervalReal from_rational(const mpq_class& q);
  // Exact decimal literal such as "0.2256613757", converted outward.
  static IntervalReal from_decimal(const std::string& s);
  static IntervalReal hull(const IntervalReal& a, const IntervalReal& b);
  static IntervalReal pi();

  long double lo() const { return lo_; }
  long double hi() const { return hi_; }
  long double mid() const { return lo_ / 2 + hi_ / 2; }
  long double width() const { return hi_ - lo_; }
  long double mag() const;
  long double mig() const;

  bool contains(long double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const mpq_class& v) const;
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool positive() const { return lo_ > 0; }
  bool negative() const { return hi_ < 0; }

  IntervalReal& operator+=(const IntervalReal& o);
  IntervalReal& operator-=(const IntervalReal& o);
  IntervalReal& operator*=(const IntervalReal& o);
  IntervalReal& operator/=(const IntervalReal& o);

  friend IntervalReal operator+(IntervalReal a, const IntervalReal& b) { return a += b; }
  friend IntervalReal operator-(IntervalReal a, const IntervalReal& b) { return a -= b; }
  friend IntervalReal operator*(IntervalReal a, const IntervalReal& b) { return a *= b; }
  friend IntervalReal operator/(IntervalReal a, const IntervalReal& b) { return a /= b; }
  friend IntervalReal operator-(const IntervalReal& a) { return IntervalReal(-a.hi_, -a.lo_); }

 private:
  long double lo_ = 0;
  long double hi_ = 0;
};

IntervalReal abs(const IntervalReal& a);
IntervalReal sqr(const IntervalReal& a);
IntervalReal sqrt(const IntervalReal& a);
IntervalReal pow(const IntervalReal& a, unsigned n);
// exp/log/pow with real exponent: libm result widened by a few ulps.
IntervalReal exp(const IntervalReal& a);
IntervalReal log(const IntervalReal& a);
IntervalReal pow(const IntervalReal& a, const IntervalReal& e);
IntervalReal cos(const IntervalReal& a);

long double round_down(long double v);
long double round_up(long double v);

// Decimal string -> exact rational ("-1.5e-3", "7/9", "12").
mpq_class parse_rational(const std::string& s);
std::string rational_to_decimal(const mpq_class& q, int digits = 20);

}  // namespace thetaspec
