#pragma once

#include <algorithm>
#include <cmath>

#include "thetaspec/numeric.hpp"

namespace thetaspec {

namespace detail {

// Rounding slack: floating results are within a few units of roundoff of
// the exact value, so bounds are nudged outward by 4u relative plus the
// smallest normal number.
template <class R>
inline R up(const R& x) {
  using std::abs;
  return x + abs(x) * (4 * unit_roundoff<R>()) + tiny<R>();
}

template <class R>
inline R down(const R& x) {
  using std::abs;
  return x - abs(x) * (4 * unit_roundoff<R>()) - tiny<R>();
}

}  // namespace detail

// Complex disk {z : |z - c| <= r}.
template <class R>
struct Ball {
  Complex<R> c;
  R r{0};

  Ball() = default;
  Ball(const Complex<R>& center, const R& radius = R(0)) : c(center), r(radius) {}  // NOLINT
  Ball(const R& center) : c(center), r(0) {}  // NOLINT

  static Ball point(const Complex<R>& z) { return Ball(z, R(0)); }

  bool is_point() const { return r == 0; }

  // Upper bound on |z| over the ball.
  R mag() const { return detail::up(R(detail::up(abs(c)) + r)); }
  // Lower bound on |z| over the ball (0 if the ball touches the origin).
  R mig() const {
    R m = detail::down(R(detail::down(abs(c)) - r));
    return m > 0 ? m : R(0);
  }
  bool contains(const Complex<R>& z) const { return abs(z - c) <= r; }
  bool contains_zero() const { return mig() == 0; }
  bool is_exact(const R& v) const { return r == 0 && c.re == v && c.im == 0; }
};

using BallComplex = Ball<long double>;

template <class R>
inline Ball<R> operator+(const Ball<R>& a, const Ball<R>& b) {
  if (a.is_exact(R(0))) return b;
  if (b.is_exact(R(0))) return a;
  Complex<R> c = a.c + b.c;
  R err = detail::up(abs(c)) * (2 * unit_roundoff<R>());
  return Ball<R>(c, detail::up(R(a.r + b.r + err)));
}

template <class R>
inline Ball<R> operator-(const Ball<R>& a) {
  return Ball<R>(-a.c, a.r);
}

template <class R>
inline Ball<R> operator-(const Ball<R>& a, const Ball<R>& b) {
  return a + (-b);
}

template <class R>
inline Ball<R> operator*(const Ball<R>& a, const Ball<R>& b) {
  if (a.is_exact(R(0)) || b.is_exact(R(1))) return a;
  if (b.is_exact(R(0)) || a.is_exact(R(1))) return b;
  Complex<R> c = a.c * b.c;
  R ma = detail::up(abs(a.c));
  R mb = detail::up(abs(b.c));
  R err = detail::up(R(ma * mb)) * (8 * unit_roundoff<R>());
  R rad = ma * b.r + mb * a.r + a.r * b.r + err;
  return Ball<R>(c, detail::up(rad));
}

template <class R>
inline Ball<R> operator*(const Ball<R>& a, const R& s) {
  using std::abs;
  if (s == 1) return a;
  if (s == 0) return Ball<R>(Complex<R>(R(0)));
  Complex<R> c = a.c * s;
  R err = detail::up(abs(c)) * (4 * unit_roundoff<R>());
  return Ball<R>(c, detail::up(R(a.r * abs(s) + err)));
}

template <class R>
inline Ball<R> operator*(const R& s, const Ball<R>& a) {
  return a * s;
}

// 1/b, valid when b excludes the origin.
template <class R>
inline Ball<R> inv(const Ball<R>& b) {
  R m = b.mig();
  Complex<R> c = Complex<R>(R(1)) / b.c;
  R cm = detail::down(abs(b.c));
  R rad = m > 0 ? detail::up(R(b.r / (m * cm))) : std::numeric_limits<R>::infinity();
  R err = detail::up(abs(c)) * (8 * unit_roundoff<R>());
  return Ball<R>(c, detail::up(R(rad + err)));
}

template <class R>
inline Ball<R> operator/(const Ball<R>& a, const Ball<R>& b) {
  return a * inv(b);
}

template <class R>
inline bool overlaps(const Ball<R>& a, const Ball<R>& b) {
  return abs(a.c - b.c) <= detail::up(R(a.r + b.r));
}

template <class R>
inline Ball<R> add_error(Ball<R> b, const R& e) {
  if (e == 0) return b;
  b.r = detail::up(R(b.r + e));
  return b;
}

template <class To, class From>
inline Ball<To> convert_ball(const Ball<From>& b) {
  if constexpr (std::is_same_v<To, From>) return b;
  Complex<To> c(convert<To>(b.c.re), convert<To>(b.c.im));
  To r = detail::up(convert<To>(b.r));
  if constexpr (std::numeric_limits<To>::digits < std::numeric_limits<From>::digits) {
    // Narrowing: account for rounding the center.
    r = detail::up(To(r + detail::up(abs(c)) * (2 * unit_roundoff<To>())));
  }
  return Ball<To>(c, r);
}

}  // namespace thetaspec
