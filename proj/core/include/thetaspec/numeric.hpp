#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace thetaspec {

// Working precisions. long double is the certified default; hp_real is the
// escalation rung used by the solvers; wide_real re-checks hp_real results.
using hp_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<100>,
    boost::multiprecision::et_off>;
using wide_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<150>,
    boost::multiprecision::et_off>;

template <class R>
inline R unit_roundoff() {
  return std::numeric_limits<R>::epsilon();
}

template <class R>
inline R tiny() {
  return std::numeric_limits<R>::min();
}

template <class R>
inline R pi() {
  return boost::math::constants::pi<R>();
}

template <class R>
inline int precision_bits() {
  return std::numeric_limits<R>::digits;
}

template <class To, class From>
inline To convert(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_floating_point_v<From>) {
    return To(v);
  } else {
    return v.template convert_to<To>();
  }
}

template <class R>
inline R real_hypot(const R& a, const R& b) {
  if constexpr (std::is_floating_point_v<R>) {
    return std::hypot(a, b);
  } else {
    return sqrt(a * a + b * b);
  }
}

template <class R>
struct Complex {
  R re{0};
  R im{0};

  Complex() = default;
  Complex(const R& r) : re(r), im(0) {}  // NOLINT
  Complex(const R& r, const R& i) : re(r), im(i) {}
  template <class S, class = std::enable_if_t<!std::is_same_v<S, R>>>
  explicit Complex(const Complex<S>& o)
      : re(convert<R>(o.re)), im(convert<R>(o.im)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
  }
  Complex& operator*=(const R& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const R& s) { return a *= s; }
  friend Complex operator*(const R& s, Complex a) { return a *= s; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm.
    using std::abs;
    if (abs(b.re) >= abs(b.im)) {
      R t = b.im / b.re;
      R d = b.re + b.im * t;
      return Complex((a.re + a.im * t) / d, (a.im - a.re * t) / d);
    }
    R t = b.re / b.im;
    R d = b.re * t + b.im;
    return Complex((a.re * t + a.im) / d, (a.im * t - a.re) / d);
  }
  friend Complex operator/(const Complex& a, const R& s) {
    return Complex(a.re / s, a.im / s);
  }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class R>
inline R abs(const Complex<R>& z) {
  return real_hypot(z.re, z.im);
}

template <class R>
inline R norm(const Complex<R>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class R>
inline Complex<R> conj(const Complex<R>& z) {
  return Complex<R>(z.re, -z.im);
}

template <class R>
inline R arg(const Complex<R>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class R>
inline Complex<R> polar(const R& rho, const R& phi) {
  using std::cos;
  using std::sin;
  return Complex<R>(rho * cos(phi), rho * sin(phi));
}

template <class R>
inline Complex<R> exp(const Complex<R>& z) {
  using std::exp;
  return polar(R(exp(z.re)), z.im);
}

template <class R>
inline Complex<R> log(const Complex<R>& z) {
  using std::log;
  return Complex<R>(log(abs(z)), arg(z));
}

template <class R>
inline Complex<R> ipow(Complex<R> z, long long n) {
  if (n < 0) return Complex<R>(R(1)) / ipow(z, -n);
  Complex<R> acc(R(1));
  while (n > 0) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

template <class R>
inline std::complex<double> to_std(const Complex<R>& z) {
  return {convert<double>(z.re), convert<double>(z.im)};
}

template <class R>
inline Complex<R> from_std(const std::complex<double>& z) {
  return Complex<R>(R(z.real()), R(z.imag()));
}

template <class R>
inline Complex<R> from_std(const std::complex<long double>& z) {
  return Complex<R>(R(z.real()), R(z.imag()));
}

// Decimal rendering with enough digits to round-trip the type.
std::string to_decimal(long double v, int digits = 21);
std::string to_decimal(const hp_real& v, int digits = 40);

}  // namespace thetaspec
