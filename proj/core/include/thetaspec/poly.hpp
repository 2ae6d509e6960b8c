#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "thetaspec/interval.hpp"

namespace thetaspec {

// Dense univariate polynomial with exact integer coefficients, index = degree.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const mpz_class& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(int k) const;
  const mpz_class& leading() const { return c_.back(); }

  IntPoly derivative() const;
  mpq_class eval(const mpq_class& t) const;
  std::complex<double> eval(std::complex<double> z) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(const mpz_class& s, IntPoly a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  // Exact division over Z; returns false when d does not divide *this.
  bool divides_by(const IntPoly& d, IntPoly* quotient) const;

  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Dense univariate polynomial with exact rational coefficients.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);
  explicit QPoly(const IntPoly& p);
  QPoly(std::initializer_list<long> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int k) const;
  const mpq_class& leading() const { return c_.back(); }

  QPoly derivative() const;
  mpq_class eval(const mpq_class& t) const;
  int sign_at(const mpq_class& t) const;
  long double eval_ld(long double t) const;
  // Interval Horner evaluation over t in [lo, hi].
  IntervalReal eval_interval(const IntervalReal& t) const;
  QPoly monic() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator*(const mpq_class& s, QPoly a);
  friend QPoly operator-(const QPoly& a) { return mpq_class(-1) * a; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // Euclidean division: *this = quot * d + rem.
  void divmod(const QPoly& d, QPoly* quot, QPoly* rem) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

QPoly gcd(const QPoly& a, const QPoly& b);
// p / gcd(p, p'): same distinct roots, all simple.
QPoly square_free_part(const QPoly& p);
// Square-free factors (f_1, f_2, ...) with p = c * prod f_i^i.
std::vector<QPoly> square_free_decomposition(const QPoly& p);

// Complex number with rational real and imaginary parts.
struct GaussianRational {
  mpq_class re;
  mpq_class im;
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Directed segment q(t) = start + t (end - start), t in [0, 1].
struct SegmentQ {
  GaussianRational start;
  GaussianRational end;
  std::string name;

  SegmentQ() = default;
  SegmentQ(GaussianRational s, GaussianRational e, std::string n);

  std::complex<double> at(double t) const;
};

// Real and imaginary parts of a complex polynomial restricted to a segment.
struct RealPolyPair {
  QPoly re_part;
  QPoly im_part;
  // Coefficients are exact rationals.
  bool exact = true;

  friend bool operator==(const RealPolyPair& a, const RealPolyPair& b) {
    return a.re_part == b.re_part && a.im_part == b.im_part;
  }
};

RealPolyPair restrict_to_segment(const IntPoly& p, const SegmentQ& seg);
// Pairwise complex arithmetic on restricted pairs.
RealPolyPair operator+(const RealPolyPair& a, const RealPolyPair& b);
RealPolyPair operator*(const RealPolyPair& a, const RealPolyPair& b);

// f(t) = t - t^{5/2}/(1 - t).
long double f_gauge(long double t);
IntervalReal f_gauge_interval(const IntervalReal& t);

struct MonotonicityCertificate {
  long double lo = 0;
  long double hi = 0;
  int pieces = 0;
  // Certified lower bound on f' over [lo, hi].
  long double min_derivative = 0;
  bool increasing = false;
};

// f'(t) = 1 - t^{3/2}(5/2 - 3t/2)/(1 - t)^2; the subtracted part is
// increasing, so on each piece f' >= its value at the right end.
MonotonicityCertificate f_gauge_monotonicity(long double lo = 0, long double hi = 0.35L, int pieces = 64);

struct TailBounds {
  long double phi = 0;  // upper bound on sum_{j >= j_start} |q|^{j(j+1)/2} |x|^j
  long double psi = 0;  // upper bound on sum_{j >= j_start} j |q|^{j(j+1)/2 - 1} |x|^{j-1}
  IntervalReal phi_enclosure;
  IntervalReal psi_enclosure;
};

TailBounds tail_phi_psi(long double q_abs, long double x_abs, int j_start);
TailBounds tail_phi_psi(const IntervalReal& q_abs, const IntervalReal& x_abs, int j_start);

}  // namespace thetaspec
