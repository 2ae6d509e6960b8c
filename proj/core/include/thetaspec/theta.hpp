#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "thetaspec/ball.hpp"
#include "thetaspec/error.hpp"
#include "thetaspec/interval.hpp"
#include "thetaspec/numeric.hpp"

namespace thetaspec {

// theta(q, x) = sum_{j >= 0} q^{j(j+1)/2} x^j.

struct TruncationPlan {
  int n_terms = 0;
  // Upper bound on the modulus of the series from index n_terms on.
  long double tail_bound = std::numeric_limits<long double>::infinity();
};

// Tail bound of the (dx, dq)-derivative series for |q| <= q_abs,
// |x| <= x_abs when the terms with index < n_terms are summed explicitly.
// Infinite when the geometric ratio at n_terms is not below 1.
TruncationPlan truncation_plan(long double q_abs, long double x_abs, int dx, int dq, int n_terms);

// Smallest plan with tail_bound <= tail_tol and term ratio <= 1/2.
TruncationPlan choose_truncation(long double q_abs, long double x_abs, int dx, int dq,
                                 long double tail_tol, int max_terms = 100000);

bool supported_order(int dx, int dq);

namespace detail {

inline long long triangular(long long j) { return j * (j + 1) / 2; }

inline long long falling(long long j, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= (j - i);
  return r;
}

template <class R>
Ball<R> ball_pow(Ball<R> b, long long n) {
  Ball<R> acc(Complex<R>(R(1)));
  while (n > 0) {
    if (n & 1) acc = acc * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return acc;
}

}  // namespace detail

// Partial sum over 0 <= j < n_terms of the term-wise differentiated series,
// in ball arithmetic. No tail is added.
template <class R>
Ball<R> theta_partial_sum(const Ball<R>& q, const Ball<R>& x, int dx, int dq, int n_terms) {
  const int j0 = std::max(dx, dq);
  Ball<R> sum(Complex<R>(R(0)));
  if (n_terms <= j0) return sum;
  // t_j = q^{e_j - dq} x^{j - dx}; t_{j+1} = t_j * q^{j+1} * x.
  Ball<R> t = detail::ball_pow(q, detail::triangular(j0) - dq) * detail::ball_pow(x, j0 - dx);
  Ball<R> qpow = detail::ball_pow(q, j0 + 1);
  for (int j = j0; j < n_terms; ++j) {
    long long coef = detail::falling(j, dx) * (dq ? detail::triangular(j) : 1);
    sum = sum + t * R(coef);
    if (j + 1 < n_terms) {
      t = t * qpow * x;
      qpow = qpow * q;
    }
  }
  return sum;
}

// Ball evaluation with a certified tail, at precision R. Returns the ball and
// the number of terms used.
template <class R>
std::pair<Ball<R>, int> theta_partial_ball(const Ball<R>& q, const Ball<R>& x, int dx, int dq,
                                           long double tail_tol) {
  if (!supported_order(dx, dq)) raise(ErrorKind::UnsupportedOrder, "derivative order not supported");
  long double qa = convert<long double>(q.mag());
  long double xa = convert<long double>(x.mag());
  if (!(qa < 1)) raise(ErrorKind::NonConvergent, "|q| + radius must be < 1");
  TruncationPlan plan = choose_truncation(qa, xa, dx, dq, tail_tol);
  Ball<R> s = theta_partial_sum(q, x, dx, dq, plan.n_terms);
  return {add_error(s, R(plan.tail_bound)), plan.n_terms};
}

struct ThetaValue {
  BallComplex value;
  int n_terms = 0;
  int precision_bits = 64;
};

// theta and its partial derivatives. Escalates from long double to MPFR when
// rounding prevents reaching tol; ToleranceUnreachable only for point inputs.
ThetaValue theta_partial_eval_detailed(const BallComplex& q, const BallComplex& x, int dx, int dq,
                                       long double tol, int start_precision_bits = 64);

BallComplex theta_eval(const BallComplex& q, const BallComplex& x, long double tol);
BallComplex theta_partial_eval(const BallComplex& q, const BallComplex& x, int dx_order, int dq_order,
                               long double tol);

// phi(r) = 2 sum_{nu >= 1} r^{nu^2/2}.
IntervalReal phi_interval(const IntervalReal& r);
long double phi_gauge(long double r);

struct GaugeConstants {
  long double c0 = 0;
  long double c1 = 0;
  static long double phi_at(long double r) { return phi_gauge(r); }
};

long double solve_c0(long double tol);
// Root of the q*x-dominance margin at |x| = 7.95 on (0.16, 0.3).
long double solve_c1(long double tol, long double x_abs = 7.95L);
GaugeConstants gauge_constants(long double tol = 1e-13L);

// Lower bound on |L| - S over |x| = |q|^{-k-1/2}, L the k-th term and S the
// sum of moduli of the other terms.
long double dominating_term_margin(const BallComplex& q, int k);
long double dominating_term_margin_at_radius(long double q_abs, int k, long double x_abs);
IntervalReal dominating_term_margin_interval(const IntervalReal& q_abs, int k, const IntervalReal& x_abs);

// Theta*(q, x) = sum over all integers j of q^{j(j+1)/2} x^j.
BallComplex jacobi_theta_star_eval(const BallComplex& q, const BallComplex& x, long double tol);
// Xi(q, x) = -sum_{j <= -1} q^{j(j+1)/2} x^j = theta - Theta*.
BallComplex xi_tail_eval(const BallComplex& q, const BallComplex& x, long double tol = 1e-15L);
BallComplex xi_tail_derivative_eval(const BallComplex& q, const BallComplex& x, long double tol = 1e-15L);

struct XiSmallness {
  long double G = 0;          // |Xi|, |Xi'| <= eps whenever |x| >= G
  long double xi_bound = 0;   // certified sup of |Xi| on |x| >= G
  long double dxi_bound = 0;  // certified sup of |Xi'| on |x| >= G
};

// Upper bounds of |Xi| and |Xi'| over |x| >= radius.
std::pair<long double, long double> xi_bounds_outside(long double q_abs, long double radius);
// Smallest G on a relative grid of step 1e-3 with both bounds <= eps.
XiSmallness xi_smallness_radius(long double q_abs, long double eps);

}  // namespace thetaspec
