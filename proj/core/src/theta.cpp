#include "thetaspec/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thetaspec {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

long double log_or_neg_inf(long double v) { return v > 0 ? std::log(v) : -kInf; }

}  // namespace

bool supported_order(int dx, int dq) {
  return (dq == 0 && dx >= 0 && dx <= 2) || (dq == 1 && dx >= 0 && dx <= 1);
}

TruncationPlan truncation_plan(long double q_abs, long double x_abs, int dx, int dq, int n_terms) {
  TruncationPlan plan;
  plan.n_terms = n_terms;
  const int j0 = std::max(dx, dq);
  if (n_terms <= 0 && j0 == 0) {
    // The j = 0 term has modulus 1.
    TruncationPlan rest = truncation_plan(q_abs, x_abs, dx, dq, 1);
    plan.tail_bound = round_up(1 + rest.tail_bound);
    return plan;
  }
  const long long n = std::max<long long>({n_terms, j0, 1});
  // Ratio of consecutive term bounds is decreasing in the index.
  long double cr = static_cast<long double>(n + 1) / static_cast<long double>(n + 1 - dx);
  if (dq) cr *= static_cast<long double>(n + 2) / static_cast<long double>(n);
  const long double lq = log_or_neg_inf(q_abs);
  const long double lx = log_or_neg_inf(x_abs);
  auto scaled = [](long double k, long double l) { return k == 0 ? 0.0L : k * l; };
  long double log_rho = std::log(cr) + scaled(n + 1, lq) + lx;
  long double rho = std::exp(log_rho);
  if (!(rho < 1)) return plan;
  long double coef = static_cast<long double>(detail::falling(n, dx));
  if (dq) coef *= static_cast<long double>(detail::triangular(n));
  long double log_t = std::log(coef) + scaled(detail::triangular(n) - dq, lq) + scaled(n - dx, lx);
  long double t = std::exp(log_t);
  long double bound = t / (1 - rho);
  bound *= 1 + 64 * std::numeric_limits<long double>::epsilon();
  if (bound == 0 && log_t > -kInf) bound = std::numeric_limits<long double>::denorm_min();
  plan.tail_bound = bound;
  return plan;
}

TruncationPlan choose_truncation(long double q_abs, long double x_abs, int dx, int dq,
                                 long double tail_tol, int max_terms) {
  const int j0 = std::max(dx, dq);
  for (int n = j0; n <= max_terms; ++n) {
    TruncationPlan p = truncation_plan(q_abs, x_abs, dx, dq, n);
    if (!std::isfinite(p.tail_bound)) continue;
    long double rho = static_cast<long double>(n + 1) / static_cast<long double>(n + 1 - dx) *
                      std::pow(q_abs, static_cast<long double>(n + 1)) * x_abs;
    if (rho <= 0.5L && p.tail_bound <= tail_tol) return p;
  }
  raise(ErrorKind::NonConvergent, "series tail does not fall below tolerance");
}

ThetaValue theta_partial_eval_detailed(const BallComplex& q, const BallComplex& x, int dx, int dq,
                                       long double tol, int start_precision_bits) {
  if (!supported_order(dx, dq))
    raise(ErrorKind::UnsupportedOrder, "supported orders are (0,0),(1,0),(2,0),(0,1),(1,1)");
  if (!(tol > 0)) raise(ErrorKind::DomainError, "tolerance must be positive");
  if (!(q.mag() < 1)) raise(ErrorKind::NonConvergent, "|q| + radius must be < 1");
  const bool exact = q.is_point() && x.is_point();
  if (q.is_exact(0)) {
    // Only the j = 0 and j = 1 terms survive at q = 0.
    ThetaValue v;
    v.n_terms = 1;
    if (dq == 0) v.value = BallComplex(dx == 0 ? 1.0L : 0.0L);
    else v.value = dx == 0 ? x : BallComplex(1.0L);
    return v;
  }
  ThetaValue best;
  best.value.r = kInf;
  if (start_precision_bits <= 64) {
    auto [b, n] = theta_partial_ball<long double>(q, x, dx, dq, tol / 4);
    best = {b, n, 64};
    if (b.r <= tol) return best;
  }
  Ball<hp_real> qh = convert_ball<hp_real>(q);
  Ball<hp_real> xh = convert_ball<hp_real>(x);
  auto [bh, nh] = theta_partial_ball<hp_real>(qh, xh, dx, dq, tol / 4);
  BallComplex out = convert_ball<long double>(bh);
  if (out.r < best.value.r) best = {out, nh, precision_bits<hp_real>()};
  if (exact && best.value.r > tol)
    raise(ErrorKind::ToleranceUnreachable,
          "radius " + to_decimal(best.value.r, 6) + " exceeds tolerance at working precision");
  return best;
}

BallComplex theta_eval(const BallComplex& q, const BallComplex& x, long double tol) {
  return theta_partial_eval_detailed(q, x, 0, 0, tol).value;
}

BallComplex theta_partial_eval(const BallComplex& q, const BallComplex& x, int dx_order, int dq_order,
                               long double tol) {
  return theta_partial_eval_detailed(q, x, dx_order, dq_order, tol).value;
}

IntervalReal phi_interval(const IntervalReal& r) {
  if (!(r.lo() > 0 && r.hi() < 1)) raise(ErrorKind::DomainError, "phi requires 0 < r < 1");
  IntervalReal s = sqrt(r);
  IntervalReal sum(0);
  int nu = 1;
  IntervalReal term = s;  // r^{nu^2/2} = s^{nu^2}
  for (;; ++nu) {
    term = pow(s, static_cast<unsigned>(nu * nu));
    sum += term;
    // Later terms shrink by at least s^{2nu+1} each step.
    long double ratio = std::pow(s.hi(), 2.0L * nu + 3);
    long double next = term.hi() * std::pow(s.hi(), 2.0L * nu + 1);
    if (ratio < 0.5L && next < 1e-22L * sum.lo()) {
      long double tail = round_up(next / (1 - ratio));
      sum += IntervalReal(0, tail);
      break;
    }
    if (nu > 100000) raise(ErrorKind::NonConvergent, "phi series");
  }
  return sum * IntervalReal(2);
}

long double phi_gauge(long double r) {
  if (!(r > 0 && r < 1)) raise(ErrorKind::DomainError, "phi requires 0 < r < 1");
  return phi_interval(IntervalReal(r)).hi();
}

long double solve_c0(long double tol) {
  if (!(tol > 0)) raise(ErrorKind::DomainError, "tolerance must be positive");
  long double lo = 0.1L, hi = 0.3L;
  while (hi - lo > tol / 8) {
    long double mid = lo / 2 + hi / 2;
    IntervalReal p = phi_interval(IntervalReal(mid));
    if (p.lo() > 1) {
      hi = mid;
    } else if (p.hi() < 1) {
      lo = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }
  long double c = lo / 2 + hi / 2;
  IntervalReal p = phi_interval(IntervalReal(c)) - IntervalReal(1);
  if (p.mag() >= tol) raise(ErrorKind::ToleranceUnreachable, "phi(c0) = 1 not certified to tolerance");
  return c;
}

long double solve_c1(long double tol, long double x_abs) {
  long double lo = 0.16L, hi = 0.3L;
  while (hi - lo > tol) {
    long double mid = lo / 2 + hi / 2;
    IntervalReal m = dominating_term_margin_interval(IntervalReal(mid), 1, IntervalReal(x_abs));
    if (m.lo() > 0) {
      lo = mid;
    } else if (m.hi() < 0) {
      hi = mid;
    } else {
      return mid;
    }
  }
  return lo;
}

GaugeConstants gauge_constants(long double tol) {
  GaugeConstants g;
  g.c0 = solve_c0(tol);
  g.c1 = solve_c1(tol);
  return g;
}

IntervalReal dominating_term_margin_interval(const IntervalReal& q_abs, int k, const IntervalReal& x_abs) {
  if (!(q_abs.lo() > 0 && q_abs.hi() < 1)) raise(ErrorKind::DomainError, "need 0 < |q| < 1");
  if (!(x_abs.lo() > 0)) raise(ErrorKind::DomainError, "need |x| > 0");
  if (k < 0) raise(ErrorKind::DomainError, "need k >= 0");
  IntervalReal term(1);         // q^{e_j} x^j at j
  IntervalReal qpow = q_abs;    // q^{j+1}
  IntervalReal lead(0);
  IntervalReal others(0);
  for (int j = 0;; ++j) {
    if (j == k) lead = term; else others += term;
    if (j > k) {
      // Remaining terms form a sequence with ratio at most q^{j+2} x.
      long double ratio = round_up(qpow.hi() * q_abs.hi() * x_abs.hi());
      long double next = round_up(term.hi() * qpow.hi() * x_abs.hi());
      if (ratio <= 0.5L && next <= 1e-18L * lead.lo()) {
        others += IntervalReal(0, round_up(next / (1 - ratio)));
        break;
      }
    }
    term = term * qpow * x_abs;
    qpow = qpow * q_abs;
    if (j > 100000) raise(ErrorKind::NonConvergent, "dominance series");
  }
  return lead - others;
}

long double dominating_term_margin_at_radius(long double q_abs, int k, long double x_abs) {
  return dominating_term_margin_interval(IntervalReal(q_abs), k, IntervalReal(x_abs)).lo();
}

long double dominating_term_margin(const BallComplex& q, int k) {
  IntervalReal r(q.mig(), q.mag());
  if (!(r.lo() > 0 && r.hi() < 1)) raise(ErrorKind::DomainError, "need 0 < |q| < 1");
  IntervalReal radius = IntervalReal(1) / pow(sqrt(r), static_cast<unsigned>(2 * k + 1));
  return dominating_term_margin_interval(r, k, radius).lo();
}

namespace {

void check_jacobi_domain(const BallComplex& q, const BallComplex& x) {
  if (!(q.mag() < 1)) raise(ErrorKind::DomainError, "Theta* requires |q| < 1");
  if (x.contains_zero()) raise(ErrorKind::DomainError, "Theta* requires x != 0");
}

// (1/x) theta(q, 1/x), the negative-index half of the bilateral series.
BallComplex negative_half(const BallComplex& q, const BallComplex& x, long double tol) {
  BallComplex y = inv(x);
  long double scale = std::max(1.0L, y.mag());
  return y * theta_eval(q, y, tol / scale);
}

}  // namespace

BallComplex jacobi_theta_star_eval(const BallComplex& q, const BallComplex& x, long double tol) {
  check_jacobi_domain(q, x);
  return theta_eval(q, x, tol / 2) + negative_half(q, x, tol / 2);
}

BallComplex xi_tail_eval(const BallComplex& q, const BallComplex& x, long double tol) {
  if (!(q.mag() < 1)) raise(ErrorKind::DomainError, "Xi requires |q| < 1");
  if (!(x.mig() > 1)) raise(ErrorKind::DomainError, "Xi requires |x| > 1");
  return -negative_half(q, x, tol);
}

BallComplex xi_tail_derivative_eval(const BallComplex& q, const BallComplex& x, long double tol) {
  if (!(q.mag() < 1)) raise(ErrorKind::DomainError, "Xi requires |q| < 1");
  if (!(x.mig() > 1)) raise(ErrorKind::DomainError, "Xi requires |x| > 1");
  BallComplex y = inv(x);
  BallComplex y2 = y * y;
  return y2 * theta_eval(q, y, tol / 2) + y2 * y * theta_partial_eval(q, y, 1, 0, tol / 2);
}

std::pair<long double, long double> xi_bounds_outside(long double q_abs, long double radius) {
  if (!(q_abs > 0 && q_abs < 1)) raise(ErrorKind::DomainError, "need 0 < |q| < 1");
  if (!(radius > 1)) raise(ErrorKind::DomainError, "need radius > 1");
  IntervalReal q(q_abs);
  IntervalReal inv_r = IntervalReal(1) / IntervalReal(radius);
  // Terms q^{n(n-1)/2} R^{-n} and n q^{n(n-1)/2} R^{-n-1}, n >= 1.
  IntervalReal term = inv_r;
  IntervalReal qn = q;  // q^n
  IntervalReal s0(0), s1(0);
  for (int n = 1;; ++n) {
    s0 += term;
    s1 += term * inv_r * IntervalReal(static_cast<long double>(n));
    // Ratio term_{m+1}/term_m = q^m / R, decreasing in m.
    IntervalReal ratio_i = qn * inv_r;
    IntervalReal next = term * ratio_i;
    long double ratio = ratio_i.hi() * (n + 2) / (n + 1);
    if (ratio <= 0.5L && next.hi() < 1e-22L * s0.lo()) {
      s0 += IntervalReal(0, round_up(next.hi() / (1 - ratio)));
      s1 += IntervalReal(0, round_up(next.hi() * inv_r.hi() * (n + 1) / (1 - ratio)));
      break;
    }
    term = next;
    qn = qn * q;
    if (n > 100000) raise(ErrorKind::NonConvergent, "Xi bound series");
  }
  return {s0.hi(), s1.hi()};
}

XiSmallness xi_smallness_radius(long double q_abs, long double eps) {
  if (!(eps > 0)) raise(ErrorKind::DomainError, "eps must be positive");
  auto ok = [&](long double r) {
    auto [a, b] = xi_bounds_outside(q_abs, r);
    return a <= eps && b <= eps;
  };
  long double hi = 2;
  while (!ok(hi)) hi *= 2;
  long double lo = std::max(1.0001L, hi / 2);
  if (ok(lo)) hi = lo;
  while (hi / lo > 1.001L) {
    long double mid = std::sqrt(lo * hi);
    if (ok(mid)) hi = mid; else lo = mid;
  }
  auto [a, b] = xi_bounds_outside(q_abs, hi);
  return {hi, a, b};
}

}  // namespace thetaspec
