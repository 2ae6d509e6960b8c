#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

long double circle_radius(long double q_abs, int k) {
  if (!(q_abs > 0 && q_abs < 1)) raise(ErrorKind::DomainError, "need 0 < |q| < 1");
  if (k < 0) raise(ErrorKind::DomainError, "need k >= 0");
  return std::pow(q_abs, -(k + 0.5L));
}

long double theta_abs_on_circle(const BallComplex& q, long double radius, long double w) {
  BallComplex x(polar(radius, w));
  return abs(theta_partial_ball<long double>(q, x, 0, 0, 1e-19L).first.c);
}

// sum_{i >= 1} c_i q^{e_i} x^i with c_i = (i+1)(i+2)/2, e_i = i(i+5)/2.
IntervalReal dominance_rest(long double q_max, long double x_max) {
  if (!(q_max > 0 && q_max < 1 && x_max > 0)) raise(ErrorKind::DomainError, "need 0 < q < 1 and x > 0");
  IntervalReal q(q_max), x(x_max);
  IntervalReal sum(0);
  IntervalReal t = pow(q, 3u) * x;  // q^{e_1} x
  for (int i = 1; i < 100000; ++i) {
    IntervalReal c((i + 1.0L) * (i + 2) / 2);
    sum += c * t;
    // t_{i+1}/t_i = q^{i+3} x; coefficient ratio (i+3)/(i+1) <= 2.
    IntervalReal step = pow(q, static_cast<unsigned>(i + 3)) * x;
    long double ratio = round_up(step.hi() * (i + 4) / (i + 2));
    IntervalReal next = IntervalReal((i + 2.0L) * (i + 3) / 2) * t * step;
    if (ratio <= 0.5L && next.hi() <= 1e-22L * sum.lo()) {
      sum += IntervalReal(0, round_up(next.hi() / (1 - ratio)));
      return sum;
    }
    t *= step;
  }
  raise(ErrorKind::NonConvergent, "dominance series");
}

DominanceCertificate dominance(const char* name, long double q_max, long double x_max) {
  DominanceCertificate c;
  c.name = name;
  c.q_max = q_max;
  c.x_max = x_max;
  c.first_term = IntervalReal(1);
  c.rest = dominance_rest(q_max, x_max);
  c.margin = round_down(1 - c.rest.hi());
  c.certified = c.margin > 0;
  return c;
}

}  // namespace

CircleCertificate circle_nonvanishing(const BallComplex& q, int k, int n_subdiv) {
  if (n_subdiv < 1) raise(ErrorKind::DomainError, "need at least one arc");
  CircleCertificate out;
  out.radius = circle_radius(abs(q.c), k);
  out.min_lower_bound = std::numeric_limits<long double>::infinity();
  out.min_sampled = std::numeric_limits<long double>::infinity();
  const int budget = n_subdiv * 256;
  struct Arc {
    long double w0, w1;
  };
  std::vector<Arc> stack;
  for (int i = n_subdiv - 1; i >= 0; --i) stack.push_back({kTwoPi * i / n_subdiv, kTwoPi * (i + 1) / n_subdiv});
  int seen = 0;
  while (!stack.empty()) {
    Arc a = stack.back();
    stack.pop_back();
    long double wm = (a.w0 + a.w1) / 2;
    // Every point of the arc lies within R * (w1 - w0) / 2 of the midpoint.
    long double rad = detail::up(out.radius * (a.w1 - a.w0) / 2 + out.radius * 1e-17L);
    BallComplex x(polar(out.radius, wm), rad);
    BallComplex th = theta_partial_ball<long double>(q, x, 0, 0, 1e-19L).first;
    out.min_sampled = std::min(out.min_sampled, abs(th.c));
    if (th.mig() > 0) {
      out.min_lower_bound = std::min(out.min_lower_bound, th.mig());
      ++out.arcs;
      continue;
    }
    if (++seen + static_cast<int>(stack.size()) > budget)
      raise(ErrorKind::Inconclusive, "circle arcs could not be separated from 0 near angle " +
                                         std::to_string(static_cast<double>(wm)));
    stack.push_back({wm, a.w1});
    stack.push_back({a.w0, wm});
  }
  out.nonvanishing = out.min_lower_bound > 0;
  return out;
}

long double circle_min_modulus(const std::complex<long double>& qs, int k, int samples) {
  if (samples < 8) raise(ErrorKind::DomainError, "need at least 8 samples");
  BallComplex q(Complex<long double>(qs.real(), qs.imag()));
  long double radius = circle_radius(std::abs(qs), k);
  int best = 0;
  long double best_v = std::numeric_limits<long double>::infinity();
  for (int i = 0; i < samples; ++i) {
    long double v = theta_abs_on_circle(q, radius, kTwoPi * i / samples);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  long double a = kTwoPi * (best - 1) / samples;
  long double b = kTwoPi * (best + 1) / samples;
  const long double g = (std::sqrt(5.0L) - 1) / 2;
  long double c = b - g * (b - a), d = a + g * (b - a);
  long double fc = theta_abs_on_circle(q, radius, c), fd = theta_abs_on_circle(q, radius, d);
  for (int it = 0; it < 200 && b - a > 1e-15L; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = theta_abs_on_circle(q, radius, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = theta_abs_on_circle(q, radius, d);
    }
  }
  return std::min({best_v, fc, fd});
}

DominanceCertificate theta_xx_nonvanishing(long double q_max, long double x_max) {
  return dominance("theta_xx", q_max, x_max);
}

DominanceCertificate no_common_zero_thetaq_thetax(long double q_max, long double x_max) {
  // With i = j - 1 the series coincides with the theta_xx one.
  return dominance("theta_q/theta_x", q_max, x_max);
}

IntervalReal transversality_chi(long double q_abs, long double x_abs) {
  if (!(q_abs > 0 && q_abs < 1 && x_abs > 0)) raise(ErrorKind::DomainError, "need 0 < |q| < 1 and |x| > 0");
  IntervalReal q(q_abs);
  IntervalReal y = sqr(q) * IntervalReal(x_abs);
  IntervalReal sum(0);
  IntervalReal t = q * sqr(y);  // j = 3: q^{1} y^{2}
  for (int j = 3; j < 100000; ++j) {
    sum += IntervalReal(j * (j + 1.0L) / 2) * t;
    IntervalReal step = pow(q, static_cast<unsigned>(j - 1)) * y;
    long double ratio = round_up(step.hi() * (j + 3) / (j + 1));
    IntervalReal next = IntervalReal((j + 1.0L) * (j + 2) / 2) * t * step;
    if (ratio <= 0.5L && next.hi() <= 1e-22L * sum.lo()) {
      sum += IntervalReal(0, round_up(next.hi() / (1 - ratio)));
      return sum;
    }
    t *= step;
  }
  raise(ErrorKind::NonConvergent, "transversality series");
}

TransversalityCertificate transversality_check(long double q_abs, long double x_lo, long double x_hi) {
  if (x_hi == 0) x_hi = lambda_radius();
  if (!(x_lo > 0 && x_lo < x_hi)) raise(ErrorKind::DomainError, "need 0 < x_lo < x_hi");
  TransversalityCertificate c;
  c.q_abs = q_abs;
  c.justification =
      "3y - 1 - chi(y) is concave in y = |q|^2 |x| since chi has nonnegative coefficients; "
      "positivity at both ends of the x-range covers the interval";
  c.certified = true;
  for (long double x : {x_lo, 7.0L, x_hi}) {
    if (x > x_hi) continue;
    TransversalityEndpoint e;
    e.x = x;
    e.y = sqr(IntervalReal(q_abs)) * IntervalReal(x);
    e.chi = transversality_chi(q_abs, x);
    e.margin = (IntervalReal(3) * e.y - IntervalReal(1) - e.chi).lo();
    e.certified = e.margin > 0;
    c.certified = c.certified && e.certified;
    c.endpoints.push_back(e);
  }
  return c;
}

long double lambda_radius() { return 2 / f_gauge(0.29L); }

long double gamma_radius(long double c1) { return 2 / f_gauge(c1); }

}  // namespace thetaspec
