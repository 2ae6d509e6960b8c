#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"
#include "thetaspec/spectrum.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

namespace {

template <class R>
Complex<R> to_c(cplx z) {
  return Complex<R>(R(z.real()), R(z.imag()));
}

template <class R>
cplx to_cplx(const Complex<R>& z) {
  return {convert<long double>(z.re), convert<long double>(z.im)};
}

// Newton on G(q, s) = (theta, x theta_x) with x = e^s.
template <class R>
std::pair<Complex<R>, Complex<R>> newton_double_zero(Complex<R> q, Complex<R> x, const DoubleZeroOptions& opts,
                                                     int& iterations) {
  const R conv = std::is_floating_point_v<R> ? R(64) * unit_roundoff<R>() : R(1e-40);
  int quiet = 0;
  for (iterations = 1; iterations <= opts.max_iterations; ++iterations) {
    ThetaJet<R> J = theta_jet<R>(q, x, opts.truncation_degree);
    Complex<R> g1 = J.f, g2 = x * J.fx;
    Complex<R> a11 = J.fq, a12 = x * J.fx, a21 = x * J.fqx, a22 = x * (J.fx + x * J.fxx);
    Complex<R> det = a11 * a22 - a12 * a21;
    R size = abs(a11 * a22) + abs(a12 * a21);
    if (!(abs(det) > R(1e-30) * size) || size == R(0))
      raise(ErrorKind::SingularJacobian, "double-zero Jacobian is singular");
    Complex<R> dq = (a22 * g1 - a12 * g2) / det;
    Complex<R> ds = (a11 * g2 - a21 * g1) / det;
    R lam(1);
    while (abs(dq) * lam > R(0.05) || abs(ds) * lam > R(0.25)) lam /= 2;
    q -= dq * lam;
    x *= exp(ds * (-lam));
    if (!(abs(q) < R(1))) raise(ErrorKind::NoConvergence, "iterate left the unit disk");
    if (lam == R(1) && abs(dq) + abs(ds) < conv) {
      if (++quiet >= 2) return {q, x};
    }
  }
  raise(ErrorKind::NoConvergence, "double-zero Newton iteration budget exhausted");
}

void verify_point(SpectralPoint& p, const DoubleZeroOptions& opts) {
  if (opts.truncation_degree > 0 || opts.fast) {
    Complex<hp_real> q = to_c<hp_real>(p.q_star), x = to_c<hp_real>(p.x_star);
    ThetaJet<hp_real> J = theta_jet<hp_real>(q, x, opts.truncation_degree);
    p.residual_theta = convert<long double>(abs(J.f));
    p.residual_theta_x = convert<long double>(abs(J.fx));
    p.theta_xx_modulus = convert<long double>(abs(J.fxx));
    return;
  }
  Ball<wide_real> q(to_c<wide_real>(p.q_star)), x(to_c<wide_real>(p.x_star));
  auto f = theta_partial_ball<wide_real>(q, x, 0, 0, 1e-60L).first;
  auto fx = theta_partial_ball<wide_real>(q, x, 1, 0, 1e-60L).first;
  auto fxx = theta_partial_ball<wide_real>(q, x, 2, 0, 1e-60L).first;
  p.residual_theta = convert<long double>(f.mag());
  p.residual_theta_x = convert<long double>(fx.mag());
  p.theta_xx_modulus = convert<long double>(fxx.mig());
}

}  // namespace

SpectralPoint find_double_zero(cplx q_seed, cplx x_seed, long double tol, const DoubleZeroOptions& opts) {
  if (!(tol > 0)) raise(ErrorKind::DomainError, "tolerance must be positive");
  if (!(std::abs(q_seed) < 1)) raise(ErrorKind::DomainError, "|q_seed| must be < 1");
  if (x_seed == cplx(0) || q_seed == cplx(0)) raise(ErrorKind::DomainError, "seed must have q != 0, x != 0");
  SpectralPoint p;
  if (opts.fast) {
    auto [q, x] = newton_double_zero<long double>(to_c<long double>(q_seed), to_c<long double>(x_seed), opts,
                                                  p.iterations);
    p.q_star = to_cplx(q);
    p.x_star = to_cplx(x);
  } else {
    auto [q, x] = newton_double_zero<hp_real>(to_c<hp_real>(q_seed), to_c<hp_real>(x_seed), opts, p.iterations);
    p.q_star = to_cplx(q);
    p.x_star = to_cplx(x);
  }
  if (!opts.verify) return p;
  verify_point(p, opts);
  if (!(p.residual_theta < tol && p.residual_theta_x < tol))
    raise(ErrorKind::NoConvergence, "double-zero residuals above tolerance");
  if (!(p.theta_xx_modulus > 1e-6L)) raise(ErrorKind::SingularJacobian, "theta_xx vanishes: not a double zero");
  return p;
}

long double truncation_double_root() {
  QPoly v(truncation_resultant());
  auto roots = isolate_real_roots(v, mpq_class(3, 10), mpq_class(32, 100));
  if (roots.size() != 1) raise(ErrorKind::MissedBranch, "expected one root of V in (0.3, 0.32)");
  mpq_class w(1);
  w /= mpz_class(1) << 80;
  RootInterval r = refine_root(square_free_part(v), roots.front(), w);
  const mpq_class mid = (r.lo + r.hi) / 2;
  const double hi = mid.get_d();
  return static_cast<long double>(hi) + static_cast<long double>(mpq_class(mid - hi).get_d());
}

std::pair<long double, long double> truncation_seed() {
  const long double l = truncation_double_root();
  // U_x(l, x) = l + 2 l^3 x + 3 l^6 x^2 + 4 l^10 x^3; its real roots by
  // Durand-Kerner, keeping the one where U is smallest.
  const long double c[4] = {l, 2 * std::pow(l, 3.0L), 3 * std::pow(l, 6.0L), 4 * std::pow(l, 10.0L)};
  auto ux = [&](cplx x) { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; };
  auto u = [&](long double x) {
    return 1 + l * x + std::pow(l, 3.0L) * x * x + std::pow(l, 6.0L) * x * x * x + std::pow(l, 10.0L) * x * x * x * x;
  };
  cplx z[3] = {cplx(0.4L, 0.9L), std::pow(cplx(0.4L, 0.9L), 2), std::pow(cplx(0.4L, 0.9L), 3)};
  for (auto& zi : z) zi *= 10.0L;
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < 3; ++i) {
      cplx den = c[3];
      for (int k = 0; k < 3; ++k)
        if (k != i) den *= z[i] - z[k];
      z[i] -= ux(z[i]) / den;
    }
  }
  long double best_x = 0, best = INFINITY;
  for (auto zi : z) {
    if (std::fabs(zi.imag()) > 1e-8L * std::abs(zi)) continue;
    long double v = std::fabs(u(zi.real()));
    if (v < best) {
      best = v;
      best_x = zi.real();
    }
  }
  if (!(best < 1e-6L)) raise(ErrorKind::MissedBranch, "no double zero of the quartic truncation");
  return {l, best_x};
}

long double AsymptoticModel::predict_q(int j) const {
  const long double pi = std::numbers::pi_v<long double>;
  if (j < 1) raise(ErrorKind::DomainError, "index must be >= 1");
  if (family == Family::positive_q) return 1 - pi / (2 * j) + std::log(static_cast<long double>(j)) / (8.0L * j * j);
  return 1 - pi / (8 * j);
}

long double AsymptoticModel::predict_y(int j) const {
  const long double pi = std::numbers::pi_v<long double>;
  if (j < 1) raise(ErrorKind::DomainError, "index must be >= 1");
  if (family == Family::positive_q)
    return -std::exp(pi) * std::exp(-std::log(static_cast<long double>(j)) / (4.0L * j));
  return std::exp(pi / 2);
}

std::vector<SpectralPoint> real_spectrum_scan(int j_max, long double tol) {
  if (j_max < 0) raise(ErrorKind::DomainError, "j_max must be >= 0");
  std::vector<SpectralPoint> out;
  if (j_max == 0) return out;
  const long double e_pi = std::exp(std::numbers::pi_v<long double>);
  AsymptoticModel model;
  std::vector<long double> cs, ds;
  for (int j = 1; j <= j_max; ++j) {
    cplx qs, xs;
    const long double base = model.predict_q(j);
    const long double ybase = -std::log(static_cast<long double>(j)) / (4.0L * j);
    if (j == 1) {
      auto [l, x] = truncation_seed();
      qs = l;
      xs = x;
    } else {
      long double c = cs.size() < 2 ? cs.back() : 2 * cs.back() - cs[cs.size() - 2];
      long double d = ds.size() < 2 ? ds.back() : 2 * ds.back() - ds[ds.size() - 2];
      qs = base + c / (static_cast<long double>(j) * j);
      xs = -e_pi * std::exp(ybase + d / j);
    }
    SpectralPoint p;
    try {
      p = find_double_zero(qs, xs, tol);
    } catch (const Error& e) {
      raise(ErrorKind::MissedBranch, "spectral number " + std::to_string(j) + ": " + e.what());
    }
    const long double q = p.q_star.real(), x = p.x_star.real();
    if (std::fabs(p.q_star.imag()) > tol || std::fabs(p.x_star.imag()) > tol || !(q > 0 && q < 1) || !(x < 0))
      raise(ErrorKind::MissedBranch, "spectral number " + std::to_string(j) + " left the real axis");
    if (!out.empty() && !(q > out.back().q_star.real() + 1e-7L))
      raise(ErrorKind::MissedBranch, "ordering violated at index " + std::to_string(j));
    p.index_label = j;
    out.push_back(p);
    cs.push_back((q - base) * j * j);
    ds.push_back((std::log(-x / e_pi) - ybase) * j);
  }
  return out;
}

namespace {

struct Critical {
  long double x;
  long double value;
  bool minimum;
};

long double real_theta(long double q, long double x) { return theta_jet_auto(q, x).f.real(); }
long double real_theta_x(long double q, long double x) { return theta_jet_auto(q, x).fx.real(); }

// Real critical points of theta(q, .) with sign(x) = side, |x| in [1.3, 12].
std::vector<Critical> critical_points(long double q, int side, int n) {
  std::vector<Critical> out;
  const long double lo = std::log(1.3L), hi = std::log(12.0L);
  long double xp = side * std::exp(lo);
  long double gp = real_theta_x(q, xp);
  for (int i = 1; i <= n; ++i) {
    long double x = side * std::exp(lo + (hi - lo) * i / n);
    long double g = real_theta_x(q, x);
    if ((gp < 0) != (g < 0)) {
      // Illinois regula falsi on theta_x.
      long double a = xp, b = x, fa = gp, fb = g;
      int last = 0;
      for (int it = 0; it < 40 && std::fabs(b - a) > 1e-15L * std::fabs(b); ++it) {
        long double c = b - fb * (b - a) / (fb - fa);
        long double fc = real_theta_x(q, c);
        if ((fc < 0) == (fb < 0)) {
          b = c;
          fb = fc;
          if (last == -1) fa /= 2;
          last = -1;
        } else {
          a = b;
          fa = fb;
          b = c;
          fb = fc;
          last = 1;
        }
      }
      out.push_back({b, real_theta(q, b), gp < 0});
    }
    xp = x;
    gp = g;
  }
  return out;
}

const Critical* nearest(const std::vector<Critical>& v, const Critical& c) {
  const Critical* best = nullptr;
  for (const auto& p : v)
    if (!best || std::fabs(std::log(p.x / c.x)) < std::fabs(std::log(best->x / c.x))) best = &p;
  return best;
}

}  // namespace

std::vector<SpectralPoint> negative_spectrum_scan(int k_max, long double tol, const NegativeScanOptions& opts) {
  if (k_max < 0) raise(ErrorKind::DomainError, "k_max must be >= 0");
  std::vector<SpectralPoint> out;
  if (k_max == 0) return out;
  if (!(opts.q_min < 0 && opts.q_floor > -1 && opts.q_floor < opts.q_min))
    raise(ErrorKind::DomainError, "need -1 < q_floor < q_min < 0");
  if (opts.x_grid < 16) raise(ErrorKind::DomainError, "x_grid must be >= 16");

  std::vector<SpectralPoint> side[2];  // x < 0, x > 0
  auto accept = [&](const SpectralPoint& p) {
    const long double qr = p.q_star.real();
    if (std::fabs(p.q_star.imag()) > tol || std::fabs(p.x_star.imag()) > tol || !(qr < 0 && qr > -1)) return false;
    for (const auto& o : out)
      if (std::fabs(o.q_star.real() - qr) < 1e-7L) return false;
    out.push_back(p);
    side[p.x_star.real() < 0 ? 0 : 1].push_back(p);
    return true;
  };

  // Scan: a double zero appears where a real critical value changes sign.
  std::vector<Critical> prev[2];
  long double q_prev = opts.q_min;
  for (int s = 0; s < 2; ++s) prev[s] = critical_points(q_prev, s == 0 ? -1 : 1, opts.x_grid);
  while (static_cast<int>(out.size()) < k_max && (side[0].size() < 2 || side[1].size() < 2)) {
    long double gap = 1 + q_prev;
    long double q = q_prev - std::clamp(0.25L * gap * gap, 1e-5L, 0.004L);
    if (q < opts.q_floor) break;
    for (int s = 0; s < 2; ++s) {
      std::vector<Critical> cur = critical_points(q, s == 0 ? -1 : 1, opts.x_grid);
      for (const Critical& c : cur) {
        const Critical* m = nearest(prev[s], c);
        if (!m || m->minimum != c.minimum || nearest(cur, *m) != &c) continue;
        if ((c.value < 0) == (m->value < 0)) continue;
        long double w = m->value / (m->value - c.value);
        long double qs = q_prev + w * (q - q_prev);
        long double xs = m->x + w * (c.x - m->x);
        try {
          accept(find_double_zero(qs, xs, tol));
        } catch (const Error&) {
        }
      }
      prev[s] = std::move(cur);
    }
    q_prev = q;
  }

  // Extrapolation per side.
  auto inv_gap = [](const SpectralPoint& p) { return 1 / (1 + p.q_star.real()); };
  while (static_cast<int>(out.size()) < k_max) {
    if (side[0].size() < 2 || side[1].size() < 2) break;
    // Continue the side whose next point is predicted closer to 0.
    long double pred_u[2], pred_x[2];
    for (int s = 0; s < 2; ++s) {
      const auto& v = side[s];
      const auto &p1 = v[v.size() - 2], &p2 = v.back();
      pred_u[s] = 2 * inv_gap(p2) - inv_gap(p1);
      pred_x[s] = 2 * p2.x_star.real() - p1.x_star.real();
    }
    const int s = pred_u[0] <= pred_u[1] ? 0 : 1;
    const long double qs = 1 / pred_u[s] - 1;
    if (qs < opts.q_floor) break;
    const long double step = inv_gap(side[s].back()) - inv_gap(side[s][side[s].size() - 2]);
    bool ok = false;
    try {
      SpectralPoint p = find_double_zero(qs, pred_x[s], tol);
      const long double d = inv_gap(p) - inv_gap(side[s].back());
      ok = (p.x_star.real() < 0) == (s == 0) && d > 0.5L * step && d < 1.5L * step && accept(p);
    } catch (const Error&) {
    }
    if (!ok) raise(ErrorKind::MissedBranch, "extrapolated seed near q = " + to_decimal(qs, 10) + " did not converge");
  }

  std::sort(out.begin(), out.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return a.q_star.real() > b.q_star.real(); });
  if (static_cast<int>(out.size()) < k_max)
    raise(ErrorKind::MissedBranch, "found " + std::to_string(out.size()) + " negative spectral numbers, wanted " +
                                       std::to_string(k_max));
  out.resize(k_max);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].index_label = static_cast<int>(i + 1);
    if (i > 0 && !(out[i].q_star.real() < out[i - 1].q_star.real()))
      raise(ErrorKind::MissedBranch, "negative spectral numbers not strictly decreasing");
  }
  return out;
}

long double asymptotic_constant(const std::vector<SpectralPoint>& pts, int j_lo, int j_hi) {
  AsymptoticModel m;
  long double c = 0;
  bool any = false;
  for (const auto& p : pts) {
    if (!p.index_label) continue;
    int j = *p.index_label;
    if (j < j_lo || j > j_hi) continue;
    c = std::max(c, std::fabs(p.q_star.real() - m.predict_q(j)) * j * j);
    any = true;
  }
  if (!any) raise(ErrorKind::DomainError, "no spectral points in the index range");
  return c;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectralPoint>& pts) {
  os << "index,q_re,q_im,x_re,x_im,residual_theta,residual_theta_x,theta_xx_modulus\n";
  for (const auto& p : pts) {
    os << (p.index_label ? std::to_string(*p.index_label) : "") << ',' << to_decimal(p.q_star.real(), 17) << ','
       << to_decimal(p.q_star.imag(), 17) << ',' << to_decimal(p.x_star.real(), 17) << ','
       << to_decimal(p.x_star.imag(), 17) << ',' << to_decimal(p.residual_theta, 6) << ','
       << to_decimal(p.residual_theta_x, 6) << ',' << to_decimal(p.theta_xx_modulus, 10) << '\n';
  }
}

}  // namespace thetaspec
