#include <cmath>
#include <numbers>

#include "thetaspec/error.hpp"
#include "thetaspec/spectrum.hpp"

namespace thetaspec {

namespace {

struct Newton {
  cplx x;
  ProductJet jet;  // at x
  long double residual = 0;
  bool ok = false;
};

// Stops at the first iterate whose Newton correction is below 1e-14 |x|.
// |theta| relative to the largest series term cannot serve as the test:
// for |q| near 1 it is tiny on whole regions without zeros.
Newton newton_x(cplx q, cplx x, int max_newton, long double tol) {
  Newton out;
  for (int it = 0; it <= max_newton; ++it) {
    ProductJet J = theta_jet_auto(q, x);
    if (J.fx == cplx(0)) return out;
    const cplx dx = J.f / J.fx;
    if (std::abs(dx) <= 1e-14L * std::abs(x)) {
      out.x = x;
      out.jet = J;
      out.residual = std::abs(J.f) / J.scale;
      out.ok = out.residual < tol;
      return out;
    }
    x -= dx;
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || x == cplx(0)) return out;
  }
  return out;
}

bool guard_active(const TrackOptions& opts, int j, cplx q) {
  switch (opts.guard) {
    case AnnulusGuard::always: return true;
    case AnnulusGuard::never: return false;
    case AnnulusGuard::automatic: return j >= 3 && std::abs(q) <= 1.0L / 3;
  }
  return false;
}

void check_guard(const TrackOptions& opts, int j, cplx q, cplx x) {
  if (!guard_active(opts, j, q)) return;
  const long double a = std::abs(q), m = std::abs(x);
  const long double lo = std::pow(a, -j + 0.5L), hi = std::pow(a, -j - 0.5L);
  if (!(m > lo && m < hi))
    raise(ErrorKind::BranchJump, "xi_" + std::to_string(j) + " left the annulus at q = (" +
                                     to_decimal(q.real(), 8) + ", " + to_decimal(q.imag(), 8) + ")");
}

}  // namespace

ZeroTrack track_zero(int j, const std::vector<cplx>& q_path, long double tol, const TrackOptions& opts) {
  if (j < 1) raise(ErrorKind::DomainError, "branch index must be >= 1");
  if (q_path.empty()) raise(ErrorKind::DomainError, "empty path");
  if (!(tol > 0)) raise(ErrorKind::DomainError, "tolerance must be positive");
  for (cplx q : q_path)
    if (!(std::abs(q) < 1) || q == cplx(0)) raise(ErrorKind::DomainError, "path must stay in 0 < |q| < 1");
  if (std::abs(q_path.front()) > 0.05L) raise(ErrorKind::DomainError, "path must start at |q| <= 0.05");

  ZeroTrack out;
  out.j = j;
  cplx q = q_path.front();
  Newton n = newton_x(q, -std::pow(q, -j), opts.max_newton, tol);
  if (!n.ok) raise(ErrorKind::NoConvergence, "no zero near -q^-j at the start of the path");
  cplx x = n.x;
  ProductJet jet = n.jet;
  check_guard(opts, j, q, x);
  out.samples.push_back({q, x, n.residual});

  for (size_t i = 1; i < q_path.size(); ++i) {
    const cplx target = q_path[i];
    const long double len = std::abs(target - q);
    long double s = 0, h = 1;
    const cplx start = q;
    long double residual = n.residual;
    while (s < 1) {
      h = std::min(h, 1 - s);
      const bool last = s + h >= 1 - 1e-9L;
      const cplx qn = last ? target : start + (s + h) * (target - start);
      cplx pred = x - jet.fq / jet.fx * (qn - q);
      // Neighbouring zeros sit about |x| (1 - |q|) away; both the predicted
      // move and the Newton correction must stay well inside that.
      const long double room = std::abs(x) * (1 - std::max(std::abs(q), std::abs(qn)));
      Newton c;
      if (std::abs(pred - x) <= 0.25L * room) c = newton_x(qn, pred, opts.max_newton, tol);
      if (c.ok && std::abs(c.x - pred) <= 0.1L * room) {
        q = qn;
        x = c.x;
        jet = c.jet;
        residual = c.residual;
        s = last ? 1 : s + h;
        check_guard(opts, j, q, x);
        h *= 2;
        continue;
      }
      h /= 2;
      if (h * len < opts.min_step)
        raise(ErrorKind::NoConvergence, "continuation step underflow for xi_" + std::to_string(j) + " near q = (" +
                                            to_decimal(q.real(), 8) + ", " + to_decimal(q.imag(), 8) + ")");
    }
    out.samples.push_back({q, x, residual});
  }
  return out;
}

std::vector<cplx> linear_path(cplx a, cplx b, int n) {
  if (n < 1) raise(ErrorKind::DomainError, "need n >= 1");
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) out.push_back(a + (b - a) * (static_cast<long double>(k) / n));
  out.back() = b;
  return out;
}

std::vector<cplx> arc_path(long double r, long double a0, long double a1, int n) {
  if (n < 1) raise(ErrorKind::DomainError, "need n >= 1");
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) out.push_back(std::polar(r, a0 + (a1 - a0) * k / n));
  return out;
}

std::vector<cplx> laurent_coefficients(int j, int n_coeffs, long double fit_radius, int n_samples) {
  if (!(fit_radius > 0 && fit_radius <= 0.1L)) raise(ErrorKind::DomainError, "fit radius must be in (0, 0.1]");
  if (n_coeffs < 1 || n_samples < 2 * n_coeffs) raise(ErrorKind::DomainError, "need n_samples >= 2 n_coeffs >= 2");
  std::vector<cplx> path;
  if (fit_radius > 0.05L) path = linear_path(0.05L, fit_radius, 8);
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  std::vector<cplx> circle = arc_path(fit_radius, 0, two_pi, n_samples);
  size_t first = path.empty() ? 0 : path.size() - 1;
  if (!path.empty()) path.pop_back();
  path.insert(path.end(), circle.begin(), circle.end());
  ZeroTrack t = track_zero(j, path, 1e-14L);
  const cplx closing = t.samples.back().xi, opening = t.samples[first].xi;
  if (std::abs(closing - opening) > 1e-9L * std::abs(opening))
    raise(ErrorKind::BranchJump, "branch did not close around |q| = " + to_decimal(fit_radius, 6));

  std::vector<cplx> g(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const ZeroSample& s = t.samples[first + k];
    g[k] = s.xi * std::pow(s.q, j);
  }
  std::vector<cplx> c(n_coeffs);
  for (int n = 0; n < n_coeffs; ++n) {
    cplx acc = 0;
    for (int k = 0; k < n_samples; ++k) acc += g[k] * std::polar(1.0L, -two_pi * n * k / n_samples);
    c[n] = acc / static_cast<long double>(n_samples) / std::pow(fit_radius, n);
  }
  return c;
}

cplx laurent_eval(const std::vector<cplx>& coeffs, int j, cplx q) {
  if (q == cplx(0)) raise(ErrorKind::DomainError, "q must be nonzero");
  cplx acc = 0;
  for (size_t n = coeffs.size(); n-- > 0;) acc = acc * q + coeffs[n];
  return acc * std::pow(q, -j);
}

cplx zero_branch_value(int j, cplx q, long double tol) {
  const long double a = std::abs(q);
  if (!(a > 0 && a < 1)) raise(ErrorKind::DomainError, "need 0 < |q| < 1");
  if (a <= 0.04L) return track_zero(j, {q}, tol).samples.back().xi;
  int n = std::max(1, static_cast<int>(std::ceil((a - 0.04L) / 0.01L)));
  return track_zero(j, linear_path(0.04L * q / a, q, n), tol).samples.back().xi;
}

ReciprocalSum reciprocal_sum_check(cplx q, int j_max) {
  const long double a = std::abs(q);
  if (!(a > 0 && a <= 0.31L)) raise(ErrorKind::DomainError, "need 0 < |q| <= 0.31");
  if (j_max < 2) raise(ErrorKind::DomainError, "need j_max >= 2");
  ReciprocalSum out;
  out.partial_sum = 0;
  for (int j = 1; j <= j_max; ++j) out.partial_sum += 1.0L / zero_branch_value(j, q);
  out.residual = std::abs(out.partial_sum + q);
  out.tail_bound = std::pow(a, j_max + 0.5L) / (1 - a);
  return out;
}

}  // namespace thetaspec
