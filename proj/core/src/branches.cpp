#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "thetaspec/error.hpp"
#include "thetaspec/spectrum.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

// theta with a flag for values lost in rounding: the product form is
// relatively accurate in each of Theta* and Xi, direct summation relative to
// its largest term.
cplx theta_checked(cplx q, cplx x, long double& min_modulus, bool& lost) {
  ProductJet J = theta_jet_auto(q, x);
  const long double ref = J.xi == cplx(0) ? J.scale : std::abs(J.theta_star) + std::abs(J.xi);
  const long double m = std::abs(J.f);
  min_modulus = std::min(min_modulus, m);
  lost = lost || !(m > 1e-12L * ref);
  return J.f;
}

// Winding number of theta(q, .) around the circle |x - c| = r from n samples.
long double winding(cplx q, cplx c, long double r, int n, long double& min_modulus, bool& lost) {
  long double total = 0;
  cplx prev = theta_checked(q, c + r, min_modulus, lost);
  const cplx first = prev;
  for (int k = 1; k <= n; ++k) {
    cplx v = k == n ? first : theta_checked(q, c + std::polar(r, kTwoPi * k / n), min_modulus, lost);
    total += std::arg(v / prev);
    prev = v;
  }
  return total / kTwoPi;
}

}  // namespace

OmegaResult omega_k_count(cplx q, int k, long double delta, OmegaRadius mode) {
  const long double a = std::abs(q);
  if (!(a >= 0.108L && a <= 0.95L)) raise(ErrorKind::DomainError, "need 0.108 <= |q| <= 0.95");
  if (k < 1) raise(ErrorKind::DomainError, "need k >= 1");
  if (!(delta > 0)) raise(ErrorKind::DomainError, "need delta > 0");
  const cplx mu = -std::pow(q, -k);
  const long double r = mode == OmegaRadius::absolute ? delta : delta * std::abs(mu);
  OmegaResult out;
  out.G = xi_smallness_radius(a, 1e-3L).G;
  out.separation_ok = std::abs(mu) > out.G;
  out.min_modulus = std::numeric_limits<long double>::infinity();
  int prev = std::numeric_limits<int>::min();
  for (int n = 256; n <= (1 << 20); n *= 2) {
    bool lost = false;
    long double w = winding(q, mu, r, n, out.min_modulus, lost);
    if (lost)
      raise(ErrorKind::BoundaryZero, "theta is too small on the circle around mu_" + std::to_string(k));
    int cnt = static_cast<int>(std::lround(w));
    out.samples = n;
    if (cnt == prev) {
      out.count = cnt;
      out.unique = cnt == 1;
      return out;
    }
    prev = cnt;
  }
  raise(ErrorKind::Inconclusive, "winding count did not stabilise");
}

bool omega_k_unique_zero(cplx q, int k, long double delta, OmegaRadius mode) {
  return omega_k_count(q, k, delta, mode).unique;
}

long double min_zero_modulus_estimate(long double a, int j_max, int n_grid) {
  if (!(a >= 0.108L && a < 1)) raise(ErrorKind::DomainError, "need 0.108 <= a < 1");
  if (j_max < 1 || n_grid < 1) raise(ErrorKind::DomainError, "need j_max >= 1 and n_grid >= 1");
  TrackOptions opts;
  opts.guard = AnnulusGuard::never;
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  long double best = std::numeric_limits<long double>::infinity();
  for (int j = 1; j <= j_max; ++j) {
    // Approach the circle along the imaginary axis, away from the real
    // spectral points, then sweep each quarter of the upper half circle.
    std::vector<cplx> leg = linear_path(cplx(0, 0.04L), cplx(0, a), std::max(1, static_cast<int>((a - 0.04L) / 0.01L)));
    for (long double end : {0.0L, 2 * half_pi}) {
      std::vector<cplx> path = leg;
      std::vector<cplx> arc = arc_path(a, half_pi, end, std::max(1, n_grid / 2));
      path.insert(path.end(), arc.begin() + 1, arc.end());
      ZeroTrack t = track_zero(j, path, 1e-12L, opts);
      for (size_t i = leg.size() - 1; i < t.samples.size(); ++i) best = std::min(best, std::abs(t.samples[i].xi));
    }
  }
  return best;
}

RhoTrend rho_trend(const std::vector<long double>& a_list, int j_max) {
  RhoTrend out;
  out.j_max = j_max;
  out.note =
      "empirical: j0(a) is the smallest j0 for which branches j0..j_max track around |q| = a inside their "
      "annuli; the limit rho_j -> 1 is not certified";
  TrackOptions opts;
  opts.guard = AnnulusGuard::always;
  const long double angle = 1.0L;
  for (long double a : a_list) {
    if (!(a > 0 && a < 1)) raise(ErrorKind::DomainError, "need 0 < a < 1");
    RhoTrendRow row;
    row.a = a;
    row.j0 = 1;
    for (int j = j_max; j >= 1; --j) {
      std::vector<cplx> path;
      if (a > 0.05L) {
        path = linear_path(std::polar(0.05L, angle), std::polar(a, angle),
                           std::max(1, static_cast<int>((a - 0.05L) / 0.01L)));
        path.pop_back();
      }
      const size_t first = path.size();
      std::vector<cplx> circle = arc_path(a, angle, angle + kTwoPi, std::max(256, 8 * j));
      path.insert(path.end(), circle.begin(), circle.end());
      std::string failure;
      try {
        ZeroTrack t = track_zero(j, path, 1e-12L, opts);
        cplx x0 = t.samples[first].xi, x1 = t.samples.back().xi;
        if (std::abs(x1 - x0) > 1e-6L * std::abs(x0)) failure = "branch does not close around the circle";
      } catch (const Error& e) {
        failure = e.what();
      }
      if (!failure.empty()) {
        row.j0 = j + 1;
        row.first_failure = failure;
        break;
      }
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace thetaspec
