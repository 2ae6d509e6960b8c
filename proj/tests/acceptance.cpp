// Acceptance gate. One line per criterion; exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <thetaspec/certify.hpp>
#include <thetaspec/constants.hpp>
#include <thetaspec/error.hpp>
#include <thetaspec/report.hpp>
#include <thetaspec/sparse_poly.hpp>
#include <thetaspec/spectrum.hpp>
#include <thetaspec/theta.hpp>

using namespace thetaspec;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAIL ") + what);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BallComplex ball(cplx z) { return BallComplex(Complex<long double>(z.real(), z.imag())); }
cplx center(const BallComplex& b) { return {b.c.re, b.c.im}; }

Verdict exact_resultant() {
  Verdict v;
  const IntPoly V = truncation_resultant();
  v.check(V == IntPoly{1, -12, 52, -80, -60, 288, -128, -192, 0, 0, 256}, "V = 256q^10 - 192q^7 - ... + 1");
  v.check(V == reference_resultant(), "V equals the manifest polynomial");
  PerturbedResultant r = build_perturbed_resultant();
  int matched = 0;
  matched += r.V1 == IntPoly{0, -4, 34, -80, -60, 432, -256, -384, 0, 0, 768};
  matched += r.V2 == IntPoly{0, 0, 0, 0, -27, 144, -128, -192, 0, 0, 768};
  matched += r.V3 == IntPoly{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 256};
  matched += r.W1 == IntPoly{-1, 7, -14, 0, 24, -16};
  matched += r.W2 == IntPoly{0, -1, 4, 0, -8};
  matched += r.W3 == IntPoly{0, 0, 0, 0, 1};
  matched += r.W4 == IntPoly{0, 0, 0, 0, 6, -16};
  v.check(matched == 7, fmt("perturbation polynomials matched %d/7", matched));
  v.check(r.by_monomial.size() == 8, fmt("%zu (a,b)-monomials including V", r.by_monomial.size()));
  return v;
}

Verdict constants_reproduction() {
  Verdict v;
  auto near = [&](const char* name, long double got, long double want, long double tol) {
    const long double d = std::fabs(got - want);
    v.check(d <= tol, fmt("%s = %.12Lf (diff %.2Le, tol %.0Le)", name, got, d, tol));
  };
  near("c0", solve_c0(1e-15L), 0.2078750206L, 1e-9L);
  SpectralPoint p = find_double_zero(cplx(0.31L), cplx(-7.5L), 1e-12L);
  near("q_tilde", p.q_star.real(), 0.3092493386L, 1e-9L);
  near("y_tilde", p.x_star.real(), -7.5032559833L, 1e-9L);
  const long double lam0 = truncation_double_root();
  near("lambda0", lam0, 0.309016994374947L, 1e-9L);
  const QPoly V(truncation_resultant());
  const QPoly g = gcd(V, V.derivative());
  const mpq_class lo(3, 10), hi(32, 100), lam(static_cast<double>(lam0)), slack(1, 1000000000);
  auto repeated = isolate_real_roots(g, lo, hi);
  bool double_root = repeated.size() == 1 && repeated[0].lo <= lam + slack && repeated[0].hi >= lam - slack;
  auto parts = square_free_decomposition(V);
  double_root = double_root && parts.size() >= 2 && !isolate_real_roots(parts[1], lo, hi).empty();
  v.check(double_root, "lambda0 is a root of multiplicity 2 of V");
  near("gamma", gamma_radius(), 10.28693902L, 1e-8L);
  near("gamma = 2/f(c1)", 2 / f_gauge(0.2256613757L), 10.28693902L, 1e-8L);
  near("lambda", lambda_radius(), 8.841250518L, 1e-8L);
  near("lambda = 2/f(0.29)", 2 / f_gauge(0.29L), 8.841250518L, 1e-8L);
  PerturbationRadii r = perturbation_radii();
  v.check(r.a0.lo() >= 0.0081L && r.a0.hi() < 0.0082L, fmt("a0 in [%.7Lf, %.7Lf]", r.a0.lo(), r.a0.hi()));
  v.check(r.b0.lo() >= 0.0119L && r.b0.hi() < 0.0120L, fmt("b0 in [%.7Lf, %.7Lf]", r.b0.lo(), r.b0.hi()));
  return v;
}

Verdict certification_suite() {
  Verdict v;
  SegmentSuiteOptions ref;
  ref.tables = TableSource::reference;
  int valid = 0, total = 0;
  std::string failed;
  for (const auto& row : run_segment_suite(ref)) {
    ++total;
    if (row.certificate && row.certificate->valid) ++valid;
    else failed += " " + row.segment;
  }
  v.check(valid == total, fmt("reference thresholds: %d/%d segment rows valid", valid, total) +
                              (failed.empty() ? "" : " (failed:" + failed + ")"));
  v.check(conjugation_symmetry_check().ok(), "conjugation symmetry");
  for (const auto& d : run_disk_suite())
    v.check(d.valid(), fmt("Rouche %s: %d zeros (expected %d)", d.name.c_str(), d.result.count, d.expected));

  // Sensitivity: the derived tables pass, and inflating one row makes the suite fail.
  SegmentSuiteOptions derived;
  derived.tables = TableSource::derived;
  bool derived_ok = true;
  for (const auto& row : run_segment_suite(derived))
    derived_ok = derived_ok && row.certificate && row.certificate->valid;
  v.notes.push_back(std::string("derived thresholds: ") + (derived_ok ? "all rows valid" : "some rows invalid"));
  PerturbedResultant pr = build_perturbed_resultant();
  const PerturbationRadii radii = perturbation_radii();
  int caught = 0;
  for (auto t : derived_thresholds()) {
    t.v_lower = fmt("%.12Lg", 10 * std::stold(t.v_lower));
    try {
      SigmaCertificate c = certify_sigma_row(pr, segment_by_name(t.segment), t, radii);
      caught += c.valid ? 0 : 1;
    } catch (const Error&) {
      ++caught;
    }
  }
  v.check(caught == static_cast<int>(derived_thresholds().size()),
          fmt("inflated V bound rejected on %d/%zu segments", caught, derived_thresholds().size()));
  return v;
}

Verdict proposition_constants() {
  Verdict v;
  PropositionReport r = verify_proposition_constants();
  v.check(r.b_tail.lo() > 0.01456L && r.b_tail.hi() < 0.0146L,
          fmt("|B| bound in [%.8Lf, %.8Lf] < 0.0146", r.b_tail.lo(), r.b_tail.hi()));
  auto near = [&](const char* name, const IntervalReal& got, long double want, long double tol) {
    const long double d = std::max(std::fabs(got.lo() - want), std::fabs(got.hi() - want));
    v.check(d <= tol, fmt("%s = %.11Lf (diff %.2Le, tol %.0Le)", name, got.mid(), d, tol));
  };
  near("g0", r.g0, 0.1329058248L, 1e-9L);
  near("sin threshold", r.sin_threshold, 0.1098522207L, 1e-8L);
  near("cos threshold", r.cos_threshold, 0.9939479310L, 1e-8L);
  near("cos 4gamma threshold", r.cos4_threshold, 0.904624914L, 1e-8L);
  int cases = 0, cases_ok = 0, other_ok = 0, others = 0;
  for (const auto& c : r.checks) {
    const bool is_case = c.name.rfind("case_", 0) == 0 && c.name.find('_', 5) == std::string::npos;
    (is_case ? cases : others) += 1;
    (is_case ? cases_ok : other_ok) += c.pass ? 1 : 0;
  }
  v.check(cases == 8 && cases_ok == cases, fmt("case inequalities certified %d/%d", cases_ok, cases));
  v.check(other_ok == others, fmt("auxiliary inequalities certified %d/%d", other_ok, others));
  return v;
}

Verdict lemma_certificates() {
  Verdict v;
  LemmaSuite s = run_lemma_suite();
  v.check(s.theta_xx.certified, fmt("theta_xx first-term dominance, margin %.4Lf", s.theta_xx.margin));
  v.check(s.thetaq_thetax.certified, fmt("theta_q/theta_x dominance, margin %.4Lf", s.thetaq_thetax.margin));
  bool has_lo = false, has_hi = false;
  for (const auto& e : s.transversality.endpoints) {
    has_lo = has_lo || std::fabs(e.x - 5.946L) < 1e-12L;
    has_hi = has_hi || std::fabs(e.x - lambda_radius()) < 1e-12L;
  }
  v.check(s.transversality.certified && has_lo && has_hi, "transversality at x = 5.946 and x = lambda");
  return v;
}

Verdict asymptotics() {
  Verdict v;
  auto pts = real_spectrum_scan(30, 1e-9L);
  const long double c_all = asymptotic_constant(pts, 5, 30), c_tail = asymptotic_constant(pts, 15, 30);
  const long double change = std::fabs(c_all - c_tail) / std::max(c_all, c_tail);
  v.check(change < 0.25L, fmt("C(5..30) = %.4Lf, C(15..30) = %.4Lf, change %.1Lf%%", c_all, c_tail, 100 * change));
  std::string trend = "|r_j| j^2 at j = 5, 10, 15, 20, 25, 30:";
  for (int j = 5; j <= 30; j += 5) trend += fmt(" %.4Lf", asymptotic_constant(pts, j, j));
  v.notes.push_back(trend);
  long double worst_y = 0;
  for (int j = 15; j <= 30; ++j)
    worst_y = std::max(worst_y, std::fabs(pts[j - 1].x_star.real() + std::exp(kPi)) / std::exp(kPi));
  v.check(worst_y < 0.15L, fmt("y_j vs -e^pi for j = 15..30: max deviation %.1Lf%%", 100 * worst_y));
  auto neg = negative_spectrum_scan(20, 1e-9L);
  long double worst_neg = 0;
  for (int k = 15; k <= 20; ++k)
    worst_neg = std::max(worst_neg, std::fabs(std::abs(neg[k - 1].x_star) - std::exp(kPi / 2)) / std::exp(kPi / 2));
  v.check(worst_neg < 0.10L, fmt("|y_bar_k| vs e^(pi/2) for k = 15..20: max deviation %.2Lf%%", 100 * worst_neg));
  return v;
}

Verdict identities() {
  Verdict v;
  long double worst = 0;
  for (long double q : {0.1L, 0.2L, 0.25L}) worst = std::max(worst, reciprocal_sum_check(cplx(q), 12).residual);
  v.check(worst < 1e-6L, fmt("sum of 1/xi_j, j <= 12: max |residual| %.2Le", worst));

  long double fe = 0;
  for (int i = 0; i < 10; ++i) {
    for (int k = 0; k < 10; ++k) {
      const cplx q = std::polar(0.05L + 0.45L * i / 9, 0.3L * i);
      const cplx x = std::polar(1 + 19.0L * k / 9, 1.1L * k);
      const cplx a = center(jacobi_theta_star_eval(ball(q), ball(x), 1e-14L));
      const cplx b = center(jacobi_theta_star_eval(ball(q), ball(q * x), 1e-14L));
      fe = std::max(fe, std::abs(a - q * x * b));
    }
  }
  v.check(fe < 1e-10L, fmt("functional equation on the 10x10 grid: max residual %.2Le", fe));

  std::mt19937 rng(11);
  std::uniform_real_distribution<long double> u(0, 1);
  int consistent = 0;
  const int n_split = 500;
  for (int t = 0; t < n_split; ++t) {
    const cplx q = std::polar(0.05L + 0.6L * u(rng), 2 * kPi * u(rng));
    const cplx x = std::polar(1.01L + 15 * u(rng), 2 * kPi * u(rng));
    BallComplex th = theta_eval(ball(q), ball(x), 1e-14L);
    BallComplex s = jacobi_theta_star_eval(ball(q), ball(x), 1e-14L) + xi_tail_eval(ball(q), ball(x));
    consistent += std::abs(center(th) - center(s)) <= th.r + s.r ? 1 : 0;
  }
  v.check(consistent == n_split, fmt("theta = Theta* + Xi ball-consistent at %d/%d points", consistent, n_split));

  long double lead = 0;
  for (int j = 1; j <= 5; ++j) lead = std::max(lead, std::abs(laurent_coefficients(j, 8, 0.05L)[0] + cplx(1)));
  v.check(lead < 1e-8L, fmt("Laurent leading coefficient -1 for j <= 5: max error %.2Le", lead));

  TrackOptions guard;
  guard.guard = AnnulusGuard::always;
  int tripped = 0;
  for (int j = 3; j <= 12; ++j) {
    auto path = linear_path(cplx(0.02L), cplx(0.31L), 60);
    for (auto q : arc_path(0.31L, 0, 2 * kPi, 400)) path.push_back(q);
    try {
      track_zero(j, path, 1e-12L, guard);
    } catch (const Error&) {
      ++tripped;
    }
  }
  v.check(tripped == 0, fmt("annulus guard on |q| <= 0.31, j = 3..12: %d trips", tripped));
  return v;
}

Verdict localization() {
  Verdict v;
  std::string failed;
  int ok = 0;
  for (long double q : {0.5L, 0.7L, 0.9L}) {
    for (int k : {12, 20, 40}) {
      OmegaResult r = omega_k_count(cplx(q), k, 0.1L);
      if (r.count == 1) ++ok;
      else failed += fmt(" (%.1Lf,%d: %d zeros)", q, k, r.count);
    }
  }
  v.check(ok == 9, fmt("unique zero in Omega_k(0.1): %d/9", ok) + failed);
  RhoTrend t = rho_trend({0.3L, 0.5L, 0.7L, 0.9L}, 30);
  bool monotone = true;
  std::string j0s;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    j0s += fmt(" %d", t.rows[i].j0);
    monotone = monotone && t.rows[i].j0 >= 1 && t.rows[i].j0 <= t.j_max;
    if (i > 0) monotone = monotone && t.rows[i].j0 >= t.rows[i - 1].j0;
  }
  v.check(monotone, "rho trend j0(a) for a = 0.3, 0.5, 0.7, 0.9:" + j0s);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact resultant", 1, exact_resultant},
      {2, "constants reproduction", 10, constants_reproduction},
      {3, "certification suite", 120, certification_suite},
      {4, "proposition constants", 1, proposition_constants},
      {5, "lemma certificates", 1, lemma_certificates},
      {6, "asymptotics", 300, asymptotics},
      {7, "identity suite", 120, identities},
      {8, "localization", 300, localization},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.check(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.check(secs < c.limit_s, fmt("runtime %.2f s (limit %.0f s)", secs, c.limit_s));
    if (!v.pass) ++failures;
    std::printf("criterion %d %s: %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL");
    for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
