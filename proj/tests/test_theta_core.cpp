#include <doctest.h>

#include <cmath>
#include <random>

#include <thetaspec/constants.hpp>
#include <thetaspec/error.hpp>
#include <thetaspec/spectrum.hpp>
#include <thetaspec/theta.hpp>

#include "oracles.hpp"

using namespace thetaspec;
using oracle::big;

namespace {

BallComplex ball(cplx z) { return BallComplex(Complex<long double>(z.real(), z.imag())); }
cplx center(const BallComplex& b) { return {b.c.re, b.c.im}; }

// Ball contains the reference value, allowing for the oracle's own rounding.
bool encloses(const BallComplex& b, cplx ref) {
  return std::abs(center(b) - ref) <= b.r + 1e-30L + 1e-30L * std::abs(ref);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Inconclusive;
}

}  // namespace

TEST_SUITE("theta evaluation") {
  TEST_CASE("q = 0 keeps only the constant term") {
    for (cplx x : {cplx(3.5), cplx(-2, 7), cplx(0)}) {
      BallComplex v = theta_eval(ball(0), ball(x), 1e-15L);
      CHECK(v.c.re == 1);
      CHECK(v.c.im == 0);
      CHECK(v.r == 0);
      BallComplex d = theta_partial_eval(ball(0), ball(x), 1, 0, 1e-15L);
      CHECK(d.c.re == 0);
      CHECK(d.c.im == 0);
    }
  }

  TEST_CASE("reference double zero makes theta and theta_x small") {
    const BallComplex q = ball(0.3092493386L), x = ball(-7.5032559833L);
    CHECK(std::abs(center(theta_eval(q, x, 1e-15L))) < 1e-6L);
    CHECK(std::abs(center(theta_partial_eval(q, x, 1, 0, 1e-15L))) < 1e-6L);
  }

  TEST_CASE("values enclose high precision summation") {
    struct Case {
      cplx q, x;
      int dx, dq;
    };
    const Case cases[] = {{0.1L, 1.0L, 0, 0},           {0.2L, 3.0L, 0, 1},         {0.1L, 1.0L, 1, 0},
                          {cplx(0.3L, 0.2L), cplx(-4, 1), 2, 0}, {cplx(-0.5L, 0.1L), 2.5L, 1, 1},
                          {0.9L, -1.5L, 0, 0}};
    for (const auto& c : cases) {
      CAPTURE(c.dx);
      CAPTURE(c.dq);
      cplx ref = oracle::theta_sum(c.q, c.x, c.dx, c.dq, 400).ld();
      ThetaValue v = theta_partial_eval_detailed(ball(c.q), ball(c.x), c.dx, c.dq, 1e-15L);
      CHECK(v.value.r <= 1e-15L);
      CHECK(encloses(v.value, ref));
    }
  }

  TEST_CASE("domain errors") {
    CHECK(kind_of([] { theta_partial_eval(ball(0.1L), ball(1), 3, 0, 1e-12L); }) == ErrorKind::UnsupportedOrder);
    CHECK(kind_of([] { theta_partial_eval(ball(0.1L), ball(1), 0, 2, 1e-12L); }) == ErrorKind::UnsupportedOrder);
    CHECK(kind_of([] { theta_eval(ball(1.0L), ball(1), 1e-12L); }) == ErrorKind::NonConvergent);
    CHECK(kind_of([] { theta_eval(ball(0.5L), ball(1), 0); }) == ErrorKind::DomainError);
  }

  TEST_CASE("precision escalates instead of failing") {
    // Terms near q = 0.95, x = -21.5 reach e^90 while theta is of order one.
    ThetaValue v = theta_partial_eval_detailed(ball(0.95L), ball(-21.5L), 0, 0, 1e-10L);
    CHECK(v.precision_bits > 64);
    CHECK(encloses(v.value, oracle::theta_sum(0.95L, -21.5L, 0, 0, 900).ld()));
  }
}

TEST_SUITE("truncation") {
  TEST_CASE("tail bound dominates the true tail and shrinks with n") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<long double> u(0, 1);
    for (int trial = 0; trial < 40; ++trial) {
      const long double qa = 0.05L + 0.85L * u(rng), xa = 0.5L + 15 * u(rng);
      TruncationPlan p = choose_truncation(qa, xa, 0, 0, 1e-12L);
      REQUIRE(p.tail_bound <= 1e-12L);
      long double prev = p.tail_bound;
      for (int n = p.n_terms; n < p.n_terms + 20; ++n) {
        TruncationPlan t = truncation_plan(qa, xa, 0, 0, n);
        CHECK(t.tail_bound <= prev);
        prev = t.tail_bound;
        big tail = 0;
        for (long long j = n; j < n + 400; ++j)
          tail += boost::multiprecision::pow(big(qa), j * (j + 1) / 2) * boost::multiprecision::pow(big(xa), j);
        CHECK(tail.convert_to<long double>() <= t.tail_bound * (1 + 1e-15L));
      }
    }
  }

  TEST_CASE("balls from different truncations intersect") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<long double> u(-1, 1);
    for (int trial = 0; trial < 1000; ++trial) {
      cplx q(u(rng), u(rng));
      if (std::abs(q) > 0.9L) q *= 0.9L / std::abs(q);
      const cplx x(10 * u(rng), 10 * u(rng));
      const long double qa = std::abs(q), xa = std::abs(x);
      TruncationPlan p = choose_truncation(qa, xa, 0, 0, 1e-10L);
      auto at = [&](int n) {
        return add_error(theta_partial_sum(ball(q), ball(x), 0, 0, n), truncation_plan(qa, xa, 0, 0, n).tail_bound);
      };
      CHECK(overlaps(at(p.n_terms), at(p.n_terms + 10)));
    }
  }

  TEST_CASE("supported orders") {
    CHECK(supported_order(0, 0));
    CHECK(supported_order(2, 0));
    CHECK(supported_order(1, 1));
    CHECK_FALSE(supported_order(2, 1));
    CHECK_FALSE(supported_order(0, 2));
  }
}

TEST_SUITE("derivatives") {
  TEST_CASE("central differences agree with theta_x") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<long double> u(-1, 1);
    const long double h = 1e-6L;
    for (int trial = 0; trial < 100; ++trial) {
      cplx q(u(rng), u(rng));
      if (std::abs(q) > 0.5L) q *= 0.5L / std::abs(q);
      cplx x(10 * u(rng), 10 * u(rng));
      if (std::abs(x) > 10) x *= 10 / std::abs(x);
      cplx fd = (center(theta_eval(ball(q), ball(x + h), 1e-16L)) - center(theta_eval(ball(q), ball(x - h), 1e-16L))) /
                (2 * h);
      cplx d = center(theta_partial_eval(ball(q), ball(x), 1, 0, 1e-16L));
      CHECK(std::abs(fd - d) <= 1e-6L * std::max(1.0L, std::abs(d)));
    }
  }

  TEST_CASE("product jet matches the series") {
    const cplx pts[][2] = {{0.3L, -7.5L}, {cplx(0.2L, 0.1L), cplx(3, -4)}, {-0.7L, 2.9L}, {0.9L, -20.0L}};
    for (const auto& p : pts) {
      ProductJet J = theta_product_jet(p[0], p[1]);
      const long double tol = 1e-15L * J.scale;
      CHECK(std::abs(J.f - oracle::theta_sum(p[0], p[1], 0, 0, 600).ld()) <= tol);
      CHECK(std::abs(J.fx - oracle::theta_sum(p[0], p[1], 1, 0, 600).ld()) <= tol * 10);
      CHECK(std::abs(J.fq - oracle::theta_sum(p[0], p[1], 0, 1, 600).ld()) <= tol * 100);
    }
  }
}

TEST_SUITE("gauge") {
  TEST_CASE("phi near zero, at c0 and at 1/3") {
    CHECK(phi_gauge(1e-8L) < 3e-4L);
    CHECK(std::fabs(phi_gauge(0.2078750206L) - 1) < 1e-9L);
    const long double ref = oracle::phi_sum(big(1) / 3, 1000).convert_to<long double>();
    IntervalReal p = phi_interval(IntervalReal(1.0L / 3));
    CHECK(std::fabs(phi_gauge(1.0L / 3) - ref) < 1e-17L);
    CHECK(p.lo() <= ref * (1 + 1e-18L));
    CHECK(p.hi() >= ref * (1 - 1e-18L));
  }

  TEST_CASE("phi is strictly increasing") {
    long double prev = 0;
    for (int i = 0; i < 100; ++i) {
      const long double r = 0.01L + 0.89L * i / 99;
      const long double v = phi_gauge(r);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("c0 against an independent root find") {
    const long double c0 = solve_c0(1e-10L);
    CHECK(std::fabs(c0 - reference_value("c0")) < 1e-9L);
    CHECK(phi_gauge(c0 - 1e-6L) < 1);
    CHECK(phi_gauge(c0 + 1e-6L) > 1);
    const big root = oracle::bisect([](const big& r) { return oracle::phi_sum(r, 60) - 1; }, big("0.1"), big("0.3"));
    CHECK(std::fabs(c0 - root.convert_to<long double>()) < 1e-10L);
    CHECK(gauge_constants().c0 == doctest::Approx(static_cast<double>(c0)).epsilon(1e-9));
  }

  TEST_CASE("c1: qx dominance on |x| = 7.95") {
    const long double c1 = solve_c1(1e-14L);
    CHECK(std::fabs(c1 - reference_value("c1")) < 1e-9L);
    CHECK(dominating_term_margin_at_radius(0.22L, 1, 7.95L) > 0);
    CHECK(dominating_term_margin_at_radius(c1 - 1e-12L, 1, 7.95L) >= 0);
    CHECK(std::fabs(dominating_term_margin_at_radius(0.2256613757L, 1, 7.95L)) < 1e-9L);
    for (long double a = 0.16L; a < c1; a += 0.005L) CHECK(dominating_term_margin_at_radius(a, 1, 7.95L) > 0);
  }
}

TEST_SUITE("dominating term") {
  // |L| - sum of the other moduli on |x| = r; depends on |x| only.
  long double margin_oracle(long double qa, int k, long double r) {
    big s = 0, L = 0;
    for (long long j = 0; j < 300; ++j) {
      big t = boost::multiprecision::pow(big(qa), j * (j + 1) / 2) * boost::multiprecision::pow(big(r), j);
      if (j == k) L = t;
      else s += t;
    }
    return (L - s).convert_to<long double>();
  }

  TEST_CASE("positive below c0") {
    for (int k = 1; k <= 6; ++k) {
      CHECK(dominating_term_margin(ball(0.2L), k) > 0);
      CHECK(dominating_term_margin(ball(std::polar(0.2L, 2.0L)), k) > 0);
    }
  }

  TEST_CASE("agrees with summation") {
    for (auto [qa, k] : {std::pair{0.35L, 1}, {0.2L, 3}, {0.1L, 2}}) {
      const long double r = std::pow(qa, -k - 0.5L);
      const long double ref = margin_oracle(qa, k, r);
      const long double m = dominating_term_margin(ball(qa), k);
      CHECK(m <= ref + 1e-15L * std::fabs(ref));
      CHECK(m == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
    const long double ref = margin_oracle(0.1L, 1, 7.95L);
    CHECK(dominating_term_margin_at_radius(0.1L, 1, 7.95L) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  }
}

TEST_SUITE("jacobi theta") {
  TEST_CASE("functional equation at (0.3, 2)") {
    const cplx q = 0.3L, x = 2.0L;
    BallComplex a = jacobi_theta_star_eval(ball(q), ball(x), 1e-16L);
    BallComplex b = jacobi_theta_star_eval(ball(q), ball(q * x), 1e-16L);
    CHECK(std::abs(center(a) - q * x * center(b)) < 1e-10L);
  }

  TEST_CASE("functional equation on a grid") {
    for (int i = 0; i < 10; ++i) {
      for (int k = 0; k < 10; ++k) {
        const cplx q = std::polar(0.05L + 0.45L * i / 9, 0.3L * i);
        const cplx x = std::polar(1 + 19.0L * k / 9, 1.1L * k);
        BallComplex a = jacobi_theta_star_eval(ball(q), ball(x), 1e-12L);
        BallComplex b = jacobi_theta_star_eval(ball(q), ball(q * x), 1e-12L);
        const long double resid = std::abs(center(a) - q * x * center(b));
        const long double radii = a.r + std::abs(q * x) * b.r;
        CHECK(resid < 10 * radii + 1e-17L * (std::abs(center(a)) + 1));
      }
    }
  }

  TEST_CASE("zeros at mu_k") {
    const cplx q = 0.25L;
    BallComplex v = jacobi_theta_star_eval(ball(q), ball(-std::pow(q, -2)), 1e-16L);
    CHECK(std::abs(center(v)) <= v.r + 1e-15L);
  }

  TEST_CASE("bilateral summation") {
    const cplx q = 0.2L, x = 1.5L;
    CHECK(encloses(jacobi_theta_star_eval(ball(q), ball(x), 1e-16L), oracle::theta_star_sum(q, x, 60).ld()));
  }

  TEST_CASE("tail Xi") {
    CHECK(encloses(xi_tail_eval(ball(0.25L), ball(3.0L)), oracle::xi_sum(0.25L, 3.0L, 80).ld()));
    CHECK(std::abs(center(xi_tail_eval(ball(0.3L), ball(1e6L)))) < 1e-5L);
    const cplx q(0.3L, 0), x(5, 0);
    BallComplex t = theta_eval(ball(q), ball(x), 1e-16L);
    BallComplex s = jacobi_theta_star_eval(ball(q), ball(x), 1e-16L) + xi_tail_eval(ball(q), ball(x));
    CHECK(overlaps(t, s));
  }

  TEST_CASE("splitting identity for |x| > 1") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<long double> u(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      const cplx q = std::polar(0.05L + 0.6L * u(rng), 6.28L * u(rng));
      const cplx x = std::polar(1.01L + 12 * u(rng), 6.28L * u(rng));
      BallComplex t = theta_eval(ball(q), ball(x), 1e-14L);
      BallComplex s = jacobi_theta_star_eval(ball(q), ball(x), 1e-14L) + xi_tail_eval(ball(q), ball(x), 1e-14L);
      CHECK(overlaps(t, s));
    }
  }

  TEST_CASE("Xi smallness radius") {
    for (long double qa : {0.108L, 0.5L, 0.9L}) {
      XiSmallness s = xi_smallness_radius(qa, 1e-3L);
      CHECK(s.xi_bound <= 1e-3L);
      CHECK(s.dxi_bound <= 1e-3L);
      for (long double f : {1.0L, 1.5L, 4.0L})
        for (long double ang : {0.0L, 1.0L, 3.0L})
          CHECK(std::abs(oracle::xi_sum(qa, std::polar(f * s.G, ang), 200).ld()) <= 1e-3L);
    }
  }
}
