#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <thetaspec/constants.hpp>
#include <thetaspec/error.hpp>
#include <thetaspec/serialize.hpp>
#include <thetaspec/spectrum.hpp>
#include <thetaspec/theta.hpp>

#include "oracles.hpp"

using namespace thetaspec;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// |theta|, |theta_x|, |theta_xx| by 100 digit summation.
struct Residuals {
  long double f, fx, fxx;
};

Residuals oracle_residuals(cplx q, cplx x) {
  auto m = [](const oracle::BigC& z) { return std::abs(z.ld()); };
  return {m(oracle::theta_sum(q, x, 0, 0, 160)), m(oracle::theta_sum(q, x, 1, 0, 160)),
          m(oracle::theta_sum(q, x, 2, 0, 160))};
}

}  // namespace

TEST_SUITE("double zeros") {
  TEST_CASE("seed near the first spectral number") {
    SpectralPoint p = find_double_zero(cplx(0.31L), cplx(-7.5L), 1e-12L);
    CHECK(std::fabs(p.q_star.real() - 0.3092493386L) < 1e-10L);
    CHECK(std::fabs(p.x_star.real() - (-7.50325596424L)) < 1e-10L);
    CHECK(std::fabs(p.q_star.imag()) < 1e-12L);
    CHECK(std::fabs(p.x_star.imag()) < 1e-12L);
    CHECK(p.residual_theta < 1e-12L);
    CHECK(p.residual_theta_x < 1e-12L);
    CHECK(p.theta_xx_modulus > 1e-6L);
    CHECK(p.iterations <= 50);
    Residuals r = oracle_residuals(p.q_star, p.x_star);
    CHECK(r.f < 1e-15L);
    CHECK(r.fx < 1e-15L);
    CHECK(r.fxx == doctest::Approx(static_cast<double>(p.theta_xx_modulus)).epsilon(1e-6));
  }

  TEST_CASE("truncation seeds lead to the same point") {
    auto [lam0, y0] = truncation_seed();
    CHECK(std::fabs(lam0 - 0.309016994374947L) < 1e-14L);
    SpectralPoint p = find_double_zero(cplx(lam0), cplx(y0), 1e-12L);
    SpectralPoint ref = find_double_zero(cplx(0.31L), cplx(-7.5L), 1e-12L);
    CHECK(std::abs(p.q_star - ref.q_star) < 1e-12L);
    CHECK(std::abs(p.x_star - ref.x_star) < 1e-9L);
  }

  TEST_CASE("truncation mode finds the double root of V") {
    DoubleZeroOptions o;
    o.truncation_degree = 4;
    SpectralPoint p = find_double_zero(cplx(0.31L), cplx(truncation_seed().second), 1e-12L, o);
    CHECK(std::fabs(p.q_star.real() - truncation_double_root()) < 1e-10L);
    CHECK(std::fabs(truncation_double_root() - (std::sqrt(5.0L) - 1) / 4) < 1e-15L);
  }

  TEST_CASE("real seeds give real points") {
    for (long double q : {0.3L, 0.31L, 0.32L}) {
      for (long double x : {-7.0L, -7.5L, -8.0L}) {
        SpectralPoint p = find_double_zero(cplx(q), cplx(x), 1e-10L);
        CHECK(std::fabs(p.q_star.imag()) < 1e-10L);
        CHECK(std::fabs(p.x_star.imag()) < 1e-10L);
      }
    }
  }

  TEST_CASE("bad seeds are rejected") {
    CHECK_THROWS_AS(find_double_zero(cplx(1.2L), cplx(-7.5L), 1e-12L), Error);
    CHECK_THROWS_AS(find_double_zero(cplx(0.31L), cplx(-7.5L), -1), Error);
  }

  TEST_CASE("seed grid over the disk finds only one spectral point") {
    // Every seed that converges inside |q| <= 0.31 must land on the same point.
    const long double q1 = find_double_zero(cplx(0.31L), cplx(-7.5L), 1e-12L).q_star.real();
    DoubleZeroOptions o;
    o.fast = true;
    o.max_iterations = 40;
    const int n = 40;
    int converged = 0, inside = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const cplx q(-0.31L + 0.62L * (a + 0.5L) / n, -0.31L + 0.62L * (b + 0.5L) / n);
        if (std::abs(q) > 0.31L || std::abs(q) < 0.05L) continue;
        const cplx x = -std::pow(q, -1.5L);
        try {
          SpectralPoint p = find_double_zero(q, x, 1e-9L, o);
          ++converged;
          if (std::abs(p.q_star) <= 0.31L) {
            ++inside;
            CHECK(std::abs(p.q_star - cplx(q1)) < 1e-7L);
            CHECK(p.q_star.real() >= 0.29L);
          }
        } catch (const Error&) {
        }
      }
    }
    MESSAGE("converged " << converged << ", inside the disk " << inside);
    CHECK(inside > 0);
  }
}

TEST_SUITE("scans") {
  TEST_CASE("positive spectral numbers") {
    auto pts = real_spectrum_scan(20, 1e-9L);
    REQUIRE(pts.size() == 20);
    CHECK(std::fabs(pts[0].q_star.real() - 0.3092493386L) < 1e-10L);
    for (size_t i = 0; i < pts.size(); ++i) {
      CAPTURE(i);
      CHECK(pts[i].index_label == static_cast<int>(i + 1));
      CHECK(pts[i].q_star.real() > 0);
      CHECK(pts[i].q_star.real() < 1);
      CHECK(pts[i].x_star.real() < 0);
      CHECK(pts[i].residual_theta < 1e-9L);
      CHECK(pts[i].residual_theta_x < 1e-9L);
      CHECK(pts[i].theta_xx_modulus > 1e-6L);
      if (i > 0) {
        CHECK(pts[i].q_star.real() > pts[i - 1].q_star.real());
        CHECK(pts[i].x_star.real() < pts[i - 1].x_star.real());
      }
    }
    // the second point, independently
    Residuals r = oracle_residuals(pts[1].q_star, pts[1].x_star);
    CHECK(r.f < 1e-12L);
    CHECK(r.fx < 1e-12L);
    CHECK(real_spectrum_scan(0).empty());
  }

  TEST_CASE("asymptotic constant is stable") {
    auto pts = real_spectrum_scan(30, 1e-9L);
    const long double c_all = asymptotic_constant(pts, 5, 30);
    const long double c_tail = asymptotic_constant(pts, 15, 30);
    CHECK(c_all > 0);
    CHECK(std::fabs(c_all - c_tail) / c_all < 0.25L);
    for (size_t j = 15; j <= 30; ++j) {
      const long double y = pts[j - 1].x_star.real();
      CHECK(std::fabs(y + std::exp(kPi)) / std::exp(kPi) < 0.15L);
    }
  }

  TEST_CASE("asymptotic model") {
    AsymptoticModel pos;
    for (int j = 2; j < 200; ++j) {
      CHECK(pos.predict_q(j) > 0);
      CHECK(pos.predict_q(j) < 1);
      CHECK(pos.predict_q(j + 1) > pos.predict_q(j));
    }
    CHECK(pos.predict_q(10) == doctest::Approx(1 - kPi / 20 + std::log(10.0L) / 800));
    CHECK(pos.predict_y(1000) == doctest::Approx(-std::exp(kPi) * std::exp(-std::log(1000.0L) / 4000)));
    AsymptoticModel neg;
    neg.family = AsymptoticModel::Family::negative_q;
    CHECK(neg.predict_q(10) == doctest::Approx(1 - kPi / 80));
    CHECK(neg.predict_y(10) == doctest::Approx(std::exp(kPi / 2)));
  }

  TEST_CASE("negative spectral numbers") {
    auto pts = negative_spectrum_scan(20, 1e-9L);
    REQUIRE(pts.size() == 20);
    for (size_t k = 0; k < pts.size(); ++k) {
      CAPTURE(k);
      CHECK(pts[k].q_star.real() < 0);
      CHECK(pts[k].q_star.real() > -1);
      CHECK(std::fabs(pts[k].q_star.imag()) < 1e-9L);
      CHECK(pts[k].residual_theta < 1e-9L);
      if (k > 0) CHECK(pts[k].q_star.real() < pts[k - 1].q_star.real());
    }
    // two families, x < 0 and x > 0, each approaching e^{pi/2} from below
    const long double lim = std::exp(kPi / 2);
    for (size_t k = 6; k < pts.size(); ++k) {
      CHECK(std::fabs(pts[k].x_star) > std::fabs(pts[k - 2].x_star));
      CHECK(std::fabs(pts[k].x_star) < lim);
    }
    for (size_t k = 4; k < pts.size(); ++k) CHECK(lim - std::fabs(pts[k].x_star) < 1.0L);
    CHECK(negative_spectrum_scan(0).empty());
  }

  TEST_CASE("csv export") {
    auto pts = real_spectrum_scan(2);
    std::ostringstream os;
    write_spectrum_csv(os, pts);
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "index,q_re,q_im,x_re,x_im,residual_theta,residual_theta_x,theta_xx_modulus");
    std::getline(in, row);
    CHECK(row.rfind("1,0.3092493386", 0) == 0);
    int rows = 1;
    while (std::getline(in, row)) ++rows;
    CHECK(rows == 2);
  }
}

TEST_SUITE("zero branches") {
  TEST_CASE("the two branches at q = 0.22") {
    auto path = linear_path(cplx(0.01L), cplx(0.3L), 290);
    ZeroTrack t1 = track_zero(1, path);
    ZeroTrack t2 = track_zero(2, path);
    REQUIRE(t1.samples.size() >= path.size());
    auto at = [](const ZeroTrack& t, long double q) {
      for (const auto& s : t.samples)
        if (std::fabs(s.q.real() - q) < 1e-12L) return s.xi;
      return cplx(NAN);
    };
    const cplx x1 = at(t1, 0.22L), x2 = at(t2, 0.22L);
    CHECK(x1.real() > -7);
    CHECK(x1.real() < -6);
    CHECK(x2.real() > -21);
    CHECK(x2.real() < -19);
    for (const auto& s : t1.samples) CHECK(s.residual < 1e-12L);
    // independent check of the zero
    CHECK(std::abs(oracle::theta_sum(cplx(0.22L), x1, 0, 0, 80).ld()) < 1e-12L);
    // sign change brackets
    auto th = [](long double x) { return oracle::theta_sum(cplx(0.22L), cplx(x), 0, 0, 80).ld().real(); };
    CHECK(th(-7) * th(-6) < 0);
    CHECK(th(-21) * th(-19) < 0);
  }

  TEST_CASE("annulus for larger indices") {
    for (int j = 3; j <= 6; ++j) {
      auto path = linear_path(cplx(0.02L), cplx(0.2L), 40);
      for (auto q : arc_path(0.2L, 0, 2 * kPi, 200)) path.push_back(q);
      ZeroTrack t = track_zero(j, path, 1e-12L);
      for (const auto& s : t.samples) {
        if (std::abs(s.q) < 0.2L - 1e-12L) continue;
        const long double m = std::abs(s.xi), a = std::abs(s.q);
        CHECK(m > std::pow(a, -j + 0.5L));
        CHECK(m < std::pow(a, -j - 0.5L));
      }
    }
  }

  TEST_CASE("guard never trips below 0.31") {
    TrackOptions o;
    o.guard = AnnulusGuard::always;
    for (int j = 3; j <= 8; ++j) {
      auto radial = linear_path(cplx(0.02L), cplx(0.31L), 100);
      ZeroTrack t = track_zero(j, radial, 1e-12L, o);
      CHECK(t.samples.size() >= radial.size());
      auto around = radial;
      for (auto q : arc_path(0.31L, 0, 2 * kPi, 400)) around.push_back(q);
      CHECK_NOTHROW(track_zero(j, around, 1e-12L, o));
    }
  }

  TEST_CASE("guard trips where branches meet") {
    TrackOptions o;
    o.guard = AnnulusGuard::always;
    auto path = linear_path(cplx(0.02L), cplx(0.5L), 200);
    CHECK_THROWS_AS(track_zero(1, path, 1e-12L, o), Error);
  }

  TEST_CASE("invalid paths") {
    CHECK_THROWS_AS(track_zero(0, linear_path(cplx(0.01L), cplx(0.1L), 10)), Error);
    CHECK_THROWS_AS(track_zero(1, linear_path(cplx(0.2L), cplx(0.3L), 10)), Error);
  }

  TEST_CASE("json export") {
    ZeroTrack t = track_zero(1, linear_path(cplx(0.01L), cplx(0.05L), 4));
    t.laurent_coeffs = laurent_coefficients(1, 4, 0.05L);
    Json j = to_json(t);
    CHECK(j["j"] == 1);
    CHECK(j["samples"].size() == t.samples.size());
    CHECK(j["laurent_coeffs"].size() == 4);
  }
}

TEST_SUITE("laurent") {
  TEST_CASE("leading coefficient") {
    for (int j = 1; j <= 5; ++j) {
      auto c = laurent_coefficients(j, 12, 0.05L);
      CAPTURE(j);
      CHECK(std::abs(c[0] + cplx(1)) < 1e-8L);
    }
  }

  TEST_CASE("gap up to order j(j-1)/2") {
    // j = 3: xi = -q^-3 + O(q^3), so powers -2 .. 2 vanish
    auto c = laurent_coefficients(3, 10, 0.05L);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(c[n]) < 1e-6L);
    CHECK(std::abs(c[6]) > 0.1L);
  }

  TEST_CASE("first coefficients of xi_1") {
    // theta(q, x) = 0 with x = -1/q + a + b q: matching powers of q gives a = -1, b = -2
    auto c = laurent_coefficients(1, 8, 0.05L);
    CHECK(std::abs(c[1] - cplx(-1)) < 1e-8L);
    CHECK(std::abs(c[2] - cplx(-2)) < 1e-8L);
  }

  TEST_CASE("round trip") {
    for (int j = 1; j <= 5; ++j) {
      auto c = laurent_coefficients(j, 16, 0.08L);
      for (long double r : {0.04L, 0.05L, 0.08L}) {
        for (long double ang : {0.0L, 1.0L, 2.5L}) {
          const cplx q = std::polar(r, ang);
          const cplx tracked = zero_branch_value(j, q);
          const cplx series = laurent_eval(c, j, q);
          CAPTURE(j);
          CAPTURE(r);
          CHECK(std::abs(series - tracked) / std::abs(tracked) < 1e-6L);
        }
      }
      const cplx at5 = zero_branch_value(j, cplx(0.05L));
      CHECK(std::abs(laurent_eval(c, j, cplx(0.05L)) - at5) / std::abs(at5) < 1e-7L);
    }
  }

  TEST_CASE("fit radius outside the guaranteed disk") {
    CHECK_THROWS_AS(laurent_coefficients(1, 8, 0.2L), Error);
  }
}

TEST_SUITE("identities") {
  TEST_CASE("sum of reciprocal zeros") {
    for (long double q : {0.1L, 0.2L, 0.25L}) {
      ReciprocalSum r = reciprocal_sum_check(cplx(q), 12);
      CAPTURE(q);
      CHECK(r.residual < 1e-6L);
      CHECK(r.residual <= r.tail_bound);
    }
    CHECK(reciprocal_sum_check(cplx(0.01L), 5).residual < 1e-10L);
    const cplx qc = std::polar(0.2L, 2.0L);
    CHECK(reciprocal_sum_check(qc, 12).residual < 1e-6L);
  }

  TEST_CASE("partial sums converge monotonically") {
    long double prev = INFINITY;
    for (int j = 2; j <= 12; ++j) {
      const long double r = reciprocal_sum_check(cplx(0.25L), j).residual;
      CHECK(r < prev);
      prev = r;
    }
  }

  TEST_CASE("reciprocal sum rejects spectral values") {
    CHECK_THROWS_AS(reciprocal_sum_check(cplx(0.5L), 12), Error);
  }
}

TEST_SUITE("localization") {
  TEST_CASE("unique zero near mu_k") {
    for (long double q : {0.5L, 0.7L}) {
      for (int k : {12, 20, 40}) {
        CAPTURE(q);
        CAPTURE(k);
        CHECK(omega_k_unique_zero(cplx(q), k, 0.1L));
      }
    }
    CHECK(omega_k_unique_zero(cplx(0.9L), 40, 0.1L));
    CHECK(omega_k_unique_zero(std::polar(0.5L, 1.0L), 12, 0.1L));
  }

  TEST_CASE("a disk holding several mu") {
    OmegaResult r = omega_k_count(cplx(0.3L), 3, 2.0L, OmegaRadius::relative);
    CHECK(r.count != 1);
    CHECK_FALSE(omega_k_unique_zero(cplx(0.3L), 3, 2.0L, OmegaRadius::relative));
  }

  TEST_CASE("winding count against the oracle") {
    // direct count of zeros of the truncated series in a disk around mu_3
    const cplx q(0.3L), mu = -std::pow(q, -3);
    const long double rad = 0.1L * std::abs(mu);
    long double total = 0;
    const int n = 4000;
    oracle::BigC prev = oracle::theta_sum(q, mu + rad, 0, 0, 60);
    for (int i = 1; i <= n; ++i) {
      const cplx x = mu + std::polar(rad, 2 * kPi * i / n);
      oracle::BigC cur = oracle::theta_sum(q, x, 0, 0, 60);
      total += std::arg(cur.ld() / prev.ld());
      prev = cur;
    }
    const int expected = static_cast<int>(std::lround(total / (2 * kPi)));
    CHECK(omega_k_count(q, 3, 0.1L, OmegaRadius::relative).count == expected);
  }

  TEST_CASE("minimum zero modulus") {
    const long double m31 = min_zero_modulus_estimate(0.31L, 5, 64);
    CHECK(m31 >= 1);
    // xi_1 meets xi_2 on the real axis just below 0.31, so compare off the axis
    CHECK(m31 <= std::abs(zero_branch_value(1, std::polar(0.31L, 0.3L))));
    const long double m20 = min_zero_modulus_estimate(0.2L, 5, 64);
    const long double m25 = min_zero_modulus_estimate(0.25L, 5, 64);
    CHECK(m20 > std::pow(0.2L, -0.5L));
    CHECK(m20 < std::pow(0.2L, -1.5L));
    CHECK(m20 >= m25);
    CHECK(m25 >= m31);
  }

  TEST_CASE("rho trend") {
    RhoTrend t = rho_trend({0.108L, 0.31L, 0.5L}, 12);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].j0 == 1);
    CHECK(t.rows[0].first_failure.empty());
    CHECK(t.rows[1].j0 <= 3);
    CHECK(t.rows[2].j0 >= t.rows[1].j0);
    CHECK(t.note.find("not certified") != std::string::npos);
  }
}
