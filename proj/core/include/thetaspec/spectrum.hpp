#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "thetaspec/numeric.hpp"

namespace thetaspec {

using cplx = std::complex<long double>;

// ------------------------------------------------------------ evaluators

// theta and the partial derivatives used by the solvers.
template <class R>
struct ThetaJet {
  Complex<R> f, fx, fq, fxx, fqx;
};

// Direct summation of the series and its derivatives in one pass.
// max_degree > 0 truncates the series after x^max_degree.
template <class R>
ThetaJet<R> theta_jet(const Complex<R>& q, const Complex<R>& x, int max_degree = 0);

extern template ThetaJet<long double> theta_jet(const Complex<long double>&, const Complex<long double>&, int);
extern template ThetaJet<hp_real> theta_jet(const Complex<hp_real>&, const Complex<hp_real>&, int);

// theta, theta_x, theta_q from the Jacobi triple product
//   Theta*(q, x) = (1 + 1/x) prod_{m >= 1} (1 - q^m)(1 + q^m x)(1 + q^m / x)
// plus Xi(q, x) = -(1/x) theta(q, 1/x). Relatively accurate for |x| > 1 where
// direct summation cancels badly.
struct ProductJet {
  cplx f, fx, fq;
  cplx theta_star;
  cplx xi;
  long double scale = 0;  // size of the largest series term, for residuals
};
ProductJet theta_product_jet(cplx q, cplx x);

// Chooses the product form for |x| > 1.5 and direct summation otherwise.
ProductJet theta_jet_auto(cplx q, cplx x);

// ------------------------------------------------------------ double zeros

struct SpectralPoint {
  cplx q_star;
  cplx x_star;
  long double residual_theta = 0;    // certified bound on |theta|
  long double residual_theta_x = 0;  // certified bound on |theta_x|
  long double theta_xx_modulus = 0;  // certified lower bound on |theta_xx|
  std::optional<int> index_label;
  int iterations = 0;
};

struct DoubleZeroOptions {
  int max_iterations = 50;
  // > 0: solve for the degree-d truncation of the series instead.
  int truncation_degree = 0;
  // Long double iteration instead of MPFR (exploratory grids only).
  bool fast = false;
  // Skip the ball re-verification of the result.
  bool verify = true;
};

SpectralPoint find_double_zero(cplx q_seed, cplx x_seed, long double tol, const DoubleZeroOptions& opts = {});

// lambda_0: the double root of the truncation resultant V in (0.3, 0.32),
// isolated exactly and refined to width 2^-80.
long double truncation_double_root();
// (lambda_0, x) with x the double zero of the quartic truncation U(lambda_0, .).
std::pair<long double, long double> truncation_seed();

struct AsymptoticModel {
  enum class Family { positive_q, negative_q };
  Family family = Family::positive_q;
  // 1 - pi/2j + log j / 8j^2 (positive) or 1 - pi/8k for |q_bar_k| (negative).
  long double predict_q(int j) const;
  // -e^pi e^{-log j / 4j} (positive) or the limit e^{pi/2} of |y_bar_k|.
  long double predict_y(int j) const;
};

std::vector<SpectralPoint> real_spectrum_scan(int j_max, long double tol = 1e-9L);

struct NegativeScanOptions {
  long double q_min = -0.3L;  // scan q from q_min down towards q_floor
  long double q_floor = -0.999L;
  int x_grid = 120;           // critical point search grid per side, |x| in [1.3, 12]
};

// Negative spectral numbers ordered by decreasing q (q_bar_1 closest to 0).
// index_label counts them in that order; |q_bar_k| is what the asymptotics
// describe. A critical-value scan finds the first two on each side of the
// x axis; later ones are seeded by extrapolating 1/(1 - |q|) and x per side.
std::vector<SpectralPoint> negative_spectrum_scan(int k_max, long double tol = 1e-9L,
                                                  const NegativeScanOptions& opts = {});

// max over j in [j_lo, j_hi] of |q_j - model(j)| j^2.
long double asymptotic_constant(const std::vector<SpectralPoint>& pts, int j_lo, int j_hi);

// ------------------------------------------------------------ branches

enum class AnnulusGuard { automatic, always, never };

struct TrackOptions {
  AnnulusGuard guard = AnnulusGuard::automatic;  // automatic: j >= 3
  long double min_step = 1e-6L;
  int max_newton = 40;
};

struct ZeroSample {
  cplx q;
  cplx xi;
  long double residual = 0;  // |theta| / largest term modulus
};

struct ZeroTrack {
  int j = 0;
  std::vector<ZeroSample> samples;
  std::vector<cplx> laurent_coeffs;  // coefficients of q^{-j}, q^{-j+1}, ...
};

// Continues the zero xi_j ~ -q^{-j} along q_path (first point |q| <= 0.05).
ZeroTrack track_zero(int j, const std::vector<cplx>& q_path, long double tol = 1e-12L,
                     const TrackOptions& opts = {});

// Straight path of n + 1 points from a to b.
std::vector<cplx> linear_path(cplx a, cplx b, int n);
// Circle |q| = r from angle a0 to a1, n + 1 points.
std::vector<cplx> arc_path(long double r, long double a0, long double a1, int n);

// Coefficients of q^{-j}, ..., q^{-j+n_coeffs-1} from a DFT of q^j xi_j(q)
// sampled on |q| = fit_radius.
std::vector<cplx> laurent_coefficients(int j, int n_coeffs, long double fit_radius, int n_samples = 128);
// sum_n c_n q^{n-j}.
cplx laurent_eval(const std::vector<cplx>& coeffs, int j, cplx q);
// xi_j(q) tracked radially from |q| = 0.04.
cplx zero_branch_value(int j, cplx q, long double tol = 1e-12L);

struct ReciprocalSum {
  cplx partial_sum;
  long double residual = 0;    // |sum_{j <= j_max} 1/xi_j + q|
  long double tail_bound = 0;  // |q|^{j_max + 1/2} / (1 - |q|)
};

ReciprocalSum reciprocal_sum_check(cplx q, int j_max);

struct OmegaResult {
  bool unique = false;
  int count = 0;
  long double G = 0;  // Xi-smallness radius at eps = 1e-3
  bool separation_ok = false;  // |mu_k| > G
  int samples = 0;
  long double min_modulus = 0;  // smallest |theta| met on the circle
};

enum class OmegaRadius { absolute, relative };

// Zeros of theta(q, .) in |x - mu_k| <= delta (absolute) or delta |mu_k|
// (relative), mu_k = -q^{-k}, by the argument principle.
OmegaResult omega_k_count(cplx q, int k, long double delta, OmegaRadius mode = OmegaRadius::absolute);
bool omega_k_unique_zero(cplx q, int k, long double delta, OmegaRadius mode = OmegaRadius::absolute);

// Empirical min of |xi_j| over |q| = a, j <= j_max (estimate only).
long double min_zero_modulus_estimate(long double a, int j_max, int n_grid);

struct RhoTrendRow {
  long double a = 0;
  int j0 = 0;             // smallest j0 with every branch j0 <= j <= j_max tracked
  std::string first_failure;  // reason for branch j0 - 1, empty when j0 = 1
};

struct RhoTrend {
  std::vector<RhoTrendRow> rows;
  int j_max = 0;
  std::string note;  // the limit rho_j -> 1 is not certified
};

RhoTrend rho_trend(const std::vector<long double>& a_list, int j_max);

// ------------------------------------------------------------ export

void write_spectrum_csv(std::ostream& os, const std::vector<SpectralPoint>& pts);

}  // namespace thetaspec
