#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "thetaspec/ball.hpp"
#include "thetaspec/interval.hpp"
#include "thetaspec/poly.hpp"
#include "thetaspec/sparse_poly.hpp"

namespace thetaspec {

// ------------------------------------------------------------ root isolation

// Closed interval [lo, hi] holding exactly one real root (lo == hi for an
// exactly located root).
struct RootInterval {
  mpq_class lo;
  mpq_class hi;
  bool exact() const { return lo == hi; }
};

class SturmSequence {
 public:
  explicit SturmSequence(const QPoly& p);
  int variations(const mpq_class& t) const;
  // Distinct real roots in (a, b].
  int count(const mpq_class& a, const mpq_class& b) const;
  // Distinct real roots in [a, b].
  int count_closed(const mpq_class& a, const mpq_class& b) const;
  const std::vector<QPoly>& chain() const { return chain_; }

 private:
  std::vector<QPoly> chain_;
};

// Disjoint isolating intervals, sorted, for the distinct real roots of p in
// [lo, hi]. An empty result certifies that p has no root there.
std::vector<RootInterval> isolate_real_roots(const QPoly& p, const mpq_class& lo, const mpq_class& hi);
// Shrinks an isolating interval of a root of the square-free polynomial p to
// width <= width.
RootInterval refine_root(const QPoly& squarefree, RootInterval iv, const mpq_class& width);

// ------------------------------------------------------------ segment bounds

enum class BoundKind { lower, upper };
const char* to_string(BoundKind k);

struct BoundCertificate {
  std::string segment;
  std::string polynomial;
  BoundKind kind = BoundKind::lower;
  mpq_class threshold;
  mpq_class witness_t;
  long double witness_value = 0;  // |P^R| + |P^I| at witness_t
  bool root_free = false;
  int pieces = 0;                 // polynomial pieces checked
  int precision_bits = 0;         // 0: exact rational arithmetic
};

// Certifies |P^R| + |P^I| > threshold (lower) or < threshold (upper) on the
// whole segment. Throws CertificateFailed naming the offending t-interval.
BoundCertificate certify_segment_bound(const IntPoly& p, const SegmentQ& seg, BoundKind kind,
                                       const mpq_class& threshold, const std::string& poly_name = "P");
BoundCertificate certify_segment_bound(const IntPoly& p, const SegmentQ& seg, BoundKind kind, double threshold,
                                       const std::string& poly_name = "P");

// Sampled min/max of |P^R| + |P^I| over the segment (exploratory).
std::pair<double, double> sampled_extrema(const IntPoly& p, const SegmentQ& seg, int samples = 4001);

// ------------------------------------------------------------ sigma rows

struct SegmentThresholds {
  std::string segment;
  std::string v_lower;   // bound on V
  std::string v1_upper;  // bound on V_1
  std::string vk_upper;  // shared bound on V_2, V_3
  std::string wj_upper;  // shared bound on W_1 .. W_4
};

enum class TableSource { reference, derived };
const char* to_string(TableSource s);

// K_h^+, K_h^-, K_v^-, K^0..K^3, S^0..S^4 in this order.
std::vector<SegmentQ> certification_segments();
SegmentQ segment_by_name(const std::string& name);
std::vector<SegmentThresholds> reference_thresholds();
// Thresholds from sampled extrema with 1% slack, rounded outward to three
// significant digits.
std::vector<SegmentThresholds> derived_thresholds();
std::vector<SegmentThresholds> thresholds_for(TableSource s);

struct PerturbationRadii {
  IntervalReal a0;
  IntervalReal b0;
  IntervalReal gamma_radius;
};

// a0 = phi(1/3, gamma), b0 = psi(1/3, gamma), gamma = 2/f(c1).
PerturbationRadii perturbation_radii(const std::string& c1_decimal = "0.2256613757");

// Lower bound on Sigma := m/sqrt2 - sum_j (M_{Vj} a0^j + M_{Wj} b0^{j+1}) - M_{W4} a0 b0^2.
long double sigma_lower_bound(const mpq_class& m, const mpq_class& v1, const mpq_class& vk, const mpq_class& wj,
                              const IntervalReal& a0, const IntervalReal& b0);

struct SigmaCertificate {
  std::string segment;
  mpq_class v_lower;
  mpq_class v1_upper;
  mpq_class vk_upper;
  mpq_class wj_upper;
  std::vector<BoundCertificate> bounds;  // V, V1, V2, V3, W1..W4
  IntervalReal a0;
  IntervalReal b0;
  long double sigma_lower = 0;
  bool valid = false;
};

struct SegmentSuiteOptions {
  TableSource tables = TableSource::reference;
  // Claims are strengthened by this factor: lower bounds multiplied, upper
  // bounds divided.
  std::string threshold_scale = "1";
  int parallelism = 1;
  std::vector<std::string> only;  // restrict to these segment names
};

SigmaCertificate certify_sigma_row(const PerturbedResultant& r, const SegmentQ& seg, const SegmentThresholds& t,
                                   const PerturbationRadii& radii, const mpq_class& scale = 1);

struct SegmentRowOutcome {
  std::string segment;
  std::optional<SigmaCertificate> certificate;
  std::string failure;  // empty when certified
};

// Runs every row and records failures instead of throwing.
std::vector<SegmentRowOutcome> run_segment_suite(const SegmentSuiteOptions& opts);
// All rows; throws CertificateFailed at the first failing row (segment order).
std::vector<SigmaCertificate> certify_all_segments(const SegmentSuiteOptions& opts = {});

// Restricted K_h^- equals the conjugate of restricted K_h^+ for every
// polynomial with real coefficients.
struct ConjugationCheck {
  bool real_coefficients = false;
  bool mirrored_segments_agree = false;
  bool ok() const { return real_coefficients && mirrored_segments_agree; }
};
ConjugationCheck conjugation_symmetry_check();

// ------------------------------------------------------------ Rouche

struct RectQ {
  mpq_class re_lo, re_hi, im_lo, im_hi;
};

struct RoucheResult {
  int count = 0;
  double winding = 0;  // total argument change / 2pi
  int arcs = 0;        // boundary sub-arcs used
};

RoucheResult rouche_zero_count_detailed(const RectQ& region, const IntPoly& p, int max_arcs_per_edge = 1 << 14);
int rouche_zero_count(const RectQ& region, const IntPoly& p);

// ------------------------------------------------------------ proposition

struct CheckedInequality {
  std::string name;
  std::string claim;
  IntervalReal value;
  bool pass = false;
};

struct PropositionReport {
  std::vector<CheckedInequality> checks;
  IntervalReal b_tail;          // 2 sum_{l >= 3} 3^{-l^2/2}
  IntervalReal g0;
  IntervalReal sin_threshold;   // 0.0146 / g0
  IntervalReal cos_threshold;   // sqrt(1 - sin^2)
  IntervalReal cos4_threshold;  // cos(4 gamma) at the cos threshold
  bool pass = false;
};

PropositionReport verify_proposition_constants();

// ------------------------------------------------------------ lemmas

struct CircleCertificate {
  bool nonvanishing = false;
  long double min_lower_bound = 0;  // certified lower bound on |theta| on the circle
  long double min_sampled = 0;      // smallest |theta| at arc midpoints
  int arcs = 0;
  long double radius = 0;
};

// |theta(q, x)| > 0 on |x| = |q|^{-k-1/2}, with adaptive bisection of arcs.
CircleCertificate circle_nonvanishing(const BallComplex& q, int k, int n_subdiv);
// Minimum of |theta| on the same circle, located by sampling and golden
// section refinement.
long double circle_min_modulus(const std::complex<long double>& q, int k, int samples = 4096);

struct DominanceCertificate {
  std::string name;
  long double q_max = 0;
  long double x_max = 0;
  IntervalReal first_term;
  IntervalReal rest;  // sum of the remaining term moduli, tail included
  long double margin = 0;
  bool certified = false;
};

// 1 > sum_{i >= 1} (i+1)(i+2) q^{i(i+5)/2} x^i / 2.
DominanceCertificate theta_xx_nonvanishing(long double q_max, long double x_max);
// 1 > sum_{j >= 2} j(j+1) q^{(j-1)(j+4)/2} x^{j-1} / 2.
DominanceCertificate no_common_zero_thetaq_thetax(long double q_max, long double x_max);

struct TransversalityEndpoint {
  long double x = 0;
  IntervalReal y;    // |q|^2 |x|
  IntervalReal chi;  // sum_{j >= 3} j(j+1) |q|^{(j-1)(j-2)/2} |y|^{j-1} / 2
  long double margin = 0;  // lower bound on 3|y| - 1 - chi
  bool certified = false;
};

struct TransversalityCertificate {
  long double q_abs = 0.31L;
  std::vector<TransversalityEndpoint> endpoints;
  std::string justification;
  bool certified = false;
};

IntervalReal transversality_chi(long double q_abs, long double x_abs);
TransversalityCertificate transversality_check(long double q_abs = 0.31L, long double x_lo = 5.946L,
                                               long double x_hi = 0);  // x_hi = 0 selects lambda

// lambda = 2 / f(0.29).
long double lambda_radius();
// gamma = 2 / f(c1).
long double gamma_radius(long double c1 = 0.2256613757L);

}  // namespace thetaspec
