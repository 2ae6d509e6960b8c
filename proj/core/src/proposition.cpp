#include <cmath>

#include "thetaspec/certify.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

namespace {

IntervalReal dec(const char* s) { return IntervalReal::from_decimal(s); }

void add(PropositionReport& r, std::string name, std::string claim, IntervalReal value, bool pass) {
  r.checks.push_back({std::move(name), std::move(claim), value, pass});
}

// 1 - 2 c |q|^{1/2} + 2 |q|^2 K at |q| = 1/3.
IntervalReal case_value(const IntervalReal& c, const IntervalReal& k) {
  IntervalReal third = IntervalReal::from_rational(mpq_class(1, 3));
  return IntervalReal(1) - IntervalReal(2) * c * sqrt(third) + IntervalReal(2) * sqr(third) * k;
}

// d/dr of the same expression at r = 1/3; it is increasing in r, so a
// negative value there makes the expression decreasing on (0, 1/3].
IntervalReal case_slope(const IntervalReal& c, const IntervalReal& k) {
  IntervalReal third = IntervalReal::from_rational(mpq_class(1, 3));
  return -(c / sqrt(third)) + IntervalReal(4) * third * k;
}

}  // namespace

PropositionReport verify_proposition_constants() {
  PropositionReport r;
  const IntervalReal one(1);
  const IntervalReal three(3);
  const IntervalReal s3 = sqrt(three);
  const IntervalReal inv_s3 = one / s3;

  // 2 sum_{l >= 3} 3^{-l^2/2}, tail bounded by a geometric series.
  IntervalReal sum(0);
  IntervalReal term = pow(inv_s3, 9u);
  for (unsigned l = 3; l < 12; ++l) {
    sum += term;
    term *= pow(inv_s3, 2 * l + 1);
  }
  sum += IntervalReal(0, round_up(term.hi() * 2));
  r.b_tail = IntervalReal(2) * sum;
  add(r, "b_tail", "2 sum_{l>=3} 3^{-l^2/2} < 0.0146", r.b_tail, r.b_tail.hi() < dec("0.0146").lo());

  r.g0 = IntervalReal(2) * inv_s3 * (one - IntervalReal(4) / (three * s3)) * IntervalReal(0.5L);
  add(r, "g0", "2 * 3^{-1/2} (1 - 4 * 3^{-3/2}) / 2 = 0.1329058248...", r.g0,
      r.g0.positive() && std::fabs(r.g0.mid() - 0.1329058248L) < 1e-9L);

  // r^{1/2} - 4 r^2 decreases on [c0, 1/3]: its derivative 1/(2 sqrt r) - 8r
  // is decreasing, so checking r = c0 suffices.
  long double c0 = solve_c0(1e-15L);
  IntervalReal rc0(c0);
  IntervalReal slope = one / (IntervalReal(2) * sqrt(rc0)) - IntervalReal(8) * rc0;
  add(r, "g_decreasing", "d/dr [r^{1/2}(1 - 4 r^{3/2})] < 0 on [c0, 1/3]", slope, slope.negative());

  r.sin_threshold = dec("0.0146") / r.g0;
  add(r, "sin_threshold", "0.0146 / g0 = 0.1098522207...", r.sin_threshold,
      std::fabs(r.sin_threshold.mid() - 0.1098522207L) < 1e-9L);

  r.cos_threshold = sqrt(one - sqr(r.sin_threshold));
  add(r, "cos_threshold", "sqrt(1 - 0.10985...^2) = 0.9939479310...", r.cos_threshold,
      std::fabs(r.cos_threshold.mid() - 0.9939479310L) < 1e-9L);

  IntervalReal c2 = sqr(r.cos_threshold);
  r.cos4_threshold = IntervalReal(8) * sqr(c2) - IntervalReal(8) * c2 + one;
  add(r, "cos4_threshold", "cos 4 gamma >= 8c^4 - 8c^2 + 1 > 0.904624914", r.cos4_threshold,
      r.cos4_threshold.lo() > dec("0.904624914").lo());
  IntervalReal t4slope = IntervalReal(16) * r.cos_threshold * (IntervalReal(2) * c2 - one);
  add(r, "cos4_monotone", "T_4 increasing on [c, 1]", t4slope, t4slope.positive());

  const IntervalReal two_ninths = IntervalReal(2) / IntervalReal(9);
  IntervalReal v = inv_s3 + two_ninths;
  add(r, "case_1", "1/sqrt3 + 2/9 < 0.8", v, v.hi() < dec("0.8").lo());
  v = one - inv_s3 - two_ninths;
  add(r, "case_2", "1 - 1/sqrt3 - 2/9 > 0.2", v, v.lo() > dec("0.2").hi());
  v = one - two_ninths;
  add(r, "case_3", "1 - 2/9 > 0.7", v, v.lo() > dec("0.7").hi());
  v = one - sqrt(IntervalReal(2) / three) - IntervalReal(1) / IntervalReal(9);
  add(r, "case_4", "1 - (2/3)^{1/2} - 1/9 > 0.07", v, v.lo() > dec("0.07").hi());
  v = one - dec("1.7") / s3;
  add(r, "case_5", "1 - 1.7/sqrt3 > 0.018", v, v.lo() > dec("0.018").hi());

  // cos 2 beta = 2 cos^2 beta - 1 at the sector bounds.
  struct Row {
    const char* name;
    const char* cos_beta;
    const char* cos2_claim;
    const char* bound;
  };
  const Row rows[] = {{"case_6", "0.93", "0.445", "0.015"},
                      {"case_7", "0.98", "0.7298", "0.015"},
                      {"case_8", "1", "0.9208", "0.03"}};
  const char* prev_cos[] = {"0.85", "0.93", "0.98"};
  for (int i = 0; i < 3; ++i) {
    IntervalReal cb = dec(prev_cos[i]);
    IntervalReal cos2 = IntervalReal(2) * sqr(cb) - one;
    add(r, std::string("cos2beta_") + prev_cos[i], std::string("2 * ") + prev_cos[i] + "^2 - 1 = " + rows[i].cos2_claim,
        cos2, cos2.contains(parse_rational(rows[i].cos2_claim)));
    // 2|q|^{1/2} cos alpha with cos alpha <= the upper sector bound.
    IntervalReal c = dec(rows[i].cos_beta);
    IntervalReal k = dec("0.904624914") * dec(rows[i].cos2_claim);
    IntervalReal val = case_value(c, k);
    add(r, rows[i].name,
        std::string("1 - 2*") + rows[i].cos_beta + "*3^{-1/2} + (2/9)*0.904624914*" + rows[i].cos2_claim + " > " +
            rows[i].bound,
        val, val.lo() > dec(rows[i].bound).hi());
    IntervalReal sl = case_slope(c, k);
    add(r, std::string(rows[i].name) + "_monotone", "worst case at |q| = 1/3", sl, sl.negative());
  }

  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  return r;
}

}  // namespace thetaspec
