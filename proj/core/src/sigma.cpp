#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"

namespace thetaspec {

const char* to_string(TableSource s) { return s == TableSource::reference ? "reference" : "derived"; }

namespace {

GaussianRational gq(const char* re, const char* im) { return {parse_rational(re), parse_rational(im)}; }

std::string round_sig3(double v, bool up) {
  if (v <= 0) return "0";
  int e = static_cast<int>(std::floor(std::log10(v))) - 2;
  double scale = std::pow(10.0, e);
  double d = up ? std::ceil(v / scale * (1 - 1e-12)) : std::floor(v / scale * (1 + 1e-12));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0fe%d", d, e);
  // Normalise through the exact rational for a compact literal.
  mpq_class q = parse_rational(buf);
  std::snprintf(buf, sizeof buf, "%.3g", q.get_d());
  return buf;
}

}  // namespace

std::vector<SegmentQ> certification_segments() {
  const char* t = "1/3";
  const char* mt = "-1/3";
  return {
      SegmentQ(gq(mt, t), gq(t, t), "K_h+"),
      SegmentQ(gq(mt, mt), gq(t, mt), "K_h-"),
      SegmentQ(gq(mt, mt), gq(mt, t), "K_v-"),
      SegmentQ(gq(t, "0"), gq(t, "0.05"), "K0"),
      SegmentQ(gq(t, "0.05"), gq(t, "0.1"), "K1"),
      SegmentQ(gq(t, "0.1"), gq(t, "0.2"), "K2"),
      SegmentQ(gq(t, "0.2"), gq(t, t), "K3"),
      SegmentQ(gq("0.29", "0"), gq("0.29", "0.025"), "S0"),
      SegmentQ(gq("0.29", "0.025"), gq("0.29", "0.05"), "S1"),
      SegmentQ(gq("0.29", "0.05"), gq("0.29", "0.1"), "S2"),
      SegmentQ(gq("0.29", "0.1"), gq("0.29", "0.2"), "S3"),
      SegmentQ(gq("0.29", "0.2"), gq("0.29", t), "S4"),
  };
}

SegmentQ segment_by_name(const std::string& name) {
  for (auto& s : certification_segments())
    if (s.name == name) return s;
  raise(ErrorKind::DomainError, "unknown segment '" + name + "'");
}

std::vector<SegmentThresholds> derived_thresholds() {
  PerturbedResultant r = build_perturbed_resultant();
  std::vector<SegmentThresholds> out;
  for (const auto& seg : certification_segments()) {
    auto upper = [&](std::initializer_list<const IntPoly*> ps) {
      double m = 0;
      for (const IntPoly* p : ps) m = std::max(m, sampled_extrema(*p, seg).second);
      return round_sig3(m * 1.01, true);
    };
    SegmentThresholds t;
    t.segment = seg.name;
    t.v_lower = round_sig3(sampled_extrema(r.V, seg).first * 0.99, false);
    t.v1_upper = upper({&r.V1});
    t.vk_upper = upper({&r.V2, &r.V3});
    t.wj_upper = upper({&r.W1, &r.W2, &r.W3, &r.W4});
    out.push_back(t);
  }
  return out;
}

std::vector<SegmentThresholds> thresholds_for(TableSource s) {
  return s == TableSource::reference ? reference_thresholds() : derived_thresholds();
}

PerturbationRadii perturbation_radii(const std::string& c1_decimal) {
  PerturbationRadii r;
  IntervalReal c1 = IntervalReal::from_decimal(c1_decimal);
  r.gamma_radius = IntervalReal(2) / f_gauge_interval(c1);
  TailBounds tb = tail_phi_psi(IntervalReal::from_rational(mpq_class(1, 3)), r.gamma_radius, 5);
  r.a0 = tb.phi_enclosure;
  r.b0 = tb.psi_enclosure;
  return r;
}

long double sigma_lower_bound(const mpq_class& m, const mpq_class& v1, const mpq_class& vk, const mpq_class& wj,
                              const IntervalReal& a0, const IntervalReal& b0) {
  IntervalReal M = IntervalReal::from_rational(m);
  IntervalReal V1 = IntervalReal::from_rational(v1);
  IntervalReal Vk = IntervalReal::from_rational(vk);
  IntervalReal Wj = IntervalReal::from_rational(wj);
  IntervalReal a2 = sqr(a0), b2 = sqr(b0);
  IntervalReal loss = V1 * a0 + Vk * (a2 + a2 * a0) + Wj * (b2 + b2 * b0 + b2 * b2) + Wj * a0 * b2;
  IntervalReal s = M / sqrt(IntervalReal(2)) - loss;
  return s.lo();
}

SigmaCertificate certify_sigma_row(const PerturbedResultant& r, const SegmentQ& seg, const SegmentThresholds& t,
                                   const PerturbationRadii& radii, const mpq_class& scale) {
  if (scale <= 0) raise(ErrorKind::DomainError, "threshold scale must be positive");
  SigmaCertificate c;
  c.segment = seg.name;
  c.v_lower = parse_rational(t.v_lower) * scale;
  c.v1_upper = parse_rational(t.v1_upper) / scale;
  c.vk_upper = parse_rational(t.vk_upper) / scale;
  c.wj_upper = parse_rational(t.wj_upper) / scale;
  c.bounds.push_back(certify_segment_bound(r.V, seg, BoundKind::lower, c.v_lower, "V"));
  c.bounds.push_back(certify_segment_bound(r.V1, seg, BoundKind::upper, c.v1_upper, "V1"));
  c.bounds.push_back(certify_segment_bound(r.V2, seg, BoundKind::upper, c.vk_upper, "V2"));
  c.bounds.push_back(certify_segment_bound(r.V3, seg, BoundKind::upper, c.vk_upper, "V3"));
  c.bounds.push_back(certify_segment_bound(r.W1, seg, BoundKind::upper, c.wj_upper, "W1"));
  c.bounds.push_back(certify_segment_bound(r.W2, seg, BoundKind::upper, c.wj_upper, "W2"));
  c.bounds.push_back(certify_segment_bound(r.W3, seg, BoundKind::upper, c.wj_upper, "W3"));
  c.bounds.push_back(certify_segment_bound(r.W4, seg, BoundKind::upper, c.wj_upper, "W4"));
  c.a0 = radii.a0;
  c.b0 = radii.b0;
  c.sigma_lower = sigma_lower_bound(c.v_lower, c.v1_upper, c.vk_upper, c.wj_upper, radii.a0, radii.b0);
  if (!(c.sigma_lower > 0))
    raise(ErrorKind::CertificateFailed, "Sigma on " + seg.name + " is not certified positive (lower bound " +
                                            std::to_string(static_cast<double>(c.sigma_lower)) + ")");
  c.valid = true;
  return c;
}

std::vector<SegmentRowOutcome> run_segment_suite(const SegmentSuiteOptions& opts) {
  const PerturbedResultant r = build_perturbed_resultant();
  const PerturbationRadii radii = perturbation_radii();
  const mpq_class scale = parse_rational(opts.threshold_scale);
  if (scale <= 0) raise(ErrorKind::DomainError, "threshold scale must be positive");
  std::vector<SegmentThresholds> table = thresholds_for(opts.tables);
  for (const auto& name : opts.only) segment_by_name(name);

  std::vector<std::pair<SegmentQ, SegmentThresholds>> rows;
  std::vector<SegmentQ> segs = certification_segments();
  for (size_t i = 0; i < segs.size(); ++i) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), segs[i].name) == opts.only.end())
      continue;
    rows.push_back({segs[i], table[i]});
  }

  std::vector<SegmentRowOutcome> out(rows.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < rows.size(); i = next++) {
      out[i].segment = rows[i].first.name;
      try {
        out[i].certificate = certify_sigma_row(r, rows[i].first, rows[i].second, radii, scale);
      } catch (const Error& e) {
        out[i].failure = e.what();
      }
    }
  };
  int n = std::clamp(opts.parallelism, 1, static_cast<int>(std::max<size_t>(rows.size(), 1)));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::vector<SigmaCertificate> certify_all_segments(const SegmentSuiteOptions& opts) {
  std::vector<SigmaCertificate> out;
  for (auto& row : run_segment_suite(opts)) {
    if (!row.certificate) raise(ErrorKind::CertificateFailed, row.failure);
    out.push_back(*row.certificate);
  }
  return out;
}

ConjugationCheck conjugation_symmetry_check() {
  PerturbedResultant r = build_perturbed_resultant();
  ConjugationCheck c;
  c.real_coefficients = true;  // integer coefficient polynomials
  c.mirrored_segments_agree = true;
  SegmentQ up = segment_by_name("K_h+");
  SegmentQ down = segment_by_name("K_h-");
  for (const IntPoly* p : {&r.V, &r.V1, &r.V2, &r.V3, &r.W1, &r.W2, &r.W3, &r.W4}) {
    RealPolyPair a = restrict_to_segment(*p, up);
    RealPolyPair b = restrict_to_segment(*p, down);
    if (!(a.re_part == b.re_part && a.im_part == -b.im_part)) c.mirrored_segments_agree = false;
  }
  return c;
}

}  // namespace thetaspec
