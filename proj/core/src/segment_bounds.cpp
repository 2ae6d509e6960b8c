#include <algorithm>
#include <cmath>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"

namespace thetaspec {

const char* to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

namespace {

long double abs_sum(const RealPolyPair& pp, const mpq_class& t) {
  mpq_class v = abs(pp.re_part.eval(t)) + abs(pp.im_part.eval(t));
  return static_cast<long double>(v.get_d());
}

std::string interval_text(const mpq_class& a, const mpq_class& b) {
  return "[" + rational_to_decimal(a, 12) + ", " + rational_to_decimal(b, 12) + "]";
}

[[noreturn]] void fail(const BoundCertificate& c, const std::string& what, const mpq_class& a, const mpq_class& b) {
  raise(ErrorKind::CertificateFailed, c.polynomial + " on " + c.segment + ": " + what + " for t in " +
                                          interval_text(a, b));
}

bool root_free(const QPoly& g, const mpq_class& a, const mpq_class& b) {
  if (g.is_zero()) return false;
  if (g.degree() == 0) return true;
  return SturmSequence(g).count_closed(a, b) == 0;
}

void certify_upper(BoundCertificate& c, const RealPolyPair& pp) {
  // |a| + |b| < M  iff  s1 a + s2 b < M for all four sign choices.
  const QPoly m({c.threshold});
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      QPoly g = m - (mpq_class(s1) * pp.re_part + mpq_class(s2) * pp.im_part);
      if (!root_free(g, 0, 1)) {
        std::vector<RootInterval> r = g.is_zero() ? std::vector<RootInterval>{{0, 1}} : isolate_real_roots(g, 0, 1);
        fail(c, "bound reached", r.front().lo, r.front().hi);
      }
      if (g.sign_at(mpq_class(1, 2)) <= 0) fail(c, "bound exceeded", 0, 1);
      ++c.pieces;
    }
  }
  c.witness_t = mpq_class(1, 2);
}

struct Piece {
  mpq_class lo, hi, mid;
};

void certify_lower(BoundCertificate& c, const RealPolyPair& pp) {
  const QPoly& a = pp.re_part;
  const QPoly& b = pp.im_part;
  if (a.is_zero() && b.is_zero()) fail(c, "polynomial vanishes identically", 0, 1);
  if (!a.is_zero() && !b.is_zero()) {
    QPoly g = gcd(a, b);
    if (g.degree() > 0) {
      auto common = isolate_real_roots(g, 0, 1);
      if (!common.empty()) fail(c, "common zero of real and imaginary parts", common.front().lo, common.front().hi);
    }
  }
  QPoly sa = a.is_zero() ? QPoly() : square_free_part(a);
  QPoly sb = b.is_zero() ? QPoly() : square_free_part(b);
  std::vector<RootInterval> ra = a.is_zero() ? std::vector<RootInterval>{} : isolate_real_roots(a, 0, 1);
  std::vector<RootInterval> rb = b.is_zero() ? std::vector<RootInterval>{} : isolate_real_roots(b, 0, 1);
  const QPoly m({c.threshold});

  mpq_class bad_lo = 0, bad_hi = 1;
  std::string bad_what = "sign pieces overlap";
  for (int bits : {30, 60}) {
    mpq_class width(1);
    width /= mpz_class(1) << bits;
    for (auto& iv : ra) iv = refine_root(sa, iv, width);
    for (auto& iv : rb) iv = refine_root(sb, iv, width);
    std::vector<RootInterval> all = ra;
    all.insert(all.end(), rb.begin(), rb.end());
    std::sort(all.begin(), all.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    bool separated = true;
    for (size_t i = 1; i < all.size(); ++i)
      if (!(all[i - 1].hi < all[i].lo)) separated = false;
    if (!separated) continue;

    // Between consecutive root intervals both signs are constant; each
    // piece is extended over the neighbouring root intervals.
    std::vector<RootInterval> marks;
    marks.push_back({0, 0});
    marks.insert(marks.end(), all.begin(), all.end());
    marks.push_back({1, 1});
    std::vector<Piece> pieces;
    for (size_t i = 0; i + 1 < marks.size(); ++i) {
      if (!(marks[i].hi < marks[i + 1].lo)) continue;
      pieces.push_back({marks[i].lo, marks[i + 1].hi, (marks[i].hi + marks[i + 1].lo) / 2});
    }
    bool ok = true;
    for (const auto& pc : pieces) {
      int s1 = a.is_zero() ? 1 : a.sign_at(pc.mid);
      int s2 = b.is_zero() ? 1 : b.sign_at(pc.mid);
      QPoly g = mpq_class(s1) * a + mpq_class(s2) * b - m;
      if (!root_free(g, pc.lo, pc.hi) || g.sign_at(pc.mid) <= 0) {
        ok = false;
        bad_lo = pc.lo;
        bad_hi = pc.hi;
        bad_what = "bound not attained";
        break;
      }
    }
    if (ok) {
      c.pieces = static_cast<int>(pieces.size());
      c.witness_t = pieces.front().mid;
      return;
    }
  }
  fail(c, bad_what, bad_lo, bad_hi);
}

}  // namespace

BoundCertificate certify_segment_bound(const IntPoly& p, const SegmentQ& seg, BoundKind kind,
                                       const mpq_class& threshold, const std::string& poly_name) {
  if (threshold <= 0) raise(ErrorKind::DomainError, "threshold must be positive");
  BoundCertificate c;
  c.segment = seg.name;
  c.polynomial = poly_name;
  c.kind = kind;
  c.threshold = threshold;
  RealPolyPair pp = restrict_to_segment(p, seg);
  if (kind == BoundKind::upper) certify_upper(c, pp); else certify_lower(c, pp);
  c.witness_value = abs_sum(pp, c.witness_t);
  c.root_free = true;
  return c;
}

BoundCertificate certify_segment_bound(const IntPoly& p, const SegmentQ& seg, BoundKind kind, double threshold,
                                       const std::string& poly_name) {
  if (!std::isfinite(threshold)) raise(ErrorKind::DomainError, "threshold must be finite");
  return certify_segment_bound(p, seg, kind, mpq_class(threshold), poly_name);
}

std::pair<double, double> sampled_extrema(const IntPoly& p, const SegmentQ& seg, int samples) {
  if (samples < 2) raise(ErrorKind::DomainError, "need at least two samples");
  RealPolyPair pp = restrict_to_segment(p, seg);
  double lo = INFINITY, hi = 0;
  for (int i = 0; i < samples; ++i) {
    long double t = static_cast<long double>(i) / (samples - 1);
    double v = static_cast<double>(std::fabs(pp.re_part.eval_ld(t)) + std::fabs(pp.im_part.eval_ld(t)));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace thetaspec
