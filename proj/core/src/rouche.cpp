#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"

namespace thetaspec {

namespace {

struct Arc {
  mpq_class t0, t1;
  double arg0, arg1;
};

double arg_at(const RealPolyPair& pp, const mpq_class& t) {
  return std::atan2(pp.im_part.eval(t).get_d(), pp.re_part.eval(t).get_d());
}

double principal(double d) {
  const double pi = std::numbers::pi;
  while (d > pi) d -= 2 * pi;
  while (d <= -pi) d += 2 * pi;
  return d;
}

IntervalReal t_interval(const mpq_class& a, const mpq_class& b) {
  return IntervalReal::hull(IntervalReal::from_rational(a), IntervalReal::from_rational(b));
}

bool root_free(const std::optional<SturmSequence>& s, const mpq_class& a, const mpq_class& b) {
  return s && s->count_closed(a, b) == 0;
}

// Argument change of p along one edge. A sub-arc is accepted once the real
// or the imaginary part has no zero on it (interval Horner first, exact
// Sturm count otherwise), which keeps the image inside a half plane.
double edge_change(const RealPolyPair& pp, const std::string& edge, int max_arcs, int& arcs) {
  if (pp.re_part.is_zero() && pp.im_part.is_zero())
    raise(ErrorKind::BoundaryZero, "polynomial vanishes on edge " + edge);
  std::optional<SturmSequence> sre, sim;
  if (!pp.re_part.is_zero()) sre.emplace(square_free_part(pp.re_part));
  if (!pp.im_part.is_zero()) sim.emplace(square_free_part(pp.im_part));
  double total = 0;
  std::vector<Arc> stack{{0, 1, arg_at(pp, 0), arg_at(pp, 1)}};
  int used = 0;
  while (!stack.empty()) {
    Arc a = stack.back();
    stack.pop_back();
    IntervalReal t = t_interval(a.t0, a.t1);
    IntervalReal re = pp.re_part.eval_interval(t);
    IntervalReal im = pp.im_part.eval_interval(t);
    if (!re.contains_zero() || !im.contains_zero() || root_free(sre, a.t0, a.t1) ||
        root_free(sim, a.t0, a.t1)) {
      total += principal(a.arg1 - a.arg0);
      ++used;
      continue;
    }
    if (used + static_cast<int>(stack.size()) + 2 > max_arcs)
      raise(ErrorKind::BoundaryZero, "cannot separate the boundary image from 0 on edge " + edge +
                                         " near t = " + rational_to_decimal(a.t0, 8));
    mpq_class m = (a.t0 + a.t1) / 2;
    if (pp.re_part.sign_at(m) == 0 && pp.im_part.sign_at(m) == 0)
      raise(ErrorKind::BoundaryZero, "zero on edge " + edge + " at t = " + rational_to_decimal(m, 12));
    double am = arg_at(pp, m);
    stack.push_back({m, a.t1, am, a.arg1});
    stack.push_back({a.t0, m, a.arg0, am});
  }
  arcs += used;
  return total;
}

}  // namespace

RoucheResult rouche_zero_count_detailed(const RectQ& r, const IntPoly& p, int max_arcs_per_edge) {
  if (!(r.re_lo < r.re_hi && r.im_lo < r.im_hi)) raise(ErrorKind::DegenerateInput, "empty rectangle");
  if (p.is_zero()) raise(ErrorKind::DegenerateInput, "zero polynomial");
  GaussianRational c00{r.re_lo, r.im_lo}, c10{r.re_hi, r.im_lo}, c11{r.re_hi, r.im_hi}, c01{r.re_lo, r.im_hi};
  const SegmentQ edges[4] = {SegmentQ(c00, c10, "bottom"), SegmentQ(c10, c11, "right"),
                             SegmentQ(c11, c01, "top"), SegmentQ(c01, c00, "left")};
  RoucheResult out;
  double total = 0;
  for (const auto& e : edges) total += edge_change(restrict_to_segment(p, e), e.name, max_arcs_per_edge, out.arcs);
  out.winding = total / (2 * std::numbers::pi);
  out.count = static_cast<int>(std::lround(out.winding));
  if (std::fabs(out.winding - out.count) > 1e-6)
    raise(ErrorKind::Inconclusive, "winding number is not an integer");
  return out;
}

int rouche_zero_count(const RectQ& region, const IntPoly& p) {
  return rouche_zero_count_detailed(region, p).count;
}

}  // namespace thetaspec
