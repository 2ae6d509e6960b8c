#include <algorithm>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"

namespace thetaspec {

SturmSequence::SturmSequence(const QPoly& p) {
  if (p.is_zero()) raise(ErrorKind::DegenerateInput, "Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  QPoly d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(d);
  for (;;) {
    QPoly r;
    chain_[chain_.size() - 2].divmod(chain_.back(), nullptr, &r);
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmSequence::variations(const mpq_class& t) const {
  int v = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = p.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int SturmSequence::count(const mpq_class& a, const mpq_class& b) const {
  return variations(a) - variations(b);
}

int SturmSequence::count_closed(const mpq_class& a, const mpq_class& b) const {
  return count(a, b) + (chain_.front().sign_at(a) == 0 ? 1 : 0);
}

RootInterval refine_root(const QPoly& sf, RootInterval iv, const mpq_class& width) {
  if (iv.exact()) return iv;
  int slo = sf.sign_at(iv.lo);
  if (slo == 0) return {iv.lo, iv.lo};
  if (sf.sign_at(iv.hi) == 0) return {iv.hi, iv.hi};
  while (iv.hi - iv.lo > width) {
    mpq_class m = (iv.lo + iv.hi) / 2;
    int s = sf.sign_at(m);
    if (s == 0) return {m, m};
    if (s == slo) iv.lo = m; else iv.hi = m;
  }
  return iv;
}

namespace {

void bisect(const SturmSequence& st, const QPoly& sf, const mpq_class& a, const mpq_class& b, int cnt,
            std::vector<RootInterval>& out) {
  // cnt = number of distinct roots in (a, b].
  if (cnt == 0) return;
  if (cnt == 1) {
    if (sf.sign_at(b) == 0) out.push_back({b, b}); else out.push_back({a, b});
    return;
  }
  mpq_class m = (a + b) / 2;
  int left = st.count(a, m);
  bisect(st, sf, a, m, left, out);
  bisect(st, sf, m, b, cnt - left, out);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const QPoly& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.is_zero()) raise(ErrorKind::DegenerateInput, "root isolation of the zero polynomial");
  if (lo > hi) raise(ErrorKind::DegenerateInput, "empty interval");
  if (lo == hi) {
    if (p.sign_at(lo) == 0)
      raise(ErrorKind::IdenticallyZeroOnInterval, "polynomial vanishes on the whole (point) interval");
    return {};
  }
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  QPoly sf = square_free_part(p);
  SturmSequence st(sf);
  if (sf.sign_at(lo) == 0) out.push_back({lo, lo});
  bisect(st, sf, lo, hi, st.count(lo, hi), out);
  // Open intervals whose left end is a root owned by the neighbour are
  // pulled inward.
  for (auto& iv : out) {
    if (iv.exact() || sf.sign_at(iv.lo) != 0) continue;
    mpq_class step = (iv.hi - iv.lo) / 2;
    mpq_class a = iv.lo + step;
    while (st.count(a, iv.hi) != 1 || sf.sign_at(a) == 0) {
      step /= 2;
      a = iv.lo + step;
    }
    iv.lo = a;
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  // Shared endpoints are split apart.
  for (size_t i = 1; i < out.size(); ++i) {
    while (!(out[i - 1].hi < out[i].lo)) {
      out[i - 1] = refine_root(sf, out[i - 1], (out[i - 1].hi - out[i - 1].lo) / 2);
      out[i] = refine_root(sf, out[i], (out[i].hi - out[i].lo) / 2);
    }
  }
  return out;
}

}  // namespace thetaspec
