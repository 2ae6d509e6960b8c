#include <algorithm>
#include <cmath>
#include <limits>

#include "thetaspec/error.hpp"
#include "thetaspec/spectrum.hpp"

namespace thetaspec {

template <class R>
ThetaJet<R> theta_jet(const Complex<R>& q, const Complex<R>& x, int max_degree) {
  const Complex<R> zero(R(0));
  if (q == zero || x == zero) raise(ErrorKind::DomainError, "jet needs q != 0 and x != 0");
  if (!(abs(q) < R(1))) raise(ErrorKind::NonConvergent, "|q| must be < 1");
  const Complex<R> iq = Complex<R>(R(1)) / q;
  const Complex<R> ix = Complex<R>(R(1)) / x;
  const R eps = unit_roundoff<R>();
  ThetaJet<R> J{zero, zero, zero, zero, zero};
  Complex<R> t(R(1));  // q^{e_j} x^j
  Complex<R> step = q * x;
  R biggest(1);
  for (long long j = 0;; ++j) {
    const long long e = j * (j + 1) / 2;
    J.f += t;
    if (j > 0) {
      Complex<R> tx = t * ix;
      J.fx += tx * R(j);
      J.fxx += tx * ix * R(j * (j - 1));
      J.fq += t * iq * R(e);
      J.fqx += tx * iq * R(j * e);
    }
    if (max_degree > 0 && j == max_degree) break;
    R m = abs(t);
    if (m > biggest) biggest = m;
    if (j >= 2 && abs(step) < R(0.5) && m * R((j + 2) * (j + 2) * (j + 2)) < eps * R(1e-3) * biggest) break;
    if (j > 200000) raise(ErrorKind::NonConvergent, "series did not settle");
    t *= step;
    step *= q;
  }
  return J;
}

template ThetaJet<long double> theta_jet(const Complex<long double>&, const Complex<long double>&, int);
template ThetaJet<hp_real> theta_jet(const Complex<hp_real>&, const Complex<hp_real>&, int);

namespace {

// Plain complex product without the C99 Annex G inf/nan recovery.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

long double largest_term(long double qa, long double xa) {
  // e_n log|q| + n log|x| peaks near n = log|x| / (-log|q|) - 1/2.
  if (xa <= 1) return 1;
  long double lq = std::log(qa), lx = std::log(xa);
  long double n = std::max(0.0L, std::floor(lx / -lq - 0.5L));
  long double best = 0;
  for (long double k = std::max(0.0L, n - 1); k <= n + 2; k += 1) best = std::max(best, k * (k + 1) / 2 * lq + k * lx);
  return std::exp(std::min(best, 11000.0L));
}

}  // namespace

ProductJet theta_product_jet(cplx q, cplx x) {
  const cplx zero(0), one(1);
  if (q == zero || x == zero) raise(ErrorKind::DomainError, "product form needs q != 0 and x != 0");
  const long double qa = std::abs(q);
  if (!(qa < 1)) raise(ErrorKind::NonConvergent, "|q| must be < 1");
  const long double xa = std::abs(x);
  const cplx ix = one / x;

  // Forward product rule over the factors; no division, so a vanishing
  // factor costs no accuracy.
  cplx P = one + ix, Px = -ix * ix, Pq = zero;
  auto take = [&](cplx v, cplx dx, cplx dq) {
    Px = mul(Px, v) + mul(P, dx);
    Pq = mul(Pq, v) + mul(P, dq);
    P = mul(P, v);
  };
  cplx qm = q, qm1 = one;  // q^m, q^{m-1}
  const long double reach = std::max(xa, 1 / xa);
  const long double stop = 1e-21L * (1 - qa) / reach;
  for (long m = 1;; ++m) {
    const long double md = static_cast<long double>(m);
    const cplx qmx = mul(qm, x), qmy = mul(qm, ix);
    take(one - qm, zero, -md * qm1);
    take(one + qmx, qm, md * mul(qm1, x));
    take(one + qmy, -mul(qmy, ix), md * mul(qm1, ix));
    if (std::norm(qm) < stop * stop) break;
    if (m > 1000000) raise(ErrorKind::NonConvergent, "product did not settle");
    qm1 = qm;
    qm = mul(qm, q);
  }
  ProductJet out;
  out.theta_star = P;

  // Xi = -y theta(q, y), y = 1/x.
  Complex<long double> qc(q.real(), q.imag()), yc(ix.real(), ix.imag());
  ThetaJet<long double> J = theta_jet<long double>(qc, yc);
  cplx th(J.f.re, J.f.im), thx(J.fx.re, J.fx.im), thq(J.fq.re, J.fq.im);
  out.xi = -ix * th;
  cplx xix = ix * ix * th + ix * ix * ix * thx;
  cplx xiq = -ix * thq;
  out.f = out.theta_star + out.xi;
  out.fx = Px + xix;
  out.fq = Pq + xiq;
  out.scale = largest_term(qa, xa);
  return out;
}

ProductJet theta_jet_auto(cplx q, cplx x) {
  if (std::abs(x) > 1.5L) return theta_product_jet(q, x);
  Complex<long double> qc(q.real(), q.imag()), xc(x.real(), x.imag());
  ThetaJet<long double> J = theta_jet<long double>(qc, xc);
  ProductJet out;
  out.f = cplx(J.f.re, J.f.im);
  out.fx = cplx(J.fx.re, J.fx.im);
  out.fq = cplx(J.fq.re, J.fq.im);
  out.theta_star = out.f;
  out.xi = 0;
  out.scale = largest_term(std::abs(q), std::abs(x));
  return out;
}

}  // namespace thetaspec
