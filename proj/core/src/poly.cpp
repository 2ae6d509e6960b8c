#include "thetaspec/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thetaspec/error.hpp"

namespace thetaspec {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(const mpz_class& c, int degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : mpz_class(0);
}

IntPoly IntPoly::derivative() const {
  std::vector<mpz_class> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return IntPoly(std::move(d));
}

mpq_class IntPoly::eval(const mpq_class& t) const {
  mpq_class acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
  return acc;
}

std::complex<double> IntPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k].get_d();
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

IntPoly operator*(const mpz_class& s, IntPoly a) {
  for (auto& v : a.c_) v *= s;
  a.trim();
  return a;
}

bool IntPoly::divides_by(const IntPoly& d, IntPoly* quotient) const {
  if (d.is_zero()) raise(ErrorKind::DegenerateInput, "division by zero polynomial");
  std::vector<mpz_class> rem = c_;
  int dd = d.degree();
  int n = degree();
  std::vector<mpz_class> q(std::max(0, n - dd + 1));
  for (int k = n; k >= dd; --k) {
    if (rem[k] == 0) continue;
    if (!mpz_divisible_p(rem[k].get_mpz_t(), d.leading().get_mpz_t())) return false;
    mpz_class f = rem[k] / d.leading();
    q[k - dd] = f;
    for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= f * d.c_[i];
  }
  for (int k = 0; k < std::min(dd, n + 1); ++k)
    if (rem[k] != 0) return false;
  if (quotient) *quotient = IntPoly(std::move(q));
  return true;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    const mpz_class& v = c_[k];
    if (v == 0) continue;
    mpz_class a = abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1 || k == 0) os << a.get_str();
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const IntPoly& p) {
  for (const auto& v : p.coeffs()) c_.emplace_back(v);
}

QPoly::QPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class QPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : mpq_class(0);
}

QPoly QPoly::derivative() const {
  std::vector<mpq_class> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return QPoly(std::move(d));
}

mpq_class QPoly::eval(const mpq_class& t) const {
  mpq_class acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
  return acc;
}

int QPoly::sign_at(const mpq_class& t) const { return sgn(eval(t)); }

long double QPoly::eval_ld(long double t) const {
  long double acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * t + static_cast<long double>(c_[k].get_d());
  return acc;
}

IntervalReal QPoly::eval_interval(const IntervalReal& t) const {
  IntervalReal acc(0);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * t + IntervalReal::from_rational(c_[k]);
  return acc;
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  mpq_class inv = 1 / c_.back();
  return inv * *this;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

QPoly operator*(const mpq_class& s, QPoly a) {
  for (auto& v : a.c_) v *= s;
  a.trim();
  return a;
}

void QPoly::divmod(const QPoly& d, QPoly* quot, QPoly* rem) const {
  if (d.is_zero()) raise(ErrorKind::DegenerateInput, "division by zero polynomial");
  std::vector<mpq_class> r = c_;
  int dd = d.degree();
  int n = degree();
  std::vector<mpq_class> q(std::max(0, n - dd + 1));
  for (int k = n; k >= dd; --k) {
    if (r[k] == 0) continue;
    mpq_class f = r[k] / d.c_[dd];
    q[k - dd] = f;
    for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * d.c_[i];
  }
  r.resize(std::max(0, std::min(dd, n + 1)));
  if (quot) *quot = QPoly(std::move(q));
  if (rem) *rem = QPoly(std::move(r));
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].get_str() << ")";
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r;
    x.divmod(y, nullptr, &r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly square_free_part(const QPoly& p) {
  if (p.degree() <= 0) return p;
  QPoly g = gcd(p, p.derivative());
  QPoly q;
  p.divmod(g, &q, nullptr);
  return q.monic();
}

std::vector<QPoly> square_free_decomposition(const QPoly& p) {
  // Yun's algorithm.
  std::vector<QPoly> out;
  if (p.degree() <= 0) return out;
  QPoly dp = p.derivative();
  QPoly a = gcd(p, dp);
  QPoly b, c, d;
  p.divmod(a, &b, nullptr);
  dp.divmod(a, &c, nullptr);
  d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly f = gcd(b, d);
    out.push_back(f);
    QPoly nb, nc;
    b.divmod(f, &nb, nullptr);
    d.divmod(f, &nc, nullptr);
    b = nb;
    d = nc - b.derivative();
  }
  return out;
}

// ---------------------------------------------------------------- segments

SegmentQ::SegmentQ(GaussianRational s, GaussianRational e, std::string n)
    : start(std::move(s)), end(std::move(e)), name(std::move(n)) {
  if (start == end) raise(ErrorKind::DegenerateInput, "segment endpoints coincide");
}

std::complex<double> SegmentQ::at(double t) const {
  std::complex<double> s = start.to_complex();
  return s + t * (end.to_complex() - s);
}

RealPolyPair restrict_to_segment(const IntPoly& p, const SegmentQ& seg) {
  QPoly qr({seg.start.re, seg.end.re - seg.start.re});
  QPoly qi({seg.start.im, seg.end.im - seg.start.im});
  QPoly ar, ai;
  for (size_t k = p.coeffs().size(); k-- > 0;) {
    QPoly nr = ar * qr - ai * qi;
    QPoly ni = ar * qi + ai * qr;
    nr += QPoly({mpq_class(p.coeffs()[k])});
    ar = std::move(nr);
    ai = std::move(ni);
  }
  return {ar, ai, true};
}

RealPolyPair operator+(const RealPolyPair& a, const RealPolyPair& b) {
  return {a.re_part + b.re_part, a.im_part + b.im_part, a.exact && b.exact};
}

RealPolyPair operator*(const RealPolyPair& a, const RealPolyPair& b) {
  return {a.re_part * b.re_part - a.im_part * b.im_part,
          a.re_part * b.im_part + a.im_part * b.re_part, a.exact && b.exact};
}

// ---------------------------------------------------------------- gauge f

IntervalReal f_gauge_interval(const IntervalReal& t) {
  if (!(t.lo() >= 0 && t.hi() < 1)) raise(ErrorKind::DomainError, "f requires 0 <= t < 1");
  IntervalReal s = sqrt(t);
  IntervalReal t52 = pow(s, 5u);
  // t - t^{5/2}/(1-t) is not monotone in general, so bound each part.
  return t - t52 / (IntervalReal(1) - t);
}

long double f_gauge(long double t) {
  if (!(t > 0 && t < 1)) raise(ErrorKind::DomainError, "f requires 0 < t < 1");
  return t - std::pow(t, 2.5L) / (1 - t);
}

MonotonicityCertificate f_gauge_monotonicity(long double lo, long double hi, int pieces) {
  MonotonicityCertificate c;
  c.lo = lo;
  c.hi = hi;
  c.pieces = pieces;
  c.min_derivative = std::numeric_limits<long double>::infinity();
  for (int i = 0; i < pieces; ++i) {
    long double b = lo + (hi - lo) * (i + 1) / pieces;
    IntervalReal tb(round_up(b));
    IntervalReal g = pow(sqrt(tb), 3u) * (IntervalReal(2.5L) - IntervalReal(1.5L) * tb) /
                     sqr(IntervalReal(1) - tb);
    c.min_derivative = std::min(c.min_derivative, (IntervalReal(1) - g).lo());
  }
  c.increasing = c.min_derivative > 0;
  return c;
}

// ---------------------------------------------------------------- tails

TailBounds tail_phi_psi(const IntervalReal& q, const IntervalReal& x, int j_start) {
  if (!(q.lo() >= 0 && q.hi() < 1)) raise(ErrorKind::DomainError, "need 0 <= |q| < 1");
  if (!(x.lo() >= 0)) raise(ErrorKind::DomainError, "need |x| >= 0");
  if (j_start < 1) raise(ErrorKind::DomainError, "need j_start >= 1");
  TailBounds out;
  if (x.hi() == 0) {
    out.phi_enclosure = out.psi_enclosure = IntervalReal(0);
    return out;
  }
  auto ratio_at = [&](int j) {
    // Bound on both term ratios from index j on.
    return round_up((q.hi() == 0 ? 0.0L : std::pow(q.hi(), static_cast<long double>(j + 1))) *
                    x.hi() * (j + 1) / j * (1 + 1e-15L));
  };
  if (!(ratio_at(j_start) < 1))
    raise(ErrorKind::NonConvergent, "tail ratio bound is not below 1");
  long long e = static_cast<long long>(j_start) * (j_start + 1) / 2;
  IntervalReal t = pow(q, static_cast<unsigned>(e)) * pow(x, static_cast<unsigned>(j_start));
  IntervalReal dt = IntervalReal(static_cast<long double>(j_start)) *
                    pow(q, static_cast<unsigned>(e - 1)) * pow(x, static_cast<unsigned>(j_start - 1));
  IntervalReal s0(0), s1(0);
  for (int j = j_start;; ++j) {
    s0 += t;
    s1 += dt;
    IntervalReal step = pow(q, static_cast<unsigned>(j + 1)) * x;
    IntervalReal nt = t * step;
    IntervalReal ndt = dt * step * IntervalReal(static_cast<long double>(j + 1)) /
                       IntervalReal(static_cast<long double>(j));
    long double r = ratio_at(j + 1);
    if (r <= 0.5L && ndt.hi() <= 1e-20L * s1.lo() && nt.hi() <= 1e-20L * s0.lo()) {
      s0 += IntervalReal(0, round_up(nt.hi() / (1 - r)));
      s1 += IntervalReal(0, round_up(ndt.hi() / (1 - r)));
      break;
    }
    t = nt;
    dt = ndt;
    if (j > 100000) raise(ErrorKind::NonConvergent, "tail series");
  }
  out.phi_enclosure = s0;
  out.psi_enclosure = s1;
  out.phi = s0.hi();
  out.psi = s1.hi();
  return out;
}

TailBounds tail_phi_psi(long double q_abs, long double x_abs, int j_start) {
  return tail_phi_psi(IntervalReal(q_abs), IntervalReal(x_abs), j_start);
}

}  // namespace thetaspec
