#include "thetaspec/sparse_poly.hpp"

#include <sstream>

#include "thetaspec/error.hpp"

namespace thetaspec {

const char* var_name(Var v) {
  switch (v) {
    case Var::q: return "q";
    case Var::x: return "x";
    case Var::a: return "a";
    case Var::b: return "b";
  }
  return "?";
}

namespace {

bool divides(const Monomial& d, const Monomial& m) {
  for (int i = 0; i < kNumVars; ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kNumVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kNumVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

}  // namespace

SparsePoly::SparsePoly(long c) {
  if (c != 0) t_[Monomial{}] = c;
}

SparsePoly::SparsePoly(Terms terms) {
  for (auto& [m, c] : terms)
    if (c != 0) t_.emplace(m, c);
}

SparsePoly SparsePoly::variable(Var v, int power) {
  Monomial m{};
  m[static_cast<int>(v)] = static_cast<std::uint16_t>(power);
  return term(1, m);
}

SparsePoly SparsePoly::term(const mpz_class& c, const Monomial& m) {
  SparsePoly p;
  if (c != 0) p.t_[m] = c;
  return p;
}

SparsePoly SparsePoly::from_univariate(const IntPoly& p, Var v) {
  SparsePoly out;
  for (int k = 0; k <= p.degree(); ++k) {
    Monomial m{};
    m[static_cast<int>(v)] = static_cast<std::uint16_t>(k);
    out.add_term(m, p.coeff(k));
  }
  return out;
}

void SparsePoly::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

int SparsePoly::degree(Var v) const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m[static_cast<int>(v)]));
  return d;
}

SparsePoly SparsePoly::coefficient(Var v, int k) const {
  SparsePoly out;
  const int i = static_cast<int>(v);
  for (const auto& [m, c] : t_) {
    if (m[i] != k) continue;
    Monomial r = m;
    r[i] = 0;
    out.add_term(r, c);
  }
  return out;
}

IntPoly SparsePoly::to_univariate(Var v) const {
  const int i = static_cast<int>(v);
  std::vector<mpz_class> c(std::max(0, degree(v) + 1));
  for (const auto& [m, coef] : t_) {
    for (int j = 0; j < kNumVars; ++j)
      if (j != i && m[j] != 0)
        raise(ErrorKind::DegenerateInput, std::string("polynomial is not univariate in ") + var_name(v));
    c[m[i]] += coef;
  }
  return IntPoly(std::move(c));
}

SparsePoly SparsePoly::divide_by_power(Var v, int k) const {
  const int i = static_cast<int>(v);
  SparsePoly out;
  for (const auto& [m, c] : t_) {
    if (m[i] < k) raise(ErrorKind::DegenerateInput, "not divisible by the requested power");
    Monomial r = m;
    r[i] = static_cast<std::uint16_t>(r[i] - k);
    out.add_term(r, c);
  }
  return out;
}

SparsePoly SparsePoly::derivative(Var v) const {
  const int i = static_cast<int>(v);
  SparsePoly out;
  for (const auto& [m, c] : t_) {
    if (m[i] == 0) continue;
    Monomial r = m;
    r[i] = static_cast<std::uint16_t>(r[i] - 1);
    out.add_term(r, c * static_cast<unsigned long>(m[i]));
  }
  return out;
}

mpq_class SparsePoly::eval(const std::array<mpq_class, kNumVars>& point) const {
  mpq_class acc = 0;
  for (const auto& [m, c] : t_) {
    mpq_class t = c;
    for (int i = 0; i < kNumVars; ++i)
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) out.add_term(mono_mul(ma, mb), ca * cb);
  return out;
}

SparsePoly SparsePoly::exact_divide(const SparsePoly& a, const SparsePoly& d) {
  if (d.is_zero()) raise(ErrorKind::DegenerateInput, "division by zero polynomial");
  SparsePoly rem = a;
  SparsePoly quot;
  const auto& [lm_d, lc_d] = *d.t_.rbegin();
  while (!rem.is_zero()) {
    const auto [lm, lc] = *rem.t_.rbegin();
    if (!divides(lm_d, lm) || !mpz_divisible_p(lc.get_mpz_t(), lc_d.get_mpz_t()))
      raise(ErrorKind::DegenerateInput, "inexact multivariate division");
    SparsePoly t = term(lc / lc_d, mono_div(lm, lm_d));
    quot += t;
    rem -= t * d;
  }
  return quot;
}

std::string SparsePoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    mpz_class a = abs(c);
    bool constant = true;
    for (int i = 0; i < kNumVars; ++i) constant = constant && m[i] == 0;
    bool need_star = false;
    if (a != 1 || constant) {
      os << a.get_str();
      need_star = true;
    }
    for (int i = 0; i < kNumVars; ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(static_cast<Var>(i));
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

std::vector<std::pair<std::array<int, 2>, mpz_class>> SparsePoly::dense_qx_terms() const {
  std::vector<std::pair<std::array<int, 2>, mpz_class>> out;
  for (const auto& [m, c] : t_) {
    if (m[2] != 0 || m[3] != 0) raise(ErrorKind::DegenerateInput, "polynomial involves a or b");
    out.push_back({{m[0], m[1]}, c});
  }
  return out;
}

SparsePoly SparsePoly::from_dense_qx_terms(const std::vector<std::pair<std::array<int, 2>, mpz_class>>& terms) {
  SparsePoly p;
  for (const auto& [e, c] : terms) {
    Monomial m{};
    m[0] = static_cast<std::uint16_t>(e[0]);
    m[1] = static_cast<std::uint16_t>(e[1]);
    p.add_term(m, c);
  }
  return p;
}

std::vector<std::vector<SparsePoly>> sylvester_matrix(const SparsePoly& p, const SparsePoly& r, Var v) {
  const int m = p.degree(v);
  const int n = r.degree(v);
  if (m < 1 || n < 1)
    raise(ErrorKind::DegenerateInput, std::string("need positive degree in ") + var_name(v));
  const int size = m + n;
  std::vector<std::vector<SparsePoly>> s(size, std::vector<SparsePoly>(size));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = p.coefficient(v, m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = r.coefficient(v, n - k);
  return s;
}

SparsePoly bareiss_determinant(std::vector<std::vector<SparsePoly>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return SparsePoly(1);
  int sign = 1;
  SparsePoly prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k].is_zero()) {
      int p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return SparsePoly(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        SparsePoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = SparsePoly::exact_divide(num, prev);
      }
      a[i][k] = SparsePoly(0);
    }
    prev = a[k][k];
  }
  SparsePoly det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

SparsePoly sylvester_resultant(const SparsePoly& p, const SparsePoly& r, Var eliminate) {
  if (p.is_zero() || r.is_zero())
    raise(ErrorKind::DegenerateInput, "resultant of a zero polynomial");
  return bareiss_determinant(sylvester_matrix(p, r, eliminate));
}

IntPoly sylvester_resultant_q(const SparsePoly& p, const SparsePoly& r, Var eliminate) {
  return sylvester_resultant(p, r, eliminate).to_univariate(Var::q);
}

SparsePoly quartic_truncation() {
  SparsePoly u(1);
  const int e[5] = {0, 1, 3, 6, 10};
  for (int j = 1; j <= 4; ++j) {
    Monomial m{};
    m[0] = static_cast<std::uint16_t>(e[j]);
    m[1] = static_cast<std::uint16_t>(j);
    u += SparsePoly::term(1, m);
  }
  return u;
}

SparsePoly quartic_truncation_dx_over_q() {
  return quartic_truncation().derivative(Var::x).divide_by_power(Var::q, 1);
}

PerturbedResultant build_perturbed_resultant() {
  SparsePoly u = quartic_truncation() + SparsePoly::variable(Var::a);
  SparsePoly ux = quartic_truncation_dx_over_q() + SparsePoly::variable(Var::b);
  PerturbedResultant out;
  out.full = sylvester_resultant(u, ux, Var::x).divide_by_power(Var::q, 26);
  std::map<std::pair<int, int>, SparsePoly> groups;
  for (const auto& [m, c] : out.full.terms()) {
    Monomial r = m;
    r[2] = r[3] = 0;
    groups[{m[2], m[3]}] += SparsePoly::term(c, r);
  }
  for (auto& [ab, p] : groups) out.by_monomial[ab] = p.to_univariate(Var::q);
  auto get = [&](int i, int j) {
    auto it = out.by_monomial.find({i, j});
    return it == out.by_monomial.end() ? IntPoly() : it->second;
  };
  out.V = get(0, 0);
  out.V1 = get(1, 0);
  out.V2 = get(2, 0);
  out.V3 = get(3, 0);
  out.W1 = get(0, 2);
  out.W2 = get(0, 3);
  out.W3 = get(0, 4);
  out.W4 = get(1, 2);
  return out;
}

IntPoly truncation_resultant() {
  return sylvester_resultant(quartic_truncation(), quartic_truncation_dx_over_q(), Var::x)
      .divide_by_power(Var::q, 26)
      .to_univariate(Var::q);
}

}  // namespace thetaspec
