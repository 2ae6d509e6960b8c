#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thetaspec/poly.hpp"

namespace thetaspec {

enum class Var : int { q = 0, x = 1, a = 2, b = 3 };
constexpr int kNumVars = 4;

const char* var_name(Var v);

using Monomial = std::array<std::uint16_t, kNumVars>;

// Sparse multivariate polynomial in (q, x, a, b) with exact integer
// coefficients. Monomials are ordered lexicographically with q first.
class SparsePoly {
 public:
  using Terms = std::map<Monomial, mpz_class>;

  SparsePoly() = default;
  SparsePoly(long c);  // NOLINT
  explicit SparsePoly(Terms terms);

  static SparsePoly variable(Var v, int power = 1);
  static SparsePoly term(const mpz_class& c, const Monomial& m);
  // Univariate polynomial in v.
  static SparsePoly from_univariate(const IntPoly& p, Var v);

  bool is_zero() const { return t_.empty(); }
  const Terms& terms() const { return t_; }
  int degree(Var v) const;
  // Coefficient of v^k as a polynomial in the remaining variables.
  SparsePoly coefficient(Var v, int k) const;
  // Converts to a univariate polynomial in v; throws if other variables occur.
  IntPoly to_univariate(Var v) const;
  // Exact division by v^k; throws if some monomial has smaller v-degree.
  SparsePoly divide_by_power(Var v, int k) const;
  SparsePoly derivative(Var v) const;

  mpq_class eval(const std::array<mpq_class, kNumVars>& point) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a) { return SparsePoly(-1) * a; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.t_ == b.t_; }

  // Exact quotient a / d; throws DegenerateInput if the division leaves a
  // remainder.
  static SparsePoly exact_divide(const SparsePoly& a, const SparsePoly& d);

  std::string to_string() const;

  // Dense (degree_q, degree_x) -> coefficient list of the nonzero terms.
  std::vector<std::pair<std::array<int, 2>, mpz_class>> dense_qx_terms() const;
  static SparsePoly from_dense_qx_terms(const std::vector<std::pair<std::array<int, 2>, mpz_class>>& terms);

 private:
  void add_term(const Monomial& m, const mpz_class& c);
  Terms t_;
};

// Bivariate integer polynomials in (q, x) are SparsePoly values without a, b.
using BivariateIntPoly = SparsePoly;

// Sylvester matrix of p and r with respect to v (entries are polynomials in
// the other variables).
std::vector<std::vector<SparsePoly>> sylvester_matrix(const SparsePoly& p, const SparsePoly& r, Var v);
// Fraction-free Bareiss determinant.
SparsePoly bareiss_determinant(std::vector<std::vector<SparsePoly>> m);
// Res(p, r; v) via the Sylvester determinant.
SparsePoly sylvester_resultant(const SparsePoly& p, const SparsePoly& r, Var eliminate);
// Univariate convenience: the result must be a polynomial in q only.
IntPoly sylvester_resultant_q(const SparsePoly& p, const SparsePoly& r, Var eliminate);

// U = 1 + q x + q^3 x^2 + q^6 x^3 + q^10 x^4.
SparsePoly quartic_truncation();
// U_x / q.
SparsePoly quartic_truncation_dx_over_q();

struct PerturbedResultant {
  IntPoly V;
  IntPoly V1, V2, V3;
  IntPoly W1, W2, W3, W4;
  // Every (a-power, b-power) -> coefficient polynomial in q.
  std::map<std::pair<int, int>, IntPoly> by_monomial;
  SparsePoly full;  // Res(U + a, U_x/q + b, x) / q^26
};

// Res(U + a, U_x/q + b, x) / q^26 expanded in a and b.
PerturbedResultant build_perturbed_resultant();
IntPoly truncation_resultant();

}  // namespace thetaspec
