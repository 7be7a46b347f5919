#ifndef POPCERT_POLYNOMIAL_HPP
#define POPCERT_POLYNOMIAL_HPP

#include <map>
#include <span>

#include "popcert/multiindex.hpp"

namespace popcert {

// Sparse multivariate polynomial over binary64 coefficients.
// Exact-zero coefficients are never stored, so degree queries are well defined.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, double, BasisOrderLess>;

  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, double c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  double coefficient(const MultiIndex& a) const;
  // Adds c*x^a, erasing the term if the result is exactly zero.
  void add_term(const MultiIndex& a, double c);

  double evaluate(std::span<const double> x) const;

  // Max |a| over stored terms; throws std::domain_error on the zero polynomial.
  int degree() const;
  // ceil(degree/2): the half-degree k_i that sizes a localizing matrix.
  int half_degree() const;

  // d/dx_k.
  Polynomial partial(int var) const;

  // Euclidean norm of the coefficient vector.
  double coefficient_norm() const;

  Polynomial operator-() const;

 private:
  int nvars_;
  TermMap terms_;
};

// a*p + b*q with exact-zero coefficients dropped.
Polynomial linear_combine(double a, const Polynomial& p, double b, const Polynomial& q);

}  // namespace popcert

#endif
