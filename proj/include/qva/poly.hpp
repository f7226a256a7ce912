#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

// Dense univariate polynomial over exact rationals. Coefficients are stored
// low power first with the invariant that the highest stored coefficient is
// nonzero; the zero polynomial stores nothing.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);
  static Polynomial constant(const Scalar& c);
  static Polynomial monomial(const Scalar& c, int power);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Lowest power with nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;
  const Scalar& coeff(int k) const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& leading() const;

  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Quotient and remainder with respect to a nonzero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b);
  // Exact division; fails (Internal) on a nonzero remainder.
  Polynomial div_exact(const Polynomial& b) const;
  static Polynomial gcd(Polynomial a, Polynomial b);  // monic or zero

  Polynomial monic() const;
  // Divides out z^valuation.
  Polynomial stripped_valuation() const;
  // z^degree * p(1/z): the coefficient list reversed.
  Polynomial reversed() const;
  Scalar eval(const Scalar& x) const;

  // All roots in Q with multiplicity, sorted ascending. Requires that the
  // polynomial splits over Q; otherwise raises IrrationalRoots (also used
  // when coefficient factorization exceeds the trial-division bound, with a
  // message saying so). The zero polynomial is rejected.
  std::vector<std::pair<Scalar, int>> rational_roots() const;

  std::string str(const std::string& var = "z") const;

 private:
  std::vector<Scalar> coeffs_;
  void trim();
};

}  // namespace qva
