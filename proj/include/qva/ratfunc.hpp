#pragma once

#include <utility>
#include <vector>

#include "qva/poly.hpp"
#include "qva/series.hpp"

namespace qva {

// Rational function over Q, kept reduced with a monic denominator, so
// structural equality is semantic equality.
struct RationalFn {
  Polynomial num;
  Polynomial den;  // nonzero, monic, coprime to num

  static RationalFn make(Polynomial n, Polynomial d);
  static RationalFn constant(const Scalar& c);

  bool is_zero() const { return num.is_zero(); }
  Scalar eval(const Scalar& x) const;
  RationalFn inverted() const;           // 1/g
  RationalFn inverted_argument() const;  // g(1/z) as a rational function

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// Exact check of the defining symmetry g(z) g(1/z) = 1.
bool check_symmetry(const RationalFn& g);

// Canonical form of a symmetric g: g = sign * z^l * p(z) / p~(z) with
// p monic, p(0) != 0 and p~ the reversal z^n p(1/z). The roots of p are
// required to be rational (with multiplicity); sign = g(1) = +-1.
struct CanonicalG {
  RationalFn g;
  int sign = 1;
  int l = 0;
  Polynomial p;
  std::vector<std::pair<Scalar, int>> roots;
  int n = 0;  // deg p
};

CanonicalG canonicalize(const RationalFn& g);

// Ascending-power expansions. iota_z0 expands g at z = 0 (finitely many
// negative powers allowed when the denominator vanishes at 0); iota_zinf
// expands g(1/z) at z = 0; iota_exp expands g(e^x) at x = 0.
TruncSeries iota_z0(const RationalFn& g, int trunc);
TruncSeries iota_zinf(const RationalFn& g, int trunc);
TruncSeries iota_exp(const RationalFn& g, int trunc);

// Bilateral embeddings in the region |z| > |w| (ascending powers of w/z).
// WOverZ expands g(w/z), ZOverW expands g(z/w); both land on the diagonal
// sum_l c_l w^l z^{-l} with l below l_hi retained.
enum class Ratio { WOverZ, ZOverW };
BiTruncSeries iota_wz_ratio(const RationalFn& g, Ratio which, int l_hi);

// h(x) = expansion of g(e^x); for symmetric g this is a power series with
// h(0) = +-1 and h(x) h(-x) = 1.
TruncSeries compute_h(const CanonicalG& cg, int trunc);

// Splits h as eps * q(x) / q(-x) with q(0) = 1, built from the canonical
// roots: q is proportional to e^{lx/2} * prod_i (e^x - q_i) * e^{-nx/2}.
// The identity is re-verified to the requested truncation before returning.
struct HFactorization {
  TruncSeries h;
  TruncSeries q;
  int epsilon = 1;
};

HFactorization factor_h(const CanonicalG& cg, int trunc);

}  // namespace qva
