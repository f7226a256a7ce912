#include "qva/ratfunc.hpp"

#include <algorithm>

namespace qva {

namespace {

// A polynomial is exactly known to every order; widen it to a series window.
TruncSeries poly_series(const Polynomial& p, int trunc) {
  std::vector<Scalar> v(std::max(trunc, 0));
  for (int k = 0; k <= p.degree() && k < trunc; ++k) v[k] = p.coeff(k);
  return TruncSeries(0, std::move(v));
}

}  // namespace

RationalFn RationalFn::make(Polynomial n, Polynomial d) {
  if (d.is_zero())
    fail(ErrorCode::InvalidInput, "rational function with zero denominator");
  if (n.is_zero()) return {Polynomial(), Polynomial::constant(Scalar(1))};
  Polynomial g = Polynomial::gcd(n, d);
  n = n.div_exact(g);
  d = d.div_exact(g);
  Scalar lead = d.leading();
  return {n.scaled(lead.inverse()), d.monic()};
}

RationalFn RationalFn::constant(const Scalar& c) {
  return make(Polynomial::constant(c), Polynomial::constant(Scalar(1)));
}

Scalar RationalFn::eval(const Scalar& x) const {
  Scalar d = den.eval(x);
  if (d.is_zero())
    fail(ErrorCode::InvalidInput, "rational function evaluated at a pole");
  return num.eval(x) / d;
}

RationalFn RationalFn::inverted() const {
  if (is_zero()) fail(ErrorCode::InvalidInput, "inverse of the zero function");
  return make(den, num);
}

RationalFn RationalFn::inverted_argument() const {
  if (is_zero()) return *this;
  int dn = num.degree(), dd = den.degree();
  Polynomial n = num.reversed();
  Polynomial d = den.reversed();
  // g(1/z) = rev(num) z^{dd} / (rev(den) z^{dn}); shift whichever side needs it.
  if (dd > dn)
    n = n * Polynomial::monomial(Scalar(1), dd - dn);
  else if (dn > dd)
    d = d * Polynomial::monomial(Scalar(1), dn - dd);
  return make(std::move(n), std::move(d));
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn::make(a.num * b.num, a.den * b.den);
}

bool check_symmetry(const RationalFn& g) {
  if (g.is_zero()) return false;
  return g * g.inverted_argument() == RationalFn::constant(Scalar(1));
}

CanonicalG canonicalize(const RationalFn& g_in) {
  RationalFn g = RationalFn::make(g_in.num, g_in.den);
  if (!check_symmetry(g))
    fail(ErrorCode::SymmetryViolated,
         "g(z) g(1/z) != 1 for g = (" + g.num.str() + ") / (" + g.den.str() +
             ")");
  CanonicalG cg;
  cg.g = g;
  int vn = g.num.valuation(), vd = g.den.valuation();
  cg.l = vn - vd;
  Polynomial num0 = g.num.stripped_valuation();
  Polynomial den0 = g.den.stripped_valuation();
  cg.p = num0.monic();
  cg.n = cg.p.degree();

  // Symmetry forces den0 ~ reversal(p) and g(1) = +-1; both are engine
  // invariants at this point, so violations are internal errors. (No pole
  // at z = 1 is possible for symmetric g, hence den0(1) != 0.)
  Scalar s = num0.eval(Scalar(1)) / den0.eval(Scalar(1));
  if (s == Scalar(1))
    cg.sign = 1;
  else if (s == Scalar(-1))
    cg.sign = -1;
  else
    fail(ErrorCode::Internal, "canonical sign g(1) is not +-1");
  RationalFn candidate = RationalFn::make(
      (cg.p * Polynomial::monomial(Scalar(cg.sign), std::max(cg.l, 0))),
      (cg.p.reversed() * Polynomial::monomial(Scalar(1), std::max(-cg.l, 0))));
  if (!(candidate == g))
    fail(ErrorCode::Internal, "canonical split p / reversal(p) failed");

  cg.roots = cg.p.degree() > 0 ? cg.p.rational_roots()
                               : std::vector<std::pair<Scalar, int>>{};
  return cg;
}

TruncSeries iota_z0(const RationalFn& g, int trunc) {
  if (g.is_zero()) return TruncSeries::zero(trunc);
  int vd = g.den.valuation();
  TruncSeries den_inv = poly_series(g.den, trunc + 2 * vd).inverse();
  TruncSeries num_s = poly_series(g.num, trunc + vd);
  return (num_s * den_inv).truncated(trunc);
}

TruncSeries iota_zinf(const RationalFn& g, int trunc) {
  return iota_z0(g.inverted_argument(), trunc);
}

TruncSeries iota_exp(const RationalFn& g, int trunc) {
  if (g.is_zero()) return TruncSeries::zero(trunc);
  auto substitute = [&](const Polynomial& p, int t) {
    TruncSeries acc = TruncSeries::zero(t);
    for (int k = 0; k <= p.degree(); ++k) {
      if (p.coeff(k).is_zero()) continue;
      acc = acc + TruncSeries::exp_scaled(Scalar(k), t).scaled(p.coeff(k));
    }
    return acc;
  };
  // The denominator may vanish at x = 0 to order up to its degree (a pole
  // of g at z = 1); widen the working window accordingly.
  int headroom = 2 * std::max(g.den.degree(), 1) + 4;
  int t = trunc + headroom;
  TruncSeries den_s = substitute(g.den, t);
  TruncSeries num_s = substitute(g.num, t);
  TruncSeries r = num_s * den_s.inverse();
  if (r.trunc() < trunc)
    fail(ErrorCode::Internal, "exponential substitution lost precision");
  return r.truncated(trunc);
}

BiTruncSeries iota_wz_ratio(const RationalFn& g, Ratio which, int l_hi) {
  TruncSeries c =
      which == Ratio::WOverZ ? iota_z0(g, l_hi) : iota_zinf(g, l_hi);
  BiTruncSeries r;
  // Diagonal sum_l c_l w^l z^{-l}: w support bounded below at the expansion
  // valuation, z support bounded above at its negative.
  r.w_bounded_below = true;
  r.z_bounded_below = false;
  r.w_lo = c.lo();
  r.w_hi = l_hi;
  r.z_lo = -(l_hi - 1);
  r.z_hi = -c.lo() + 1;
  for (int l = c.lo(); l < l_hi; ++l)
    if (!c.coeff(l).is_zero()) r.set(-l, l, c.coeff(l));
  return r;
}

TruncSeries compute_h(const CanonicalG& cg, int trunc) {
  TruncSeries h = iota_exp(cg.g, trunc);
  if (h.lo() < 0 && h.valuation().value_or(0) < 0)
    fail(ErrorCode::Internal, "h has a pole at x = 0 despite symmetry");
  if (trunc > 0 && !(h.coeff(0) == Scalar(cg.sign)))
    fail(ErrorCode::Internal, "h(0) disagrees with the canonical sign");
  return h;
}

HFactorization factor_h(const CanonicalG& cg, int trunc) {
  HFactorization out;
  out.h = compute_h(cg, trunc);
  out.epsilon = cg.sign;
  TruncSeries q = TruncSeries::exp_scaled(Scalar(cg.l, 2), trunc);
  TruncSeries e1 = TruncSeries::exp_scaled(Scalar(1), trunc);
  for (const auto& [root, mult] : cg.roots) {
    TruncSeries factor = e1 - TruncSeries::constant(root, trunc);
    for (int i = 0; i < mult; ++i) q = q * factor;
  }
  q = q * TruncSeries::exp_scaled(Scalar(-cg.n, 2), trunc);
  Scalar q0 = q.coeff(0);
  if (q0.is_zero())
    fail(ErrorCode::Internal, "q(0) vanished during factorization");
  out.q = q.scaled(q0.inverse());

  TruncSeries recomposed =
      (out.q * out.q.reflected().inverse()).scaled(Scalar(out.epsilon));
  if (!TruncSeries::agree(recomposed, out.h, trunc))
    fail(ErrorCode::FactorizationMismatch,
         "eps * q(x)/q(-x) does not reproduce h(x) to the requested order");
  return out;
}

}  // namespace qva
