#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "oracles.hpp"
#include "qva/errors.hpp"
#include "qva/ratfunc.hpp"

using qva::CanonicalG;
using qva::Error;
using qva::ErrorCode;
using qva::Polynomial;
using qva::RationalFn;
using qva::Scalar;
using qva::TruncSeries;

namespace {

Polynomial poly(std::vector<long> coeffs) {
  std::vector<Scalar> s;
  for (long c : coeffs) s.emplace_back(c);
  return Polynomial(std::move(s));
}

RationalFn rf(std::vector<long> num, std::vector<long> den) {
  return RationalFn::make(poly(std::move(num)), poly(std::move(den)));
}

std::vector<oracle::Rat> orat(std::vector<long> v) {
  std::vector<oracle::Rat> out;
  for (long c : v) out.push_back(oracle::rat(c));
  return out;
}

void check_series(const TruncSeries& got, const std::vector<oracle::Rat>& want,
                  int lo = 0) {
  REQUIRE(got.lo() <= lo);
  for (std::size_t k = 0; k < want.size(); ++k) {
    int pos = lo + static_cast<int>(k);
    REQUIRE(pos < got.trunc());
    CHECK(got.coeff(pos).str() == oracle::str(want[k]));
  }
}

// The recurring test subjects: (z-2)/(1-2z) and its two-factor relative,
// the square -z^2, and a product that reduces to the constant -1.
const RationalFn g_one = rf({1}, {1});
const RationalFn g_z = rf({0, 1}, {1});
const RationalFn g_a = rf({-2, 1}, {1, -2});
const RationalFn g_b = rf({6, -5, 1}, {1, -5, 6});  // (z-2)(z-3)/((1-2z)(1-3z))
const RationalFn g_sq = rf({0, 0, -1}, {1});
const RationalFn g_red = rf({-2, 5, -2}, {2, -5, 2});  // reduces to -1

}  // namespace

TEST_CASE("polynomial division, gcd and roots") {
  Polynomial a = poly({-6, 11, -6, 1});  // (z-1)(z-2)(z-3)
  Polynomial b = poly({-2, 1});
  auto [q, r] = Polynomial::divmod(a, b);
  CHECK(q == poly({3, -4, 1}));
  CHECK(r.is_zero());
  CHECK(a.div_exact(b) == q);
  auto [q2, r2] = Polynomial::divmod(poly({1, 0, 1}), poly({1, 1}));
  CHECK(r2 == poly({2}));

  CHECK(Polynomial::gcd(a, poly({2, -3, 1})) == poly({2, -3, 1}));  // (z-1)(z-2)
  CHECK(Polynomial::gcd(poly({1, 1}), poly({1, 0, 1})).degree() == 0);

  auto roots = a.rational_roots();
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == std::pair(Scalar(1), 1));
  CHECK(roots[1] == std::pair(Scalar(2), 1));
  CHECK(roots[2] == std::pair(Scalar(3), 1));
  auto dbl = poly({4, -4, 1}).rational_roots();  // (z-2)^2
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0] == std::pair(Scalar(2), 2));
  CHECK_THROWS_AS(poly({-2, 0, 1}).rational_roots(), Error);  // z^2 - 2

  CHECK(poly({0, 0, 3, 6}).valuation() == 2);
  CHECK(poly({0, 0, 3, 6}).stripped_valuation() == poly({3, 6}));
  CHECK(poly({1, 2, 3}).reversed() == poly({3, 2, 1}));
  CHECK(poly({-2, 1}).eval(Scalar(5)) == Scalar(3));
}

TEST_CASE("rational functions reduce and multiply exactly") {
  RationalFn r = rf({2, -2}, {4, -4});  // (2z-2)/(4z-4) = 1/2
  CHECK(r == RationalFn::constant(Scalar(1, 2)));
  CHECK(g_red == RationalFn::constant(Scalar(-1)));
  CHECK(g_a * g_a.inverted() == g_one);
  CHECK(g_a.inverted_argument() == g_a.inverted());  // symmetry, stated as 1/g
  CHECK(g_a.eval(Scalar(1)) == Scalar(1));
  CHECK_THROWS_AS(rf({1}, {0}), Error);
}

TEST_CASE("symmetry check accepts the standard examples and rejects others") {
  for (const RationalFn* g : {&g_one, &g_z, &g_a, &g_b, &g_sq, &g_red})
    CHECK(qva::check_symmetry(*g));
  CHECK(!qva::check_symmetry(rf({1, 1}, {1})));
  CHECK(!qva::check_symmetry(rf({0, 2}, {1})));
  CHECK(!qva::check_symmetry(rf({-2, 1}, {1, 2})));
}

TEST_CASE("canonical form: sign, shift and numerator part") {
  CanonicalG ca = qva::canonicalize(g_a);
  CHECK(ca.sign == 1);  // g(1) = 1
  CHECK(ca.l == 0);
  CHECK(ca.p == poly({-2, 1}));
  REQUIRE(ca.roots.size() == 1);
  CHECK(ca.roots[0] == std::pair(Scalar(2), 1));

  CanonicalG cz = qva::canonicalize(g_z);
  CHECK(cz.sign == 1);
  CHECK(cz.l == 1);
  CHECK(cz.n == 0);

  CanonicalG csq = qva::canonicalize(g_sq);
  CHECK(csq.sign == -1);
  CHECK(csq.l == 2);

  CanonicalG cred = qva::canonicalize(g_red);
  CHECK(cred.sign == -1);
  CHECK(cred.l == 0);
  CHECK(cred.n == 0);  // constant after reduction

  CHECK_THROWS_AS(qva::canonicalize(rf({1, 1}, {1})), Error);
  try {
    qva::canonicalize(rf({-2, 0, 1}, {1, 0, -2}));  // symmetric, root sqrt(2)
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IrrationalRoots);
  }
}

TEST_CASE("expansion at zero matches long division") {
  check_series(qva::iota_z0(g_a, 10),
               oracle::divide_series(orat({-2, 1}), orat({1, -2}), 10));
  check_series(qva::iota_z0(g_b, 10),
               oracle::divide_series(orat({6, -5, 1}), orat({1, -5, 6}), 10));
  // Denominator vanishing at 0 produces finitely many negative powers:
  // 1/z = z^{-1}.
  TruncSeries inv = qva::iota_z0(rf({1}, {0, 1}), 4);
  CHECK(inv.valuation() == -1);
  CHECK(inv.coeff(-1) == Scalar(1));
  CHECK(inv.coeff(0) == Scalar(0));
}

TEST_CASE("expansion at infinity is the zero-expansion of g(1/z)") {
  // g_a(1/z) = (1-2z)/(z-2) expanded at 0.
  check_series(qva::iota_zinf(g_a, 10),
               oracle::divide_series(orat({1, -2}), orat({-2, 1}), 10));
  // Product identity iota0(g) * iotainf-as-reciprocal: coefficientwise the
  // two expansions multiply to 1 because g(z) g(1/z) = 1.
  TruncSeries a = qva::iota_z0(g_a, 12);
  TruncSeries b = qva::iota_z0(g_a.inverted_argument(), 12);
  CHECK(TruncSeries::agree(a * b, TruncSeries::one(12), 12));
}

TEST_CASE("exponential-argument expansion matches the oracle") {
  check_series(qva::iota_exp(g_a, 10),
               oracle::rational_of_exp(orat({-2, 1}), orat({1, -2}), 10));
  check_series(qva::iota_exp(g_sq, 8),
               oracle::rational_of_exp(orat({0, 0, -1}), orat({1}), 8));
}

TEST_CASE("h is the exponential-argument expansion and satisfies h(x)h(-x)=1") {
  for (const RationalFn* g : {&g_one, &g_z, &g_a, &g_b, &g_sq, &g_red}) {
    CanonicalG cg = qva::canonicalize(*g);
    TruncSeries h = qva::compute_h(cg, 12);
    std::vector<oracle::Rat> num, den;
    for (const Scalar& c : g->num.coeffs()) num.push_back(oracle::rat(c.str()));
    for (const Scalar& c : g->den.coeffs()) den.push_back(oracle::rat(c.str()));
    check_series(h, oracle::rational_of_exp(num, den, 12));
    CHECK(TruncSeries::agree(h * h.reflected(), TruncSeries::one(12), 12));
  }
}

TEST_CASE("factorization h = eps q(x)/q(-x) with q(0) = 1") {
  // Frozen reference values for (z-2)/(1-2z), derived from the closed form
  // q(x) ~ (e^x - 2) e^{-x/2}: q = 1 - 3/2 x + 1/8 x^2 - 1/16 x^3 + ...
  auto fa = qva::factor_h(qva::canonicalize(g_a), 10);
  CHECK(fa.epsilon == 1);
  CHECK(fa.q.coeff(0) == Scalar(1));
  CHECK(fa.q.coeff(1) == Scalar(-3, 2));
  CHECK(fa.q.coeff(2) == Scalar(1, 8));
  CHECK(fa.q.coeff(3) == Scalar(-1, 16));
  CHECK(fa.q.coeff(4) == Scalar(1, 384));

  // Independent identity check: q(x) * eps / q(-x) reproduces the oracle h.
  for (const RationalFn* g : {&g_one, &g_z, &g_a, &g_b, &g_sq, &g_red}) {
    auto f = qva::factor_h(qva::canonicalize(*g), 12);
    std::vector<oracle::Rat> num, den;
    for (const Scalar& c : g->num.coeffs()) num.push_back(oracle::rat(c.str()));
    for (const Scalar& c : g->den.coeffs()) den.push_back(oracle::rat(c.str()));
    auto h_oracle = oracle::rational_of_exp(num, den, 12);
    TruncSeries recon =
        f.q.scaled(Scalar(f.epsilon)) * f.q.reflected().inverse();
    check_series(recon, h_oracle);
    CHECK(f.q.coeff(0) == Scalar(1));
  }

  // eps = -1 exactly for the square and the reduced constant -1.
  CHECK(qva::factor_h(qva::canonicalize(g_sq), 8).epsilon == -1);
  CHECK(qva::factor_h(qva::canonicalize(g_red), 8).epsilon == -1);
  CHECK(qva::factor_h(qva::canonicalize(g_z), 8).epsilon == 1);
  // g = z: q = e^{x/2}.
  auto fz = qva::factor_h(qva::canonicalize(g_z), 8);
  check_series(fz.q, oracle::exp_series(oracle::rat(1, 2), 8));
}

TEST_CASE("bilateral embeddings agree on overlapping monomials") {
  // iota(g(w/z)) in the |z| > |w| region: coefficients c_l of (w/z)^l match
  // the one-variable expansion of g at 0.
  auto bi = qva::iota_wz_ratio(g_a, qva::Ratio::WOverZ, 6);
  auto ref = oracle::divide_series(orat({-2, 1}), orat({1, -2}), 6);
  for (int l = 0; l < 6; ++l) {
    // locate coefficient of w^l z^{-l}
    bool found = false;
    for (const auto& [key, c] : bi.coeffs) {
      if (key.first == -l && key.second == l) {  // (z power, w power)
        CHECK(c.str() == oracle::str(ref[l]));
        found = true;
      }
    }
    CHECK(found);
  }
}
