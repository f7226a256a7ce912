#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "qva/errors.hpp"
#include "qva/scalar.hpp"
#include "qva/series.hpp"

using qva::Error;
using qva::ErrorCode;
using qva::Scalar;
using qva::TruncSeries;

namespace {

// Engine series -> oracle coefficient vector (positions lo .. trunc-1).
std::vector<oracle::Rat> coeffs_of(const TruncSeries& s) {
  std::vector<oracle::Rat> out;
  for (int k = s.lo(); k < s.trunc(); ++k)
    out.push_back(oracle::rat(s.coeff(k).str()));
  return out;
}

TruncSeries from_oracle(const std::vector<oracle::Rat>& v, int lo = 0) {
  std::vector<Scalar> coeffs;
  for (const auto& r : v) coeffs.emplace_back(Scalar::parse(oracle::str(r)));
  return TruncSeries(lo, std::move(coeffs));
}

}  // namespace

TEST_CASE("scalar arithmetic agrees with GMP on a dense grid") {
  for (int an = -6; an <= 6; ++an)
    for (int ad = 1; ad <= 4; ++ad)
      for (int bn = -6; bn <= 6; ++bn)
        for (int bd = 1; bd <= 4; ++bd) {
          Scalar a(an, ad), b(bn, bd);
          oracle::Rat oa = oracle::rat(an, ad), ob = oracle::rat(bn, bd);
          CHECK((a + b).str() == oracle::str(oa + ob));
          CHECK((a - b).str() == oracle::str(oa - ob));
          CHECK((a * b).str() == oracle::str(oa * ob));
          if (bn != 0) CHECK((a / b).str() == oracle::str(oa / ob));
        }
}

TEST_CASE("scalar parse, formatting and predicates") {
  CHECK(Scalar::parse("-7/3").str() == "-7/3");
  CHECK(Scalar::parse("4").str() == "4/1");
  CHECK(Scalar::parse("0/9").str() == "0/1");
  CHECK(Scalar::parse("6/-4").str() == "-3/2");
  CHECK(Scalar(0).is_zero());
  CHECK(Scalar(1).is_one());
  CHECK(Scalar(-5, 3).sign() == -1);
  CHECK(Scalar(2, 4) == Scalar(1, 2));
  CHECK(Scalar(1, 3) < Scalar(1, 2));
  CHECK(Scalar(-3, 7).inverse().str() == "-7/3");
  CHECK_THROWS_AS(Scalar(1, 0), Error);
  CHECK_THROWS_AS(Scalar::parse("seven"), Error);
}

TEST_CASE("binomial coefficients match a Pascal-triangle table") {
  const int N = 20;
  std::vector<std::vector<long long>> pascal(N + 1);
  for (int n = 0; n <= N; ++n) {
    pascal[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(Scalar::binomial(n, k) == Scalar(static_cast<long>(pascal[n][k])));
}

TEST_CASE("series construction and coefficient access") {
  TruncSeries s(0, {Scalar(1), Scalar(-3), Scalar(9, 2)});
  CHECK(s.lo() == 0);
  CHECK(s.trunc() == 3);
  CHECK(s.coeff(1) == Scalar(-3));
  CHECK(s.coeff(-5) == Scalar(0));  // below lo: known zero
  CHECK_THROWS_AS(s.coeff(3), Error);
  try {
    s.coeff(7);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationExceeded);
  }
  CHECK(TruncSeries::zero(4).is_zero());
  CHECK(!TruncSeries::zero(4).valuation().has_value());
  CHECK(TruncSeries::monomial(Scalar(2), -3, 2).valuation() == -3);
}

TEST_CASE("series product agrees with the convolution oracle") {
  // 1/(1-2z) and (z-2)/(1-2z) expanded by long division, multiplied both
  // ways.
  auto a = oracle::divide_series({oracle::rat(1)},
                                 {oracle::rat(1), oracle::rat(-2)}, 12);
  auto b = oracle::divide_series({oracle::rat(-2), oracle::rat(1)},
                                 {oracle::rat(1), oracle::rat(-2)}, 12);
  TruncSeries ea = from_oracle(a), eb = from_oracle(b);
  CHECK(coeffs_of(ea * eb) == oracle::mul_series(a, b, 12));
  CHECK(coeffs_of(ea + eb) == [&] {
    std::vector<oracle::Rat> out(12);
    for (int i = 0; i < 12; ++i) out[i] = a[i] + b[i];
    return out;
  }());
}

TEST_CASE("series inverse really inverts") {
  auto b = oracle::divide_series({oracle::rat(-2), oracle::rat(1)},
                                 {oracle::rat(1), oracle::rat(-2)}, 10);
  TruncSeries eb = from_oracle(b);
  TruncSeries prod = eb * eb.inverse();
  for (int k = 0; k < prod.trunc(); ++k)
    CHECK(prod.coeff(k) == (k == 0 ? Scalar(1) : Scalar(0)));

  // Valuation handling: inverting c*z^2 + ... lands at z^{-2}.
  TruncSeries v(2, {Scalar(4), Scalar(1)});
  TruncSeries iv = v.inverse();
  CHECK(iv.lo() == -2);
  CHECK(iv.coeff(-2) == Scalar(1, 4));

  CHECK_THROWS_AS(TruncSeries::zero(5).inverse(), Error);
  try {
    TruncSeries::zero(5).inverse();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroLeadingTerm);
  }
}

TEST_CASE("exponential series agrees with the factorial oracle") {
  for (long c : {1L, -2L, 3L}) {
    TruncSeries e = TruncSeries::exp_scaled(Scalar(c), 14);
    CHECK(coeffs_of(e) == oracle::exp_series(oracle::rat(c), 14));
  }
  // e^{cx} e^{-cx} = 1.
  TruncSeries p = TruncSeries::exp_scaled(Scalar(5, 2), 10) *
                  TruncSeries::exp_scaled(Scalar(-5, 2), 10);
  CHECK(TruncSeries::agree(p, TruncSeries::one(10), 10));
}

TEST_CASE("reflection, shift, truncation") {
  TruncSeries s(-1, {Scalar(2), Scalar(3), Scalar(5)});  // 2/x + 3 + 5x
  TruncSeries r = s.reflected();                         // -2/x + 3 - 5x
  CHECK(r.coeff(-1) == Scalar(-2));
  CHECK(r.coeff(0) == Scalar(3));
  CHECK(r.coeff(1) == Scalar(-5));
  TruncSeries sh = s.shifted(2);  // 2x + 3x^2 + 5x^3
  CHECK(sh.lo() == 1);
  CHECK(sh.coeff(3) == Scalar(5));
  TruncSeries tr = s.truncated(1);
  CHECK(tr.trunc() == 1);
  CHECK(tr.coeff(0) == Scalar(3));
  CHECK_THROWS_AS(tr.coeff(1), Error);
}

TEST_CASE("agree compares only up to the stated bound") {
  TruncSeries a(0, {Scalar(1), Scalar(2), Scalar(3)});
  TruncSeries b(0, {Scalar(1), Scalar(2), Scalar(9)});
  CHECK(TruncSeries::agree(a, b, 2));
  CHECK(!TruncSeries::agree(a, b, 3));
}
