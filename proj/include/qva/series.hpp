#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

// Truncated formal Laurent series in one variable: coefficients for powers
// lo .. trunc-1 are retained, powers below lo are identically zero, powers
// at or above trunc are unknown. Any access at or above trunc aborts with a
// diagnostic rather than silently returning garbage.
class TruncSeries {
 public:
  TruncSeries() : lo_(0), trunc_(0) {}
  TruncSeries(int lo, std::vector<Scalar> coeffs);

  static TruncSeries zero(int trunc);
  static TruncSeries constant(const Scalar& c, int trunc);
  static TruncSeries monomial(const Scalar& c, int power, int trunc);
  static TruncSeries one(int trunc) { return constant(Scalar(1), trunc); }
  // sum_{k<trunc} c^k x^k / k!  — the exponential series e^{c x}.
  static TruncSeries exp_scaled(const Scalar& c, int trunc);

  int lo() const { return lo_; }
  int trunc() const { return trunc_; }

  // Coefficient of x^k; throws TruncationExceeded for k >= trunc.
  const Scalar& coeff(int k) const;

  bool is_zero() const;
  // Lowest power with a nonzero retained coefficient, if any.
  std::optional<int> valuation() const;

  TruncSeries operator-() const;
  TruncSeries scaled(const Scalar& c) const;
  // Substitutes x -> -x (coefficient of x^k picks up (-1)^k).
  TruncSeries reflected() const;
  // Multiplies by x^k (shifts the window).
  TruncSeries shifted(int k) const;
  // Restricts the known window to powers < t (t <= trunc).
  TruncSeries truncated(int t) const;

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  // Window bookkeeping: result.lo = a.lo + b.lo,
  // result.trunc = min(a.trunc + b.lo, b.trunc + a.lo).
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

  // Multiplicative inverse. The lowest retained nonzero coefficient (the
  // valuation v) becomes the leading term; result has lo = -v and
  // trunc = trunc - 2v. Identically-zero input raises ZeroLeadingTerm.
  TruncSeries inverse() const;

  // True when both series retain identical coefficients for all powers
  // below `upto`; requires both windows to reach `upto`.
  static bool agree(const TruncSeries& a, const TruncSeries& b, int upto);

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  std::string str(const std::string& var = "x") const;

 private:
  int lo_;
  int trunc_;
  std::vector<Scalar> coeffs_;  // size == trunc_ - lo_

  void drop_leading_zeros();
};

// Truncated bilateral expansion in z and w restricted to a finite window
// [z_lo, z_hi) x [w_lo, w_hi). Coefficients absent from the map are zero
// inside the window and unknown outside it (access throws). Each variable
// carries a direction flag saying on which side the full (untruncated)
// support is bounded: bounded below at the window's lower edge, or bounded
// above at its upper edge. Multiplication needs matching orientations and
// does the same window bookkeeping as TruncSeries, per direction.
struct BiTruncSeries {
  int z_lo, z_hi, w_lo, w_hi;
  bool z_bounded_below = true;
  bool w_bounded_below = true;
  std::map<std::pair<int, int>, Scalar> coeffs;

  const Scalar& coeff(int zpow, int wpow) const;
  void set(int zpow, int wpow, const Scalar& c);
  bool in_window(int zpow, int wpow) const {
    return zpow >= z_lo && zpow < z_hi && wpow >= w_lo && wpow < w_hi;
  }

  friend BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b);
  friend bool operator==(const BiTruncSeries& a, const BiTruncSeries& b);
};

}  // namespace qva
