#include "qva/series.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace qva {

TruncSeries::TruncSeries(int lo, std::vector<Scalar> coeffs)
    : lo_(lo), trunc_(lo + static_cast<int>(coeffs.size())), coeffs_(std::move(coeffs)) {}

TruncSeries TruncSeries::zero(int trunc) {
  if (trunc < 0) fail(ErrorCode::InvalidInput, "series truncation must be >= 0");
  return TruncSeries(0, std::vector<Scalar>(trunc));
}

TruncSeries TruncSeries::constant(const Scalar& c, int trunc) {
  TruncSeries s = zero(trunc);
  if (trunc > 0) s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(const Scalar& c, int power, int trunc) {
  if (power >= trunc)
    fail(ErrorCode::InvalidInput, "monomial power outside truncation window");
  std::vector<Scalar> v(trunc - power);
  v[0] = c;
  return TruncSeries(power, std::move(v));
}

TruncSeries TruncSeries::exp_scaled(const Scalar& c, int trunc) {
  std::vector<Scalar> v(std::max(trunc, 0));
  Scalar term(1);
  for (int k = 0; k < trunc; ++k) {
    v[k] = term;
    term = term * c / Scalar(k + 1);
  }
  return TruncSeries(0, std::move(v));
}

const Scalar& TruncSeries::coeff(int k) const {
  static const Scalar kZero(0);
  if (k >= trunc_)
    fail(ErrorCode::TruncationExceeded,
         "coefficient of power " + std::to_string(k) +
             " requested but series is only known below power " +
             std::to_string(trunc_));
  if (k < lo_) return kZero;
  return coeffs_[k - lo_];
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Scalar& c) { return c.is_zero(); });
}

std::optional<int> TruncSeries::valuation() const {
  for (int k = lo_; k < trunc_; ++k)
    if (!coeffs_[k - lo_].is_zero()) return k;
  return std::nullopt;
}

TruncSeries TruncSeries::operator-() const { return scaled(Scalar(-1)); }

TruncSeries TruncSeries::scaled(const Scalar& c) const {
  TruncSeries r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

TruncSeries TruncSeries::reflected() const {
  TruncSeries r = *this;
  for (int k = lo_; k < trunc_; ++k)
    if ((k % 2 + 2) % 2 == 1) r.coeffs_[k - lo_] = -r.coeffs_[k - lo_];
  return r;
}

TruncSeries TruncSeries::shifted(int k) const {
  TruncSeries r = *this;
  r.lo_ += k;
  r.trunc_ += k;
  return r;
}

TruncSeries TruncSeries::truncated(int t) const {
  if (t > trunc_)
    fail(ErrorCode::TruncationExceeded,
         "cannot extend truncation from " + std::to_string(trunc_) + " to " +
             std::to_string(t));
  TruncSeries r;
  r.lo_ = std::min(lo_, t);
  r.trunc_ = t;
  r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + (t - r.lo_ < 0 ? 0 : t - r.lo_));
  r.coeffs_.resize(r.trunc_ - r.lo_);
  return r;
}

void TruncSeries::drop_leading_zeros() {
  while (!coeffs_.empty() && coeffs_.front().is_zero()) {
    coeffs_.erase(coeffs_.begin());
    ++lo_;
  }
  if (coeffs_.empty()) {
    // Identically zero on the window: keep a canonical empty-at-trunc form.
    lo_ = trunc_;
  }
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  int lo = std::min(a.lo_, b.lo_);
  int trunc = std::min(a.trunc_, b.trunc_);
  if (trunc < lo) lo = trunc;
  std::vector<Scalar> v(trunc - lo);
  for (int k = lo; k < trunc; ++k) {
    Scalar s(0);
    if (k >= a.lo_) s += a.coeffs_[k - a.lo_];
    if (k >= b.lo_) s += b.coeffs_[k - b.lo_];
    v[k - lo] = s;
  }
  return TruncSeries(lo, std::move(v));
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  return a + (-b);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  int lo = a.lo_ + b.lo_;
  int trunc = std::min(a.trunc_ + b.lo_, b.trunc_ + a.lo_);
  if (trunc < lo) trunc = lo;
  std::vector<Scalar> v(trunc - lo);
  for (int i = a.lo_; i < a.trunc_; ++i) {
    const Scalar& ai = a.coeffs_[i - a.lo_];
    if (ai.is_zero()) continue;
    for (int j = b.lo_; j < b.trunc_ && i + j < trunc; ++j) {
      const Scalar& bj = b.coeffs_[j - b.lo_];
      if (bj.is_zero()) continue;
      v[i + j - lo] += ai * bj;
    }
  }
  return TruncSeries(lo, std::move(v));
}

TruncSeries TruncSeries::inverse() const {
  TruncSeries s = *this;
  s.drop_leading_zeros();
  if (s.coeffs_.empty())
    fail(ErrorCode::ZeroLeadingTerm,
         "cannot invert a series with no nonzero retained coefficient");
  int v = s.lo_;  // valuation
  int n = s.trunc_ - v;
  // Invert the unit part u = x^{-v} * s by the standard recurrence.
  std::vector<Scalar> b(n);
  Scalar u0inv = s.coeffs_[0].inverse();
  b[0] = u0inv;
  for (int k = 1; k < n; ++k) {
    Scalar acc(0);
    for (int j = 1; j <= k; ++j) acc += s.coeffs_[j] * b[k - j];
    b[k] = -acc * u0inv;
  }
  return TruncSeries(-v, std::move(b));
}

bool TruncSeries::agree(const TruncSeries& a, const TruncSeries& b, int upto) {
  for (int k = std::min(a.lo_, b.lo_); k < upto; ++k)
    if (a.coeff(k) != b.coeff(k)) return false;
  return true;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.trunc_ != b.trunc_) return false;
  return TruncSeries::agree(a, b, a.trunc_);
}

std::string TruncSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = lo_; k < trunc_; ++k) {
    const Scalar& c = coeffs_[k - lo_];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << c.str() << "*" << var << "^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << trunc_ << ")";
  return os.str();
}

// ---- bilateral ---------------------------------------------------------

const Scalar& BiTruncSeries::coeff(int zpow, int wpow) const {
  static const Scalar kZero(0);
  if (!in_window(zpow, wpow))
    fail(ErrorCode::TruncationExceeded,
         "bilateral coefficient (" + std::to_string(zpow) + "," +
             std::to_string(wpow) + ") outside retained window");
  auto it = coeffs.find({zpow, wpow});
  return it == coeffs.end() ? kZero : it->second;
}

void BiTruncSeries::set(int zpow, int wpow, const Scalar& c) {
  if (!in_window(zpow, wpow))
    fail(ErrorCode::TruncationExceeded, "bilateral set outside retained window");
  if (c.is_zero())
    coeffs.erase({zpow, wpow});
  else
    coeffs[{zpow, wpow}] = c;
}

namespace {

// Window of fully determined coefficients for one variable of a bilateral
// product: for support bounded below, the standard power-series rule; for
// support bounded above, its mirror image.
std::pair<int, int> product_window(int alo, int ahi, int blo, int bhi,
                                   bool bounded_below) {
  if (bounded_below)
    return {alo + blo, std::min(ahi + blo, bhi + alo)};
  return {std::max(alo + bhi - 1, blo + ahi - 1), ahi + bhi - 1};
}

}  // namespace

BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b) {
  if (a.z_bounded_below != b.z_bounded_below ||
      a.w_bounded_below != b.w_bounded_below)
    fail(ErrorCode::InvalidInput,
         "bilateral product of expansions with mismatched orientations");
  BiTruncSeries r;
  r.z_bounded_below = a.z_bounded_below;
  r.w_bounded_below = a.w_bounded_below;
  std::tie(r.z_lo, r.z_hi) =
      product_window(a.z_lo, a.z_hi, b.z_lo, b.z_hi, r.z_bounded_below);
  std::tie(r.w_lo, r.w_hi) =
      product_window(a.w_lo, a.w_hi, b.w_lo, b.w_hi, r.w_bounded_below);
  if (r.z_hi < r.z_lo) r.z_hi = r.z_lo;
  if (r.w_hi < r.w_lo) r.w_hi = r.w_lo;
  for (const auto& [pa, ca] : a.coeffs) {
    for (const auto& [pb, cb] : b.coeffs) {
      int zp = pa.first + pb.first, wp = pa.second + pb.second;
      if (zp < r.z_lo || zp >= r.z_hi || wp < r.w_lo || wp >= r.w_hi) continue;
      auto& slot = r.coeffs[{zp, wp}];
      slot += ca * cb;
    }
  }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
    if (it->second.is_zero())
      it = r.coeffs.erase(it);
    else
      ++it;
  }
  return r;
}

bool operator==(const BiTruncSeries& a, const BiTruncSeries& b) {
  return a.z_lo == b.z_lo && a.z_hi == b.z_hi && a.w_lo == b.w_lo &&
         a.w_hi == b.w_hi && a.z_bounded_below == b.z_bounded_below &&
         a.w_bounded_below == b.w_bounded_below && a.coeffs == b.coeffs;
}

}  // namespace qva
