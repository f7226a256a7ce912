#include "qva/phi.hpp"

namespace qva {

PhiContext::PhiContext(TruncSeries p1, TruncSeries p2, bool super)
    : p1_(std::move(p1)), p2_(std::move(p2)), super_(super) {
  if (p1_.trunc() < 1 || !p1_.coeff(0).is_one() || p1_.lo() < 0 ||
      p2_.trunc() < 1 || !p2_.coeff(0).is_one() || p2_.lo() < 0)
    fail(ErrorCode::InvalidInput,
         "phi coefficient series must be power series with constant term 1");
  p12_ = p1_ * p2_;
}

FockVector PhiContext::apply(int i, const FockMonomial& m) const {
  if (i < 0)
    fail(ErrorCode::NegativeIndex, "phi index must be >= 0, got " +
                                       std::to_string(i));
  if (m.is_vacuum()) {
    FockVector v;
    if (i == 0) v.add(m, Scalar(1));
    return v;
  }
  Key key{i, m};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  FockVector r = compute(i, m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::move(key), r);
  }
  return r;
}

FockVector PhiContext::compute(int i, const FockMonomial& m) const {
  // Peel the leftmost factor abar(-k).
  Gen gen;
  int k;
  FockMonomial rest = m;
  if (!m.e.empty()) {
    gen = Gen::E;
    k = m.e.front();
    rest.e.erase(rest.e.begin());
  } else if (!m.f.empty()) {
    gen = Gen::F;
    k = m.f.front();
    rest.f.erase(rest.f.begin());
  } else {
    gen = Gen::Psi;
    k = m.psi.front();
    rest.psi.erase(rest.psi.begin());
  }
  const TruncSeries& c =
      gen == Gen::E ? p1_ : (gen == Gen::F ? p2_ : p12_);
  const int mode = -k;
  const int w_rest = rest.weight();

  FockVector out;
  // abar(mode + j) annihilates everything of weight <= w_rest once
  // mode + j exceeds w_rest, bounding j; r is bounded by i + j because
  // phi indices stay nonnegative, and by binom(r,j) needing r >= j.
  for (int j = 0; mode + j <= w_rest; ++j) {
    Scalar sign_j((j % 2) ? -1 : 1);
    for (int r = j; r <= i + j; ++r) {
      Scalar coeff = c.coeff(r) * Scalar::binomial(r, j) * sign_j;
      if (coeff.is_zero()) continue;
      FockVector inner = apply(i - r + j, rest);
      if (inner.is_zero()) continue;
      out.add_scaled(apply_bar_mode(gen, mode + j, inner), coeff);
    }
  }
  return out;
}

FockVector PhiContext::apply(int i, const FockVector& v) const {
  FockVector out;
  for (const auto& [m, c] : v) out.add_scaled(apply(i, m), c);
  return out;
}

std::size_t PhiContext::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

}  // namespace qva
