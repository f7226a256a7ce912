#pragma once

#include <mutex>
#include <unordered_map>

#include "qva/fock.hpp"
#include "qva/series.hpp"

namespace qva {

// The intertwining operator family phi_i (i >= 0) on the Fock space,
// determined by two coefficient power series p1, p2 with constant term 1:
//   phi_i vac = delta_{i,0} vac,
//   phi_i (abar(m) v) =
//     sum_{j>=0} sum_{r>=j} c_r binom(r,j) (-1)^j abar(m+j) phi_{i-r+j}(v),
// where c = p1 when a = ebar, c = p2 when a = fbar, and c = p1*p2 when
// a = psibar, and only indices i-r+j >= 0 contribute. The family commutes,
// preserves the weight filtration and is computed by structural recursion
// on the leftmost factor.
//
// Results are memoized per (i, monomial) in a concurrency-safe table; no
// eviction — the table lives and dies with the context (desk-scale sets).
class PhiContext {
 public:
  // p1, p2 must have constant term 1 (InvalidInput otherwise). Their
  // truncation bounds the largest usable coefficient index; running past
  // it raises TruncationExceeded.
  PhiContext(TruncSeries p1, TruncSeries p2, bool super);

  PhiContext(const PhiContext&) = delete;
  PhiContext& operator=(const PhiContext&) = delete;

  const TruncSeries& p1() const { return p1_; }
  const TruncSeries& p2() const { return p2_; }
  bool super() const { return super_; }

  // phi_i applied to a monomial / vector; i < 0 raises NegativeIndex.
  FockVector apply(int i, const FockMonomial& m) const;
  FockVector apply(int i, const FockVector& v) const;

  std::size_t memo_size() const;

 private:
  TruncSeries p1_, p2_, p12_;
  bool super_;

  struct Key {
    int i;
    FockMonomial m;
    bool operator==(const Key& o) const { return i == o.i && m == o.m; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.m.hash() * 1315423911u + static_cast<std::size_t>(k.i);
    }
  };

  mutable std::mutex mu_;
  mutable std::unordered_map<Key, FockVector, KeyHash> memo_;

  FockVector compute(int i, const FockMonomial& m) const;
};

}  // namespace qva
