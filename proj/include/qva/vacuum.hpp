#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "qva/fock.hpp"
#include "qva/phi.hpp"
#include "qva/ratfunc.hpp"
#include "qva/report.hpp"

namespace qva {

// Engine context for one choice of g: canonical form, the series h and its
// splitting eps * q(x)/q(-x), and the phi-operator data built from q. The
// dressed modes a(m) act through the undressed ones and phi:
//   e(m) v   = sum_i ebar(m+i) phi_i(v)
//   f(m) v   = sum_i fbar(m+i) phi_i(sigma v)
//   psi(m) v = sum_{i,j} psibar(m+i+j) phi_i(phi_j(sigma v))
// with sigma the parity involution (identity in the plain variant). The
// super variant (eps = -1) needs the sigma twist on f and psi; without it
// the commutator relation fails.
class AhContext {
 public:
  // series_trunc: minimum retained series window (the context widens it as
  // needed for the requested degree bound and mode window). Must be at
  // least degree_bound + 4 (InvalidConfig otherwise).
  AhContext(const RationalFn& g, int degree_bound, int window_lo,
            int window_hi, int series_trunc);

  const CanonicalG& canonical() const { return canonical_; }
  const HFactorization& factorization() const { return fact_; }
  const TruncSeries& h() const { return h_; }
  bool super() const { return super_; }
  int degree_bound() const { return degree_bound_; }
  int window_lo() const { return window_lo_; }
  int window_hi() const { return window_hi_; }
  const PhiContext& phi() const { return *phi_; }

  FockVector apply_mode(Gen g, int m, const FockVector& v) const;
  FockVector apply_phi(int i, const FockVector& v) const;

  // The dressed monomial vectors of the given degree, one per Fock basis
  // monomial (modes applied right to left), in enumerate_basis order.
  std::vector<FockVector> pbw_vectors(int degree) const;

  // Exhaustive six-relation check on all dressed basis vectors of degree
  // <= degree, mode pairs over [window_lo, window_hi]^2. Truncation bound
  // R = weight - m - n per instance, with the R+1 layer checked to vanish.
  RelationReport verify_relations(int degree, int win_lo, int win_hi) const;

  // Exact-rank independence of the dressed basis vectors per degree.
  IndependenceReport verify_pbw_independence(int max_degree) const;

  // d(a_m v) = a_m d(v) - m a_{m-1} v for the dressed modes, plus the
  // phi-compatibility d(phi_i v) = phi_i d(v) + (i+1) phi_{i+1} v.
  RelationReport verify_derivation(int degree, int m_lo, int m_hi,
                                   int phi_imax) const;

  // --- negative-control hooks (used by verification tooling) -----------
  // Adds delta to the retained h_k used by the relation checker.
  void corrupt_h_for_testing(int k, const Scalar& delta);
  // Drops the parity twist from the dressed f/psi modes.
  void disable_parity_twist_for_testing() { twist_enabled_ = false; }

 private:
  CanonicalG canonical_;
  HFactorization fact_;
  TruncSeries h_;  // the copy the relation checker reads
  bool super_ = false;
  bool twist_enabled_ = true;
  int degree_bound_, window_lo_, window_hi_;
  std::unique_ptr<PhiContext> phi_;

  // First-stage application cache for the relation sweeps.
  using ModeKey = std::tuple<int, int, long long>;
  mutable std::map<ModeKey, FockVector> mode_cache_;
  mutable long long cache_tag_ = 0;

  FockVector cached_mode(Gen g, int m, const FockVector& v,
                         long long vec_id) const;
};

}  // namespace qva
