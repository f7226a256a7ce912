#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

enum class Gen { E, F, Psi };
const char* gen_name(Gen g);

// Basis monomial of the Fock space: a normally ordered word
//   ebar(-m_1)..ebar(-m_r) fbar(-n_1)..fbar(-n_s) psibar(-k_1)..psibar(-k_t) vac
// with positive mode labels stored in descending order per block. In the
// super variant ebar/fbar are odd, so their blocks are strictly decreasing
// (equal odd factors square to zero); the psibar block stays weakly
// decreasing in both variants.
struct FockMonomial {
  std::vector<int> e, f, psi;
  bool super = false;

  int weight() const;
  // Parity of the monomial: number of odd factors mod 2 (e and f count,
  // psi does not). Meaningful in the super variant; 0 in the plain one.
  int parity() const {
    return super ? static_cast<int>((e.size() + f.size()) % 2) : 0;
  }
  bool is_vacuum() const { return e.empty() && f.empty() && psi.empty(); }
  static FockMonomial vacuum(bool super);

  // Checks mode positivity and per-block ordering; raises InvalidInput.
  void validate() const;

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const FockMonomial& a, const FockMonomial& b) {
    return a.super == b.super && a.e == b.e && a.f == b.f && a.psi == b.psi;
  }
};

// Deterministic basis order: weight ascending, then block-wise greater-first
// lexicographic comparison (e block, then f, then psi), where a longer block
// sorts before its proper prefix. This puts, per weight, e-heavy monomials
// first and matches the enumeration order of enumerate_basis.
struct MonoLess {
  bool operator()(const FockMonomial& a, const FockMonomial& b) const;
};

class FockVector {
 public:
  FockVector() = default;
  static FockVector unit(const FockMonomial& m) {
    FockVector v;
    v.add(m, Scalar(1));
    return v;
  }

  void add(const FockMonomial& m, const Scalar& c);
  FockVector& operator+=(const FockVector& o);
  void add_scaled(const FockVector& o, const Scalar& c);
  FockVector scaled(const Scalar& c) const;
  friend FockVector operator+(FockVector a, const FockVector& b) {
    a += b;
    return a;
  }
  friend FockVector operator-(const FockVector& a, const FockVector& b) {
    FockVector r = a;
    r.add_scaled(b, Scalar(-1));
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  // Largest weight among terms; -1 for the zero vector.
  int max_weight() const;
  const Scalar& coeff(const FockMonomial& m) const;

  // Parity involution: negates odd-parity terms (identity in the plain case).
  FockVector parity_twisted() const;

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  std::map<FockMonomial, Scalar, MonoLess> terms_;
};

// Action of a single undressed mode on the Fock space: creation modes
// (m < 0) insert a factor with the appropriate Koszul sign, annihilation
// modes contract against the opposite block via the loop bracket
// [ebar(a), fbar(b)] = psibar(a+b) (anticommutator in the super variant,
// all other brackets zero, psibar modes with a+b >= 0 acting as zero).
// The result is returned in normal form.
FockVector apply_bar_mode(Gen g, int m, const FockMonomial& mono);
FockVector apply_bar_mode(Gen g, int m, const FockVector& v);

// All monomials of the given weight in the deterministic order above.
std::vector<FockMonomial> enumerate_basis(int weight, bool super);

// The grading derivation, acting on a monomial as the sum over factors of
// mode-label bump abar(-k) -> k abar(-k-1) (a colliding bump of an odd
// factor annihilates the term in the super variant).
FockVector derive(const FockMonomial& mono);
FockVector derive(const FockVector& v);

}  // namespace qva
