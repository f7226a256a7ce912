#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qva/errors.hpp"

namespace qva {

// Exact rational scalar backed by GMP's mpq_class. Always kept canonical
// (reduced, positive denominator), so equality is structural and printing
// is deterministic.
class Scalar {
 public:
  Scalar() : v_(0) {}
  Scalar(int n) : v_(n) {}           // NOLINT(google-explicit-constructor)
  Scalar(long n) : v_(n) {}          // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "num" or "num/den" with optional leading '-'. Rejects anything
  // else (InvalidInput), including a zero denominator.
  static Scalar parse(const std::string& s);

  static Scalar binomial(unsigned long n, unsigned long k);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Scalar operator-() const { return Scalar(mpq_class(-v_)); }
  Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
  Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
  Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
  friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

  Scalar inverse() const;

  // Canonical text form "num/den" (den > 0, reduced), e.g. "-3/2", "5/1".
  std::string str() const;

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }

  std::size_t hash() const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace qva
