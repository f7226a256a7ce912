#include "qva/scalar.hpp"

#include <cctype>
#include <ostream>

namespace qva {

Scalar::Scalar(long long num, long long den) {
  if (den == 0) fail(ErrorCode::InvalidInput, "rational with zero denominator");
  v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  v_.canonicalize();
}

Scalar Scalar::parse(const std::string& s) {
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational literal");
  auto check_int = [&](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!check_int(num) || !check_int(den))
    fail(ErrorCode::InvalidInput, "malformed rational literal '" + s + "'");
  mpz_class nz(num), dz(den);
  if (sgn(dz) == 0)
    fail(ErrorCode::InvalidInput, "rational with zero denominator '" + s + "'");
  mpq_class q{nz, dz};
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::binomial(unsigned long n, unsigned long k) {
  if (k > n) return Scalar(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar(mpq_class(b));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) fail(ErrorCode::InvalidInput, "division by zero scalar");
  v_ /= o.v_;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero scalar");
  return Scalar(mpq_class(1 / v_));
}

std::string Scalar::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Scalar::hash() const {
  // FNV-1a over the canonical text; scalars hash rarely (memo keys are
  // monomials), so simplicity beats speed here.
  std::size_t h = 1469598103934665603ull;
  for (char c : str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace qva
