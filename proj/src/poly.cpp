#include "qva/poly.hpp"

#include <algorithm>
#include <sstream>

namespace qva {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::constant(const Scalar& c) {
  return Polynomial(std::vector<Scalar>{c});
}

Polynomial Polynomial::monomial(const Scalar& c, int power) {
  if (power < 0) fail(ErrorCode::InvalidInput, "monomial power must be >= 0");
  std::vector<Scalar> v(power + 1);
  v[power] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int Polynomial::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

const Scalar& Polynomial::coeff(int k) const {
  static const Scalar kZero(0);
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[k];
}

const Scalar& Polynomial::leading() const {
  if (is_zero()) fail(ErrorCode::Internal, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

Polynomial Polynomial::operator-() const { return scaled(Scalar(-1)); }

Polynomial Polynomial::scaled(const Scalar& c) const {
  std::vector<Scalar> v = coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.coeffs_.size()) v[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) v[i] += b.coeffs_[i];
  }
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a,
                                                     const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidInput, "polynomial division by zero");
  std::vector<Scalar> rem = a.coeffs_;
  int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Scalar> quot(a.degree() - db + 1);
  Scalar lead_inv = b.leading().inverse();
  for (int k = a.degree() - db; k >= 0; --k) {
    Scalar q = rem[k + db] * lead_inv;
    quot[k] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::div_exact(const Polynomial& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero())
    fail(ErrorCode::Internal, "polynomial division expected to be exact");
  return q;
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) fail(ErrorCode::Internal, "monic form of zero polynomial");
  return scaled(leading().inverse());
}

Polynomial Polynomial::stripped_valuation() const {
  int v = valuation();
  if (v <= 0) return *this;
  return Polynomial(std::vector<Scalar>(coeffs_.begin() + v, coeffs_.end()));
}

Polynomial Polynomial::reversed() const {
  std::vector<Scalar> v(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(v));
}

Scalar Polynomial::eval(const Scalar& x) const {
  Scalar acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

constexpr unsigned long kTrialDivisionBound = 1000000;

// Complete prime factorization by trial division up to the bound, finishing
// with a Miller-Rabin primality check on the remainder. Candidates produced
// from these factors are verified by exact evaluation, so a pseudoprime slip
// could only make us miss a candidate, never accept a wrong root.
bool factorize(mpz_class n, std::vector<std::pair<mpz_class, int>>* out) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (unsigned long p = 2; p <= kTrialDivisionBound && n > 1;
       p += (p == 2 ? 1 : 2)) {
    if (mpz_class(n % p) != 0) continue;
    int e = 0;
    while (mpz_class(n % p) == 0) {
      n /= p;
      ++e;
    }
    out->push_back({mpz_class(p), e});
    if (mpz_class(p) * p > n && n > 1) break;  // remainder is prime
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 50) == 0) return false;
    out->push_back({n, 1});
  }
  return true;
}

void enumerate_divisors(const std::vector<std::pair<mpz_class, int>>& factors,
                        std::size_t idx, const mpz_class& acc,
                        std::vector<mpz_class>* out) {
  if (idx == factors.size()) {
    out->push_back(acc);
    return;
  }
  mpz_class p = acc;
  for (int e = 0; e <= factors[idx].second; ++e) {
    enumerate_divisors(factors, idx + 1, p, out);
    p *= factors[idx].first;
  }
}

}  // namespace

std::vector<std::pair<Scalar, int>> Polynomial::rational_roots() const {
  if (is_zero())
    fail(ErrorCode::InvalidInput, "root extraction from the zero polynomial");
  Polynomial p = *this;
  std::vector<std::pair<Scalar, int>> roots;
  int v = p.valuation();
  if (v > 0) {
    roots.push_back({Scalar(0), v});
    p = p.stripped_valuation();
  }
  if (p.degree() == 0) return roots;

  // Integerize: clear denominators, divide by integer content.
  mpz_class den_lcm(1);
  for (const auto& c : p.coeffs())
    den_lcm = lcm(den_lcm, c.denominator());
  std::vector<mpz_class> ic(p.coeffs().size());
  mpz_class content(0);
  for (std::size_t i = 0; i < ic.size(); ++i) {
    mpq_class scaled = p.coeffs()[i].raw() * den_lcm;
    ic[i] = scaled.get_num();  // denominator is 1 by construction
    content = ::gcd(content, ic[i]);
  }
  for (auto& c : ic) c /= content;

  std::vector<std::pair<mpz_class, int>> f0, fl;
  if (!factorize(ic.front(), &f0) || !factorize(ic.back(), &fl))
    fail(ErrorCode::IrrationalRoots,
         "root search inconclusive: a coefficient exceeds the supported "
         "factorization bound (trial division up to 10^6)");
  std::vector<mpz_class> ps, qs;
  enumerate_divisors(f0, 0, mpz_class(1), &ps);
  enumerate_divisors(fl, 0, mpz_class(1), &qs);

  std::vector<Scalar> candidates;
  for (const auto& a : ps)
    for (const auto& b : qs) {
      mpq_class r(a, b);
      r.canonicalize();
      candidates.push_back(Scalar(r));
      candidates.push_back(Scalar(mpq_class(-r)));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const Scalar& cand : candidates) {
    if (p.degree() == 0) break;
    int mult = 0;
    while (p.degree() > 0 && p.eval(cand).is_zero()) {
      // Divide by (z - cand).
      Polynomial lin(std::vector<Scalar>{-cand, Scalar(1)});
      p = p.div_exact(lin);
      ++mult;
    }
    if (mult > 0) roots.push_back({cand, mult});
  }
  if (p.degree() > 0)
    fail(ErrorCode::IrrationalRoots,
         "polynomial does not split over Q; residual factor " + p.str());
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << coeffs_[i].str() << "*" << var << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace qva
