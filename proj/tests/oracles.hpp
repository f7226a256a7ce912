// Independent reference computations for the test suite. Everything here is
// written directly over GMP rationals and plain integers, bypassing the
// engine's own series, polynomial and module code, so engine output can be
// checked against a second derivation of the same quantity.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

using Rat = mpq_class;

inline Rat rat(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline Rat rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// "num/den" text with the denominator always spelled out, matching the
// engine's scalar formatting.
inline std::string str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Coefficients z^0 .. z^{n-1} of num(z)/den(z) at z = 0 via long division;
// requires den(0) != 0.
inline std::vector<Rat> divide_series(std::vector<Rat> num,
                                      std::vector<Rat> den, int n) {
  num.resize(std::max<std::size_t>(num.size(), static_cast<std::size_t>(n)));
  std::vector<Rat> out(n);
  for (int k = 0; k < n; ++k) {
    Rat acc = num[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
      acc -= den[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
    out[static_cast<std::size_t>(k)] = acc / den[0];
  }
  return out;
}

inline std::vector<Rat> mul_series(const std::vector<Rat>& a,
                                   const std::vector<Rat>& b, int n) {
  std::vector<Rat> out(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (static_cast<int>(i + j) < n) out[i + j] += a[i] * b[j];
  return out;
}

// Coefficients of e^{c x}: c^k / k!.
inline std::vector<Rat> exp_series(const Rat& c, int n) {
  std::vector<Rat> out(n);
  out[0] = 1;
  for (int k = 1; k < n; ++k)
    out[static_cast<std::size_t>(k)] =
        out[static_cast<std::size_t>(k - 1)] * c / k;
  return out;
}

// p(e^x) for a polynomial p given by its coefficients: sum_i p_i e^{i x}.
inline std::vector<Rat> poly_of_exp(const std::vector<Rat>& p, int n) {
  std::vector<Rat> out(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<Rat> e = exp_series(rat(static_cast<long>(i)), n);
    for (int k = 0; k < n; ++k)
      out[static_cast<std::size_t>(k)] += p[i] * e[static_cast<std::size_t>(k)];
  }
  return out;
}

// g(e^x) for g = num/den, requires den(1) != 0.
inline std::vector<Rat> rational_of_exp(const std::vector<Rat>& num,
                                        const std::vector<Rat>& den, int n) {
  return divide_series(poly_of_exp(num, n), poly_of_exp(den, n), n);
}

// Number of partitions of 0..nmax (parts >= 1, repetition allowed).
inline std::vector<long long> partition_counts(int nmax) {
  std::vector<long long> ways(static_cast<std::size_t>(nmax) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= nmax; ++part)
    for (int total = part; total <= nmax; ++total)
      ways[static_cast<std::size_t>(total)] +=
          ways[static_cast<std::size_t>(total - part)];
  return ways;
}

// Number of partitions of 0..nmax into distinct parts.
inline std::vector<long long> distinct_partition_counts(int nmax) {
  std::vector<long long> ways(static_cast<std::size_t>(nmax) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= nmax; ++part)
    for (int total = nmax; total >= part; --total)
      ways[static_cast<std::size_t>(total)] +=
          ways[static_cast<std::size_t>(total - part)];
  return ways;
}

inline std::vector<long long> convolve_counts(const std::vector<long long>& a,
                                              const std::vector<long long>& b) {
  std::vector<long long> out(std::min(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out[i] += a[j] * b[i - j];
  return out;
}

// Degree-by-degree dimensions of the vacuum module: three independent
// commuting families of creation modes in the plain variant; two odd
// families (distinct parts, since squares vanish) and one even family in
// the super variant.
inline std::vector<long long> vacuum_counts(int nmax, bool super) {
  std::vector<long long> p = partition_counts(nmax);
  if (!super) return convolve_counts(convolve_counts(p, p), p);
  std::vector<long long> d = distinct_partition_counts(nmax);
  return convolve_counts(convolve_counts(d, d), p);
}

}  // namespace oracle
