#include "qva/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qva {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::E: return "e";
    case Gen::F: return "f";
    case Gen::Psi: return "psi";
  }
  return "?";
}

int FockMonomial::weight() const {
  auto sum = [](const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), 0);
  };
  return sum(e) + sum(f) + sum(psi);
}

FockMonomial FockMonomial::vacuum(bool super) {
  FockMonomial m;
  m.super = super;
  return m;
}

void FockMonomial::validate() const {
  auto check = [&](const std::vector<int>& v, bool strict, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] <= 0)
        fail(ErrorCode::InvalidInput,
             std::string("monomial ") + name + "-block mode must be positive");
      if (i > 0 && (strict ? v[i - 1] <= v[i] : v[i - 1] < v[i]))
        fail(ErrorCode::InvalidInput,
             std::string("monomial ") + name + "-block modes must be " +
                 (strict ? "strictly" : "weakly") + " decreasing");
    }
  };
  check(e, super, "e");
  check(f, super, "f");
  check(psi, false, "psi");
}

std::string FockMonomial::str() const {
  std::ostringstream os;
  for (int m : e) os << "ebar(-" << m << ")";
  for (int m : f) os << "fbar(-" << m << ")";
  for (int m : psi) os << "psibar(-" << m << ")";
  os << "vac";
  return os.str();
}

std::size_t FockMonomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](int x) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  };
  mix(super ? 1 : 0);
  for (int m : e) mix(m);
  mix(-1);
  for (int m : f) mix(m);
  mix(-2);
  for (int m : psi) mix(m);
  return h;
}

namespace {

// Greater-first lexicographic order on descending mode lists, with a longer
// list sorting before its proper prefix; returns <0, 0, >0.
int seq_cmp(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

}  // namespace

bool MonoLess::operator()(const FockMonomial& a, const FockMonomial& b) const {
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  if (int c = seq_cmp(a.e, b.e)) return c < 0;
  if (int c = seq_cmp(a.f, b.f)) return c < 0;
  if (int c = seq_cmp(a.psi, b.psi)) return c < 0;
  return false;
}

void FockVector::add(const FockMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

void FockVector::add_scaled(const FockVector& o, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [m, x] : o.terms_) add(m, x * c);
}

FockVector FockVector::scaled(const Scalar& c) const {
  FockVector r;
  r.add_scaled(*this, c);
  return r;
}

int FockVector::max_weight() const {
  int w = -1;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
  return w;
}

const Scalar& FockVector::coeff(const FockMonomial& m) const {
  static const Scalar kZero(0);
  auto it = terms_.find(m);
  return it == terms_.end() ? kZero : it->second;
}

FockVector FockVector::parity_twisted() const {
  FockVector r;
  for (const auto& [m, c] : terms_)
    r.add(m, m.parity() ? -c : c);
  return r;
}

std::string FockVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    os << c.str() << "*" << m.str();
    first = false;
  }
  return os.str();
}

namespace {

// Inserts k into a descending list. Returns false when a strict block
// already holds k (the term vanishes); otherwise reports the insertion
// position so the caller can account for odd-factor crossings.
bool insert_desc(std::vector<int>* v, int k, bool strict, int* pos_out) {
  std::size_t pos = 0;
  while (pos < v->size() && (*v)[pos] > k) ++pos;
  if (strict && pos < v->size() && (*v)[pos] == k) return false;
  if (!strict) {
    while (pos < v->size() && (*v)[pos] == k) ++pos;  // after equals
  }
  v->insert(v->begin() + pos, k);
  *pos_out = static_cast<int>(pos);
  return true;
}

FockMonomial without_index(const FockMonomial& m,
                           std::vector<int> FockMonomial::*field,
                           std::size_t idx) {
  FockMonomial r = m;
  (r.*field).erase((r.*field).begin() + idx);
  return r;
}

}  // namespace

FockVector apply_bar_mode(Gen g, int m, const FockMonomial& mono) {
  FockVector out;
  const bool super = mono.super;
  const Scalar flip(super ? -1 : 1);

  if (g == Gen::Psi) {
    // psibar modes are central; nonnegative ones annihilate everything
    // (the loop bracket has no central extension).
    if (m >= 0) return out;
    FockMonomial r = mono;
    int pos;
    insert_desc(&r.psi, -m, false, &pos);
    out.add(r, Scalar(1));
    return out;
  }

  if (g == Gen::E) {
    if (m < 0) {
      FockMonomial r = mono;
      int pos;
      if (!insert_desc(&r.e, -m, super, &pos)) return out;
      out.add(r, super && (pos % 2) ? Scalar(-1) : Scalar(1));
      return out;
    }
    // Annihilation: ebar(m) slides through the e block (no contractions
    // there), then contracts against each fbar(-n) via psibar(m-n); the
    // fully transmitted term hits the vacuum and vanishes.
    Scalar run_sign = super && (mono.e.size() % 2) ? Scalar(-1) : Scalar(1);
    for (std::size_t j = 0; j < mono.f.size(); ++j) {
      int n = mono.f[j];
      if (m - n < 0) {
        FockMonomial r = without_index(mono, &FockMonomial::f, j);
        int pos;
        insert_desc(&r.psi, n - m, false, &pos);
        out.add(r, run_sign);
      }
      run_sign *= flip;
    }
    return out;
  }

  // g == Gen::F: fbar(m) must cross the whole e block first, contracting
  // against each ebar(-k) on the way: in the plain case
  // fbar(a) ebar(b) = ebar(b) fbar(a) - psibar(a+b), in the super case
  // fbar(a) ebar(b) = -ebar(b) fbar(a) + psibar(a+b).
  const Scalar contraction(super ? 1 : -1);
  Scalar run_sign(1);
  for (std::size_t i = 0; i < mono.e.size(); ++i) {
    int k = mono.e[i];
    if (m - k < 0) {
      FockMonomial r = without_index(mono, &FockMonomial::e, i);
      int pos;
      insert_desc(&r.psi, k - m, false, &pos);
      out.add(r, run_sign * contraction);
    }
    run_sign *= flip;
  }
  if (m < 0) {
    FockMonomial r = mono;
    int pos;
    if (insert_desc(&r.f, -m, super, &pos)) {
      Scalar s = run_sign;
      if (super && (pos % 2)) s = -s;
      out.add(r, s);
    }
  }
  return out;
}

FockVector apply_bar_mode(Gen g, int m, const FockVector& v) {
  FockVector out;
  for (const auto& [mono, c] : v) {
    out.add_scaled(apply_bar_mode(g, m, mono), c);
  }
  return out;
}

namespace {

void partitions_desc(int n, int max_part, bool strict,
                     std::vector<int>* current,
                     std::vector<std::vector<int>>* out) {
  if (n == 0) {
    out->push_back(*current);
    return;
  }
  for (int first = std::min(n, max_part); first >= 1; --first) {
    current->push_back(first);
    partitions_desc(n - first, strict ? first - 1 : first, strict, current, out);
    current->pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n, bool strict) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (n >= 0) partitions_desc(n, n, strict, &cur, &out);
  return out;
}

}  // namespace

std::vector<FockMonomial> enumerate_basis(int weight, bool super) {
  if (weight < 0) fail(ErrorCode::InvalidInput, "basis weight must be >= 0");
  std::vector<FockMonomial> out;
  for (int a = 0; a <= weight; ++a)
    for (int b = 0; a + b <= weight; ++b) {
      int c = weight - a - b;
      for (const auto& pe : partitions(a, super))
        for (const auto& pf : partitions(b, super))
          for (const auto& pp : partitions(c, false)) {
            FockMonomial m;
            m.super = super;
            m.e = pe;
            m.f = pf;
            m.psi = pp;
            out.push_back(m);
          }
    }
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

namespace {

// Bumps block[idx] by one, keeping the block descending. In a strict block
// a collision annihilates the term. No sign arises: the factor does not
// move past any other factor (a plain-block reorder only swaps equal,
// commuting labels).
bool bump(std::vector<int>* block, std::size_t idx, bool strict) {
  (*block)[idx] += 1;
  if (strict) {
    if (idx > 0 && (*block)[idx - 1] == (*block)[idx]) return false;
    return true;
  }
  std::sort(block->begin(), block->end(), std::greater<int>());
  return true;
}

}  // namespace

FockVector derive(const FockMonomial& mono) {
  FockVector out;
  auto per_block = [&](std::vector<int> FockMonomial::*field, bool strict) {
    const std::vector<int>& block = mono.*field;
    for (std::size_t i = 0; i < block.size(); ++i) {
      FockMonomial r = mono;
      if (!bump(&(r.*field), i, strict)) continue;
      out.add(r, Scalar(block[i]));
    }
  };
  per_block(&FockMonomial::e, mono.super);
  per_block(&FockMonomial::f, mono.super);
  per_block(&FockMonomial::psi, false);
  return out;
}

FockVector derive(const FockVector& v) {
  FockVector out;
  for (const auto& [m, c] : v) out.add_scaled(derive(m), c);
  return out;
}

}  // namespace qva
