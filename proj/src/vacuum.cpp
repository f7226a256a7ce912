#include "qva/vacuum.hpp"

#include <algorithm>

#include "qva/linalg.hpp"

namespace qva {

namespace {

constexpr std::size_t kWitnessCap = 25;

// First monomial where the two vectors disagree, if any.
bool first_difference(const FockVector& lhs, const FockVector& rhs,
                      FockMonomial* mono, Scalar* lc, Scalar* rc) {
  auto li = lhs.begin(), ri = rhs.begin();
  MonoLess less;
  while (li != lhs.end() || ri != rhs.end()) {
    if (ri == rhs.end() || (li != lhs.end() && less(li->first, ri->first))) {
      *mono = li->first;
      *lc = li->second;
      *rc = Scalar(0);
      return true;
    }
    if (li == lhs.end() || less(ri->first, li->first)) {
      *mono = ri->first;
      *lc = Scalar(0);
      *rc = ri->second;
      return true;
    }
    if (!(li->second == ri->second)) {
      *mono = li->first;
      *lc = li->second;
      *rc = ri->second;
      return true;
    }
    ++li;
    ++ri;
  }
  return false;
}

}  // namespace

AhContext::AhContext(const RationalFn& g, int degree_bound, int window_lo,
                     int window_hi, int series_trunc)
    : degree_bound_(degree_bound),
      window_lo_(window_lo),
      window_hi_(window_hi) {
  if (degree_bound < 0)
    fail(ErrorCode::InvalidConfig, "degree bound must be >= 0");
  if (window_lo > window_hi)
    fail(ErrorCode::InvalidConfig, "mode window is empty");
  if (series_trunc < degree_bound + 4)
    fail(ErrorCode::InvalidConfig,
         "series truncation must be at least degree bound + 4 (" +
             std::to_string(degree_bound + 4) + "), got " +
             std::to_string(series_trunc));
  int amp = std::max(std::abs(window_lo), std::abs(window_hi));
  int trunc = std::max(series_trunc, 2 * degree_bound + 2 * amp + 10);

  canonical_ = canonicalize(g);
  fact_ = factor_h(canonical_, trunc);
  h_ = fact_.h;
  super_ = fact_.epsilon == -1;
  // The e-side coefficient series is q(-x), the f-side is q(x); their
  // product drives the psi modes.
  phi_ = std::make_unique<PhiContext>(fact_.q.reflected(), fact_.q, super_);
}

FockVector AhContext::apply_phi(int i, const FockVector& v) const {
  return phi_->apply(i, v);
}

FockVector AhContext::apply_mode(Gen g, int m, const FockVector& v) const {
  FockVector out;
  if (v.is_zero()) return out;
  const bool twist = super_ && twist_enabled_ && g != Gen::E;
  const FockVector base = twist ? v.parity_twisted() : v;
  if (g == Gen::Psi) {
    // psibar(k) = 0 for k >= 0 bounds i + j < -m (psi(m) = 0 for m >= 0).
    for (int j = 0; m + j <= -1; ++j) {
      FockVector pj = phi_->apply(j, base);
      if (pj.is_zero()) continue;
      for (int i = 0; m + j + i <= -1; ++i) {
        FockVector pij = phi_->apply(i, pj);
        if (pij.is_zero()) continue;
        out += apply_bar_mode(Gen::Psi, m + i + j, pij);
      }
    }
    return out;
  }
  // ebar/fbar(m+i) annihilate everything of weight <= W once m+i > W.
  int imax = base.max_weight() - m;
  for (int i = 0; i <= imax; ++i) {
    FockVector pi = phi_->apply(i, base);
    if (pi.is_zero()) continue;
    out += apply_bar_mode(g, m + i, pi);
  }
  return out;
}

std::vector<FockVector> AhContext::pbw_vectors(int degree) const {
  std::vector<FockVector> out;
  for (const FockMonomial& M : enumerate_basis(degree, super_)) {
    FockVector v = FockVector::unit(FockMonomial::vacuum(super_));
    for (auto it = M.psi.rbegin(); it != M.psi.rend(); ++it)
      v = apply_mode(Gen::Psi, -*it, v);
    for (auto it = M.f.rbegin(); it != M.f.rend(); ++it)
      v = apply_mode(Gen::F, -*it, v);
    for (auto it = M.e.rbegin(); it != M.e.rend(); ++it)
      v = apply_mode(Gen::E, -*it, v);
    out.push_back(std::move(v));
  }
  return out;
}

FockVector AhContext::cached_mode(Gen g, int m, const FockVector& v,
                                  long long vec_id) const {
  ModeKey key{static_cast<int>(g), m, vec_id};
  auto it = mode_cache_.find(key);
  if (it != mode_cache_.end()) return it->second;
  FockVector r = apply_mode(g, m, v);
  mode_cache_.emplace(std::move(key), r);
  return r;
}

RelationReport AhContext::verify_relations(int degree, int win_lo,
                                           int win_hi) const {
  RelationReport rep;
  mode_cache_.clear();

  auto record = [&](const std::string& check, int m, int n, int d, int idx,
                    const FockVector& lhs, const FockVector& rhs) {
    ++rep.checks;
    FockMonomial mono;
    Scalar lc, rc;
    if (!first_difference(lhs, rhs, &mono, &lc, &rc)) return;
    rep.pass = false;
    if (rep.witnesses.size() < kWitnessCap)
      rep.witnesses.push_back(Witness{check, m, n, d, idx, mono.str(),
                                      lc.str(), rc.str()});
  };

  long long vec_id = 0;
  for (int d = 0; d <= degree; ++d) {
    std::vector<FockVector> vecs = pbw_vectors(d);
    for (std::size_t idx = 0; idx < vecs.size(); ++idx, ++vec_id) {
      const FockVector& v = vecs[idx];
      const int W = v.max_weight();
      for (int m = win_lo; m <= win_hi; ++m) {
        for (int n = win_lo; n <= win_hi; ++n) {
          const int R = W - m - n;

          // e(z)e(w) = h(w-z) e(w)e(z), components
          // e_m e_n = sum_{r<=R, i<=r} h_r binom(r,i)(-1)^i e_{n+r-i} e_{m+i};
          // grouped over s = r-i so each outer mode applies once.
          {
            FockVector lhs =
                apply_mode(Gen::E, m, cached_mode(Gen::E, n, v, vec_id));
            FockVector rhs;
            for (int s = 0; s <= R; ++s) {
              FockVector y;
              for (int i = 0; s + i <= R; ++i) {
                Scalar c = h_.coeff(s + i) * Scalar::binomial(s + i, i);
                if (i % 2) c = -c;
                y.add_scaled(cached_mode(Gen::E, m + i, v, vec_id), c);
              }
              rhs += apply_mode(Gen::E, n + s, y);
            }
            record("ee", m, n, d, static_cast<int>(idx), lhs, rhs);
            // Layer r = R+1 must vanish termwise (truncation guard).
            if (R + 1 >= 0) {
              FockVector guard;
              for (int i = 0; i <= R + 1; ++i) {
                Scalar c = h_.coeff(R + 1) * Scalar::binomial(R + 1, i);
                if (i % 2) c = -c;
                guard.add_scaled(
                    apply_mode(Gen::E, n + R + 1 - i,
                               cached_mode(Gen::E, m + i, v, vec_id)),
                    c);
              }
              record("ee_guard", m, n, d, static_cast<int>(idx), guard,
                     FockVector());
            }
          }

          // f(z)f(w) = h(z-w) f(w)f(z):
          // f_m f_n = sum h_r binom(r,i)(-1)^i f_{n+i} f_{m+r-i}.
          {
            FockVector lhs =
                apply_mode(Gen::F, m, cached_mode(Gen::F, n, v, vec_id));
            FockVector rhs;
            for (int i = 0; i <= R; ++i) {
              FockVector y;
              for (int s = 0; s + i <= R; ++s) {
                Scalar c = h_.coeff(s + i) * Scalar::binomial(s + i, i);
                if (i % 2) c = -c;
                y.add_scaled(cached_mode(Gen::F, m + s, v, vec_id), c);
              }
              rhs += apply_mode(Gen::F, n + i, y);
            }
            record("ff", m, n, d, static_cast<int>(idx), lhs, rhs);
          }

          // psi(z)e(w) = h(w-z) e(w)psi(z):
          // psi_m e_n = sum h_r binom(r,i)(-1)^i e_{n+r-i} psi_{m+i}.
          {
            FockVector lhs =
                apply_mode(Gen::Psi, m, cached_mode(Gen::E, n, v, vec_id));
            FockVector rhs;
            for (int s = 0; s <= R; ++s) {
              FockVector y;
              for (int i = 0; s + i <= R; ++i) {
                Scalar c = h_.coeff(s + i) * Scalar::binomial(s + i, i);
                if (i % 2) c = -c;
                y.add_scaled(cached_mode(Gen::Psi, m + i, v, vec_id), c);
              }
              rhs += apply_mode(Gen::E, n + s, y);
            }
            record("psie", m, n, d, static_cast<int>(idx), lhs, rhs);
          }

          // psi(z)f(w) = h(z-w) f(w)psi(z):
          // psi_m f_n = sum h_r binom(r,i)(-1)^i f_{n+i} psi_{m+r-i}.
          {
            FockVector lhs =
                apply_mode(Gen::Psi, m, cached_mode(Gen::F, n, v, vec_id));
            FockVector rhs;
            for (int i = 0; i <= R; ++i) {
              FockVector y;
              for (int s = 0; s + i <= R; ++s) {
                Scalar c = h_.coeff(s + i) * Scalar::binomial(s + i, i);
                if (i % 2) c = -c;
                y.add_scaled(cached_mode(Gen::Psi, m + s, v, vec_id), c);
              }
              rhs += apply_mode(Gen::F, n + i, y);
            }
            record("psif", m, n, d, static_cast<int>(idx), lhs, rhs);
          }

          // [e_m, f_n] = psi_{m+n}
          {
            FockVector lhs =
                apply_mode(Gen::E, m, cached_mode(Gen::F, n, v, vec_id)) -
                apply_mode(Gen::F, n, cached_mode(Gen::E, m, v, vec_id));
            FockVector rhs = cached_mode(Gen::Psi, m + n, v, vec_id);
            record("ef", m, n, d, static_cast<int>(idx), lhs, rhs);
          }

          // [psi_m, psi_n] = 0
          {
            FockVector lhs =
                apply_mode(Gen::Psi, m, cached_mode(Gen::Psi, n, v, vec_id));
            FockVector rhs =
                apply_mode(Gen::Psi, n, cached_mode(Gen::Psi, m, v, vec_id));
            record("psipsi", m, n, d, static_cast<int>(idx), lhs, rhs);
          }
        }
      }
    }
  }
  return rep;
}

IndependenceReport AhContext::verify_pbw_independence(int max_degree) const {
  IndependenceReport rep;
  for (int d = 0; d <= max_degree; ++d) {
    std::map<FockMonomial, int, MonoLess> col_of;
    int cols = 0;
    for (int w = 0; w <= d; ++w)
      for (const FockMonomial& m : enumerate_basis(w, super_))
        col_of.emplace(m, cols++);
    std::vector<FockVector> vecs = pbw_vectors(d);
    RowSpace rs;
    for (const FockVector& v : vecs) {
      SparseRow row;
      for (const auto& [mono, c] : v) {
        auto it = col_of.find(mono);
        if (it == col_of.end())
          fail(ErrorCode::Internal,
               "dressed vector left the expected filtration stratum");
        row.emplace(it->second, c);
      }
      rs.add(std::move(row));
    }
    IndependenceDegree row;
    row.degree = d;
    row.count = static_cast<long long>(vecs.size());
    row.rank = rs.rank();
    row.pass = row.rank == row.count;
    rep.pass = rep.pass && row.pass;
    rep.per_degree.push_back(row);
  }
  return rep;
}

RelationReport AhContext::verify_derivation(int degree, int m_lo, int m_hi,
                                            int phi_imax) const {
  RelationReport rep;
  auto record = [&](const std::string& check, int m, int d, int idx,
                    const FockVector& lhs, const FockVector& rhs) {
    ++rep.checks;
    FockMonomial mono;
    Scalar lc, rc;
    if (!first_difference(lhs, rhs, &mono, &lc, &rc)) return;
    rep.pass = false;
    if (rep.witnesses.size() < kWitnessCap)
      rep.witnesses.push_back(
          Witness{check, m, 0, d, idx, mono.str(), lc.str(), rc.str()});
  };

  for (int d = 0; d <= degree; ++d) {
    std::vector<FockVector> vecs = pbw_vectors(d);
    for (std::size_t idx = 0; idx < vecs.size(); ++idx) {
      const FockVector& v = vecs[idx];
      FockVector dv = derive(v);
      for (Gen g : {Gen::E, Gen::F, Gen::Psi}) {
        for (int m = m_lo; m <= m_hi; ++m) {
          // [d, a_m] = -m a_{m-1}
          FockVector lhs = derive(apply_mode(g, m, v));
          FockVector rhs = apply_mode(g, m, dv);
          rhs.add_scaled(apply_mode(g, m - 1, v), Scalar(-m));
          record(std::string("derivation_") + gen_name(g), m, d,
                 static_cast<int>(idx), lhs, rhs);
        }
      }
      for (int i = 0; i <= phi_imax; ++i) {
        // [d, phi_i] = (i+1) phi_{i+1}
        FockVector lhs = derive(apply_phi(i, v));
        FockVector rhs = apply_phi(i, dv);
        rhs.add_scaled(apply_phi(i + 1, v), Scalar(i + 1));
        record("phi_compat", i, d, static_cast<int>(idx), lhs, rhs);
      }
    }
  }
  return rep;
}

void AhContext::corrupt_h_for_testing(int k, const Scalar& delta) {
  h_ = h_ + TruncSeries::monomial(delta, k, h_.trunc());
}

}  // namespace qva
