#include "qva/ding_iohara.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qva/errors.hpp"
#include "qva/linalg.hpp"

namespace qva {

namespace {
constexpr int kWitnessCap = 25;
const char* kGenName[3] = {"E", "F", "Psi"};
}  // namespace

// ---------------------------------------------------------------------------
// Component table
// ---------------------------------------------------------------------------

ComponentTable make_component_table(const RationalFn& g, int trunc) {
  if (trunc < 1) fail(ErrorCode::InvalidConfig, "component table truncation must be positive");
  if (!check_symmetry(g))
    fail(ErrorCode::SymmetryViolated, "component table needs g(z) g(1/z) = 1");
  if (g.num.valuation() != g.den.valuation())
    fail(ErrorCode::NotAnalytic,
         "component table needs g regular and nonzero at z = 0 "
         "(numerator and denominator valuations differ)");
  ComponentTable t{g, iota_z0(g, trunc), iota_zinf(g, trunc), Scalar(0), trunc};
  if (t.fwd.lo() < 0 || t.rev.lo() < 0)
    fail(ErrorCode::Internal, "analytic expansion produced negative powers");
  t.alpha = t.fwd.coeff(0);
  if (t.alpha.is_zero()) fail(ErrorCode::Internal, "alpha = g(0) vanished after validation");
  if (t.rev.coeff(0) != t.alpha.inverse())
    fail(ErrorCode::Internal, "symmetry failed to force rev_0 = 1/alpha");
  return t;
}

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

Mat mat_zero(int rows, int cols) {
  return Mat(rows, std::vector<Scalar>(cols, Scalar(0)));
}

Mat mat_identity(int n) {
  Mat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

namespace {
void require_same_shape(const Mat& a, const Mat& b) {
  if (a.size() != b.size() || (!a.empty() && !b.empty() && a[0].size() != b[0].size()))
    fail(ErrorCode::Internal, "matrix shape mismatch");
}
}  // namespace

Mat mat_mul(const Mat& a, const Mat& b) {
  int rows = static_cast<int>(a.size());
  int inner = static_cast<int>(b.size());
  int cols = b.empty() ? 0 : static_cast<int>(b[0].size());
  if (!a.empty() && static_cast<int>(a[0].size()) != inner)
    fail(ErrorCode::Internal, "matrix product shape mismatch");
  Mat out = mat_zero(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < cols; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  Mat out = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  Mat out = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) out[i][j] -= b[i][j];
  return out;
}

Mat mat_scaled(const Mat& a, const Scalar& c) {
  Mat out = a;
  for (auto& row : out)
    for (auto& x : row) x *= c;
  return out;
}

bool mat_equal(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// A[alpha]: modules, verification, classification
// ---------------------------------------------------------------------------

AAlphaModule make_u_lambda(const Scalar& lambda) {
  AAlphaModule u;
  u.dim = 2;
  u.E0 = mat_zero(2, 2);
  u.F0 = mat_zero(2, 2);
  u.Psi0 = mat_zero(2, 2);
  u.E0[0][1] = lambda;
  u.F0[1][0] = Scalar(1);
  u.Psi0[0][0] = lambda;
  u.Psi0[1][1] = -lambda;
  return u;
}

namespace {
void validate_module(const AAlphaModule& u) {
  if (u.dim < 1) fail(ErrorCode::InvalidInput, "module dimension must be at least 1");
  for (const Mat* m : {&u.E0, &u.F0, &u.Psi0}) {
    if (static_cast<int>(m->size()) != u.dim)
      fail(ErrorCode::InvalidInput, "zero-mode matrix has wrong row count");
    for (const auto& row : *m)
      if (static_cast<int>(row.size()) != u.dim)
        fail(ErrorCode::InvalidInput, "zero-mode matrix has wrong column count");
  }
}
}  // namespace

AAlphaReport verify_aalpha(const AAlphaModule& u, const Scalar& alpha) {
  if (alpha.is_zero()) fail(ErrorCode::ZeroAlpha, "alpha = g(0) must be nonzero");
  validate_module(u);
  Scalar ainv = alpha.inverse();
  AAlphaReport report;
  report.alpha = alpha;
  auto check = [&](const char* name, const Mat& lhs, const Mat& rhs) {
    ++report.checks;
    for (int i = 0; i < u.dim; ++i)
      for (int j = 0; j < u.dim; ++j)
        if (lhs[i][j] != rhs[i][j]) {
          report.pass = false;
          if (static_cast<int>(report.witnesses.size()) < kWitnessCap)
            report.witnesses.push_back(
                {name, i, j, lhs[i][j].str(), rhs[i][j].str()});
          return;
        }
  };
  Mat ee = mat_mul(u.E0, u.E0);
  Mat ff = mat_mul(u.F0, u.F0);
  check("ee_exchange", ee, mat_scaled(ee, ainv));
  check("ff_exchange", ff, mat_scaled(ff, alpha));
  check("psi_e_exchange", mat_mul(u.Psi0, u.E0), mat_scaled(mat_mul(u.E0, u.Psi0), ainv));
  check("psi_f_exchange", mat_mul(u.Psi0, u.F0), mat_scaled(mat_mul(u.F0, u.Psi0), alpha));
  check("ef_commutator", mat_sub(mat_mul(u.E0, u.F0), mat_mul(u.F0, u.E0)), u.Psi0);
  return report;
}

IrreducibilityReport check_irreducible_2dim(const AAlphaModule& u) {
  validate_module(u);
  if (u.dim != 2)
    fail(ErrorCode::InvalidInput, "irreducibility test supports dimension 2 only");
  // A line spanned by (x, y) is invariant under X exactly when
  //   det[ (x,y) | X(x,y) ] = X10 x^2 + (X11 - X00) xy - X01 y^2 = 0.
  // With t = x/y this is p_X(t) = X10 t^2 + (X11 - X00) t - X01; the line
  // (1, 0) is handled separately. A common complex root of the nonzero
  // forms exists iff their gcd over Q is nonconstant.
  std::vector<Polynomial> forms;
  bool infinity_invariant = true;
  for (const Mat* m : {&u.E0, &u.F0, &u.Psi0}) {
    const Mat& x = *m;
    forms.push_back(Polynomial({-x[0][1], x[1][1] - x[0][0], x[1][0]}));
    if (!x[1][0].is_zero()) infinity_invariant = false;
  }
  Polynomial g;  // zero = "no constraint yet"
  bool any_nonzero = false;
  for (const auto& p : forms) {
    if (p.is_zero()) continue;
    g = any_nonzero ? Polynomial::gcd(g, p) : p.monic();
    any_nonzero = true;
  }
  IrreducibilityReport rep;
  if (!any_nonzero) {
    rep.irreducible = false;
    rep.detail = "every line is invariant (all three invariant-line forms vanish)";
    return rep;
  }
  if (g.degree() >= 1) {
    rep.irreducible = false;
    rep.detail = "the invariant-line forms share a root (gcd degree " +
                 std::to_string(g.degree()) + "), so a common eigenvector exists";
    return rep;
  }
  if (infinity_invariant) {
    rep.irreducible = false;
    rep.detail = "the coordinate line through (1, 0) is invariant";
    return rep;
  }
  rep.irreducible = true;
  rep.detail =
      "no common eigenvector over the algebraic closure: the invariant-line "
      "forms have constant gcd and the line through (1, 0) moves";
  return rep;
}

namespace {

// Free words over the letters E, F, Psi, indexed by length then base-3 rank.
struct FreeWords {
  int cap;
  std::vector<long long> offset;  // offset[k] = index of first length-k word
  explicit FreeWords(int cap_in) : cap(cap_in), offset(cap_in + 2, 0) {
    long long p = 1;
    for (int k = 0; k <= cap; ++k) {
      offset[k + 1] = offset[k] + p;
      p *= 3;
    }
  }
  long long total() const { return offset[cap + 1]; }
  int index(const std::vector<int>& w) const {
    long long r = 0;
    for (int d : w) r = r * 3 + d;
    return static_cast<int>(offset[w.size()] + r);
  }
};

NilpotencyCertificate build_nilpotency_certificate(const Scalar& alpha, int cap) {
  Scalar ainv = alpha.inverse();
  // Relators, written as LHS - RHS of the defining relations.
  using Term = std::pair<Scalar, std::vector<int>>;
  const std::vector<std::vector<Term>> relators = {
      {{Scalar(1), {0, 0}}, {-ainv, {0, 0}}},           // E^2 - a^{-1} E^2
      {{Scalar(1), {1, 1}}, {-alpha, {1, 1}}},          // F^2 - a F^2
      {{Scalar(1), {2, 0}}, {-ainv, {0, 2}}},           // Psi E - a^{-1} E Psi
      {{Scalar(1), {2, 1}}, {-alpha, {1, 2}}},          // Psi F - a F Psi
      {{Scalar(1), {0, 1}}, {Scalar(-1), {1, 0}}, {Scalar(-1), {2}}},  // EF - FE - Psi
  };
  FreeWords words(cap);
  RowSpace ideal;
  long long rows = 0;
  // Enumerate w1 * relator * w2 for all word pairs that keep every term
  // within the length cap (relator terms have length at most 2).
  std::vector<std::vector<int>> prefixes;
  std::function<void(std::vector<int>&, int)> gen_words =
      [&](std::vector<int>& cur, int max_len) {
        prefixes.push_back(cur);
        if (static_cast<int>(cur.size()) == max_len) return;
        for (int d = 0; d < 3; ++d) {
          cur.push_back(d);
          gen_words(cur, max_len);
          cur.pop_back();
        }
      };
  std::vector<int> scratch;
  gen_words(scratch, cap - 2);
  for (const auto& w1 : prefixes) {
    int room = cap - 2 - static_cast<int>(w1.size());
    for (const auto& w2 : prefixes) {
      if (static_cast<int>(w2.size()) > room) continue;
      for (const auto& rel : relators) {
        SparseRow row;
        for (const auto& [c, t] : rel) {
          std::vector<int> w = w1;
          w.insert(w.end(), t.begin(), t.end());
          w.insert(w.end(), w2.begin(), w2.end());
          auto [it, ins] = row.try_emplace(words.index(w), Scalar(0));
          it->second += c;
          if (it->second.is_zero()) row.erase(it);
        }
        ++rows;
        ideal.add(std::move(row));
      }
    }
  }
  const std::vector<std::pair<std::string, std::vector<int>>> targets = {
      {"(EF)^2", {0, 1, 0, 1}},
      {"(FE)^2", {1, 0, 1, 0}},
      {"(EF)(FE)", {0, 1, 1, 0}},
      {"(FE)(EF)", {1, 0, 0, 1}},
  };
  NilpotencyCertificate cert;
  cert.word_length_cap = cap;
  cert.ambient_words = words.total();
  cert.relator_rows = rows;
  cert.certified = true;
  for (const auto& [name, w] : targets) {
    cert.targets.push_back(name);
    SparseRow unit{{words.index(w), Scalar(1)}};
    if (!ideal.reduce(unit).empty()) cert.certified = false;
  }
  return cert;
}

}  // namespace

ClassifyReport classify_aalpha(const Scalar& alpha) {
  if (alpha.is_zero()) fail(ErrorCode::ZeroAlpha, "alpha = g(0) must be nonzero");
  ClassifyReport rep;
  rep.alpha = alpha;
  if (alpha == Scalar(-1)) {
    rep.case_name = "alpha=-1";
    rep.has_u_lambda = true;
    rep.notes = {
        "the one-dimensional trivial module (E, F, Psi act by zero) always exists",
        "E^2 = 0 and F^2 = 0 are forced (their relation coefficients 1 -/+ alpha^{+-1} are nonzero)",
        "the two-dimensional family U(lambda): E = [[0, lambda], [0, 0]], "
        "F = [[0, 0], [1, 0]], Psi = diag(lambda, -lambda)",
        "U(lambda) is irreducible for lambda != 0, and tr(EF) = lambda "
        "separates the family, so distinct lambda give non-isomorphic modules",
    };
    return rep;
  }
  if (alpha == Scalar(1)) {
    rep.case_name = "alpha=1";
    rep.open_case = true;
    rep.notes = {
        "the one-dimensional trivial module always exists",
        "at alpha = 1 the exchange relations become vacuous on E^2 and F^2 and "
        "make Psi central, leaving the algebra <E, F | [E, F] central>",
        "the finite-dimensional module theory of this Heisenberg-type algebra "
        "is not classified here",
    };
    return rep;
  }
  rep.case_name = "generic";
  rep.notes = {
      "E^2 = 0 and F^2 = 0 are forced, and EFE = FEF = 0 follows for "
      "alpha != -1, so EF and FE generate a nilpotent ideal",
      "every finite-dimensional irreducible module is the one-dimensional "
      "trivial one",
  };
  rep.nilpotency = build_nilpotency_certificate(alpha, 6);
  return rep;
}

// ---------------------------------------------------------------------------
// Graded modules induced from a zero-mode module
// ---------------------------------------------------------------------------

namespace {

struct Letter {
  int gen;    // 0 = E, 1 = F, 2 = Psi
  int level;  // k >= 1; the letter is X(-k). Zero modes are never stored:
              // they are straightened rightward and absorbed into U.
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;
using Element = std::pair<Word, int>;  // (word, index into the U basis)

int word_degree(const Word& w) {
  int d = 0;
  for (const auto& l : w) d += l.level;
  return d;
}

std::string element_str(const Element& e) {
  std::ostringstream os;
  for (const auto& l : e.first) os << kGenName[l.gen] << "(" << -l.level << ")";
  os << "u" << e.second;
  return os.str();
}

// Degree-by-degree construction of the induced module at one word cap.
class VermaBuilder {
 public:
  VermaBuilder(const ComponentTable& t, const AAlphaModule& u, int degree_bound,
               int word_cap)
      : fwd_(t.fwd), rev_(t.rev), u_(u), D_(degree_bound), L_(word_cap) {
    elems_.resize(D_ + 1);
    col_of_.resize(D_ + 1);
    null_.resize(D_ + 1);
    gens_.resize(D_ + 1);
    for (int d = 0; d <= D_; ++d) enumerate_degree(d);
  }

  void run() {
    // Relation instances with creation modes over every probe element.
    for (int d = 0; d <= D_; ++d)
      for (int fam = 0; fam < 6; ++fam)
        for (int mneg = 0; mneg <= d; ++mneg)
          for (int nneg = 0; mneg + nneg <= d; ++nneg) {
            int dv = d - mneg - nneg;
            for (int col = 0; col < static_cast<int>(elems_[dv].size()); ++col) {
              auto row = relation_row(fam, -mneg, -nneg, col, dv);
              if (!row) {
                ++skipped_rows_;
              } else if (!row->empty()) {
                add_row(d, std::move(*row));
              }
            }
          }
    // Close the null spaces under creation (upward) and annihilation
    // (downward); zero modes are closed inside add_row. New rows can feed
    // both directions, so iterate to a fixpoint.
    std::vector<std::size_t> up(D_ + 1, 0), down(D_ + 1, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int d0 = 0; d0 <= D_; ++d0)
        while (up[d0] < gens_[d0].size()) {
          SparseRow r = gens_[d0][up[d0]++];
          for (int gen = 0; gen < 3; ++gen)
            for (int k = 1; d0 + k <= D_; ++k) {
              auto pr = prepend(gen, k, r, d0);
              if (!pr) {
                ++skipped_rows_;
              } else if (!pr->empty() && add_row(d0 + k, std::move(*pr))) {
                changed = true;
              }
            }
        }
      for (int d = 1; d <= D_; ++d)
        while (down[d] < gens_[d].size()) {
          SparseRow r = gens_[d][down[d]++];
          for (int gen = 0; gen < 3; ++gen)
            for (int k = 1; k <= d; ++k) {
              auto im = eval_row(gen, k, r, d);
              if (!im) {
                ++skipped_rows_;
              } else if (!im->empty() && add_row(d - k, std::move(*im))) {
                changed = true;
              }
            }
        }
    }
  }

  std::vector<long long> dims() const {
    std::vector<long long> out(D_ + 1);
    for (int d = 0; d <= D_; ++d)
      out[d] = static_cast<long long>(elems_[d].size()) - null_[d].rank();
    return out;
  }

  void extract(GradedModule* out) {
    if (null_[0].rank() > 0)
      fail(ErrorCode::Inconsistent,
           "the zero-mode module is inconsistent with the relations: the "
           "degree-0 layer collapses");
    out->dims = dims();
    out->skipped_rows = skipped_rows_;
    std::vector<std::vector<int>> basis(D_ + 1);
    std::vector<std::map<int, int>> basis_pos(D_ + 1);
    out->basis_words.assign(D_ + 1, {});
    for (int d = 0; d <= D_; ++d) {
      basis[d] = null_[d].nonpivot_columns(static_cast<int>(elems_[d].size()));
      for (int i = 0; i < static_cast<int>(basis[d].size()); ++i) {
        basis_pos[d][basis[d][i]] = i;
        out->basis_words[d].push_back(element_str(elems_[d][basis[d][i]]));
      }
    }
    for (int from = 0; from <= D_; ++from)
      for (int to = 0; to <= D_; ++to) {
        int mode = from - to;
        for (int gen = 0; gen < 3; ++gen) {
          Mat m = mat_zero(static_cast<int>(basis[to].size()),
                           static_cast<int>(basis[from].size()));
          bool ok = true;
          for (int bi = 0; bi < static_cast<int>(basis[from].size()) && ok; ++bi) {
            SparseRow unit{{basis[from][bi], Scalar(1)}};
            std::optional<SparseRow> img =
                mode >= 0 ? eval_row(gen, mode, unit, from)
                          : prepend(gen, -mode, unit, from);
            if (!img) {
              ok = false;
              out->missing_actions.push_back(
                  std::string(kGenName[gen]) + "(" + std::to_string(-mode) +
                  ") on degree " + std::to_string(from));
              break;
            }
            SparseRow red = null_[to].reduce(*img);
            for (const auto& [c, v] : red) {
              auto it = basis_pos[to].find(c);
              if (it == basis_pos[to].end())
                fail(ErrorCode::Internal, "reduced action hit a pivot column");
              m[it->second][bi] = v;
            }
          }
          if (ok) out->act[{gen, mode, from}] = std::move(m);
        }
      }
  }

 private:
  const Mat& gen_mat(int gen) const {
    return gen == 0 ? u_.E0 : gen == 1 ? u_.F0 : u_.Psi0;
  }

  void enumerate_degree(int d) {
    std::vector<Word> words;
    Word cur;
    long long nodes = 0;
    std::function<void(int)> rec = [&](int remaining) {
      if (++nodes > 30'000'000)
        fail(ErrorCode::InvalidConfig,
             "word enumeration too large for the requested degree bound and "
             "word cap");
      if (remaining == 0) words.push_back(cur);
      if (static_cast<int>(cur.size()) == L_) return;
      for (int gen = 0; gen < 3; ++gen)
        for (int lev = 1; lev <= remaining; ++lev) {
          cur.push_back({gen, lev});
          rec(remaining - lev);
          cur.pop_back();
        }
    };
    rec(d);
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    elems_[d].reserve(words.size() * u_.dim);
    for (const auto& w : words)
      for (int b = 0; b < u_.dim; ++b) {
        col_of_[d].emplace(Element{w, b}, static_cast<int>(elems_[d].size()));
        elems_[d].push_back({w, b});
      }
  }

  // X(-k) (k >= 1) prepended to every element of v, a row at degree from_d.
  // Returns nullopt when a resulting word would exceed the cap.
  std::optional<SparseRow> prepend(int gen, int k, const SparseRow& v, int from_d) {
    int to_d = from_d + k;
    if (k < 1 || to_d > D_) fail(ErrorCode::Internal, "prepend outside tracked range");
    SparseRow out;
    for (const auto& [col, c] : v) {
      const Element& e = elems_[from_d][col];
      if (static_cast<int>(e.first.size()) + 1 > L_) return std::nullopt;
      Word w;
      w.reserve(e.first.size() + 1);
      w.push_back({gen, k});
      w.insert(w.end(), e.first.begin(), e.first.end());
      auto it = col_of_[to_d].find({w, e.second});
      if (it == col_of_[to_d].end())
        fail(ErrorCode::Internal, "prepended word missing from the column index");
      auto [slot, ins] = out.try_emplace(it->second, Scalar(0));
      slot->second += c;
      if (slot->second.is_zero()) out.erase(slot);
    }
    return out;
  }

  // X(+k) or X(0) (k >= 0) applied to one basis element, memoized. The nine
  // straightening rules push the mode through the leftmost letter using the
  // exchange relations, the commutator, and the structure of the top layer
  // (positive modes annihilate U, zero modes act by its matrices). Every
  // leftmost letter has level >= 1, so each recursive call strictly lowers
  // the word degree and the recursion terminates.
  const std::optional<SparseRow>& eval(int gen, int k, const Word& w, int ub) {
    auto key = std::make_tuple(gen, k, w, ub);
    auto it = eval_memo_.find(key);
    if (it != eval_memo_.end()) return it->second;
    std::optional<SparseRow> out = compute_eval(gen, k, w, ub);
    return eval_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  std::optional<SparseRow> compute_eval(int X, int k, const Word& w, int ub) {
    int d = word_degree(w);
    if (d - k < 0) return SparseRow{};  // the target graded piece vanishes
    if (w.empty()) {
      if (k > 0) return SparseRow{};  // positive modes annihilate U
      SparseRow out;                   // the zero mode acts by the U matrix
      const Mat& m0 = gen_mat(X);
      for (int a = 0; a < u_.dim; ++a)
        if (!m0[a][ub].is_zero()) out.emplace(col_of_[0].at({w, a}), m0[a][ub]);
      return out;
    }
    int Y = w[0].gen;
    int j = w[0].level;
    Word rest(w.begin() + 1, w.end());
    int dp = d - j;
    std::optional<SparseRow> out = SparseRow{};
    auto add_term = [&](std::optional<SparseRow> t, const Scalar& c) {
      if (!out) return;
      if (!t) {
        out.reset();
        return;
      }
      row_add_scaled(&*out, *t, c);
    };
    auto rest_unit = [&]() -> SparseRow {
      return SparseRow{{col_of_[dp].at({rest, ub}), Scalar(1)}};
    };
    if (Y != 2 && (X == Y || X == 2)) {
      // X_k Y(-j) w' = sum_l c_l Y(-j-l) [X_{k+l} w']; the E family reorders
      // with the reversed expansion, the F family with the forward one.
      const TruncSeries& c = (Y == 0) ? rev_ : fwd_;
      for (int l = 0; l <= dp - k && out; ++l) {
        const auto& inner = eval(X, k + l, rest, ub);
        if (!inner) {
          out.reset();
          break;
        }
        add_term(prepend(Y, j + l, *inner, dp - k - l), c.coeff(l));
      }
    } else if (X == 2 && Y == 2) {
      // Psi_k Psi(-j) w' = Psi(-j) [Psi_k w'].
      const auto& inner = eval(2, k, rest, ub);
      if (!inner)
        out.reset();
      else
        add_term(prepend(2, j, *inner, dp - k), Scalar(1));
    } else if (X != 2 && Y != 2) {
      // E_k F(-j) w' = F(-j) [E_k w'] + Psi(k-j) w', and the mirrored
      // F_k E(-j) w' with a minus sign on the commutator term.
      const auto& inner = eval(X, k, rest, ub);
      if (!inner)
        out.reset();
      else
        add_term(prepend(Y, j, *inner, dp - k), Scalar(1));
      add_term(apply_mode_row(2, k - j, rest_unit(), dp),
               X == 0 ? Scalar(1) : Scalar(-1));
    } else {
      // X in {E, F}, Y = Psi: solved from the Psi-X exchange relation,
      // X_k Psi(-j) w' =
      //   c_0^{-1} [ Psi(-j) [X_k w'] - sum_{l>=1} c_l X_{k-l} Psi(l-j) w' ].
      const TruncSeries& c = (X == 0) ? rev_ : fwd_;
      Scalar c0inv = c.coeff(0).inverse();
      const auto& inner = eval(X, k, rest, ub);
      if (!inner)
        out.reset();
      else
        add_term(prepend(2, j, *inner, dp - k), c0inv);
      for (int l = 1; l <= j + dp && out; ++l) {
        auto psi = apply_mode_row(2, l - j, rest_unit(), dp);
        add_term(apply_mode_row_opt(X, k - l, std::move(psi), d - l),
                 -(c0inv * c.coeff(l)));
      }
    }
    return out;
  }

  std::optional<SparseRow> eval_row(int gen, int k, const SparseRow& v, int from_d) {
    SparseRow out;
    for (const auto& [col, c] : v) {
      const Element& e = elems_[from_d][col];
      const auto& r = eval(gen, k, e.first, e.second);
      if (!r) return std::nullopt;
      row_add_scaled(&out, *r, c);
    }
    return out;
  }

  std::optional<SparseRow> apply_mode_row(int gen, int mode, const SparseRow& v,
                                          int from_d) {
    if (mode >= 0) return eval_row(gen, mode, v, from_d);
    return prepend(gen, -mode, v, from_d);
  }

  std::optional<SparseRow> apply_mode_row_opt(int gen, int mode,
                                              std::optional<SparseRow> v,
                                              int from_d) {
    if (!v) return std::nullopt;
    return apply_mode_row(gen, mode, *v, from_d);
  }

  // One relation instance with creation modes m, n <= 0, probing the basis
  // element `col` of degree dv; the row lives at degree dv - m - n.
  std::optional<SparseRow> relation_row(int family, int m, int n, int col, int dv) {
    SparseRow x{{col, Scalar(1)}};
    auto two_step = [&](int ga, int ma, int gb, int mb) {
      auto t = apply_mode_row(gb, mb, x, dv);
      return apply_mode_row_opt(ga, ma, std::move(t), dv - mb);
    };
    auto exchange = [&](int agen, int bgen,
                        const TruncSeries& c) -> std::optional<SparseRow> {
      auto out = two_step(agen, m, bgen, n);
      for (int l = 0; l <= dv - m && out; ++l) {
        auto t = apply_mode_row(agen, m + l, x, dv);
        t = apply_mode_row_opt(bgen, n - l, std::move(t), dv - m - l);
        if (!t) return std::nullopt;
        row_add_scaled(&*out, *t, -c.coeff(l));
      }
      return out;
    };
    switch (family) {
      case 0: return exchange(0, 0, rev_);
      case 1: return exchange(1, 1, fwd_);
      case 2: return exchange(2, 0, rev_);
      case 3: return exchange(2, 1, fwd_);
      case 4: {
        auto out = two_step(0, m, 1, n);
        auto t = two_step(1, n, 0, m);
        if (!out || !t) return std::nullopt;
        row_add_scaled(&*out, *t, Scalar(-1));
        auto p = apply_mode_row(2, m + n, x, dv);
        if (!p) return std::nullopt;
        row_add_scaled(&*out, *p, Scalar(-1));
        return out;
      }
      default: {
        auto out = two_step(2, m, 2, n);
        auto t = two_step(2, n, 2, m);
        if (!out || !t) return std::nullopt;
        row_add_scaled(&*out, *t, Scalar(-1));
        return out;
      }
    }
  }

  // Inserts a row and closes it under the zero-mode action within the
  // degree. Returns true when the rank grew.
  bool add_row(int d, SparseRow row) {
    bool any = false;
    std::vector<SparseRow> work;
    work.push_back(std::move(row));
    while (!work.empty()) {
      SparseRow r = std::move(work.back());
      work.pop_back();
      if (r.empty() || !null_[d].add(r)) continue;
      any = true;
      gens_[d].push_back(r);
      for (int gen = 0; gen < 3; ++gen) {
        auto r0 = eval_row(gen, 0, r, d);
        if (!r0) {
          ++skipped_rows_;
        } else if (!r0->empty()) {
          work.push_back(std::move(*r0));
        }
      }
    }
    return any;
  }

  TruncSeries fwd_, rev_;
  AAlphaModule u_;
  int D_, L_;
  std::vector<std::vector<Element>> elems_;
  std::vector<std::map<Element, int>> col_of_;
  std::vector<RowSpace> null_;
  std::vector<std::vector<SparseRow>> gens_;
  std::map<std::tuple<int, int, Word, int>, std::optional<SparseRow>> eval_memo_;
  long long skipped_rows_ = 0;
};

ComponentTable widen_table(const ComponentTable& t, int trunc) {
  return t.trunc >= trunc ? t : make_component_table(t.g, trunc);
}

}  // namespace

GradedModule build_verma(const ComponentTable& table, const AAlphaModule& u,
                         int degree_bound, int word_cap) {
  if (degree_bound < 0) fail(ErrorCode::InvalidConfig, "degree bound must be nonnegative");
  if (word_cap < 1) fail(ErrorCode::InvalidConfig, "word cap must be at least 1");
  validate_module(u);
  ComponentTable t = widen_table(table, 2 * degree_bound + 6);
  GradedModule out;
  out.alpha = t.alpha;
  out.degree_bound = degree_bound;
  out.word_cap = word_cap;
  VermaBuilder b(t, u, degree_bound, word_cap);
  b.run();
  b.extract(&out);
  VermaBuilder wider(t, u, degree_bound, word_cap + 1);
  wider.run();
  std::vector<long long> wider_dims = wider.dims();
  out.stabilized.resize(degree_bound + 1);
  for (int d = 0; d <= degree_bound; ++d)
    out.stabilized[d] = (out.dims[d] == wider_dims[d]);
  return out;
}

RelationReport verify_graded_relations(const ComponentTable& table,
                                       const GradedModule& mod) {
  int D = mod.degree_bound;
  if (static_cast<int>(mod.dims.size()) != D + 1)
    fail(ErrorCode::InvalidInput, "graded module has inconsistent degree data");
  ComponentTable t = widen_table(table, 2 * D + 6);
  RelationReport report;
  auto dims = [&](int d) { return static_cast<int>(mod.dims[d]); };
  auto get = [&](int gen, int mode, int from) -> const Mat* {
    auto it = mod.act.find({gen, mode, from});
    return it == mod.act.end() ? nullptr : &it->second;
  };
  bool missing = false;
  // Composite X_a(ma) X_b(mb) from degree d; nullopt marks a matrix that the
  // build could not provide (recorded in missing_actions).
  auto compose = [&](int ga, int ma, int gb, int mb, int d) -> std::optional<Mat> {
    int mid = d - mb;
    int fin = mid - ma;
    if (mid < 0) return mat_zero(dims(fin), dims(d));
    if (mid > D) fail(ErrorCode::Internal, "composition left the tracked degrees");
    const Mat* a = get(ga, ma, mid);
    const Mat* b = get(gb, mb, d);
    if (!a || !b) return std::nullopt;
    return mat_mul(*a, *b);
  };
  auto record = [&](const char* name, int m, int n, int d,
                    const std::optional<Mat>& lhs, const std::optional<Mat>& rhs) {
    ++report.checks;
    if (!lhs || !rhs) {
      report.pass = false;
      missing = true;
      return;
    }
    for (std::size_t i = 0; i < lhs->size(); ++i)
      for (std::size_t jj = 0; jj < (*lhs)[i].size(); ++jj)
        if ((*lhs)[i][jj] != (*rhs)[i][jj]) {
          report.pass = false;
          if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
            Witness w;
            w.check = name;
            w.m = m;
            w.n = n;
            w.degree = d;
            w.vector_index = static_cast<int>(jj);
            w.monomial = mod.basis_words[d][jj];
            w.lhs_coeff = (*lhs)[i][jj].str();
            w.rhs_coeff = (*rhs)[i][jj].str();
            report.witnesses.push_back(std::move(w));
          }
          return;
        }
  };
  struct ExchangeFamily {
    const char* name;
    int agen, bgen;
    bool use_rev;
  };
  const ExchangeFamily fams[] = {
      {"ee", 0, 0, true},
      {"ff", 1, 1, false},
      {"psie", 2, 0, true},
      {"psif", 2, 1, false},
  };
  for (const auto& fam : fams) {
    const TruncSeries& c = fam.use_rev ? t.rev : t.fwd;
    for (int d = 0; d <= D; ++d)
      for (int n = d - D; n <= d; ++n)
        for (int m = std::max(d - D, d - n - D); m <= d - n; ++m) {
          auto lhs = compose(fam.agen, m, fam.bgen, n, d);
          std::optional<Mat> rhs = mat_zero(dims(d - m - n), dims(d));
          for (int l = 0; l <= d - m && rhs; ++l) {
            auto term = compose(fam.bgen, n - l, fam.agen, m + l, d);
            if (!term)
              rhs.reset();
            else
              rhs = mat_add(*rhs, mat_scaled(*term, c.coeff(l)));
          }
          record(fam.name, m, n, d, lhs, rhs);
        }
  }
  for (int d = 0; d <= D; ++d)
    for (int n = d - D; n <= d; ++n)
      for (int m = std::max(d - D, d - n - D); m <= std::min(d, d - n); ++m) {
        auto ef = compose(0, m, 1, n, d);
        auto fe = compose(1, n, 0, m, d);
        const Mat* psi = get(2, m + n, d);
        if (!ef || !fe || !psi) {
          record("ef", m, n, d, std::nullopt, std::nullopt);
        } else {
          record("ef", m, n, d, mat_sub(*ef, *fe), *psi);
        }
        auto pp = compose(2, m, 2, n, d);
        auto pp2 = compose(2, n, 2, m, d);
        record("psipsi", m, n, d, pp, pp2);
      }
  if (missing && static_cast<int>(report.witnesses.size()) < kWitnessCap) {
    Witness w;
    w.check = "missing_action";
    w.monomial = mod.missing_actions.empty() ? std::string("unknown")
                                             : mod.missing_actions.front();
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace qva
