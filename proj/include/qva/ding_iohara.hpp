#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qva/ratfunc.hpp"
#include "qva/report.hpp"
#include "qva/scalar.hpp"
#include "qva/series.hpp"

namespace qva {

// ---------------------------------------------------------------------------
// Component coefficient table.
//
// For a symmetric rational g (g(z) g(1/z) = 1) that is regular and nonzero
// at z = 0, the two ascending expansions
//   fwd_l  = [z^l] iota_0 g(z)        (drives the F-family reordering)
//   rev_l  = [z^l] iota_0 g(1/z)      (drives the E-family reordering)
// give the component form of the exchange relations:
//   E(m) E(n) = sum_l rev_l E(n-l) E(m+l)
//   F(m) F(n) = sum_l fwd_l F(n-l) F(m+l)
//   Psi(m) E(n) = sum_l rev_l E(n-l) Psi(m+l)
//   Psi(m) F(n) = sum_l fwd_l F(n-l) Psi(m+l)
//   [E(m), F(n)] = Psi(m+n),   [Psi(m), Psi(n)] = 0.
// alpha = g(0) = fwd_0 is nonzero, and symmetry forces rev_0 = 1/alpha.
// ---------------------------------------------------------------------------
struct ComponentTable {
  RationalFn g;
  TruncSeries fwd;   // iota_0 g(z)
  TruncSeries rev;   // iota_0 g(1/z)
  Scalar alpha;      // g(0)
  int trunc = 0;
};

// Throws SymmetryViolated if g is not symmetric, NotAnalytic if g has a zero
// or pole at the origin (the expansions would not both start at z^0).
ComponentTable make_component_table(const RationalFn& g, int trunc);

// ---------------------------------------------------------------------------
// Zero-mode algebra A[alpha] and its finite-dimensional modules.
//
// A[alpha] is generated by E, F, Psi subject to
//   E^2 = alpha^{-1} E^2,  F^2 = alpha F^2,
//   Psi E = alpha^{-1} E Psi,  Psi F = alpha F Psi,  [E, F] = Psi.
// ---------------------------------------------------------------------------
using Mat = std::vector<std::vector<Scalar>>;

Mat mat_zero(int rows, int cols);
Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scaled(const Mat& a, const Scalar& c);
bool mat_equal(const Mat& a, const Mat& b);

struct AAlphaModule {
  int dim = 0;
  Mat E0, F0, Psi0;
};

// The two-dimensional family at alpha = -1 (lambda != 0 gives irreducible,
// pairwise non-isomorphic modules):
//   E0 = [[0, lambda], [0, 0]], F0 = [[0, 0], [1, 0]],
//   Psi0 = diag(lambda, -lambda).
AAlphaModule make_u_lambda(const Scalar& lambda);

struct AAlphaWitness {
  std::string relation;  // e.g. "psi_e_exchange"
  int row = 0, col = 0;
  std::string lhs, rhs;
};

struct AAlphaReport {
  bool pass = true;
  Scalar alpha;
  long long checks = 0;
  std::vector<AAlphaWitness> witnesses;
};

// Exact check of the five defining relations on a candidate module.
// Throws ZeroAlpha when alpha = 0, InvalidInput on malformed matrices.
AAlphaReport verify_aalpha(const AAlphaModule& u, const Scalar& alpha);

// For a module of dimension 2: decide irreducibility (over the algebraic
// closure) by exact common-root analysis of the three invariant-line forms.
struct IrreducibilityReport {
  bool irreducible = false;
  std::string detail;
};
IrreducibilityReport check_irreducible_2dim(const AAlphaModule& u);

// Ideal-membership certificate that A[alpha] is finite dimensional for
// generic alpha: the words (EF)^2, (FE)^2, EF*FE, FE*EF all lie in the
// two-sided ideal generated by the defining relators, within the span of
// free words of bounded length.
struct NilpotencyCertificate {
  bool certified = false;
  int word_length_cap = 0;
  long long ambient_words = 0;   // free words spanning the workspace
  long long relator_rows = 0;    // relator instances row-reduced
  std::vector<std::string> targets;  // targets shown to be in the ideal
};

struct ClassifyReport {
  Scalar alpha;
  std::string case_name;           // "generic", "alpha=-1", "alpha=1"
  std::vector<std::string> notes;
  bool has_u_lambda = false;       // alpha = -1: the U(lambda) family exists
  bool open_case = false;          // alpha = 1: classification left open
  std::optional<NilpotencyCertificate> nilpotency;  // generic alpha
};

// Classify the finite-dimensional irreducible modules of A[alpha] by case.
// Throws ZeroAlpha when alpha = 0.
ClassifyReport classify_aalpha(const Scalar& alpha);

// ---------------------------------------------------------------------------
// Graded modules induced from a zero-mode module.
//
// Creation letters X(-k) with k >= 1 act on a module U for the zero-mode
// algebra; zero modes act through U's matrices and positive modes propagate
// by straightening. The induced graded module M(U) is the free span of
// (word, u) modulo the relation rows and their closure under the full mode
// action. The construction works degree by degree with words capped at
// `word_cap` letters; since every letter lowers the degree by at least one,
// degrees up to the cap are unaffected by it, and per-degree `stabilized`
// records whether the dimension is unchanged when the cap grows by one.
// ---------------------------------------------------------------------------
struct GradedModule {
  Scalar alpha;
  int degree_bound = 0;  // D: degrees 0..D are computed
  int word_cap = 0;      // L: max letters per word
  std::vector<long long> dims;            // dims[d] = dim M(U)[d]
  std::vector<bool> stabilized;           // dims[d] equal at caps L and L+1
  std::vector<std::vector<std::string>> basis_words;  // per degree
  // Action matrices: act[{gen, mode, from_d}] maps the degree-from_d basis
  // to the degree-(from_d - mode) basis; present for every pair of degrees
  // in range, i.e. modes with from_d - mode in [0, degree_bound].
  // gen: 0 = E, 1 = F, 2 = Psi.
  std::map<std::tuple<int, int, int>, Mat> act;
  // Rows or matrices that could not be computed within the word cap are
  // recorded here instead of being silently dropped.
  long long skipped_rows = 0;
  std::vector<std::string> missing_actions;
};

// Build degrees 0..degree_bound of the induced module. Throws Inconsistent
// if the degree-0 layer collapses (the input module fails the zero-mode
// relations), InvalidInput for bad bounds.
GradedModule build_verma(const ComponentTable& table, const AAlphaModule& u,
                         int degree_bound, int word_cap);

// Verify the component relations as exact matrix identities on the computed
// degrees, over all mode pairs whose source and target degrees stay in range.
RelationReport verify_graded_relations(const ComponentTable& table,
                                       const GradedModule& mod);

}  // namespace qva
