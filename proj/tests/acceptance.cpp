// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qva/ding_iohara.hpp"
#include "qva/errors.hpp"
#include "qva/vacuum.hpp"

using qva::AAlphaModule;
using qva::AhContext;
using qva::ComponentTable;
using qva::FockMonomial;
using qva::FockVector;
using qva::Gen;
using qva::Polynomial;
using qva::RationalFn;
using qva::Scalar;
using qva::TruncSeries;

namespace {

RationalFn rf(std::vector<long> num, std::vector<long> den) {
  std::vector<Scalar> n, d;
  for (long c : num) n.emplace_back(c);
  for (long c : den) d.emplace_back(c);
  return RationalFn::make(Polynomial(std::move(n)), Polynomial(std::move(d)));
}

struct Named {
  const char* name;
  RationalFn g;
};

// The six standard inputs: four plain, two super (h(0) = -1).
std::vector<Named> inputs() {
  return {
      {"1", rf({1}, {1})},
      {"z", rf({0, 1}, {1})},
      {"(z-2)/(1-2z)", rf({-2, 1}, {1, -2})},
      {"(z-2)(z-3)/((1-2z)(1-3z))", rf({6, -5, 1}, {1, -5, 6})},
      {"-z^2", rf({0, 0, -1}, {1})},
      {"-(z-2)(z-1/2)/((1-2z)(1-z/2))", rf({-2, 5, -2}, {2, -5, 2})},
  };
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<oracle::Rat> orats(const Polynomial& p) {
  std::vector<oracle::Rat> out;
  for (const Scalar& c : p.coeffs()) out.push_back(oracle::rat(c.str()));
  return out;
}

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
  std::printf("[A%d] %s  %s\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// A1: the six defining relations hold on every spanning vector of weight
// <= 4 with both modes over [-4, 5], for all six inputs, within budget.
void criterion1() {
  bool pass = true;
  long long max_checks = 0;
  double slowest = 0;
  std::string bad;
  for (const Named& in : inputs()) {
    auto t0 = std::chrono::steady_clock::now();
    AhContext ctx(in.g, 4, -4, 5, 24);
    auto rep = ctx.verify_relations(4, -4, 5);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    max_checks = std::max(max_checks, rep.checks);
    if (!rep.pass) {
      pass = false;
      bad = in.name;
    }
    if (dt >= 120.0) {
      pass = false;
      bad = std::string(in.name) + " (over budget)";
    }
  }
  std::ostringstream os;
  os << "defining relations, 6/6 inputs, weight <= 4, modes in [-4,5]";
  if (pass)
    os << " (" << max_checks << " checks on the largest input; slowest "
       << slowest << " s < 120 s)";
  else
    os << " — first failing input: " << bad;
  report(1, pass, os.str());
}

// A2: spanning vectors are linearly independent through weight 5 and their
// number matches the closed-form partition counts, plain and super.
void criterion2() {
  bool pass = true;
  std::string detail;
  struct Cfg {
    const char* label;
    RationalFn g;
    bool super;
  };
  for (const Cfg& c : {Cfg{"plain", rf({-2, 1}, {1, -2}), false},
                       Cfg{"super", rf({0, 0, -1}, {1}), true}}) {
    AhContext ctx(c.g, 5, -5, 6, 24);
    auto rep = ctx.verify_pbw_independence(5);
    auto want = oracle::vacuum_counts(5, c.super);
    bool here = rep.pass && rep.per_degree.size() == 6;
    for (int d = 0; here && d <= 5; ++d)
      here = rep.per_degree[d].count == want[d] &&
             rep.per_degree[d].rank == want[d];
    if (!here) {
      pass = false;
      detail = std::string(" — failed for the ") + c.label + " variant";
    }
  }
  report(2, pass,
         "spanning-family independence through weight 5, exact ranks equal "
         "the partition-count oracle (plain 1,3,9,22,51,108; super "
         "1,3,7,16,32,61)" +
             detail);
}

// A3: h(x) = eps q(x)/q(-x) with q(0) = 1, verified against an independent
// expansion of g(e^x) through x^15, for all six inputs.
void criterion3() {
  bool pass = true;
  std::string bad;
  for (const Named& in : inputs()) {
    auto fact = qva::factor_h(qva::canonicalize(in.g), 18);
    auto h_oracle =
        oracle::rational_of_exp(orats(in.g.num), orats(in.g.den), 16);
    TruncSeries recon =
        fact.q.scaled(Scalar(fact.epsilon)) * fact.q.reflected().inverse();
    bool here = fact.q.coeff(0) == Scalar(1);
    for (int k = 0; here && k <= 15; ++k)
      here = recon.coeff(k).str() == oracle::str(h_oracle[k]);
    if (!here) {
      pass = false;
      bad = in.name;
    }
  }
  report(3, pass,
         std::string("factorization h = eps*q(x)/q(-x) reproduces the "
                     "independent expansion of g(e^x) through x^15") +
             (pass ? "" : (" — failed for g = " + bad)));
}

// A4: the two one-variable embeddings multiply to 1 through z^15.
void criterion4() {
  bool pass = true;
  std::string bad;
  for (const Named& in : inputs()) {
    TruncSeries a = qva::iota_z0(in.g, 20);
    TruncSeries b = qva::iota_z0(in.g.inverted_argument(), 20);
    TruncSeries prod = a * b;
    bool here = true;
    for (int k = prod.lo(); k <= 15 && k < prod.trunc(); ++k)
      here = here && prod.coeff(k) == (k == 0 ? Scalar(1) : Scalar(0));
    here = here && prod.lo() <= 0 && prod.trunc() > 15;
    if (!here) {
      pass = false;
      bad = in.name;
    }
  }
  report(4, pass,
         std::string("iota0(g) * iota0(g(1/z)) = 1 through z^15") +
             (pass ? "" : (" — failed for g = " + bad)));
}

// A5: zero-mode and annihilation products on the generator vectors.
void criterion5() {
  bool pass = true;
  std::string bad;
  for (const Named& in : inputs()) {
    AhContext ctx(in.g, 2, -5, 6, 24);
    bool super = ctx.super();
    FockVector vac = FockVector::unit(FockMonomial::vacuum(super));
    FockVector e = ctx.apply_mode(Gen::E, -1, vac);
    FockVector f = ctx.apply_mode(Gen::F, -1, vac);
    FockVector psi = ctx.apply_mode(Gen::Psi, -1, vac);
    bool here = ctx.apply_mode(Gen::E, 0, f) == psi;
    for (int n = 1; here && n <= 5; ++n)
      here = ctx.apply_mode(Gen::E, n, f).is_zero();
    for (int n = 0; here && n <= 5; ++n)
      here = ctx.apply_mode(Gen::Psi, n, psi).is_zero() &&
             ctx.apply_mode(Gen::Psi, n, e).is_zero() &&
             ctx.apply_mode(Gen::Psi, n, f).is_zero() &&
             ctx.apply_mode(Gen::E, n, e).is_zero() &&
             ctx.apply_mode(Gen::F, n, f).is_zero();
    if (!here) {
      pass = false;
      bad = in.name;
    }
  }
  report(5, pass,
         std::string("zero-mode products: e(0)f(-1)vac = psi(-1)vac; "
                     "e(n)f, psi(n)x, e(n)e, f(n)f all vanish for n in "
                     "[0,5] as required") +
             (pass ? "" : (" — failed for g = " + bad)));
}

// A6: the grading derivation commutes as [d, a(m)] = -m a(m-1) on weights
// <= 3 for modes in [-3, 4], and [d, phi_i] = (i+1) phi_{i+1} for i <= 4.
void criterion6() {
  bool pass = true;
  std::string bad;
  long long checks = 0;
  for (const Named& in : inputs()) {
    AhContext ctx(in.g, 3, -3, 4, 24);
    auto rep = ctx.verify_derivation(3, -3, 4, 4);
    checks += rep.checks;
    if (!rep.pass) {
      pass = false;
      bad = in.name;
    }
  }
  std::ostringstream os;
  os << "derivation compatibility on weights <= 3, modes in [-3,4], "
        "dressing indices <= 4 ("
     << checks << " checks)";
  if (!pass) os << " — failed for g = " << bad;
  report(6, pass, os.str());
}

// A7: at g = 1 the dressed modes degenerate to the undressed ones on all
// monomials of weight <= 5 for modes in [-5, 6].
void criterion7() {
  AhContext ctx(rf({1}, {1}), 5, -5, 6, 24);
  bool pass = !ctx.super();
  long long checks = 0;
  for (int d = 0; pass && d <= 5; ++d)
    for (const FockMonomial& m : qva::enumerate_basis(d, false))
      for (Gen g : {Gen::E, Gen::F, Gen::Psi})
        for (int mode = -5; mode <= 6; ++mode) {
          ++checks;
          if (!(ctx.apply_mode(g, mode, FockVector::unit(m)) ==
                qva::apply_bar_mode(g, mode, m))) {
            pass = false;
          }
        }
  std::ostringstream os;
  os << "degeneration at g = 1: dressed action equals the undressed action "
        "on weights <= 5, modes in [-5,6] ("
     << checks << " identities)";
  report(7, pass, os.str());
}

// A8: zero-mode algebra — the standard family verifies and is irreducible
// for lambda in {1, 2, -3}, and generic alpha in {-2, 3, 1/2} certify the
// nilpotent ideal.
void criterion8() {
  bool pass = true;
  for (long lam : {1L, 2L, -3L}) {
    AAlphaModule u = qva::make_u_lambda(Scalar(lam));
    auto rep = qva::verify_aalpha(u, Scalar(-1));
    auto irr = qva::check_irreducible_2dim(u);
    if (!rep.pass || !irr.irreducible) pass = false;
  }
  for (const Scalar& a : {Scalar(-2), Scalar(3), Scalar(1, 2)}) {
    auto rep = qva::classify_aalpha(a);
    if (rep.case_name != "generic" || !rep.nilpotency ||
        !rep.nilpotency->certified)
      pass = false;
  }
  report(8, pass,
         "zero-mode algebra: U(lambda) verifies and is irreducible for "
         "lambda in {1,2,-3}; nilpotency certificates close for alpha in "
         "{-2,3,1/2}");
}

// A9: truncated induced module over the constant input g = -1 from U(2),
// degree bound 2: dimensions weakly decrease over the word-cap sweep
// {2,3,4}, stabilize at [2,6,14], and the graded relations hold each time.
void criterion9() {
  bool pass = true;
  ComponentTable t = qva::make_component_table(rf({-2, 5, -2}, {2, -5, 2}), 12);
  AAlphaModule u = qva::make_u_lambda(Scalar(2));
  std::vector<std::vector<long long>> sweep;
  for (int cap : {2, 3, 4}) {
    auto m = qva::build_verma(t, u, 2, cap);
    auto rel = qva::verify_graded_relations(t, m);
    sweep.push_back(m.dims);
    if (!rel.pass) pass = false;
    for (bool s : m.stabilized)
      if (!s) pass = false;
  }
  for (std::size_t i = 1; i < sweep.size(); ++i)
    for (std::size_t d = 0; d < sweep[i].size(); ++d)
      if (sweep[i][d] > sweep[i - 1][d]) pass = false;  // must not grow
  if (sweep.back() != std::vector<long long>{2, 6, 14}) pass = false;
  if (sweep[1] != sweep[2]) pass = false;  // stabilized across caps
  std::ostringstream os;
  os << "graded module from U(2) at degree bound 2: dims ["
     << sweep.back()[0] << "," << sweep.back()[1] << "," << sweep.back()[2]
     << "] weakly decreasing and stable over word caps {2,3,4}, graded "
        "relations pass each time";
  report(9, pass, os.str());
}

// A10: negative controls — seeded corruptions must be caught with witnesses.
void criterion10() {
  bool pass = true;
  std::string detail = "negative controls: ";

  AhContext plain(rf({-2, 1}, {1, -2}), 2, -2, 3, 16);
  plain.corrupt_h_for_testing(1, Scalar(1));
  auto rep1 = plain.verify_relations(2, -2, 3);
  bool c1 = !rep1.pass && !rep1.witnesses.empty();
  if (!c1) pass = false;
  detail += c1 ? "corrupted h caught with witness; " : "corrupted h MISSED; ";

  AhContext super(rf({0, 0, -1}, {1}), 2, -2, 3, 16);
  super.disable_parity_twist_for_testing();
  auto rep2 = super.verify_relations(2, -2, 3);
  bool c2 = !rep2.pass && !rep2.witnesses.empty();
  if (!c2) pass = false;
  detail += c2 ? "missing parity twist caught; " : "missing parity twist MISSED; ";

  AAlphaModule u = qva::make_u_lambda(Scalar(2));
  u.E0[0][0] = Scalar(1, 7);
  auto rep3 = qva::verify_aalpha(u, Scalar(-1));
  bool c3 = !rep3.pass && !rep3.witnesses.empty();
  if (!c3) pass = false;
  detail += c3 ? "perturbed zero-mode module caught with witness"
               : "perturbed zero-mode module MISSED";

  report(10, pass, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("[ACCEPT] %d/10 criteria pass\n", 10 - failures);
  return failures;
}
