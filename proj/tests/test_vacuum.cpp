#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "qva/errors.hpp"
#include "qva/vacuum.hpp"

using qva::AhContext;
using qva::Error;
using qva::ErrorCode;
using qva::FockMonomial;
using qva::FockVector;
using qva::Gen;
using qva::Polynomial;
using qva::RationalFn;
using qva::Scalar;

namespace {

RationalFn rf(std::vector<long> num, std::vector<long> den) {
  std::vector<Scalar> n, d;
  for (long c : num) n.emplace_back(c);
  for (long c : den) d.emplace_back(c);
  return RationalFn::make(Polynomial(std::move(n)), Polynomial(std::move(d)));
}

const RationalFn g_one = rf({1}, {1});
const RationalFn g_z = rf({0, 1}, {1});
const RationalFn g_a = rf({-2, 1}, {1, -2});
const RationalFn g_b = rf({6, -5, 1}, {1, -5, 6});
const RationalFn g_sq = rf({0, 0, -1}, {1});
const RationalFn g_red = rf({-2, 5, -2}, {2, -5, 2});

FockVector vac(bool super) {
  return FockVector::unit(FockMonomial::vacuum(super));
}

FockVector unit(std::vector<int> e, std::vector<int> f, std::vector<int> psi,
                bool super = false) {
  FockMonomial m;
  m.e = std::move(e);
  m.f = std::move(f);
  m.psi = std::move(psi);
  m.super = super;
  m.validate();
  return FockVector::unit(m);
}

}  // namespace

TEST_CASE("variant selection follows the sign of h(0)") {
  CHECK(!AhContext(g_one, 2, -2, 3, 12).super());
  CHECK(!AhContext(g_z, 2, -2, 3, 12).super());
  CHECK(!AhContext(g_a, 2, -2, 3, 12).super());
  CHECK(AhContext(g_sq, 2, -2, 3, 12).super());
  CHECK(AhContext(g_red, 2, -2, 3, 12).super());
  CHECK(AhContext(g_sq, 2, -2, 3, 12).factorization().epsilon == -1);
}

TEST_CASE("retained h matches the independent exponential expansion") {
  AhContext ctx(g_a, 2, -2, 3, 12);
  auto want = oracle::rational_of_exp({oracle::rat(-2), oracle::rat(1)},
                                      {oracle::rat(1), oracle::rat(-2)}, 10);
  for (int k = 0; k < 10; ++k)
    CHECK(ctx.h().coeff(k).str() == oracle::str(want[k]));
}

TEST_CASE("constructor rejects a too-small series window") {
  CHECK_THROWS_AS(AhContext(g_a, 4, -4, 5, 2), Error);
  try {
    AhContext(g_a, 4, -4, 5, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
  }
  CHECK_THROWS_AS(AhContext(rf({1, 1}, {1}), 2, -2, 3, 12), Error);
}

TEST_CASE("dressed modes on the vacuum reproduce the zero-mode facts") {
  AhContext ctx(g_a, 3, -3, 4, 16);
  // e(0) f(-1) vac = psi(-1) vac, and higher e modes kill f(-1) vac.
  FockVector fv = ctx.apply_mode(Gen::F, -1, vac(false));
  CHECK(ctx.apply_mode(Gen::E, 0, fv) == unit({}, {}, {1}));
  CHECK(ctx.apply_mode(Gen::E, 1, fv).is_zero());
  CHECK(ctx.apply_mode(Gen::E, 2, fv).is_zero());
  // psi modes with m >= 0 annihilate low-degree vectors.
  FockVector ev = ctx.apply_mode(Gen::E, -1, vac(false));
  CHECK(ctx.apply_mode(Gen::Psi, 0, ev).is_zero());
  CHECK(ctx.apply_mode(Gen::Psi, 1, ev).is_zero());
  // e(m) e(-1) vac = 0 for m >= 1 (weight would drop below zero).
  CHECK(ctx.apply_mode(Gen::E, 2, ev).is_zero());
  // Degree-1 dressed vectors coincide with the undressed letters.
  CHECK(ev == unit({1}, {}, {}));
  CHECK(fv == unit({}, {1}, {}));
  CHECK(ctx.apply_mode(Gen::Psi, -1, vac(false)) == unit({}, {}, {1}));
}

TEST_CASE("dressing is trivial in the degenerate case g = 1") {
  AhContext ctx(g_one, 3, -3, 4, 16);
  for (int d = 0; d <= 3; ++d)
    for (const FockMonomial& m : qva::enumerate_basis(d, false))
      for (Gen g : {Gen::E, Gen::F, Gen::Psi})
        for (int mode = -3; mode <= 4; ++mode)
          CHECK(ctx.apply_mode(g, mode, FockVector::unit(m)) ==
                qva::apply_bar_mode(g, mode, m));
}

TEST_CASE("defining relations hold at desk scale for all six g") {
  for (const RationalFn* g : {&g_one, &g_z, &g_a, &g_b, &g_sq, &g_red}) {
    AhContext ctx(*g, 2, -2, 3, 16);
    auto rep = ctx.verify_relations(2, -2, 3);
    CHECK(rep.pass);
    CHECK(rep.checks > 0);
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("spanning vectors are independent with the predicted counts") {
  AhContext plain(g_a, 4, -4, 5, 20);
  auto rep = plain.verify_pbw_independence(4);
  CHECK(rep.pass);
  auto want = oracle::vacuum_counts(4, false);
  REQUIRE(rep.per_degree.size() == 5);
  for (int d = 0; d <= 4; ++d) {
    CHECK(rep.per_degree[d].count == want[d]);
    CHECK(rep.per_degree[d].rank == want[d]);
    CHECK(rep.per_degree[d].pass);
  }

  AhContext super(g_sq, 4, -4, 5, 20);
  auto srep = super.verify_pbw_independence(4);
  CHECK(srep.pass);
  auto swant = oracle::vacuum_counts(4, true);
  for (int d = 0; d <= 4; ++d) CHECK(srep.per_degree[d].rank == swant[d]);

  CHECK(plain.pbw_vectors(3).size() == 22);
  CHECK(super.pbw_vectors(3).size() == 16);
}

TEST_CASE("the grading derivation is compatible with modes and dressing") {
  for (const RationalFn* g : {&g_a, &g_sq}) {
    AhContext ctx(*g, 2, -2, 3, 16);
    auto rep = ctx.verify_derivation(2, -2, 3, 3);
    CHECK(rep.pass);
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("negative control: corrupting one h coefficient is caught") {
  AhContext ctx(g_a, 2, -2, 3, 16);
  ctx.corrupt_h_for_testing(1, Scalar(1));
  auto rep = ctx.verify_relations(2, -2, 3);
  CHECK(!rep.pass);
  REQUIRE(!rep.witnesses.empty());
  const auto& w = rep.witnesses.front();
  CHECK(!w.check.empty());
  CHECK(w.lhs_coeff != w.rhs_coeff);
}

TEST_CASE("negative control: the super variant needs the parity twist") {
  AhContext ctx(g_sq, 2, -2, 3, 16);
  ctx.disable_parity_twist_for_testing();
  auto rep = ctx.verify_relations(2, -2, 3);
  CHECK(!rep.pass);
  CHECK(!rep.witnesses.empty());
}
