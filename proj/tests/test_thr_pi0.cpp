#include <doctest.h>

#include "thr/error.hpp"
#include "thr/oracle.hpp"
#include "thr/thr_pi0.hpp"

using namespace thr;

namespace {

std::vector<InvolutiveRing> finite_rings() {
  std::vector<InvolutiveRing> out{rings::f2(), rings::f4(), rings::f2_dual()};
  for (long m = 3; m <= 8; ++m) out.push_back(rings::z_mod(m));
  for (long m : {2, 3})
    for (long a : {0, 1})
      for (long b : {0, 1, -1}) out.push_back(rings::quadratic(m, a, b));
  return out;
}

}  // namespace

TEST_CASE("integers: constant Mackey functor") {
  const Pi0Thr p = pi0_thr(rings::integers());
  const MackeyZ2& m = p.mackey.mackey;
  CHECK(m.e.isomorphic(FgAbGroup::free(1)));
  CHECK(m.g.isomorphic(FgAbGroup::free(1)));
  const Simplified s = simplify(m.g);
  const Integer res = s.from.then(m.res).matrix()(0, 0);
  const Integer tran = m.tran.then(s.to).matrix()(0, 0);
  CHECK(abs(res) == 1);
  CHECK(res * tran == 2);
}

TEST_CASE("fixed level order agrees with enumeration over finite rings") {
  for (const auto& r : finite_rings()) {
    CAPTURE(r.format(r.one()));
    CAPTURE(r.additive().describe());
    const Pi0Thr p = pi0_thr(r);
    REQUIRE(p.mackey.mackey.g.order());
    CHECK(*p.mackey.mackey.g.order() == oracle::g_level_order_by_enumeration(r));
    CHECK(p.mackey.mackey.e.isomorphic(r.additive()));
    CHECK(mackey_violation(p.mackey.mackey).empty());
  }
}

TEST_CASE("dual numbers over F2: fixed level (Z/2)^4") {
  const Pi0Thr p = pi0_thr(rings::f2_dual());
  CHECK(p.mackey.mackey.g.invariant_factors() == std::vector<Integer>{2, 2, 2, 2});
  CHECK(p.mackey.mackey.g.free_rank() == 0);
  const AlphaReport a = is_alpha_iso(rings::f2_dual());
  CHECK_FALSE(a.alpha_iso);
  CHECK_FALSE(a.frobenius_surjective);
}

TEST_CASE("alpha is an isomorphism exactly when Frobenius is onto") {
  for (const auto& r : {rings::f2(), rings::f4(), rings::f2_dual(), rings::z_mod(4), rings::quadratic(2, 0, 1)}) {
    const AlphaReport a = is_alpha_iso(r);
    CHECK(a.alpha_iso == a.frobenius_surjective);
  }
  CHECK(is_alpha_iso(rings::f4()).alpha_iso);
}

TEST_CASE("short exact sequence through the twisted square") {
  for (const auto& r : finite_rings()) {
    const SesReport s = ses_check(r);
    CAPTURE(r.additive().describe());
    CHECK(s.exact);
    CHECK(s.iota_injective);
  }
  CHECK(ses_check(rings::integers()).exact);
}

TEST_CASE("etale base change") {
  const BaseChangeReport f4 =
      verify_etale_base_change(make_ring_hom(rings::f2(), rings::f4(), IntMatrix::from_rows({{1, 0}})));
  CHECK(f4.iso);
  CHECK(f4.inverse.has_value());
  const BaseChangeReport dual =
      verify_etale_base_change(make_ring_hom(rings::f2(), rings::f2_dual(), IntMatrix::from_rows({{1, 0}})));
  CHECK_FALSE(dual.iso);
  CHECK_FALSE(dual.obstruction.empty());
  CHECK(dual.changed.g.invariant_factors() == std::vector<Integer>{2, 2});
  CHECK(dual.target.g.invariant_factors() == std::vector<Integer>{2, 2, 2, 2});
  const BaseChangeReport z6 =
      verify_etale_base_change(make_ring_hom(rings::integers(), rings::z_mod(6), IntMatrix::from_rows({{1}})));
  CHECK(z6.iso);
}

TEST_CASE("rings with a nontrivial involution are rejected") {
  CHECK_THROWS_AS(pi0_thr(rings::gaussian()), InputError);
}
