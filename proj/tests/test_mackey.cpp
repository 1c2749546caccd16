#include <doctest.h>

#include "thr/error.hpp"
#include "thr/mackey.hpp"
#include "thr/oracle.hpp"
#include "thr/thr_pi0.hpp"

using namespace thr;

namespace {

std::vector<MackeyZ2> random_functors(oracle::Rng& rng, int each) {
  std::vector<MackeyZ2> out;
  for (int i = 0; i < each; ++i) {
    out.push_back(constant_mackey(oracle::random_group(rng, 3)));
    out.push_back(induced_mackey(oracle::random_group(rng, 3)));
    const auto n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const FgAbGroup g = FgAbGroup::free(n);
    out.push_back(fixed_point_mackey(GroupHom(g, g, oracle::random_involution(rng, n))));
  }
  return out;
}

}  // namespace

TEST_CASE("double coset law holds on 240 generated functors") {
  oracle::Rng rng(31);
  const auto all = random_functors(rng, 80);
  CHECK(all.size() >= 200);
  for (const auto& m : all) {
    CAPTURE(m.describe());
    CHECK(mackey_violation(m).empty());
    // Independent check of res o tran = 1 + w on every generator.
    for (std::size_t i = 0; i < m.e.n_gens(); ++i) {
      const IntVector x = m.e.unit_vector(i);
      IntVector want = m.w.apply(x);
      for (std::size_t k = 0; k < want.size(); ++k) want[k] += x[k];
      CHECK(m.e.equal(m.res.apply(m.tran.apply(x)), want));
    }
  }
}

TEST_CASE("kernels and cokernels of random maps are Mackey functors") {
  oracle::Rng rng(32);
  for (int i = 0; i < 40; ++i) {
    const FgAbGroup a = oracle::random_group(rng, 2);
    const Integer k = oracle::uniform(rng, -3, 3);
    const MackeyZ2 m = constant_mackey(a);
    const MackeyHom f = make_mackey_hom(m, m, GroupHom::scalar(m.e, k), GroupHom::scalar(m.g, k));
    const MackeyKernel ker = kernel(f);
    const MackeyCokernel cok = cokernel(f);
    CHECK(mackey_violation(ker.object).empty());
    CHECK(mackey_violation(cok.object).empty());
    const std::vector<MackeyHom> seq{ker.inclusion, f, cok.projection};
    CHECK(is_exact(seq).exact);
  }
}

TEST_CASE("named functors have the expected levels") {
  const MackeyZ2 c = constant_mackey(FgAbGroup::free(1));
  CHECK(c.tran.matrix()(0, 0) == 2);
  CHECK(c.res.matrix()(0, 0) == 1);
  const MackeyZ2 ind = induced_mackey(FgAbGroup::cyclic(3));
  CHECK(ind.e.isomorphic(FgAbGroup::from_orders(std::vector<Integer>{3, 3})));
  CHECK(ind.g.isomorphic(FgAbGroup::cyclic(3)));
  const FgAbGroup z2 = FgAbGroup::free(2);
  const MackeyZ2 swap = fixed_point_mackey(GroupHom(z2, z2, IntMatrix::from_rows({{0, 1}, {1, 0}})));
  CHECK(swap.g.isomorphic(FgAbGroup::free(1)));
  const MackeyZ2 sign = fixed_point_mackey(GroupHom::scalar(FgAbGroup::free(1), -1));
  CHECK(sign.g.is_trivial());
  const MackeyZ2 b = burnside_mackey();
  CHECK(b.g.isomorphic(FgAbGroup::free(2)));
  CHECK(mackey_violation(b).empty());
}

TEST_CASE("law violations are reported") {
  const FgAbGroup z = FgAbGroup::free(1);
  CHECK_THROWS_AS(make_mackey(z, GroupHom::identity(z), z, GroupHom::identity(z), GroupHom::identity(z)),
                  InputError);
  CHECK_THROWS_AS(make_mackey(z, GroupHom::scalar(z, 2), z, GroupHom::identity(z), GroupHom::scalar(z, 3)),
                  InputError);
  const MackeyZ2 c = constant_mackey(z);
  CHECK_THROWS_AS(make_mackey_hom(c, c, GroupHom::scalar(z, 2), GroupHom::scalar(z, 3)), InputError);
}

TEST_CASE("equivariant maps extend uniquely into fixed point functors") {
  const FgAbGroup z2 = FgAbGroup::free(2);
  const MackeyZ2 l = fixed_point_mackey(GroupHom(z2, z2, IntMatrix::from_rows({{0, 1}, {1, 0}})));
  const MackeyZ2 m = induced_mackey(FgAbGroup::free(1));
  const MackeyHom f = extend_underlying_hom(m, l, GroupHom::identity(z2));
  CHECK(f.f_g.is_iso());
  CHECK_THROWS_AS(extend_underlying_hom(m, l, GroupHom(z2, z2, IntMatrix::from_rows({{1, 0}, {0, 2}}))),
                  InputError);
}

TEST_CASE("base change along the identity is an isomorphism") {
  for (const auto& r : {rings::integers(), rings::f2(), rings::f4(), rings::z_mod(6)}) {
    const MackeyModule m = pi0_thr(r).mackey;
    const RingHom id = make_ring_hom(r, r, IntMatrix::identity(r.n_gens()));
    const BaseChanged bc = base_change_presented(m, id);
    CHECK(base_change_unit(m, id, bc).is_iso());
  }
}

TEST_CASE("composition of Mackey maps is associative and unital") {
  const MackeyZ2 c = constant_mackey(FgAbGroup::cyclic(12));
  const MackeyHom f = make_mackey_hom(c, c, GroupHom::scalar(c.e, 5), GroupHom::scalar(c.g, 5));
  const MackeyHom g = make_mackey_hom(c, c, GroupHom::scalar(c.e, 7), GroupHom::scalar(c.g, 7));
  CHECK(compose(f, g).is_iso());
  CHECK(compose(identity_hom(c), f).f_e.equals(f.f_e));
  CHECK(compose(compose(f, g), f).f_g.equals(compose(f, compose(g, f)).f_g));
}
