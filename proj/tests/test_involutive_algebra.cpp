#include <doctest.h>

#include <algorithm>
#include <set>

#include "thr/error.hpp"
#include "thr/involutive_algebra.hpp"
#include "thr/oracle.hpp"
#include "thr/spec_format.hpp"

using namespace thr;

namespace {

std::string data(const char* name) { return std::string(THR_DATA_DIR) + "/" + name; }

std::vector<InvolutiveRing> small_rings() {
  std::vector<InvolutiveRing> out{rings::integers(), rings::f2(), rings::f4(), rings::f2_dual(), rings::gaussian()};
  for (long m : {3, 4, 6, 9}) out.push_back(rings::z_mod(m));
  for (long m : {0, 3, 5})
    for (long a : {-1, 0, 2})
      for (long b : {-2, 1}) out.push_back(rings::quadratic(m, a, b));
  return out;
}

IntVector random_element(oracle::Rng& rng, const InvolutiveRing& r) {
  IntVector v(r.n_gens());
  for (auto& x : v) x = oracle::uniform(rng, -4, 4);
  return v;
}

}  // namespace

TEST_CASE("ring axioms hold on random elements") {
  oracle::Rng rng(11);
  for (const auto& r : small_rings()) {
    const FgAbGroup& g = r.additive();
    for (int i = 0; i < 30; ++i) {
      const IntVector a = random_element(rng, r), b = random_element(rng, r), c = random_element(rng, r);
      CHECK(g.equal(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c))));
      CHECK(g.equal(r.mul(r.one(), a), a));
      CHECK(g.equal(r.mul(a, r.one()), a));
      IntVector bc(b);
      for (std::size_t k = 0; k < bc.size(); ++k) bc[k] += c[k];
      IntVector sum = r.mul(a, b);
      const IntVector ac = r.mul(a, c);
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += ac[k];
      CHECK(g.equal(r.mul(a, bc), sum));
      // Anti-multiplicative involution that squares to the identity.
      CHECK(g.equal(r.conj(r.mul(a, b)), r.mul(r.conj(b), r.conj(a))));
      CHECK(g.equal(r.conj(r.conj(a)), a));
    }
  }
}

TEST_CASE("frobenius is additive modulo 2") {
  oracle::Rng rng(12);
  for (const auto& r : small_rings()) {
    if (!r.has_trivial_involution()) continue;
    const InvolutiveRing r2 = mod2(r);
    const GroupHom f = frobenius(r2);
    for (int i = 0; i < 10; ++i) {
      const IntVector a = random_element(rng, r2);
      CHECK(r2.additive().equal(f.apply(a), r2.mul(a, a)));
    }
  }
}

TEST_CASE("ring spec files parse into the built-in rings") {
  const ParsedSpec z = load_spec(data("z.spec"));
  REQUIRE(z.ring);
  CHECK(z.ring->additive().isomorphic(FgAbGroup::free(1)));
  const ParsedSpec f4 = load_spec(data("f4.spec"));
  REQUIRE(f4.ring);
  const IntVector x = parse_element(*f4.ring, "x");
  // x^3 = 1 in F4.
  CHECK(f4.ring->additive().equal(f4.ring->mul(f4.ring->mul(x, x), x), f4.ring->one()));
  const ParsedSpec g = load_spec(data("gaussian.spec"));
  REQUIRE(g.ring);
  CHECK_FALSE(g.ring->has_trivial_involution());
  const IntVector i = parse_element(*g.ring, "i");
  CHECK(g.ring->mul(i, i) == IntVector{-1, 0});
  CHECK(parse_element(*g.ring, "2*1 + 3*i") == IntVector{2, 3});
  CHECK_THROWS_AS(parse_element(*g.ring, "j"), InputError);
}

TEST_CASE("malformed ring specs are rejected") {
  CHECK_THROWS_AS(load_spec(data("bad_table.spec")), InputError);
  CHECK_THROWS_AS(load_spec(data("no_such.spec")), InputError);
  CHECK_THROWS_AS(parse_spec("name X\ngenerators 1\norders 0\ntable 1 1 1\nunit 2\n"), InputError);
  CHECK_THROWS_AS(parse_spec("name X\nbogus line\n"), InputError);
}

TEST_CASE("monoid spec files parse") {
  const ParsedSpec n = load_spec(data("n.spec"));
  REQUIRE(n.monoid);
  CHECK(n.monoid->rank() == 1);
  const ParsedSpec s = load_spec(data("n2_swap.spec"));
  REQUIRE(s.monoid);
  CHECK(s.monoid->apply_involution(IntVector{1, 2}) == IntVector{2, 1});
}

TEST_CASE("ring homomorphisms are checked") {
  CHECK_NOTHROW(make_ring_hom(rings::f2(), rings::f4(), IntMatrix::from_rows({{1, 0}})));
  CHECK_THROWS_AS(make_ring_hom(rings::f2(), rings::f4(), IntMatrix::from_rows({{0, 1}})), InputError);
  CHECK_THROWS_AS(make_ring_hom(rings::integers(), rings::f2(), IntMatrix::from_rows({{0}})), InputError);
}

TEST_CASE("monoid membership agrees with bounded certificate enumeration") {
  const AffineMonoid m(2, {{2, 0}, {1, 1}, {0, 2}}, IntMatrix::from_rows({{0, 1}, {1, 0}}));
  std::set<IntVector> reachable;
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b)
      for (long c = 0; c <= 6; ++c) reachable.insert(IntVector{Integer(2 * a + b), Integer(b + 2 * c)});
  for (long x = -2; x <= 6; ++x)
    for (long y = -2; y <= 6; ++y) {
      const IntVector v{Integer(x), Integer(y)};
      const auto e = m.member(v);
      CAPTURE(x);
      CAPTURE(y);
      CHECK(e.has_value() == reachable.contains(v));
      if (e) CHECK(m.evaluate(e->certificate) == v);
    }
}

TEST_CASE("elements of a weight agree with brute force over a box") {
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  const IntMatrix total = IntMatrix::from_rows({{1}, {1}});
  for (long j = 0; j <= 6; ++j) {
    const auto got = elements_of_weight(n2, total, IntVector{Integer(j)});
    std::vector<IntVector> want;
    for (long a = 0; a <= j; ++a) want.push_back(IntVector{Integer(a), Integer(j - a)});
    std::vector<IntVector> values;
    for (const auto& e : got) values.push_back(e.value);
    CHECK(values == want);
  }
  const AffineMonoid z = AffineMonoid::integers();
  const AffineMonoid zn = AffineMonoid::product(z, AffineMonoid::naturals());
  CHECK_THROWS_AS(elements_of_weight(zn, IntMatrix::from_rows({{0}, {1}}), IntVector{1}), InfeasibleError);
  // Full-rank weights reduce to a membership test.
  CHECK(elements_of_weight(z, IntMatrix::identity(1), IntVector{-3}).size() == 1);
  CHECK_FALSE(positive_grading(z, IntMatrix::identity(1)));
  CHECK(positive_grading(n2, IntMatrix::identity(2)));
}

TEST_CASE("sigma orbits pair elements with their images") {
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  const auto window = elements_up_to_grade(n2, IntMatrix::identity(2), IntVector{1, 1}, 3);
  std::vector<IntVector> w;
  for (const auto& e : window) w.push_back(e.value);
  CHECK(w.size() == 10);
  std::size_t covered = 0;
  for (const auto& orbit : sigma_orbits(n2, w)) {
    CHECK((orbit.size() == 1 || orbit.size() == 2));
    CHECK(n2.apply_involution(orbit.front()) == orbit.back());
    covered += orbit.size();
  }
  CHECK(covered == w.size());
}

TEST_CASE("monoid constructor rejects bad involutions") {
  CHECK_THROWS_AS(AffineMonoid(1, {{1}}, IntMatrix::from_rows({{-1}})), InputError);
  CHECK_THROWS_AS(AffineMonoid(1, {{1}}, IntMatrix::from_rows({{2}})), InputError);
  CHECK_NOTHROW(AffineMonoid::integers_sigma());
}
