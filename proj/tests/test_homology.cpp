#include <doctest.h>

#include "thr/dihedral.hpp"
#include "thr/error.hpp"
#include "thr/homology.hpp"
#include "thr/oracle.hpp"

using namespace thr;

namespace {

bool is_free(const FgAbGroup& g, std::size_t r) { return g.free_rank() == r && g.invariant_factors().empty(); }

ChainComplex circle_chains() { return normalized_chains(circle_model(3)); }

// Betti numbers by rank counting over Q, from the Smith diagonals of the
// boundaries, independent of the homology code path.
long rational_betti(const ChainComplex& c, long q) {
  const long rk_in = static_cast<long>(smith_diagonal(c.d(q + 1)).size());
  const long rk_out = static_cast<long>(smith_diagonal(c.d(q)).size());
  return static_cast<long>(c.rank(q)) - rk_out - rk_in;
}

long euler(const ChainComplex& c) {
  long chi = 0;
  for (const auto& [q, r] : c.ranks) chi += (q % 2 == 0 ? 1 : -1) * rational_betti(c, q);
  return chi;
}

}  // namespace

TEST_CASE("nerve of the naturals has the homology of a circle in positive weight") {
  const AffineMonoid n = AffineMonoid::naturals();
  for (long j = 1; j <= 5; ++j) {
    const auto h = homology_table(normalized_chains(dihedral_nerve_piece(n, {IntVector{Integer(j)}}, 6)));
    CAPTURE(j);
    CHECK(is_free(h.at(0), 1));
    CHECK(is_free(h.at(1), 1));
    for (const auto& [q, g] : h)
      if (q > 1) CHECK(g.is_trivial());
  }
  const auto h0 = homology_table(normalized_chains(dihedral_nerve_piece(n, {IntVector{0}}, 3)));
  CHECK(is_free(h0.at(0), 1));
}

TEST_CASE("circle and torus") {
  const ChainComplex s = circle_chains();
  CHECK(is_free(homology(s, 0), 1));
  CHECK(is_free(homology(s, 1), 1));
  const ChainComplex t = tensor_product(s, s);
  CHECK(is_free(homology(t, 0), 1));
  CHECK(is_free(homology(t, 1), 2));
  CHECK(is_free(homology(t, 2), 1));
  CHECK_FALSE(boundary_squared_violation(t));
}

TEST_CASE("fiber of multiplication by two") {
  const ChainComplex z = concentrated(1, 0);
  const ChainMap two = make_chain_map(z, z, {{0, IntMatrix::from_rows({{2}})}});
  const ChainComplex f = mapping_fiber(two);
  CHECK(homology(f, 0).is_trivial());
  CHECK(homology(f, -1).isomorphic(FgAbGroup::cyclic(2)));
  CHECK(les_check(two).exact);
  CHECK(is_acyclic(mapping_fiber(identity_map(circle_chains()))));
}

TEST_CASE("mapping fibers of random maps: d^2 = 0, long exact sequence, Euler characteristic") {
  oracle::Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    ChainMap f = oracle::random_poly_map(rng, 3);
    if (i % 4 == 3) f = tensor_map(f, oracle::random_poly_map(rng, 2));
    const ChainComplex fib = mapping_fiber(f);
    CHECK_FALSE(boundary_squared_violation(fib));
    CHECK(les_check(f).exact);
    const long chi_fib = euler(fib), chi_c = euler(f.source), chi_d = euler(f.target);
    CHECK(chi_fib == chi_c - chi_d);
    for (const auto& [q, g] : homology_table(fib)) CHECK(static_cast<long>(g.free_rank()) == rational_betti(fib, q));
  }
}

TEST_CASE("shift, sum and tensor bookkeeping") {
  const ChainComplex s = circle_chains();
  const ChainComplex s3 = shift(s, 3);
  CHECK(is_free(homology(s3, 3), 1));
  CHECK(is_free(homology(s3, 4), 1));
  const ChainComplex ss = direct_sum(s, s);
  CHECK(is_free(homology(ss, 1), 2));
  CHECK(homology_table(tensor_product(unit_complex(), s)).size() == homology_table(s).size());
  const ChainMap id = identity_map(s);
  CHECK(compose(id, id).at(1) == id.at(1));
  CHECK(zero_map(s, s).at(0).is_zero());
}

TEST_CASE("chain maps must commute with the differentials") {
  const ChainComplex s = circle_chains();
  CHECK_THROWS_AS(make_chain_map(concentrated(1, 0), concentrated(1, 1), {{0, IntMatrix::from_rows({{1}})}}),
                  InputError);
  ChainComplex bad;
  bad.set_rank(0, 1);
  bad.set_rank(1, 1);
  bad.set_rank(2, 1);
  bad.set_d(1, IntMatrix::from_rows({{1}}));
  bad.set_d(2, IntMatrix::from_rows({{1}}));
  CHECK(boundary_squared_violation(bad));
  CHECK_THROWS_AS(homology(bad, 1), CertificateError);
  CHECK_THROWS_AS(bad.set_rank(3, 2, {"a"}), InputError);
  (void)s;
}

TEST_CASE("homology beyond the valid range throws") {
  const TruncDihedralSet x = dihedral_nerve_piece(AffineMonoid::naturals(), {IntVector{3}}, 7);
  const ChainComplex c = normalized_chains(sd_sigma(x));
  CHECK(c.valid_hi == static_cast<long>(sd_sigma(x).q_max) - 1);
  CHECK_NOTHROW(homology(c, c.valid_hi));
  CHECK_THROWS_AS(homology(c, c.valid_hi + 1), InputError);
  CHECK_THROWS_AS(is_acyclic(c), InputError);
}

TEST_CASE("induced maps on homology") {
  const ChainComplex s = circle_chains();
  const ChainMap two = make_chain_map(s, s, {{0, IntMatrix::from_rows({{2}})}, {1, IntMatrix::from_rows({{2}})}});
  const HomologyGroup h1 = homology_group(s, 1);
  const GroupHom g = induced_map(two, h1, h1);
  CHECK(g.equals(GroupHom::scalar(h1.group, 2)));
  CHECK(describe_homology(homology_table(s)).find("Z") != std::string::npos);
}
