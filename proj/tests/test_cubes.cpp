#include <doctest.h>

#include "thr/cubes.hpp"
#include "thr/dihedral.hpp"
#include "thr/error.hpp"
#include "thr/oracle.hpp"

using namespace thr;

namespace {

bool is_free(const FgAbGroup& g, std::size_t r) { return g.free_rank() == r && g.invariant_factors().empty(); }

bool same_homology(const std::map<long, FgAbGroup>& a, const std::map<long, FgAbGroup>& b) {
  for (const auto& [q, g] : a)
    if (!g.is_trivial() && (!b.contains(q) || !g.isomorphic(b.at(q)))) return false;
  for (const auto& [q, g] : b)
    if (!g.is_trivial() && (!a.contains(q) || !g.isomorphic(a.at(q)))) return false;
  return true;
}

ChainComplex circle_chains() { return normalized_chains(circle_model(3)); }

}  // namespace

TEST_CASE("a one-cube has the mapping fiber as total fiber") {
  oracle::Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const ChainMap f = oracle::random_poly_map(rng, 3);
    const CubeDiagram q = make_cube(1, {f.source, f.target}, [&](std::size_t, std::size_t) { return f.maps; });
    CHECK(same_homology(homology_table(total_fiber(q)), homology_table(mapping_fiber(f))));
  }
}

TEST_CASE("identity edges in any direction make the total fiber acyclic") {
  oracle::Rng rng(52);
  for (int i = 0; i < 20; ++i) {
    const std::size_t dim = static_cast<std::size_t>(1 + i % 2);
    const CubeDiagram f = oracle::random_poly_cube(rng, dim, 3);
    for (std::size_t k = 0; k <= dim; ++k) {
      const CubeDiagram g = cube_with_identity_edge(f, k);
      CHECK(g.dim == dim + 1);
      CHECK(is_acyclic(total_fiber(g)));
    }
  }
}

TEST_CASE("total fiber recursion on 50 random cubes") {
  oracle::Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = static_cast<std::size_t>(1 + i % 3);
    const CubeDiagram q = (i % 5 == 4) ? oracle::random_tensor_cube(rng, std::min<std::size_t>(dim, 2))
                                       : oracle::random_poly_cube(rng, dim, 3);
    const RecursionReport r = tfib_recursion_check(q);
    CAPTURE(i);
    CHECK(r.ok);
    CHECK(r.directions.size() == q.dim);
  }
}

TEST_CASE("faces and squares") {
  oracle::Rng rng(54);
  const CubeDiagram q = oracle::random_poly_cube(rng, 3, 2);
  const CubeDiagram f = face(q, 1, true);
  CHECK(f.dim == 2);
  CHECK(f.at(0).ranks == q.at(2).ranks);
  CHECK(f.at(3).ranks == q.at(7).ranks);
  CHECK_THROWS_AS(face(q, 3, false), InputError);
  // A square with a sign flipped on one edge does not commute.
  const ChainComplex z = concentrated(1, 0);
  CHECK_THROWS_AS(make_cube(2, {z, z, z, z},
                            [](std::size_t b, std::size_t k) {
                              return std::map<long, IntMatrix>{
                                  {0, IntMatrix::from_rows({{(b == 0 && k == 0) ? -1 : 1}})}};
                            }),
                  InputError);
}

TEST_CASE("tensor cubes: total fiber is the tensor of the fibers") {
  oracle::Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    std::vector<ChainMap> maps;
    for (int k = 0; k < 1 + i % 3; ++k) maps.push_back(oracle::random_poly_map(rng, 2));
    const SmashReport s = smash_cube_check(maps);
    CHECK_MESSAGE(s.ok, s.detail);
    CHECK(same_homology(s.fibers_tensor, s.total_fiber));
  }
}

TEST_CASE("exterior models are functorial") {
  oracle::Rng rng(56);
  for (int i = 0; i < 20; ++i) {
    const IntMatrix a = oracle::random_matrix(rng, 3, 3, 3), b = oracle::random_matrix(rng, 3, 3, 3);
    const ChainMap fa = torus_map(a), fb = torus_map(b), fab = torus_map(a * b);
    const ChainMap comp = compose(fa, fb);
    for (long q = 0; q <= 3; ++q) CHECK(comp.at(q) == fab.at(q));
    CHECK(fa.at(3)(0, 0) == determinant(a));
  }
  CHECK(torus_map(IntMatrix::from_rows({{1, 0}, {0, 3}})).at(2)(0, 0) == 3);
  CHECK(torus_map(IntMatrix::from_rows({{0, 1}, {1, 0}})).at(2)(0, 0) == -1);
  const auto t3 = homology_table(torus_model(3));
  CHECK(is_free(t3.at(1), 3));
  CHECK(is_free(t3.at(2), 3));
  CHECK(torus_model(3, 1).rank(0) == 0);
  CHECK(is_free(homology(smash_model(4), 4), 1));
}

TEST_CASE("cofiber of h in dimensions 1..4") {
  for (std::size_t d = 1; d <= 4; ++d) {
    const CofiberReport c = h_map_cofiber_check(d);
    CAPTURE(d);
    CHECK_MESSAGE(c.ok, c.detail);
    CHECK(is_free(c.homology.at(static_cast<long>(d)), 2));
  }
}

TEST_CASE("projective line: only weight zero survives") {
  const ProjectiveReport p = p1_report(3);
  CHECK(p.ok);
  CHECK(p.weights.size() == 7);
  for (const auto& w : p.weights) {
    if (w.weight[0] == 0) {
      CHECK(is_free(w.homology.at(0), 2));
    } else {
      CHECK(w.certified);
      for (const auto& [q, g] : w.homology) CHECK(g.is_trivial());
    }
  }
  CHECK_FALSE(p.substitutions.empty());
}

TEST_CASE("square of circle sums: rank of the combined matrix") {
  // Columns are images: X^2 -> X^4 along each edge.
  const IntMatrix m1 = IntMatrix::from_rows({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  const IntMatrix m2 = IntMatrix::from_rows({{1, 0}, {0, 1}, {0, 1}, {1, 0}});
  const IntMatrix both = m1.augment(m2);
  const auto diag = smith_diagonal(both);
  const CubeDiagram sq = psigma_square(m1, m2, circle_chains());
  const auto h = homology_table(total_fiber(sq));
  // The total fiber is the desuspended fiber of X^2 + X^2 -> X^4, so its
  // homology is governed by the kernel and cokernel of [m1 | m2] on H(X).
  const std::size_t corank = 4 - diag.size();
  std::size_t total = 0;
  for (const auto& [q, g] : h) total += g.free_rank();
  CHECK(total == 2 * 2 * corank);
  CHECK(tfib_recursion_check(sq).ok);
}

TEST_CASE("projective line with involution: summand limits") {
  const ProjectiveReport p = psigma_report();
  REQUIRE(p.summands.size() == 2);
  for (const auto& [name, h] : p.summands) {
    CAPTURE(name);
    CHECK(is_free(h.at(0), 1));
  }
}

TEST_CASE("projective plane and three-space") {
  const ProjectiveReport p2 = pn_report(2, 2);
  for (const auto& c : p2.checks) CHECK_MESSAGE(c.ok, (c.name + ": " + c.detail));
  CHECK(p2.weights.size() == 25);
  const ProjectiveReport p3 = pn_report(3, 2);
  CHECK(p3.ok);
  bool seen = false;
  for (const auto& w : p3.weights) {
    if (w.weight == IntVector{1, 0, -2}) {
      seen = true;
      CHECK(w.certified);
      for (const auto& [q, g] : w.homology) CHECK(g.is_trivial());
    }
    if (w.weight == IntVector{0, 0, 0}) CHECK(is_free(w.homology.at(0), 4));
  }
  CHECK(seen);
  CHECK_THROWS_AS(pn_report(5, 1), InputError);
}
