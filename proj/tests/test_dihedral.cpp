#include <doctest.h>

#include <algorithm>

#include "thr/dihedral.hpp"
#include "thr/error.hpp"
#include "thr/homology.hpp"
#include "thr/oracle.hpp"

using namespace thr;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(x);
  return v;
}

std::vector<std::size_t> nondegenerate_counts(const TruncDihedralSet& x) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= x.q_max; ++q) out.push_back(x.nondegenerate(q).size());
  return out;
}

}  // namespace

TEST_CASE("nerve of the naturals: simplices are the compositions of the weight") {
  const AffineMonoid n = AffineMonoid::naturals();
  for (long j = 0; j <= 5; ++j) {
    const TruncDihedralSet x = dihedral_nerve_piece(n, {iv({j})}, 4);
    for (std::size_t q = 0; q <= 4; ++q) {
      std::vector<IntVector> want;
      for (const auto& c : oracle::compositions(j, q)) {
        IntVector v;
        for (long e : c) v.push_back(e);
        want.push_back(v);
      }
      std::sort(want.begin(), want.end());
      CAPTURE(j);
      CAPTURE(q);
      CHECK(x.simplices[q] == want);
    }
  }
}

TEST_CASE("weight 2 of the naturals has nondegenerate counts 1, 2, 1, 0") {
  const TruncDihedralSet x = dihedral_nerve_piece(AffineMonoid::naturals(), {iv({2})}, 4);
  CHECK(nondegenerate_counts(x) == std::vector<std::size_t>{1, 2, 1, 0, 0});
  CHECK(x.nondegenerate_bound);
}

TEST_CASE("parallel weight tuples match the serial reference") {
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  const AffineMonoid m(2, {{2, 0}, {1, 1}, {0, 2}}, IntMatrix::from_rows({{0, 1}, {1, 0}}));
  for (std::size_t q = 0; q <= 3; ++q)
    for (const IntVector& v : {iv({2, 1}), iv({3, 3}), iv({0, 0}), iv({4, 2})}) {
      CHECK(weight_tuples(n2, q, v) == reference::weight_tuples(n2, q, v));
      CHECK(weight_tuples(m, q, v) == reference::weight_tuples(m, q, v));
    }
}

TEST_CASE("structure identities hold on generated objects") {
  const AffineMonoid n = AffineMonoid::naturals();
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  std::vector<TruncDihedralSet> xs{dihedral_nerve_piece(n, {iv({3})}, 5),
                                   dihedral_nerve_piece(n2, {iv({1, 2}), iv({2, 1})}, 4),
                                   dihedral_nerve_piece(n2, {iv({2, 2})}, 4),
                                   circle_model(5),
                                   point(4),
                                   real_nerve(n, 3, 4),
                                   sd_sigma(dihedral_nerve_piece(n, {iv({2})}, 5)),
                                   sd_r(dihedral_nerve_piece(n, {iv({2})}, 5), 2)};
  xs.push_back(fixed_subset(xs[6]));
  for (const auto& x : xs) {
    const ValidationReport r = validate_structure(x);
    CHECK_MESSAGE(r.ok, r.first_violation);
    CHECK(r.checks > 0);
  }
}

TEST_CASE("a corrupted face map is detected") {
  TruncDihedralSet x = dihedral_nerve_piece(AffineMonoid::naturals(), {iv({2})}, 3);
  std::swap(x.face[2][0][0], x.face[2][0][1]);
  CHECK_FALSE(validate_structure(x).ok);
  TruncDihedralSet y = circle_model(3);
  std::swap(y.inv[1][0], y.inv[1][1]);
  CHECK_FALSE(validate_structure(y).ok);
}

TEST_CASE("subdivision degrees") {
  const TruncDihedralSet x = dihedral_nerve_piece(AffineMonoid::naturals(), {iv({3})}, 7);
  const TruncDihedralSet s = sd_sigma(x);
  CHECK(s.q_max == 3);
  for (std::size_t q = 0; q <= 3; ++q) CHECK(s.size(q) == x.size(2 * q + 1));
  const TruncDihedralSet r3 = sd_r(x, 3);
  CHECK(r3.q_max == 1);
  CHECK(r3.action_order == 3);
  for (std::size_t q = 0; q <= 1; ++q) CHECK(r3.size(q) == x.size(3 * (q + 1) - 1));
}

TEST_CASE("sigma fixed points of the naturals nerve have two components") {
  const AffineMonoid n = AffineMonoid::naturals();
  for (long j = 1; j <= 5; ++j) {
    const Pi0 c = pi0(fixed_subset(sd_sigma(dihedral_nerve_piece(n, {iv({j})}, 3))));
    CAPTURE(j);
    CHECK(c.count == 2);
  }
  CHECK(pi0(fixed_subset(sd_sigma(dihedral_nerve_piece(n, {iv({0})}, 3)))).count == 1);
}

TEST_CASE("circle model") {
  const TruncDihedralSet c = circle_model(4);
  CHECK(nondegenerate_counts(c) == std::vector<std::size_t>{1, 1, 0, 0, 0});
  const auto h = homology_table(normalized_chains(c));
  CHECK(h.at(0).isomorphic(FgAbGroup::free(1)));
  CHECK(h.at(1).isomorphic(FgAbGroup::free(1)));
  CHECK(pi0(c).count == 1);
}

TEST_CASE("power maps onto subdivision fixed points") {
  for (std::size_t j = 0; j <= 3; ++j)
    for (std::size_t r = 1; r <= 3; ++r) {
      const IsoCheckReport rep = power_map_fixed_iso_check(j, r, 3);
      CAPTURE(j);
      CAPTURE(r);
      CHECK_MESSAGE(rep.ok, rep.failure);
      CHECK(rep.source_counts == rep.target_counts);
    }
}

TEST_CASE("shuffle maps are isomorphisms") {
  const AffineMonoid n = AffineMonoid::naturals();
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  CHECK(shuffle_iso_check(n, n2, {iv({1})}, {iv({1, 0}), iv({0, 1})}, 3).ok);
  CHECK(shuffle_iso_check(n, n, {iv({1})}, {iv({2})}, 3).ok);
  CHECK(shuffle_iso_check(n2, n, {iv({1, 1})}, {iv({1})}, 3).ok);
}

TEST_CASE("windowed components of the symmetric integers stabilize") {
  const WindowedPi0 w = pi0_windowed(sym_z_edges, 6);
  CHECK(w.stable);
  // x2 ~ 2 x1 + x2 preserves parity and reaches every vertex of that parity.
  CHECK(w.count == 2);
  for (long v = -6; v <= 6; ++v)
    CHECK((w.labels[static_cast<std::size_t>(v + 6)] == w.labels[static_cast<std::size_t>(v % 2 == 0 ? 6 : 7)]));
  CHECK_THROWS_AS(pi0_windowed(sym_z_edges, -1), InputError);
}

TEST_CASE("infinite pieces and bad weight sets are rejected") {
  CHECK_THROWS_AS(dihedral_nerve_piece(AffineMonoid::integers(), {iv({1})}, 3), InfeasibleError);
  CHECK_THROWS_AS(real_nerve(AffineMonoid::integers_sigma(), 2, 3), InfeasibleError);
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  CHECK_THROWS_AS(dihedral_nerve_piece(n2, {iv({1, 2})}, 3), InputError);
  CHECK_THROWS_AS(dihedral_nerve_piece(AffineMonoid::naturals(), {iv({1, 2})}, 3), InputError);
}
