#include <doctest.h>

#include "thr/error.hpp"
#include "thr/fgab.hpp"
#include "thr/oracle.hpp"

using namespace thr;

namespace {

bool is_unimodular(const IntMatrix& m) {
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

bool is_diagonal_chain(const IntMatrix& s) {
  Integer prev = 1;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j && s(i, j) != 0) return false;
      if (i == j) {
        if (s(i, i) < 0) return false;
        if (s(i, i) != 0 && (prev == 0 || s(i, i) % prev != 0)) return false;
        if (prev != 0 && s(i, i) == 0) prev = 0;
        else if (s(i, i) != 0) prev = s(i, i);
      }
    }
  return true;
}

}  // namespace

TEST_CASE("smith diagonal agrees with gcds of minors on 500 random matrices") {
  oracle::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const auto r = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    const auto c = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    const IntMatrix m = oracle::random_matrix(rng, r, c, 7);
    CAPTURE(m.to_string());
    CHECK(smith_diagonal(m) == oracle::minor_gcd_invariants(m));
  }
}

TEST_CASE("smith form certificate: U m V = S with unimodular U, V") {
  oracle::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto r = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    const auto c = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    const IntMatrix m = oracle::random_matrix(rng, r, c, 9);
    const SmithForm f = snf(m);
    CAPTURE(m.to_string());
    CHECK(f.U * m * f.V == f.S);
    CHECK(is_unimodular(f.U));
    CHECK(is_unimodular(f.V));
    CHECK(f.V * f.V_inverse == IntMatrix::identity(c));
    CHECK(is_diagonal_chain(f.S));
  }
}

TEST_CASE("hermite form: U m = H, echelon with positive pivots") {
  oracle::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const IntMatrix m = oracle::random_matrix(rng, static_cast<std::size_t>(oracle::uniform(rng, 1, 5)),
                                              static_cast<std::size_t>(oracle::uniform(rng, 1, 5)), 6);
    const HermiteForm h = hermite(m);
    CHECK(h.U * m == h.H);
    CHECK(is_unimodular(h.U));
    CHECK(h.rank == h.pivot_cols.size());
    for (std::size_t k = 0; k < h.rank; ++k) {
      CHECK(h.H(k, h.pivot_cols[k]) > 0);
      for (std::size_t above = 0; above < k; ++above) {
        CHECK(h.H(above, h.pivot_cols[k]) >= 0);
        CHECK(h.H(above, h.pivot_cols[k]) < h.H(k, h.pivot_cols[k]));
      }
    }
    for (std::size_t k = h.rank; k < h.H.rows(); ++k)
      for (std::size_t j = 0; j < h.H.cols(); ++j) CHECK(h.H(k, j) == 0);
  }
}

TEST_CASE("left kernel is a saturated basis of the solutions") {
  oracle::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const IntMatrix a = oracle::random_matrix(rng, static_cast<std::size_t>(oracle::uniform(rng, 1, 5)),
                                              static_cast<std::size_t>(oracle::uniform(rng, 1, 4)), 4);
    const IntMatrix k = left_kernel(a);
    CHECK((k * a).is_zero());
    const auto rank = smith_diagonal(a).size();
    CHECK(k.rows() == a.rows() - rank);
    // Saturated: the kernel basis has trivial Smith cokernel torsion.
    for (const auto& d : smith_diagonal(k)) CHECK(d == 1);
  }
}

TEST_CASE("solve_left finds solutions exactly when they exist") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const IntMatrix a = oracle::random_matrix(rng, 3, 3, 3);
    const IntVector z{oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3)};
    const IntVector b = row_times(z, a);
    const auto s = solve_left(a, b);
    REQUIRE(s);
    CHECK(row_times(*s, a) == b);
  }
  const IntMatrix two = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK_FALSE(solve_left(two, IntVector{1, 0}));
}

TEST_CASE("groups: invariant factors, orders and isomorphism") {
  const FgAbGroup g(2, IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(g.isomorphic(FgAbGroup::cyclic(6)));
  CHECK(*g.order() == 6);
  CHECK(g.elements().size() == 6);
  const FgAbGroup h(3, IntMatrix::from_rows({{4, 6, 0}}));
  CHECK(h.free_rank() == 2);
  CHECK(h.invariant_factors() == std::vector<Integer>{2});
  CHECK(FgAbGroup::free(2).describe() == "Z^2");
  CHECK(FgAbGroup().is_trivial());
  CHECK_THROWS_AS(FgAbGroup(2, IntMatrix::from_rows({{1, 2, 3}})), InputError);
}

TEST_CASE("kernel and cokernel of multiplication by 2 on Z/4") {
  const FgAbGroup z4 = FgAbGroup::cyclic(4);
  const GroupHom two = GroupHom::scalar(z4, 2);
  CHECK(kernel(two).group.isomorphic(FgAbGroup::cyclic(2)));
  CHECK(cokernel(two).group.isomorphic(FgAbGroup::cyclic(2)));
  CHECK(image(two).isomorphic(FgAbGroup::cyclic(2)));
  CHECK_FALSE(two.is_injective());
  CHECK_THROWS_AS(GroupHom(FgAbGroup::cyclic(2), FgAbGroup::free(1), IntMatrix::from_rows({{1}})), InputError);
}

TEST_CASE("exactness of 0 -> Z -2-> Z -> Z/2 -> 0") {
  const FgAbGroup z = FgAbGroup::free(1), z2 = FgAbGroup::cyclic(2);
  const std::vector<GroupHom> seq{GroupHom::zero(FgAbGroup(), z), GroupHom::scalar(z, 2),
                                  GroupHom(z, z2, IntMatrix::from_rows({{1}})), GroupHom::zero(z2, FgAbGroup())};
  CHECK(is_exact(seq).exact);
  const std::vector<GroupHom> bad{GroupHom::scalar(z, 3), GroupHom(z, z2, IntMatrix::from_rows({{1}}))};
  CHECK_FALSE(is_exact(bad).exact);
}

TEST_CASE("tensor products of cyclic groups") {
  CHECK(tensor(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6)).isomorphic(FgAbGroup::cyclic(2)));
  CHECK(tensor(FgAbGroup::free(2), FgAbGroup::cyclic(3)).isomorphic(
      FgAbGroup::direct_sum(FgAbGroup::cyclic(3), FgAbGroup::cyclic(3))));
}

TEST_CASE("determinant agrees with cofactor expansion") {
  oracle::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const IntMatrix m = oracle::random_matrix(rng, n, n, 5);
    const auto inv = oracle::minor_gcd_invariants(m);
    Integer prod = 1;
    for (const auto& d : inv) prod *= d;
    const Integer det = determinant(m);
    CHECK(abs(det) == (inv.size() == n ? prod : Integer(0)));
  }
}

TEST_CASE("parallel kernels agree with the serial references") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t m = 40 + trial * 7, k = 35, n = 50;
    std::vector<Integer> a(m * k), b(k * n), c1(m * n), c2(m * n);
    for (auto& x : a) x = oracle::uniform(rng, -1000, 1000);
    for (auto& x : b) x = oracle::uniform(rng, -1000, 1000);
    kernels::gemm(m, k, n, a, b, c1);
    kernels::reference::gemm(m, k, n, a, b, c2);
    CHECK(c1 == c2);
    std::vector<Integer> y1(10000), y2, x(10000);
    for (auto& v : x) v = oracle::uniform(rng, -50, 50);
    for (auto& v : y1) v = oracle::uniform(rng, -50, 50);
    y2 = y1;
    const Integer s = oracle::uniform(rng, -9, 9);
    kernels::axpy(y1, s, x);
    kernels::reference::axpy(y2, s, x);
    CHECK(y1 == y2);
  }
}

TEST_CASE("smith form of larger matrices with large entries") {
  oracle::Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto n = static_cast<std::size_t>(oracle::uniform(rng, 12, 20));
    IntMatrix m = oracle::random_matrix(rng, n, n, 10000);
    // Low rank part so the diagonal has zeros and nontrivial divisors.
    const IntMatrix b = oracle::random_matrix(rng, n, 4, 30) * oracle::random_matrix(rng, 4, n, 30);
    m = (i % 2 == 0) ? b.scaled(6) : m;
    const SmithForm f = snf(m);
    CHECK(f.U * m * f.V == f.S);
    CHECK(is_diagonal_chain(f.S));
    std::vector<Integer> diag;
    for (std::size_t k = 0; k < n; ++k)
      if (f.S(k, k) != 0) diag.push_back(f.S(k, k));
    CHECK(diag == smith_diagonal(m));
  }
}
