#pragma once

// Brute-force reference computations and random instance generators used by
// the acceptance suite and the tests. Nothing here is used by the library.

#include <cstddef>
#include <random>
#include <vector>

#include "thr/cubes.hpp"
#include "thr/involutive_algebra.hpp"

namespace thr::oracle {

using Rng = std::mt19937_64;

/// Nonzero Smith diagonal (1s included) as quotients of gcds of k x k minors,
/// with minors by cofactor expansion.
std::vector<Integer> minor_gcd_invariants(const IntMatrix& m);

/// Order of (A (x) A)/T_A for a finite ring, with T_A generated by every
/// triple of ring elements rather than by generators.
Integer g_level_order_by_enumeration(const InvolutiveRing& a);

/// Tuples (x_0, ..., x_q) of naturals summing to j, by odometer.
std::vector<std::vector<long>> compositions(long j, std::size_t q);

long uniform(Rng& rng, long lo, long hi);
IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
FgAbGroup random_group(Rng& rng, std::size_t max_gens);
/// A signed permutation conjugated by an elementary matrix.
IntMatrix random_involution(Rng& rng, std::size_t n);

/// c0 + c1 a + c2 a^2 with small random coefficients.
IntMatrix random_polynomial(Rng& rng, const IntMatrix& a);

/// Z^r in degrees 0 and 1 with d_1 = p(A).
struct PolyFamily {
  IntMatrix a;
  ChainComplex complex;
};
PolyFamily random_poly_family(Rng& rng, std::size_t max_rank);
/// A chain map C -> D between two members of one family: components
/// s(A) p_D(A) in degree 0 and p_C(A) s(A) in degree 1.
ChainMap random_poly_map(Rng& rng, std::size_t max_rank);
/// Every entry one complex of a polynomial family; the edges in direction k
/// are one random polynomial p_k in the same matrix, so squares commute.
CubeDiagram random_poly_cube(Rng& rng, std::size_t dim, std::size_t max_rank);
/// Tensor cube of dim random polynomial maps.
CubeDiagram random_tensor_cube(Rng& rng, std::size_t dim);

}  // namespace thr::oracle
