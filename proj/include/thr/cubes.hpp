#pragma once

// Strict n-cubes of chain complexes, their punctured limits and total fibers,
// exterior-algebra torus models, and the assembled weight-by-weight
// computations for projective lines and spaces.
//
// Vertex b of an n-cube is a bitmask; bit k set means coordinate k is 1.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thr/homology.hpp"

namespace thr {

struct CubeDiagram {
  std::size_t dim = 0;
  std::vector<ChainComplex> entries;  ///< 2^dim entries
  /// edges[b][k], for bit k clear in b: entries[b] -> entries[b | 1 << k].
  std::vector<std::vector<ChainMap>> edges;
  std::vector<std::string> substitutions;

  const ChainComplex& at(std::size_t b) const { return entries[b]; }
  const ChainMap& edge(std::size_t b, std::size_t k) const { return edges[b][k]; }
};

/// `edge(b, k)` supplies the component matrices of each edge. Throws InputError
/// when an edge is not a chain map or a square does not commute.
using EdgeMatrices = std::function<std::map<long, IntMatrix>(std::size_t b, std::size_t k)>;
CubeDiagram make_cube(std::size_t dim, std::vector<ChainComplex> entries, const EdgeMatrices& edge);

/// The (dim-1)-cube with coordinate k fixed to `value`.
CubeDiagram face(const CubeDiagram& q, std::size_t k, bool value);
/// The (dim+1)-cube that is `f` on both faces of a new coordinate k, joined by
/// identity edges in direction k.
CubeDiagram cube_with_identity_edge(const CubeDiagram& f, std::size_t k);
CubeDiagram direct_sum(const CubeDiagram& a, const CubeDiagram& b);

/// Total complex of the punctured cube: the sum over b != 0 of
/// entries[b] shifted down by |b| - 1.
ChainComplex punctured_limit(const CubeDiagram& q);
/// entries[0] -> punctured_limit(q), the sum of the edges out of 0.
ChainMap limit_comparison(const CubeDiagram& q);
ChainComplex total_fiber(const CubeDiagram& q);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RecursionReport {
  bool ok = true;
  std::vector<Check> directions;
};
/// For each direction k: tfib(q) -> tfib(face k=0) -> tfib(face k=1) is a fiber
/// sequence, checked by exactness of the long exact sequence of the induced
/// map and by comparing H(tfib q) with H(fib) degreewise.
RecursionReport tfib_recursion_check(const CubeDiagram& q);

/// The cube b -> X_{b_1,1} (x) ... (x) X_{b_n,n} with tensor products of the
/// maps and identities as edges.
CubeDiagram tensor_cube(const std::vector<ChainMap>& maps);
struct SmashReport {
  bool ok = true;
  std::map<long, FgAbGroup> fibers_tensor;  ///< H(fib f_1 (x) ... (x) fib f_n)
  std::map<long, FgAbGroup> total_fiber;    ///< H(tfib of the tensor cube)
  std::string detail;
};
SmashReport smash_cube_check(const std::vector<ChainMap>& maps);

/// Exterior model of the d-torus: degree q has basis the q-subsets of {0..d-1}
/// in lexicographic order, zero differential. Degrees below min_degree are
/// dropped (min_degree = 1 gives the reduced model).
ChainComplex torus_model(std::size_t d, std::size_t min_degree = 0);
/// Lambda(A) between exterior models, for A : Z^a -> Z^b (a x b, rows are
/// images); entries are the minors of A.
ChainMap torus_map(const IntMatrix& a, std::size_t min_degree = 0);
/// Top exterior degree only: Z in degree d.
ChainComplex smash_model(std::size_t d);

struct CofiberReport {
  bool ok = true;
  std::size_t d = 0;
  std::map<long, FgAbGroup> homology;
  std::string detail;
};
/// Cofiber of h : (S^sigma)^{d-1} -> (S^sigma)^d, (x) -> (x, -(sum x)), on
/// smash models; expects Z^2 in degree d and nothing else.
CofiberReport h_map_cofiber_check(std::size_t d);

struct WeightEntry {
  IntVector weight;
  std::string method;  ///< "structural" or "chain"
  bool certified = false;
  std::map<long, FgAbGroup> homology;
  std::vector<std::string> substitutions;
};

struct ProjectiveReport {
  std::string space;
  bool ok = true;
  std::vector<WeightEntry> weights;
  std::vector<Check> checks;
  /// Named summands of the answer with their underlying homology.
  std::vector<std::pair<std::string, std::map<long, FgAbGroup>>> summands;
  /// Audit trail of model substitutions, in order of first use.
  std::vector<std::string> substitutions;

  void add_check(std::string name, bool ok, std::string detail = {});
  void note_substitutions(const std::vector<std::string>& subs);
};

/// Weights -J..J of the projective line over the sphere.
ProjectiveReport p1_report(long window);

/// The square for the projective line with involution, built from the two
/// 4 x 2 matrices (columns are images). `m1` is the right vertical map and
/// `m2` the lower horizontal one; `x` is the complex both are tensored with.
CubeDiagram psigma_square(const IntMatrix& m1, const IntMatrix& m2, const ChainComplex& x);
ProjectiveReport psigma_report();

/// Weights with |v|_inf <= window of P^n, 1 <= n <= 4.
ProjectiveReport pn_report(std::size_t n, long window);

}  // namespace thr
