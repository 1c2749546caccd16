#pragma once

// Degreewise finite truncations of simplicial sets carrying some of: a cyclic
// operator t, a real involution w, and a levelwise group action (the output
// of edgewise subdivision). Simplices are addressed by index; each carries an
// integer label (for nerves, the concatenated tuple coordinates).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thr/involutive_algebra.hpp"

namespace thr {

using IndexMap = std::vector<std::size_t>;

struct TruncDihedralSet {
  std::size_t q_max = 0;
  std::vector<std::vector<IntVector>> simplices;
  /// face[q][i] : X_q -> X_{q-1}, for 1 <= q <= q_max, 0 <= i <= q.
  std::vector<std::vector<IndexMap>> face;
  /// degen[q][i] : X_q -> X_{q+1}, for q < q_max, 0 <= i <= q.
  std::vector<std::vector<IndexMap>> degen;
  /// rot[q] = t_q; empty without cyclic structure.
  std::vector<IndexMap> rot;
  /// inv[q] = w_q; empty without real structure.
  std::vector<IndexMap> inv;
  /// Levelwise action of a cyclic group of order action_order, commuting with
  /// faces and degeneracies; empty when absent.
  std::vector<IndexMap> action;
  std::size_t action_order = 0;
  /// No nondegenerate simplices above this degree, in any degree (not only
  /// up to q_max).
  std::optional<std::size_t> nondegenerate_bound;
  /// Models used in place of infinite objects, for the audit trail.
  std::vector<std::string> substitutions;

  std::size_t size(std::size_t q) const { return simplices[q].size(); }
  bool has_rotation() const { return !rot.empty(); }
  bool has_involution() const { return !inv.empty(); }
  bool has_action() const { return !action.empty(); }
  bool is_degenerate(std::size_t q, std::size_t x) const;
  std::vector<std::size_t> nondegenerate(std::size_t q) const;
  /// Index of the simplex with this label, if present.
  std::optional<std::size_t> find(std::size_t q, std::span<const Integer> label) const;
};

/// Tuples (x_0, ..., x_q) in M^{q+1} with x_0 + ... + x_q = v, flattened and
/// sorted. Parallel over the first slot.
std::vector<IntVector> weight_tuples(const AffineMonoid& m, std::size_t q, std::span<const Integer> v);
namespace reference {
std::vector<IntVector> weight_tuples(const AffineMonoid& m, std::size_t q, std::span<const Integer> v);
}

/// N^di(M; I) for a set of weights I closed under the involution. Throws
/// InfeasibleError when the pieces are not finite.
TruncDihedralSet dihedral_nerve_piece(const AffineMonoid& m, const std::vector<IntVector>& weights,
                                      std::size_t q_max);
/// The real nerve: tuples (x_1, ..., x_q) with lambda(x_1 + ... + x_q) <= budget
/// for a positive grading lambda invariant under the involution.
TruncDihedralSet real_nerve(const AffineMonoid& m, const Integer& budget, std::size_t q_max);
/// Delta^1 / boundary with w reversing and complementing; simplex k in degree q
/// is the sequence with k zeros, the basepoint has label 0.
TruncDihedralSet circle_model(std::size_t q_max);
TruncDihedralSet point(std::size_t q_max);

struct ValidationReport {
  bool ok = true;
  std::size_t checks = 0;
  std::string first_violation;
};
/// Every simplicial, cyclic, real, dihedral and action identity on every
/// simplex where both sides are defined.
ValidationReport validate_structure(const TruncDihedralSet& x);

/// (sd X)_q = X_{2q+1}, with the involution w_{2q+1} as levelwise action.
TruncDihedralSet sd_sigma(const TruncDihedralSet& x);
/// (sd_r X)_q = X_{r(q+1)-1}, with t^{q+1} generating a levelwise C_r action.
TruncDihedralSet sd_r(const TruncDihedralSet& x, std::size_t r);
/// Simplices fixed by the levelwise action. Throws CertificateError when a
/// structure map does not preserve them.
TruncDihedralSet fixed_subset(const TruncDihedralSet& x);

struct Pi0 {
  std::size_t count = 0;
  /// Vertex indices per component, components ordered by smallest vertex.
  std::vector<std::vector<std::size_t>> classes;
};
Pi0 pi0(const TruncDihedralSet& x);

/// Edges among the vertices [-b, b] for a given bound b.
using EdgeFamily = std::function<std::vector<std::pair<long, long>>(long b)>;
struct WindowedPi0 {
  bool stable = false;
  std::size_t count = 0;
  std::vector<std::size_t> counts;  ///< at B, B+1, B+2
  /// Component label of each vertex of [-B, B] at bound B.
  std::vector<std::size_t> labels;
};
/// Components on [-B, B], certified only when the bounds B, B+1, B+2 give the
/// same partition of [-B, B].
WindowedPi0 pi0_windowed(const EdgeFamily& edges, long bound);
/// Fixed edges (x1, x2, x1) of sd_sigma of the real nerve of Z, which join
/// x2 and 2 x1 + x2.
std::vector<std::pair<long, long>> sym_z_edges(long b);

struct IsoCheckReport {
  bool ok = true;
  std::vector<std::size_t> source_counts;
  std::vector<std::size_t> target_counts;
  std::string failure;
};
/// The r-fold repetition map from N^di(N; j)_q onto the C_r-fixed simplices of
/// (sd_r N^di(N; rj))_q, checked degreewise for q <= q_max together with faces,
/// degeneracies, t and w; and emptiness of the fixed simplices in weights
/// rj + k for 0 < k < r.
IsoCheckReport power_map_fixed_iso_check(std::size_t j, std::size_t r, std::size_t q_max);

/// The shuffle map N^di(M x L; X x Y) -> N^di(M; X) x N^di(L; Y), checked for
/// bijectivity and compatibility with every structure map.
IsoCheckReport shuffle_iso_check(const AffineMonoid& m, const AffineMonoid& l, const std::vector<IntVector>& x,
                                 const std::vector<IntVector>& y, std::size_t q_max);

}  // namespace thr
