#pragma once

// Finitely generated abelian groups and their homomorphisms, computed exactly
// over arbitrary-precision integers.
//
// Conventions used throughout the library:
//  * vectors are row vectors; a matrix with r rows and c columns maps Z^r to
//    Z^c by v -> v * M;
//  * a group is Z^n modulo the row lattice of its relation matrix;
//  * a homomorphism G -> H is an n_gens(G) x n_gens(H) matrix whose row i is
//    the image of generator i.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thr/kernels.hpp"

namespace thr {

using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Rows must all have `cols` entries.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix diagonal(std::span<const Integer> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const;
  std::span<const Integer> entries() const { return data_; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const Integer& k) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  /// Rows of *this followed by rows of `below`.
  IntMatrix stack(const IntMatrix& below) const;
  /// Columns of *this followed by columns of `right`.
  IntMatrix augment(const IntMatrix& right) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void append_row(std::span<const Integer> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector row_times(std::span<const Integer> v, const IntMatrix& m);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
/// Determinant by fraction-free elimination; square matrices only.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix S;  ///< diagonal with d_1 | d_2 | ... , nonnegative
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix V;  ///< unimodular, cols x cols
  IntMatrix V_inverse;
};

/// U * m * V = S.
SmithForm snf(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form, in divisibility order.
std::vector<Integer> smith_diagonal(const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  ///< row echelon, pivots positive, entries above pivots reduced
  IntMatrix U;  ///< unimodular with U * m = H
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite(const IntMatrix& m);

/// Basis (as rows) of {z : z * a = 0}.
IntMatrix left_kernel(const IntMatrix& a);

/// Some z with z * a = b, if one exists.
std::optional<IntVector> solve_left(const IntMatrix& a, std::span<const Integer> b);

/// A sublattice of Z^n held in Hermite normal form.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0);
  static Lattice span(const IntMatrix& generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  bool contains(std::span<const Integer> v) const;
  bool contains(const Lattice& other) const;
  bool operator==(const Lattice& other) const;

 private:
  std::size_t dim_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

class FgAbGroup {
 public:
  /// The trivial group on zero generators.
  FgAbGroup();
  /// Throws InputError when relations.cols() != n_gens.
  FgAbGroup(std::size_t n_gens, IntMatrix relations);

  static FgAbGroup free(std::size_t rank);
  static FgAbGroup cyclic(const Integer& order);
  /// Z/o_1 + ... with o_i = 0 meaning Z.
  static FgAbGroup from_orders(std::span<const Integer> orders);
  static FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

  std::size_t n_gens() const { return n_gens_; }
  const IntMatrix& relations() const { return relations_; }
  const Lattice& relation_lattice() const { return lattice_; }

  /// Invariant factors d_1 | d_2 | ... with every d_i >= 2.
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Number of elements, when finite.
  std::optional<Integer> order() const;

  bool is_zero(std::span<const Integer> v) const;
  bool equal(std::span<const Integer> a, std::span<const Integer> b) const;
  /// Coordinates in the Smith basis, each reduced modulo its factor. Two
  /// vectors name the same element iff their canonical coordinates agree.
  IntVector canonical(std::span<const Integer> v) const;
  /// Every element of a finite group, as generator coordinates.
  std::vector<IntVector> elements() const;
  IntVector unit_vector(std::size_t i) const;

  bool isomorphic(const FgAbGroup& other) const;
  bool same_presentation(const FgAbGroup& other) const;
  std::string describe() const;

  // Smith basis data: new coordinate i has order smith_orders()[i]
  // (0 means infinite, 1 means the coordinate is trivial).
  const std::vector<Integer>& smith_orders() const { return smith_orders_; }
  const IntMatrix& to_smith() const { return to_smith_; }
  const IntMatrix& from_smith() const { return from_smith_; }

 private:
  std::size_t n_gens_ = 0;
  IntMatrix relations_;
  Lattice lattice_;
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> smith_orders_;
  IntMatrix to_smith_;
  IntMatrix from_smith_;
};

/// Groups compare equal when isomorphic.
inline bool operator==(const FgAbGroup& a, const FgAbGroup& b) { return a.isomorphic(b); }

class GroupHom {
 public:
  GroupHom() = default;
  /// Checks that every relation of the source lands in the relations of the
  /// target; throws InputError otherwise.
  GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static GroupHom scalar(const FgAbGroup& g, const Integer& k);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(std::span<const Integer> v) const;
  /// `next` after `*this`.
  GroupHom then(const GroupHom& next) const;
  GroupHom operator+(const GroupHom& rhs) const;
  GroupHom operator-(const GroupHom& rhs) const;

  /// Equality as maps of groups (images agree modulo target relations).
  bool equals(const GroupHom& other) const;
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const { return is_injective() && is_surjective(); }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

struct Kernel {
  FgAbGroup group;
  GroupHom inclusion;
};

struct Cokernel {
  FgAbGroup group;
  GroupHom projection;
  /// Row i: a representative in the target of f for generator i of `group`.
  IntMatrix section;
};

Kernel kernel(const GroupHom& f);
Cokernel cokernel(const GroupHom& f);
FgAbGroup image(const GroupHom& f);

/// Lattice in Z^{n_gens(target)} of representatives of the image of f,
/// including the target relations.
Lattice image_lattice(const GroupHom& f);
/// Lattice of representatives of ker f, including the source relations.
Lattice kernel_lattice(const GroupHom& f);

/// The map Q -> Q' induced by f on quotients src.group = Q and tgt.group = Q',
/// where f maps the group src projects from to the group tgt projects from.
GroupHom induced_on_cokernels(const Cokernel& src, const GroupHom& f, const Cokernel& tgt);

/// Some h with h.then(through) == f, if one exists.
std::optional<GroupHom> lift(const GroupHom& f, const GroupHom& through);

/// Isomorphic group with one generator per nontrivial Smith coordinate,
/// together with mutually inverse maps.
struct Simplified {
  FgAbGroup group;
  GroupHom to;    ///< original -> simplified
  GroupHom from;  ///< simplified -> original
};
Simplified simplify(const FgAbGroup& g);

FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h);
/// f (x) g on tensor presentations; generator (i, j) has index i * n_gens(h) + j.
GroupHom tensor_hom(const GroupHom& f, const GroupHom& g);
/// Coordinates of x (x) y in tensor(g, h).
IntVector pure_tensor(std::span<const Integer> x, std::span<const Integer> y);

struct JointReport {
  std::size_t joint = 0;  ///< between maps joint and joint + 1
  bool image_in_kernel = false;
  bool kernel_in_image = false;
  std::string witness;  ///< offending generator when a containment fails
};

struct ExactnessReport {
  bool exact = true;
  std::vector<JointReport> joints;
};

/// im(f_i) == ker(f_{i+1}) for every consecutive pair; throws InputError on a
/// non-composable chain.
ExactnessReport is_exact(std::span<const GroupHom> seq);

std::string vector_to_string(std::span<const Integer> v);

}  // namespace thr
