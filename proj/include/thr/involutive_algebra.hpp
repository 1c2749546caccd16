#pragma once

// Commutative rings with involution whose additive group is finitely
// generated, and affine monoids (finitely generated submonoids of Z^n) with
// involution.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thr/fgab.hpp"

namespace thr {

class InvolutiveRing {
 public:
  InvolutiveRing() = default;
  /// `table[i][j]` is the product of additive generators i and j. `involution`
  /// row i is the image of generator i. Every ring axiom is checked on
  /// generators; a failure throws InputError naming the axiom.
  InvolutiveRing(FgAbGroup add, std::vector<std::vector<IntVector>> table, IntVector one,
                 IntMatrix involution, std::vector<std::string> names = {});

  const FgAbGroup& additive() const { return add_; }
  std::size_t n_gens() const { return add_.n_gens(); }
  const IntVector& one() const { return one_; }
  const GroupHom& involution() const { return w_; }
  const std::vector<std::string>& names() const { return names_; }
  const IntVector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  bool has_trivial_involution() const;

  IntVector mul(std::span<const Integer> a, std::span<const Integer> b) const;
  IntVector conj(std::span<const Integer> a) const { return w_.apply(a); }
  /// x -> a * x.
  GroupHom multiplication_by(std::span<const Integer> a) const;
  std::string format(std::span<const Integer> a) const;

 private:
  FgAbGroup add_;
  std::vector<std::vector<IntVector>> table_;
  IntVector one_;
  GroupHom w_;
  std::vector<std::string> names_;
};

/// A/2 on the same generators.
InvolutiveRing mod2(const InvolutiveRing& a);
/// The squaring map of a ring in which 2 = 0. Throws InputError otherwise.
GroupHom frobenius(const InvolutiveRing& a);

/// A ring homomorphism commuting with the involutions.
struct RingHom {
  InvolutiveRing source;
  InvolutiveRing target;
  GroupHom map;
};
/// Checks unit, multiplicativity and w-equivariance on generators.
RingHom make_ring_hom(const InvolutiveRing& source, const InvolutiveRing& target, IntMatrix images);

namespace rings {
InvolutiveRing integers();
/// Z/m[t]/(t^2 - a t - b), generators 1, t; m = 0 gives the integral version.
InvolutiveRing quadratic(const Integer& m, const Integer& a, const Integer& b);
InvolutiveRing z_mod(const Integer& m);
InvolutiveRing f2();
InvolutiveRing f4();
/// F_2[t]/(t^2).
InvolutiveRing f2_dual();
/// Z[i] with complex conjugation.
InvolutiveRing gaussian();
}  // namespace rings

struct MonoidElement {
  IntVector value;
  /// Multiplicity of each monoid generator; sums to `value`.
  std::vector<Integer> certificate;
};

class AffineMonoid {
 public:
  AffineMonoid() = default;
  /// Throws InputError unless the involution squares to the identity and maps
  /// every generator into the monoid.
  AffineMonoid(std::size_t rank, std::vector<IntVector> generators, IntMatrix involution);

  static AffineMonoid trivial();
  static AffineMonoid naturals();
  static AffineMonoid integers();
  /// Z with x -> -x.
  static AffineMonoid integers_sigma();
  /// N^n with the involution reversing coordinates (swap for n = 2).
  static AffineMonoid naturals_reversed(std::size_t n);
  static AffineMonoid product(const AffineMonoid& a, const AffineMonoid& b);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  const IntMatrix& involution() const { return w_; }
  IntVector apply_involution(std::span<const Integer> v) const { return row_times(v, w_); }

  /// Membership with a certificate, by breadth-first search inside the box
  /// |coords| <= |v|_inf + rank * max |g|_inf (complete by Steinitz).
  std::optional<MonoidElement> member(std::span<const Integer> v) const;
  IntVector evaluate(std::span<const Integer> certificate) const;

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> gens_;
  IntMatrix w_;
};

/// All x in M with x * weight = v, lexicographically sorted. The weight map
/// is a rank x m matrix. Throws InfeasibleError when the fiber cannot be shown
/// finite (some generator has weight zero, or no positive grading exists).
std::vector<MonoidElement> elements_of_weight(const AffineMonoid& m, const IntMatrix& weight,
                                              std::span<const Integer> v);

/// A functional lambda on the weight space with lambda(g * weight) >= 1 for
/// every generator g, found by search over {-3..3}^m.
std::optional<IntVector> positive_grading(const AffineMonoid& m, const IntMatrix& weight);

/// All x in M with lambda(x * weight) <= budget, lexicographically sorted.
std::vector<MonoidElement> elements_up_to_grade(const AffineMonoid& m, const IntMatrix& weight,
                                                std::span<const Integer> lambda, const Integer& budget);

/// Orbits {v, w(v)} of the involution on a finite window of elements; every
/// element of the window must have its partner in the window.
std::vector<std::vector<IntVector>> sigma_orbits(const AffineMonoid& m,
                                                 const std::vector<IntVector>& window);

}  // namespace thr
