#pragma once

// pi_0 THR(A) of a commutative ring A with trivial involution, as a Mackey
// functor: e-level A, g-level (A (x) A)/T_A with
//   res(x (x) y) = xy,  tran(a) = 2a (x) 1,  alpha(x) = 1 (x) x,
// where T_A is generated by x (x) a^2 y - a^2 x (x) y and x (x) 2ay - 2ax (x) y.

#include <optional>
#include <string>
#include <vector>

#include "thr/mackey.hpp"

namespace thr {

/// Additive generators of T_A in A (x) A coordinates, with x, y, a running over
/// additive generators of A. The family x (x) 2ay - 2ax (x) y is additive in a;
/// the family x (x) a^2 y - a^2 x (x) y satisfies F(a+b) = F(a) + F(b) + G(ab)
/// with G the second family, so generators suffice.
/// Throws InputError for a nontrivial involution.
std::vector<IntVector> t_ideal_generators(const InvolutiveRing& a);

struct Pi0Thr {
  InvolutiveRing ring;
  FgAbGroup tensor_square;
  std::vector<IntVector> t_generators;
  /// A (x) A -> g-level.
  Cokernel quotient;
  /// A acts on the g-level through the right factor.
  MackeyModule mackey;
  GroupHom alpha;
};

Pi0Thr pi0_thr(const InvolutiveRing& a);

/// A/2 (x) A/2 modulo phi(c) x (x) y - x (x) phi(c) y; the projection starts at
/// the tensor square of A/2 on the generators of A.
Cokernel frobenius_twisted_square(const InvolutiveRing& a);

struct SesReport {
  bool exact = false;
  bool iota_injective = false;
  FgAbGroup two_a;
  FgAbGroup middle;
  FgAbGroup twisted;
  /// 0 -> 2A -> (A (x) A)/T_A -> twisted square -> 0.
  std::vector<GroupHom> maps;
  ExactnessReport detail;
};
SesReport ses_check(const InvolutiveRing& a);

struct AlphaReport {
  bool alpha_iso = false;
  bool frobenius_surjective = false;
};
/// Throws CertificateError if the two predicates disagree.
AlphaReport is_alpha_iso(const InvolutiveRing& a);

struct BaseChangeReport {
  bool iso = false;
  MackeyZ2 changed;  ///< pi_0 THR(A) (x)_A B
  MackeyZ2 target;   ///< pi_0 THR(B)
  MackeyHom comparison;
  std::optional<MackeyHom> inverse;
  std::string obstruction;
};
/// Compares pi_0 THR(A) (x)_A B with pi_0 THR(B) along the canonical map
/// (x (x) y) (x) b -> h(x) (x) h(y) b.
BaseChangeReport verify_etale_base_change(const RingHom& h);

}  // namespace thr
