#pragma once

// Mackey functors for Z/2: an underlying level e with involution w, a fixed
// level g, restriction g -> e and transfer e -> g.

#include <span>
#include <string>
#include <vector>

#include "thr/fgab.hpp"
#include "thr/involutive_algebra.hpp"

namespace thr {

struct MackeyZ2 {
  FgAbGroup e;
  FgAbGroup g;
  GroupHom w;
  GroupHom res;
  GroupHom tran;

  std::string describe() const;
};

/// Checks w^2 = id, res o tran = id + w, w o res = res and tran o w = tran.
/// Throws InputError naming the failed law and an offending generator.
MackeyZ2 make_mackey(FgAbGroup e, GroupHom w, FgAbGroup g, GroupHom res, GroupHom tran);
/// Re-checks the laws on an existing value; empty string when they hold.
std::string mackey_violation(const MackeyZ2& m);

struct MackeyHom {
  MackeyZ2 source;
  MackeyZ2 target;
  GroupHom f_e;
  GroupHom f_g;

  bool is_iso() const { return f_e.is_iso() && f_g.is_iso(); }
};

/// Checks compatibility with res, tran and w.
MackeyHom make_mackey_hom(const MackeyZ2& source, const MackeyZ2& target, GroupHom f_e, GroupHom f_g);
MackeyHom compose(const MackeyHom& f, const MackeyHom& g);
MackeyHom identity_hom(const MackeyZ2& m);

/// Levels (A, A), res = id, tran = 2, w = id.
MackeyZ2 constant_mackey(const FgAbGroup& a);
/// Levels (M, M^w), res the inclusion, tran x -> x + w(x).
MackeyZ2 fixed_point_mackey(const GroupHom& w);
/// Levels (M + M with swap, M), res diagonal, tran sum.
MackeyZ2 induced_mackey(const FgAbGroup& m);
MackeyZ2 burnside_mackey();

/// The unique extension of an equivariant f_e: M.e -> L.e to a map of Mackey
/// functors, for L with injective restriction (for example a fixed point
/// functor). Throws InputError when f_e is not equivariant or L.res is not
/// injective, CertificateError if no extension exists.
MackeyHom extend_underlying_hom(const MackeyZ2& m, const MackeyZ2& l, const GroupHom& f_e);

/// A Mackey functor that is levelwise a module over a ring A with trivial
/// involution, the action commuting with res, tran and w. `act_e[k]` and
/// `act_g[k]` are the actions of additive generator k of A.
struct MackeyModule {
  MackeyZ2 mackey;
  InvolutiveRing ring;
  std::vector<GroupHom> act_e;
  std::vector<GroupHom> act_g;
};

/// Checks the module axioms on generators and compatibility with the Mackey
/// structure maps. Throws InputError.
MackeyModule make_mackey_module(MackeyZ2 m, InvolutiveRing ring, std::vector<GroupHom> act_e,
                                std::vector<GroupHom> act_g);
/// The constant functor of a ring with trivial involution, acting on itself.
MackeyModule constant_module(const InvolutiveRing& a);

/// Levelwise X (x)_A B along h: A -> B, with the induced structure maps and
/// B acting on the right factor. The quotients present each level as a
/// quotient of X (x) B.
struct BaseChanged {
  MackeyModule module;
  Cokernel e_quotient;
  Cokernel g_quotient;
};
BaseChanged base_change_presented(const MackeyModule& m, const RingHom& h);
inline MackeyModule base_change(const MackeyModule& m, const RingHom& h) {
  return base_change_presented(m, h).module;
}
/// The comparison X -> X (x)_A B, x -> x (x) 1, levelwise.
MackeyHom base_change_unit(const MackeyModule& m, const RingHom& h, const BaseChanged& changed);

struct MackeyKernel {
  MackeyZ2 object;
  MackeyHom inclusion;
};
struct MackeyCokernel {
  MackeyZ2 object;
  MackeyHom projection;
};
MackeyKernel kernel(const MackeyHom& f);
MackeyCokernel cokernel(const MackeyHom& f);

struct MackeyExactness {
  bool exact = true;
  ExactnessReport e_level;
  ExactnessReport g_level;
};
MackeyExactness is_exact(std::span<const MackeyHom> seq);

}  // namespace thr
