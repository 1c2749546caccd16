#include "thr/thr_pi0.hpp"

#include "thr/error.hpp"

namespace thr {

namespace {

IntVector difference(IntVector a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

IntMatrix rows_matrix(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Cokernel quotient_by(const FgAbGroup& x, const std::vector<IntVector>& rows) {
  return cokernel(GroupHom(FgAbGroup::free(rows.size()), x, rows_matrix(rows, x.n_gens())));
}

}  // namespace

std::vector<IntVector> t_ideal_generators(const InvolutiveRing& a) {
  if (!a.has_trivial_involution()) throw InputError("pi0 THR: the ring must have trivial involution");
  const std::size_t n = a.n_gens();
  std::vector<IntVector> out;
  for (std::size_t k = 0; k < n; ++k) {
    const IntVector ek = a.additive().unit_vector(k);
    const IntVector sq = a.mul(ek, ek);
    IntVector two = ek;
    two[k] = 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const IntVector x = a.additive().unit_vector(i);
        const IntVector y = a.additive().unit_vector(j);
        out.push_back(difference(pure_tensor(x, a.mul(sq, y)), pure_tensor(a.mul(sq, x), y)));
        out.push_back(difference(pure_tensor(x, a.mul(two, y)), pure_tensor(a.mul(two, x), y)));
      }
  }
  return out;
}

Pi0Thr pi0_thr(const InvolutiveRing& a) {
  const FgAbGroup& add = a.additive();
  const std::size_t n = a.n_gens();
  Pi0Thr p{a, tensor(add, add), t_ideal_generators(a), {}, {}, {}};
  p.quotient = quotient_by(p.tensor_square, p.t_generators);
  const FgAbGroup& g = p.quotient.group;
  const IntMatrix& proj = p.quotient.projection.matrix();

  IntMatrix mult(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector& e = a.product(i, j);
      std::copy(e.begin(), e.end(), mult.row(i * n + j).begin());
    }
  IntMatrix tran(0, n * n), alpha(0, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector two = add.unit_vector(i);
    two[i] = 2;
    tran.append_row(pure_tensor(two, a.one()));
    alpha.append_row(pure_tensor(a.one(), add.unit_vector(i)));
  }
  const GroupHom id = GroupHom::identity(add);
  MackeyZ2 m = make_mackey(add, id, g, GroupHom(g, add, p.quotient.section * mult),
                           GroupHom(add, g, tran * proj));
  p.alpha = GroupHom(add, g, alpha * proj);

  std::vector<GroupHom> act_e, act_g;
  for (std::size_t k = 0; k < n; ++k) {
    const GroupHom mk = a.multiplication_by(add.unit_vector(k));
    act_e.push_back(mk);
    act_g.push_back(induced_on_cokernels(p.quotient, tensor_hom(id, mk), p.quotient));
  }
  p.mackey = make_mackey_module(std::move(m), a, std::move(act_e), std::move(act_g));
  return p;
}

Cokernel frobenius_twisted_square(const InvolutiveRing& a) {
  const InvolutiveRing b = mod2(a);
  const GroupHom phi = frobenius(b);
  const std::size_t n = b.n_gens();
  const FgAbGroup sq = tensor(b.additive(), b.additive());
  std::vector<IntVector> rel;
  for (std::size_t c = 0; c < n; ++c) {
    const auto pc = phi.matrix().row(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const IntVector x = b.additive().unit_vector(i);
        const IntVector y = b.additive().unit_vector(j);
        rel.push_back(difference(pure_tensor(b.mul(pc, x), y), pure_tensor(x, b.mul(pc, y))));
      }
  }
  return quotient_by(sq, rel);
}

SesReport ses_check(const InvolutiveRing& a) {
  const Pi0Thr p = pi0_thr(a);
  const FgAbGroup& add = a.additive();
  const std::size_t n = a.n_gens();
  SesReport r;
  // 2A on the generators 2 e_i.
  const GroupHom two = GroupHom::scalar(add, 2);
  const Lattice ker = kernel_lattice(two);
  r.two_a = FgAbGroup(n, ker.basis());
  r.middle = p.quotient.group;
  const GroupHom iota(r.two_a, r.middle, p.mackey.mackey.tran.matrix());
  r.iota_injective = iota.is_injective();

  const Cokernel tw = frobenius_twisted_square(a);
  r.twisted = tw.group;
  const GroupHom lift_id(p.tensor_square, tw.projection.source(), IntMatrix::identity(n * n));
  const GroupHom pi = induced_on_cokernels(p.quotient, lift_id, tw);
  const FgAbGroup zero;
  r.maps = {GroupHom::zero(zero, r.two_a), iota, pi, GroupHom::zero(r.twisted, zero)};
  r.detail = is_exact(r.maps);
  r.exact = r.detail.exact;
  return r;
}

AlphaReport is_alpha_iso(const InvolutiveRing& a) {
  AlphaReport r;
  r.alpha_iso = pi0_thr(a).alpha.is_iso();
  r.frobenius_surjective = frobenius(mod2(a)).is_surjective();
  if (r.alpha_iso != r.frobenius_surjective)
    throw CertificateError("alpha is " + std::string(r.alpha_iso ? "" : "not ") +
                           "an isomorphism but the Frobenius of A/2 is " +
                           (r.frobenius_surjective ? "" : "not ") + "surjective");
  return r;
}

BaseChangeReport verify_etale_base_change(const RingHom& h) {
  const InvolutiveRing& a = h.source;
  const InvolutiveRing& b = h.target;
  const Pi0Thr pa = pi0_thr(a);
  const Pi0Thr pb = pi0_thr(b);
  const BaseChanged bc = base_change_presented(pa.mackey, h);
  const std::size_t na = a.n_gens(), nb = b.n_gens();
  const IntMatrix& hm = h.map.matrix();

  // e-level: A (x)_A B -> B, a (x) c -> h(a) c.
  IntMatrix me(0, nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k) me.append_row(b.mul(hm.row(i), b.additive().unit_vector(k)));
  const GroupHom beta_e(bc.module.mackey.e, pb.mackey.mackey.e, bc.e_quotient.section * me);

  // g-level: (x (x) y) (x) c -> h(x) (x) h(y) c.
  const FgAbGroup& ga = pa.quotient.group;
  IntMatrix mg(0, nb * nb);
  for (std::size_t x = 0; x < ga.n_gens(); ++x) {
    const auto rep = pa.quotient.section.row(x);
    for (std::size_t k = 0; k < nb; ++k) {
      IntVector v(nb * nb);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
          const Integer& c = rep[i * na + j];
          if (c == 0) continue;
          IntVector t = pure_tensor(hm.row(i), b.mul(hm.row(j), b.additive().unit_vector(k)));
          kernels::reference::axpy(v, c, t);
        }
      mg.append_row(v);
    }
  }
  const GroupHom beta_g(bc.module.mackey.g, pb.mackey.mackey.g,
                        bc.g_quotient.section * mg * pb.quotient.projection.matrix());

  BaseChangeReport r;
  r.changed = bc.module.mackey;
  r.target = pb.mackey.mackey;
  r.comparison = make_mackey_hom(r.changed, r.target, beta_e, beta_g);
  r.iso = r.comparison.is_iso();
  if (r.iso) {
    auto inv_e = lift(GroupHom::identity(r.target.e), beta_e);
    auto inv_g = lift(GroupHom::identity(r.target.g), beta_g);
    if (!inv_e || !inv_g) throw CertificateError("base change: comparison is bijective but has no inverse");
    r.inverse = make_mackey_hom(r.target, r.changed, *inv_e, *inv_g);
  } else {
    if (!r.changed.e.isomorphic(r.target.e))
      r.obstruction += "e-levels " + r.changed.e.describe() + " vs " + r.target.e.describe() + "; ";
    if (!r.changed.g.isomorphic(r.target.g))
      r.obstruction += "g-levels " + r.changed.g.describe() + " vs " + r.target.g.describe();
    if (r.obstruction.empty()) r.obstruction = "levels are abstractly isomorphic but the comparison is not";
  }
  return r;
}

}  // namespace thr
