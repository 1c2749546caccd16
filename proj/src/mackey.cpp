#include "thr/mackey.hpp"

#include <sstream>

#include "thr/error.hpp"

namespace thr {

namespace {

// Index of the first generator on which f and g disagree, or -1.
long first_difference(const GroupHom& f, const GroupHom& g) {
  for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
    IntVector d = f.matrix().row_vector(i);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] -= g.matrix()(i, j);
    if (!f.target().is_zero(d)) return static_cast<long>(i);
  }
  return -1;
}

std::string law_violation(const char* law, const char* level, const GroupHom& lhs, const GroupHom& rhs) {
  const long i = first_difference(lhs, rhs);
  if (i < 0) return {};
  return std::string(law) + " fails on " + level + "-level generator " + std::to_string(i) + ": " +
         vector_to_string(lhs.matrix().row(static_cast<std::size_t>(i))) + " vs " +
         vector_to_string(rhs.matrix().row(static_cast<std::size_t>(i)));
}

void require_shape(const GroupHom& f, const FgAbGroup& src, const FgAbGroup& tgt, const char* what) {
  if (!f.source().same_presentation(src) || !f.target().same_presentation(tgt))
    throw InputError(std::string(what) + " has the wrong source or target");
}

GroupHom combination(const FgAbGroup& x, const std::vector<GroupHom>& acts, std::span<const Integer> v) {
  IntMatrix m(x.n_gens(), x.n_gens());
  for (std::size_t k = 0; k < acts.size(); ++k)
    if (v[k] != 0) m = m + acts[k].matrix().scaled(v[k]);
  return GroupHom(x, x, std::move(m));
}

GroupHom lift_or_throw(const GroupHom& f, const GroupHom& through, const char* what) {
  auto h = lift(f, through);
  if (!h) throw CertificateError(std::string("induced ") + what + " does not exist");
  return *h;
}

}  // namespace

std::string MackeyZ2::describe() const {
  std::ostringstream out;
  out << "e: " << e.describe() << ", g: " << g.describe();
  return out.str();
}

std::string mackey_violation(const MackeyZ2& m) {
  for (std::string v : {law_violation("w^2 = id", "e", m.w.then(m.w), GroupHom::identity(m.e)),
                        law_violation("res o tran = id + w", "e", m.tran.then(m.res),
                                      GroupHom::identity(m.e) + m.w),
                        law_violation("w o res = res", "g", m.res.then(m.w), m.res),
                        law_violation("tran o w = tran", "e", m.w.then(m.tran), m.tran)})
    if (!v.empty()) return v;
  return {};
}

MackeyZ2 make_mackey(FgAbGroup e, GroupHom w, FgAbGroup g, GroupHom res, GroupHom tran) {
  require_shape(w, e, e, "w");
  require_shape(res, g, e, "res");
  require_shape(tran, e, g, "tran");
  MackeyZ2 m{std::move(e), std::move(g), std::move(w), std::move(res), std::move(tran)};
  if (auto v = mackey_violation(m); !v.empty()) throw InputError("Mackey law: " + v);
  return m;
}

MackeyHom make_mackey_hom(const MackeyZ2& source, const MackeyZ2& target, GroupHom f_e, GroupHom f_g) {
  require_shape(f_e, source.e, target.e, "f_e");
  require_shape(f_g, source.g, target.g, "f_g");
  for (std::string v : {law_violation("f commutes with w", "e", f_e.then(target.w), source.w.then(f_e)),
                        law_violation("f commutes with res", "g", source.res.then(f_e), f_g.then(target.res)),
                        law_violation("f commutes with tran", "e", source.tran.then(f_g), f_e.then(target.tran))})
    if (!v.empty()) throw InputError("Mackey morphism: " + v);
  return {source, target, std::move(f_e), std::move(f_g)};
}

MackeyHom compose(const MackeyHom& f, const MackeyHom& g) {
  return make_mackey_hom(f.source, g.target, f.f_e.then(g.f_e), f.f_g.then(g.f_g));
}

MackeyHom identity_hom(const MackeyZ2& m) {
  return make_mackey_hom(m, m, GroupHom::identity(m.e), GroupHom::identity(m.g));
}

MackeyZ2 constant_mackey(const FgAbGroup& a) {
  return make_mackey(a, GroupHom::identity(a), a, GroupHom::identity(a), GroupHom::scalar(a, 2));
}

MackeyZ2 fixed_point_mackey(const GroupHom& w) {
  const FgAbGroup& m = w.source();
  const Kernel fixed = kernel(w - GroupHom::identity(m));
  const GroupHom tran = lift_or_throw(GroupHom::identity(m) + w, fixed.inclusion, "transfer");
  return make_mackey(m, w, fixed.group, fixed.inclusion, tran);
}

MackeyZ2 induced_mackey(const FgAbGroup& m) {
  const std::size_t n = m.n_gens();
  const FgAbGroup e = FgAbGroup::direct_sum(m, m);
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix zero(n, n);
  GroupHom swap(e, e, zero.augment(id).stack(id.augment(zero)));
  GroupHom res(m, e, id.augment(id));
  GroupHom tran(e, m, id.stack(id));
  return make_mackey(e, swap, m, res, tran);
}

MackeyZ2 burnside_mackey() {
  const FgAbGroup z = FgAbGroup::free(1);
  const FgAbGroup z2 = FgAbGroup::free(2);
  return make_mackey(z, GroupHom::identity(z), z2, GroupHom(z2, z, IntMatrix::from_rows({{1}, {2}})),
                     GroupHom(z, z2, IntMatrix::from_rows({{0, 1}})));
}

MackeyHom extend_underlying_hom(const MackeyZ2& m, const MackeyZ2& l, const GroupHom& f_e) {
  require_shape(f_e, m.e, l.e, "f_e");
  if (!f_e.then(l.w).equals(m.w.then(f_e))) throw InputError("extend_underlying_hom: f_e is not equivariant");
  if (!l.res.is_injective()) throw InputError("extend_underlying_hom: restriction of the target is not injective");
  // Unique because res of the target is injective.
  auto f_g = lift(m.res.then(f_e), l.res);
  if (!f_g) throw CertificateError("extend_underlying_hom: f_e o res does not land in the fixed subgroup");
  try {
    return make_mackey_hom(m, l, f_e, *f_g);
  } catch (const InputError& e) {
    throw CertificateError(std::string("extend_underlying_hom: ") + e.what());
  }
}

MackeyModule make_mackey_module(MackeyZ2 m, InvolutiveRing ring, std::vector<GroupHom> act_e,
                                std::vector<GroupHom> act_g) {
  if (!ring.has_trivial_involution()) throw InputError("Mackey module: ring must have trivial involution");
  const std::size_t n = ring.n_gens();
  if (act_e.size() != n || act_g.size() != n) throw InputError("Mackey module: one action per ring generator");
  for (std::size_t k = 0; k < n; ++k) {
    require_shape(act_e[k], m.e, m.e, "e-level action");
    require_shape(act_g[k], m.g, m.g, "g-level action");
  }
  const auto check_level = [&](const FgAbGroup& x, const std::vector<GroupHom>& acts, const char* level) {
    if (!combination(x, acts, ring.one()).equals(GroupHom::identity(x)))
      throw InputError(std::string("Mackey module: 1 does not act as identity on the ") + level + "-level");
    const IntMatrix& rel = ring.additive().relations();
    for (std::size_t r = 0; r < rel.rows(); ++r)
      if (!combination(x, acts, rel.row(r)).is_zero())
        throw InputError(std::string("Mackey module: ring relation acts nontrivially on the ") + level + "-level");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!acts[j].then(acts[i]).equals(combination(x, acts, ring.product(i, j))))
          throw InputError(std::string("Mackey module: action not multiplicative on the ") + level + "-level");
  };
  check_level(m.e, act_e, "e");
  check_level(m.g, act_g, "g");
  for (std::size_t k = 0; k < n; ++k) {
    for (std::string v : {law_violation("action commutes with res", "g", act_g[k].then(m.res), m.res.then(act_e[k])),
                          law_violation("action commutes with tran", "e", act_e[k].then(m.tran),
                                        m.tran.then(act_g[k])),
                          law_violation("action commutes with w", "e", act_e[k].then(m.w), m.w.then(act_e[k]))})
      if (!v.empty()) throw InputError("Mackey module: " + v);
  }
  return {std::move(m), std::move(ring), std::move(act_e), std::move(act_g)};
}

MackeyModule constant_module(const InvolutiveRing& a) {
  std::vector<GroupHom> acts;
  for (std::size_t k = 0; k < a.n_gens(); ++k) acts.push_back(a.multiplication_by(a.additive().unit_vector(k)));
  return make_mackey_module(constant_mackey(a.additive()), a, acts, acts);
}

namespace {

// X (x)_A B as a quotient of X (x) B.
Cokernel balanced_tensor(const FgAbGroup& x, const std::vector<GroupHom>& acts, const RingHom& h) {
  const InvolutiveRing& b = h.target;
  const FgAbGroup t = tensor(x, b.additive());
  IntMatrix rel(0, t.n_gens());
  for (std::size_t i = 0; i < x.n_gens(); ++i)
    for (std::size_t k = 0; k < acts.size(); ++k)
      for (std::size_t j = 0; j < b.n_gens(); ++j) {
        const IntVector ej = b.additive().unit_vector(j);
        IntVector lhs = pure_tensor(acts[k].matrix().row(i), ej);
        IntVector rhs = pure_tensor(x.unit_vector(i), b.mul(h.map.matrix().row(k), ej));
        for (std::size_t c = 0; c < lhs.size(); ++c) lhs[c] -= rhs[c];
        rel.append_row(lhs);
      }
  return cokernel(GroupHom(FgAbGroup::free(rel.rows()), t, rel));
}

}  // namespace

BaseChanged base_change_presented(const MackeyModule& m, const RingHom& h) {
  if (!m.ring.additive().same_presentation(h.source.additive()))
    throw InputError("base_change: ring map does not start at the module's ring");
  const InvolutiveRing& b = h.target;
  const GroupHom id_b = GroupHom::identity(b.additive());
  Cokernel ce = balanced_tensor(m.mackey.e, m.act_e, h);
  Cokernel cg = balanced_tensor(m.mackey.g, m.act_g, h);
  MackeyZ2 out;
  try {
    out = make_mackey(ce.group, induced_on_cokernels(ce, tensor_hom(m.mackey.w, id_b), ce), cg.group,
                      induced_on_cokernels(cg, tensor_hom(m.mackey.res, id_b), ce),
                      induced_on_cokernels(ce, tensor_hom(m.mackey.tran, id_b), cg));
  } catch (const InputError& e) {
    throw CertificateError(std::string("base_change: ") + e.what());
  }
  std::vector<GroupHom> act_e, act_g;
  for (std::size_t j = 0; j < b.n_gens(); ++j) {
    const GroupHom mult = b.multiplication_by(b.additive().unit_vector(j));
    act_e.push_back(induced_on_cokernels(ce, tensor_hom(GroupHom::identity(m.mackey.e), mult), ce));
    act_g.push_back(induced_on_cokernels(cg, tensor_hom(GroupHom::identity(m.mackey.g), mult), cg));
  }
  return {make_mackey_module(std::move(out), b, std::move(act_e), std::move(act_g)), std::move(ce),
          std::move(cg)};
}

MackeyHom base_change_unit(const MackeyModule& m, const RingHom& h, const BaseChanged& changed) {
  const auto level = [&](const FgAbGroup& x, const Cokernel& c) {
    IntMatrix rows(0, tensor(x, h.target.additive()).n_gens());
    for (std::size_t i = 0; i < x.n_gens(); ++i) rows.append_row(pure_tensor(x.unit_vector(i), h.target.one()));
    return GroupHom(x, c.group, rows * c.projection.matrix());
  };
  return make_mackey_hom(m.mackey, changed.module.mackey, level(m.mackey.e, changed.e_quotient),
                         level(m.mackey.g, changed.g_quotient));
}

MackeyKernel kernel(const MackeyHom& f) {
  const MackeyZ2& m = f.source;
  const Kernel ke = kernel(f.f_e);
  const Kernel kg = kernel(f.f_g);
  MackeyZ2 obj = make_mackey(ke.group, lift_or_throw(ke.inclusion.then(m.w), ke.inclusion, "w"), kg.group,
                             lift_or_throw(kg.inclusion.then(m.res), ke.inclusion, "res"),
                             lift_or_throw(ke.inclusion.then(m.tran), kg.inclusion, "tran"));
  MackeyHom inc = make_mackey_hom(obj, m, ke.inclusion, kg.inclusion);
  return {std::move(obj), std::move(inc)};
}

MackeyCokernel cokernel(const MackeyHom& f) {
  const MackeyZ2& n = f.target;
  const Cokernel ce = cokernel(f.f_e);
  const Cokernel cg = cokernel(f.f_g);
  MackeyZ2 obj = make_mackey(ce.group, induced_on_cokernels(ce, n.w, ce), cg.group,
                             induced_on_cokernels(cg, n.res, ce), induced_on_cokernels(ce, n.tran, cg));
  MackeyHom proj = make_mackey_hom(n, obj, ce.projection, cg.projection);
  return {std::move(obj), std::move(proj)};
}

MackeyExactness is_exact(std::span<const MackeyHom> seq) {
  std::vector<GroupHom> es, gs;
  for (const auto& f : seq) {
    es.push_back(f.f_e);
    gs.push_back(f.f_g);
  }
  MackeyExactness r;
  r.e_level = is_exact(std::span<const GroupHom>(es));
  r.g_level = is_exact(std::span<const GroupHom>(gs));
  r.exact = r.e_level.exact && r.g_level.exact;
  return r;
}

}  // namespace thr
