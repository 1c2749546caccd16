#include "thr/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "thr/cubes.hpp"
#include "thr/dihedral.hpp"
#include "thr/error.hpp"
#include "thr/mackey.hpp"
#include "thr/oracle.hpp"
#include "thr/thr_pi0.hpp"

namespace thr {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

bool is_z_in_degrees(const std::map<long, FgAbGroup>& h, std::initializer_list<long> degs) {
  for (const auto& [q, g] : h) {
    const bool want = std::find(degs.begin(), degs.end(), q) != degs.end();
    if (want ? !(g.free_rank() == 1 && g.invariant_factors().empty()) : !g.is_trivial()) return false;
  }
  for (long q : degs)
    if (!h.contains(q)) return false;
  return true;
}

RingHom unit_hom(const InvolutiveRing& r) {
  return make_ring_hom(rings::integers(), r, IntMatrix::from_rows({r.one()}, r.n_gens()));
}

// 1
void constant_integers(Outcome& o) {
  const Pi0Thr p = pi0_thr(rings::integers());
  const MackeyZ2& m = p.mackey.mackey;
  o.require(m.e.isomorphic(FgAbGroup::free(1)), "underlying level is " + m.e.describe());
  o.require(m.g.isomorphic(FgAbGroup::free(1)), "fixed level is " + m.g.describe());
  if (!o.pass) return;
  const Simplified s = simplify(m.g);
  const Integer res = s.from.then(m.res).matrix()(0, 0);
  const Integer tran = m.tran.then(s.to).matrix()(0, 0);
  o.require(abs(res) == 1, "restriction is multiplication by " + res.get_str());
  o.require(res * tran == 2, "transfer is multiplication by " + tran.get_str() + " against res " + res.get_str());
  o.require(m.w.equals(GroupHom::identity(m.e)), "involution is not the identity");
  o.detail << (o.pass ? "levels Z, Z; res = id; tran = 2" : "");
}

// 2
void dual_numbers(Outcome& o) {
  const InvolutiveRing a = rings::f2_dual();
  const Pi0Thr p = pi0_thr(a);
  const FgAbGroup& g = p.mackey.mackey.g;
  const std::vector<Integer> four{2, 2, 2, 2};
  o.require(g.free_rank() == 0 && g.invariant_factors() == four, "fixed level is " + g.describe());
  const Integer brute = oracle::g_level_order_by_enumeration(a);
  o.require(brute == 16, "enumeration gives order " + brute.get_str());
  const AlphaReport ar = is_alpha_iso(a);
  o.require(!ar.alpha_iso, "alpha is an isomorphism");
  o.require(!ar.frobenius_surjective, "Frobenius is surjective");
  const SesReport ses = ses_check(a);
  o.require(ses.exact, "short exact sequence fails");
  o.detail << (o.pass ? "fixed level (Z/2)^4 (enumeration agrees), alpha not iso, Frobenius not onto, sequence exact"
                      : "");
}

// 3
void base_change(Outcome& o) {
  const BaseChangeReport f4 = verify_etale_base_change(make_ring_hom(rings::f2(), rings::f4(), IntMatrix::from_rows({{1, 0}})));
  o.require(f4.iso, "F2 -> F4 is not an isomorphism: " + f4.obstruction);
  const BaseChangeReport dual =
      verify_etale_base_change(make_ring_hom(rings::f2(), rings::f2_dual(), IntMatrix::from_rows({{1, 0}})));
  o.require(!dual.iso, "F2 -> F2[t]/t^2 reported iso");
  const std::vector<Integer> two{2, 2}, four{2, 2, 2, 2};
  o.require(dual.changed.g.invariant_factors() == two && dual.changed.g.free_rank() == 0,
            "base-changed fixed level is " + dual.changed.g.describe());
  o.require(dual.target.g.invariant_factors() == four && dual.target.g.free_rank() == 0,
            "target fixed level is " + dual.target.g.describe());
  o.require(!dual.obstruction.empty(), "no obstruction reported");
  o.detail << (o.pass ? "F4 iso; dual numbers not iso: " + dual.obstruction : "");
}

// 4
void double_coset(Outcome& o) {
  std::vector<MackeyZ2> all;
  std::vector<InvolutiveRing> rs{rings::integers(), rings::f2(), rings::f4(), rings::f2_dual()};
  for (long m = 3; m <= 12; ++m) rs.push_back(rings::z_mod(m));
  for (long m : {0, 2, 3, 4})
    for (long a : {0, 1})
      for (long b : {-1, 0, 1}) rs.push_back(rings::quadratic(m, a, b));
  const MackeyModule pz = pi0_thr(rings::integers()).mackey;
  for (const auto& r : rs) {
    const Pi0Thr p = pi0_thr(r);
    all.push_back(p.mackey.mackey);
    all.push_back(constant_module(r).mackey);
    const RingHom h = unit_hom(r);
    const BaseChanged bc = base_change_presented(pz, h);
    all.push_back(bc.module.mackey);
    const MackeyHom u = base_change_unit(pz, h, bc);
    all.push_back(kernel(u).object);
    all.push_back(cokernel(u).object);
  }
  oracle::Rng rng(20260401);
  for (int i = 0; i < 40; ++i) all.push_back(constant_mackey(oracle::random_group(rng, 3)));
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const FgAbGroup g = FgAbGroup::free(n);
    all.push_back(fixed_point_mackey(GroupHom(g, g, oracle::random_involution(rng, n))));
  }
  for (int i = 0; i < 30; ++i) all.push_back(induced_mackey(oracle::random_group(rng, 3)));
  all.push_back(burnside_mackey());
  std::size_t bad = 0;
  std::string first;
  for (const auto& m : all) {
    const std::string v = mackey_violation(m);
    if (!v.empty() && bad++ == 0) first = v;
  }
  o.require(all.size() >= 200, "only " + std::to_string(all.size()) + " instances");
  o.require(bad == 0, std::to_string(bad) + " violations, first: " + first);
  o.detail << (o.pass ? std::to_string(all.size()) + " instances satisfy res o tran = id + w" : "");
}

// 5
void naturals_nerve(Outcome& o) {
  const AffineMonoid n = AffineMonoid::naturals();
  for (long j = 1; j <= 5; ++j) {
    const IntVector v{Integer(j)};
    const auto h = homology_table(normalized_chains(dihedral_nerve_piece(n, {v}, static_cast<std::size_t>(j) + 1)));
    o.require(is_z_in_degrees(h, {0, 1}), "weight " + std::to_string(j) + ": " + describe_homology(h));
    const Pi0 c = pi0(fixed_subset(sd_sigma(dihedral_nerve_piece(n, {v}, 3))));
    o.require(c.count == 2, "weight " + std::to_string(j) + ": fixed components " + std::to_string(c.count));
  }
  o.detail << (o.pass ? "H = Z, Z and two fixed components for weights 1..5" : "");
}

// 6
void power_maps(Outcome& o) {
  for (std::size_t j = 0; j <= 3; ++j)
    for (std::size_t r = 1; r <= 3; ++r) {
      const IsoCheckReport rep = power_map_fixed_iso_check(j, r, 3);
      o.require(rep.ok, "j = " + std::to_string(j) + ", r = " + std::to_string(r) + ": " + rep.failure);
    }
  o.detail << (o.pass ? "all 12 pairs (j, r) pass through degree 3" : "");
}

// 7
void projective_line(Outcome& o) {
  const ProjectiveReport rep = p1_report(5);
  for (const auto& c : rep.checks) o.require(c.ok, c.name + ": " + c.detail);
  for (const auto& w : rep.weights) {
    const bool zero = w.weight[0] == 0;
    bool acyclic = true;
    for (const auto& [q, g] : w.homology) acyclic = acyclic && g.is_trivial();
    if (zero) {
      const bool two = w.homology.contains(0) && w.homology.at(0).free_rank() == 2 &&
                       w.homology.at(0).invariant_factors().empty();
      bool rest = true;
      for (const auto& [q, g] : w.homology) rest = rest && (q == 0 || g.is_trivial());
      o.require(two && rest, "weight 0: " + describe_homology(w.homology));
    } else {
      o.require(acyclic, "weight " + w.weight[0].get_str() + ": " + describe_homology(w.homology));
    }
  }
  o.detail << (o.pass ? "weights -5..5: only weight 0 survives, with H0 = Z^2" : "");
}

// 8
void projective_sigma(Outcome& o) {
  const ProjectiveReport rep = psigma_report();
  o.require(rep.checks.size() >= 2, "report has no checks");
  if (!o.pass) return;
  o.require(rep.checks[0].ok, rep.checks[0].name + " fails (" + rep.checks[0].detail + ")");
  o.require(rep.checks[1].ok, rep.checks[1].name + " fails (" + rep.checks[1].detail + ")");
  o.detail << (o.pass ? "square cartesian; mutation detected" : "");
}

// 9
void projective_spaces(Outcome& o) {
  for (std::size_t n : {2, 3}) {
    const ProjectiveReport rep = pn_report(n, 3);
    for (const auto& c : rep.checks) o.require(c.ok, "P" + std::to_string(n) + " " + c.name + ": " + c.detail);
    for (const auto& w : rep.weights) {
      bool origin = true;
      for (const auto& x : w.weight) origin = origin && x == 0;
      if (!origin) {
        o.require(w.certified, "P" + std::to_string(n) + " weight " + vector_to_string(w.weight) + " not certified");
        continue;
      }
      const bool ok = w.homology.contains(0) && w.homology.at(0).free_rank() == n + 1 &&
                      w.homology.at(0).invariant_factors().empty();
      o.require(ok, "P" + std::to_string(n) + " weight 0: " + describe_homology(w.homology));
    }
  }
  for (std::size_t d = 1; d <= 4; ++d) {
    const CofiberReport c = h_map_cofiber_check(d);
    o.require(c.ok, "h cofiber in dimension " + std::to_string(d) + ": " + c.detail);
  }
  o.detail << (o.pass ? "P2, P3: nonzero weights acyclic, weight 0 gives Z^3, Z^4; h cofibers Z^2 for d = 1..4" : "");
}

// 10
void structural(Outcome& o) {
  std::size_t validated = 0;
  const auto validate = [&](const TruncDihedralSet& x, const std::string& name) {
    const ValidationReport v = validate_structure(x);
    o.require(v.ok, name + ": " + v.first_violation);
    ++validated;
  };
  const AffineMonoid n = AffineMonoid::naturals();
  const AffineMonoid n2 = AffineMonoid::naturals_reversed(2);
  for (long j = 0; j <= 4; ++j) validate(dihedral_nerve_piece(n, {IntVector{Integer(j)}}, 5), "naturals nerve");
  const TruncDihedralSet x3 = dihedral_nerve_piece(n, {IntVector{Integer(3)}}, 7);
  validate(sd_sigma(x3), "sigma subdivision");
  validate(fixed_subset(sd_sigma(x3)), "sigma fixed points");
  validate(sd_r(x3, 2), "2-fold subdivision");
  validate(sd_r(dihedral_nerve_piece(n, {IntVector{Integer(3)}}, 8), 3), "3-fold subdivision");
  validate(circle_model(4), "circle");
  validate(point(3), "point");
  validate(real_nerve(n, 3, 4), "real nerve of naturals");
  validate(real_nerve(n2, 3, 3), "real nerve of the swapped plane");
  validate(dihedral_nerve_piece(n2, {IntVector{Integer(1), Integer(2)}, IntVector{Integer(2), Integer(1)}}, 4),
           "swapped plane nerve");

  oracle::Rng rng(777);
  std::size_t fibers = 0;
  for (int i = 0; i < 60; ++i) {
    ChainMap f = oracle::random_poly_map(rng, 3);
    if (i % 3 == 2) f = tensor_map(f, oracle::random_poly_map(rng, 2));
    const ChainComplex fib = mapping_fiber(f);
    o.require(!boundary_squared_violation(fib), "d^2 != 0 on a mapping fiber");
    o.require(les_check(f).exact, "long exact sequence not exact");
    ++fibers;
  }
  std::size_t cubes = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = static_cast<std::size_t>(1 + i % 3);
    const CubeDiagram q = (i % 5 == 4) ? oracle::random_tensor_cube(rng, std::min<std::size_t>(dim, 2))
                                       : oracle::random_poly_cube(rng, dim, 3);
    const RecursionReport r = tfib_recursion_check(q);
    o.require(r.ok, "total fiber recursion fails on random cube " + std::to_string(i));
    ++cubes;
  }
  const IsoCheckReport s1 = shuffle_iso_check(n, n2, {IntVector{Integer(1)}},
                                              {IntVector{Integer(1), Integer(0)}, IntVector{Integer(0), Integer(1)}}, 3);
  const IsoCheckReport s2 = shuffle_iso_check(n, n, {IntVector{Integer(1)}}, {IntVector{Integer(2)}}, 3);
  const IsoCheckReport s3 =
      shuffle_iso_check(n2, n, {IntVector{Integer(1), Integer(1)}}, {IntVector{Integer(1)}}, 3);
  o.require(s1.ok, "shuffle (N, N^2): " + s1.failure);
  o.require(s2.ok, "shuffle (N, N): " + s2.failure);
  o.require(s3.ok, "shuffle (N^2, N): " + s3.failure);

  std::size_t snfs = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const std::size_t c = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const IntMatrix m = oracle::random_matrix(rng, r, c, 6);
    o.require(smith_diagonal(m) == oracle::minor_gcd_invariants(m), "Smith form disagrees on " + m.to_string());
    ++snfs;
  }
  o.detail << (o.pass ? std::to_string(validated) + " objects validated, " + std::to_string(fibers) + " fibers, " +
                            std::to_string(cubes) + " cubes, 3 shuffle pairs, " + std::to_string(snfs) +
                            " Smith forms"
                      : "");
}

struct Entry {
  int id;
  const char* title;
  void (*run)(Outcome&);
  double budget;  ///< seconds; 0 for none
};

const Entry kEntries[] = {
    {1, "pi0 THR of the integers is the constant Mackey functor", constant_integers, 1},
    {2, "pi0 THR of the dual numbers over F2", dual_numbers, 1},
    {3, "etale base change F2 -> F4 and F2 -> F2[t]/t^2", base_change, 1},
    {4, "double coset law on generated Mackey functors", double_coset, 0},
    {5, "dihedral nerve of the naturals and its sigma-fixed components", naturals_nerve, 10},
    {6, "power map onto subdivision fixed points", power_maps, 0},
    {7, "projective line, weights -5..5", projective_line, 10},
    {8, "projective line with involution: cartesian square", projective_sigma, 0},
    {9, "projective spaces P2, P3 and the h-map cofibers", projective_spaces, 60},
    {10, "structural property suites", structural, 0},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::function<void(const std::string&)>& progress) {
  std::vector<CriterionResult> out;
  for (const Entry& e : kEntries) {
    if (progress) progress("criterion " + std::to_string(e.id) + ": " + e.title);
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "took %.2f s, budget %.0f s", r.seconds, e.budget);
      o.require(r.seconds < e.budget, buf);
    }
    r.pass = o.pass;
    r.detail = o.detail.str();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.2f s", r.seconds);
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + t + "): " +
         r.detail;
}

}  // namespace thr
