#pragma once

// Bounded complexes of free abelian groups, their homology, and the
// constructions (shift, sum, tensor, mapping fiber) used to assemble cubes.
// A boundary d_q : C_q -> C_{q-1} is a rank(q) x rank(q-1) matrix.

#include <climits>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "thr/dihedral.hpp"
#include "thr/fgab.hpp"

namespace thr {

/// Homology is trusted only in degrees <= valid_hi.
constexpr long kAllDegrees = LONG_MAX;

struct ChainComplex {
  std::map<long, std::size_t> ranks;  ///< nonzero ranks only
  std::map<long, IntMatrix> boundaries;
  std::map<long, std::vector<std::string>> labels;
  long valid_hi = kAllDegrees;
  std::vector<std::string> substitutions;

  std::size_t rank(long q) const;
  /// d_q, or a zero matrix of the right shape.
  IntMatrix d(long q) const;
  bool empty() const { return ranks.empty(); }
  long min_degree() const;
  long max_degree() const;
  /// Sets C_q; labels are optional.
  void set_rank(long q, std::size_t r, std::vector<std::string> names = {});
  /// Throws InputError on a shape mismatch.
  void set_d(long q, IntMatrix m);
};

struct ChainMap {
  ChainComplex source;
  ChainComplex target;
  std::map<long, IntMatrix> maps;

  IntMatrix at(long q) const;
};

/// Throws InputError when the squares do not commute.
ChainMap make_chain_map(const ChainComplex& source, const ChainComplex& target, std::map<long, IntMatrix> maps);
ChainMap identity_map(const ChainComplex& c);
ChainMap zero_map(const ChainComplex& source, const ChainComplex& target);
/// g after f.
ChainMap compose(const ChainMap& f, const ChainMap& g);

/// Degree q of the first violation of d_{q-1} d_q = 0, if any.
std::optional<long> boundary_squared_violation(const ChainComplex& c);

/// Normalized chains: nondegenerate simplices, degenerate faces dropped.
ChainComplex normalized_chains(const TruncDihedralSet& x);
/// Z in degree 0.
ChainComplex unit_complex();
/// Z^r concentrated in degree q.
ChainComplex concentrated(std::size_t r, long q);

ChainComplex shift(const ChainComplex& c, long k);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
/// Basis (i, j) of C_p (x) D_q ordered by p, then i, then j;
/// d(x (x) y) = dx (x) y + (-1)^p x (x) dy.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);
/// Fib_q = C_q + D_{q+1}, d(c, e) = (dc, f(c) - de).
ChainComplex mapping_fiber(const ChainMap& f);

struct HomologyGroup {
  long degree = 0;
  FgAbGroup group;
  /// Rows: a basis of the cycles Z_q in chain coordinates.
  IntMatrix cycles;
  /// Z_q -> H_q.
  Cokernel quotient;
};
/// Throws InputError when q is beyond the valid range.
HomologyGroup homology_group(const ChainComplex& c, long q);
FgAbGroup homology(const ChainComplex& c, long q);
/// Homology in every degree where the complex can be nonzero, ascending.
std::map<long, FgAbGroup> homology_table(const ChainComplex& c);
/// True when every homology group vanishes; throws InputError when the
/// support of the complex reaches past the valid range.
bool is_acyclic(const ChainComplex& c);
/// "H0 = Z, H1 = Z" style summary; "0" when acyclic.
std::string describe_homology(const std::map<long, FgAbGroup>& table);

/// f_* : H_q(source) -> H_q(target).
GroupHom induced_map(const ChainMap& f, const HomologyGroup& hs, const HomologyGroup& ht);

struct LesReport {
  bool exact = true;
  long lo = 0, hi = 0;
  ExactnessReport detail;
};
/// ... -> H_q(Fib f) -> H_q(C) -> H_q(D) -> H_{q-1}(Fib f) -> ... over every
/// degree where all three are valid and possibly nonzero.
LesReport les_check(const ChainMap& f);

}  // namespace thr
