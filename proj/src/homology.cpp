#include "thr/homology.hpp"

#include <algorithm>
#include <set>

#include "thr/error.hpp"

namespace thr {

namespace {

long add_valid(long v, long k) {
  if (v == kAllDegrees) return kAllDegrees;
  return v + k;
}

std::set<long> degrees_of(const ChainComplex& c) {
  std::set<long> out;
  for (const auto& [q, r] : c.ranks) out.insert(q);
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  const IntMatrix top = a.augment(IntMatrix(a.rows(), b.cols()));
  const IntMatrix bottom = IntMatrix(b.rows(), a.cols()).augment(b);
  return top.stack(bottom);
}

}  // namespace

std::size_t ChainComplex::rank(long q) const {
  auto it = ranks.find(q);
  return it == ranks.end() ? 0 : it->second;
}

IntMatrix ChainComplex::d(long q) const {
  auto it = boundaries.find(q);
  if (it != boundaries.end()) return it->second;
  return IntMatrix(rank(q), rank(q - 1));
}

long ChainComplex::min_degree() const { return ranks.empty() ? 0 : ranks.begin()->first; }
long ChainComplex::max_degree() const { return ranks.empty() ? 0 : ranks.rbegin()->first; }

void ChainComplex::set_rank(long q, std::size_t r, std::vector<std::string> names) {
  if (!names.empty() && names.size() != r) throw InputError("chain complex: label count does not match rank");
  if (r == 0) {
    ranks.erase(q);
    labels.erase(q);
    return;
  }
  ranks[q] = r;
  if (!names.empty()) labels[q] = std::move(names);
}

void ChainComplex::set_d(long q, IntMatrix m) {
  if (m.rows() != rank(q) || m.cols() != rank(q - 1))
    throw InputError("chain complex: d_" + std::to_string(q) + " has shape " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(rank(q)) + "x" +
                     std::to_string(rank(q - 1)));
  if (m.is_zero())
    boundaries.erase(q);
  else
    boundaries[q] = std::move(m);
}

IntMatrix ChainMap::at(long q) const {
  auto it = maps.find(q);
  if (it != maps.end()) return it->second;
  return IntMatrix(source.rank(q), target.rank(q));
}

ChainMap make_chain_map(const ChainComplex& source, const ChainComplex& target, std::map<long, IntMatrix> maps) {
  ChainMap f{source, target, {}};
  for (auto& [q, m] : maps) {
    if (m.rows() != source.rank(q) || m.cols() != target.rank(q))
      throw InputError("chain map: component in degree " + std::to_string(q) + " has the wrong shape");
    if (!m.is_zero()) f.maps[q] = std::move(m);
  }
  std::set<long> qs = degrees_of(source);
  for (long q : degrees_of(target)) qs.insert(q);
  for (long q : std::set<long>(qs)) qs.insert(q + 1);
  for (long q : qs)
    if (!(source.d(q) * f.at(q - 1) == f.at(q) * target.d(q)))
      throw InputError("chain map: does not commute with d in degree " + std::to_string(q));
  return f;
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap f{c, c, {}};
  for (const auto& [q, r] : c.ranks) f.maps[q] = IntMatrix::identity(r);
  return f;
}

ChainMap zero_map(const ChainComplex& source, const ChainComplex& target) { return {source, target, {}}; }

ChainMap compose(const ChainMap& f, const ChainMap& g) {
  ChainMap h{f.source, g.target, {}};
  for (const auto& [q, r] : f.source.ranks) {
    IntMatrix m = f.at(q) * g.at(q);
    if (!m.is_zero()) h.maps[q] = std::move(m);
  }
  return h;
}

std::optional<long> boundary_squared_violation(const ChainComplex& c) {
  for (const auto& [q, r] : c.ranks)
    if (!(c.d(q + 1) * c.d(q)).is_zero()) return q + 1;
  return std::nullopt;
}

ChainComplex normalized_chains(const TruncDihedralSet& x) {
  ChainComplex c;
  std::vector<std::vector<std::size_t>> pos(x.q_max + 1);
  for (std::size_t q = 0; q <= x.q_max; ++q) {
    const auto nd = x.nondegenerate(q);
    pos[q].assign(x.size(q), x.size(q));
    std::vector<std::string> names;
    for (std::size_t k = 0; k < nd.size(); ++k) {
      pos[q][nd[k]] = k;
      names.push_back(vector_to_string(x.simplices[q][nd[k]]));
    }
    c.set_rank(static_cast<long>(q), nd.size(), std::move(names));
    if (q == 0 || nd.empty()) continue;
    IntMatrix m(nd.size(), c.rank(static_cast<long>(q) - 1));
    for (std::size_t k = 0; k < nd.size(); ++k)
      for (std::size_t i = 0; i <= q; ++i) {
        const std::size_t y = pos[q - 1][x.face[q][i][nd[k]]];
        if (y == x.size(q - 1)) continue;
        m(k, y) += (i % 2 == 0) ? 1 : -1;
      }
    c.set_d(static_cast<long>(q), std::move(m));
  }
  const bool certified = x.nondegenerate_bound && *x.nondegenerate_bound <= x.q_max;
  c.valid_hi = certified ? kAllDegrees : static_cast<long>(x.q_max) - 1;
  c.substitutions = x.substitutions;
  return c;
}

ChainComplex unit_complex() { return concentrated(1, 0); }

ChainComplex concentrated(std::size_t r, long q) {
  ChainComplex c;
  c.set_rank(q, r);
  return c;
}

ChainComplex shift(const ChainComplex& c, long k) {
  ChainComplex out;
  const bool odd = (k % 2) != 0;
  for (const auto& [q, r] : c.ranks) {
    auto it = c.labels.find(q);
    out.set_rank(q + k, r, it == c.labels.end() ? std::vector<std::string>{} : it->second);
  }
  for (const auto& [q, m] : c.boundaries) out.set_d(q + k, odd ? m.scaled(-1) : m);
  out.valid_hi = add_valid(c.valid_hi, k);
  out.substitutions = c.substitutions;
  return out;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex out;
  std::set<long> qs = degrees_of(a);
  for (long q : degrees_of(b)) qs.insert(q);
  for (long q : qs) out.set_rank(q, a.rank(q) + b.rank(q));
  for (long q : qs) out.set_d(q, block_diagonal(a.d(q), b.d(q)));
  out.valid_hi = std::min(a.valid_hi, b.valid_hi);
  out.substitutions = a.substitutions;
  out.substitutions.insert(out.substitutions.end(), b.substitutions.begin(), b.substitutions.end());
  return out;
}

namespace {

// offsets[n][p]: start of the block C_p (x) D_{n-p} inside (C (x) D)_n.
std::map<long, std::map<long, std::size_t>> tensor_offsets(const ChainComplex& a, const ChainComplex& b,
                                                           std::map<long, std::size_t>* totals) {
  std::map<long, std::map<long, std::size_t>> off;
  for (const auto& [p, ra] : a.ranks)
    for (const auto& [r, rb] : b.ranks) {
      auto& t = (*totals)[p + r];
      off[p + r][p] = t;
      t += ra * rb;
    }
  return off;
}

}  // namespace

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex out;
  std::map<long, std::size_t> totals;
  const auto off = tensor_offsets(a, b, &totals);
  for (const auto& [n, t] : totals) out.set_rank(n, t);
  for (const auto& [n, blocks] : off) {
    if (!out.ranks.contains(n - 1)) continue;
    IntMatrix m(out.rank(n), out.rank(n - 1));
    const auto& lower = off.at(n - 1);
    for (const auto& [p, start] : blocks) {
      const long r = n - p;
      const std::size_t ra = a.rank(p), rb = b.rank(r);
      const IntMatrix da = a.d(p), db = b.d(r);
      const bool has_left = lower.contains(p - 1), has_right = lower.contains(p);
      const Integer sign = (p % 2 == 0) ? 1 : -1;
      for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < rb; ++j) {
          const std::size_t row = start + i * rb + j;
          if (has_left) {
            const std::size_t base = lower.at(p - 1);
            for (std::size_t i2 = 0; i2 < da.cols(); ++i2)
              if (da(i, i2) != 0) m(row, base + i2 * rb + j) += da(i, i2);
          }
          if (has_right) {
            const std::size_t base = lower.at(p);
            const std::size_t rb2 = b.rank(r - 1);
            for (std::size_t j2 = 0; j2 < db.cols(); ++j2)
              if (db(j, j2) != 0) m(row, base + i * rb2 + j2) += sign * db(j, j2);
          }
        }
    }
    out.set_d(n, std::move(m));
  }
  long valid = kAllDegrees;
  if (!a.empty() && !b.empty())
    valid = std::min(add_valid(a.valid_hi, b.min_degree()), add_valid(b.valid_hi, a.min_degree()));
  out.valid_hi = valid;
  out.substitutions = a.substitutions;
  out.substitutions.insert(out.substitutions.end(), b.substitutions.begin(), b.substitutions.end());
  return out;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap h{tensor_product(f.source, g.source), tensor_product(f.target, g.target), {}};
  std::map<long, std::size_t> ts, tt;
  const auto os = tensor_offsets(f.source, g.source, &ts);
  const auto ot = tensor_offsets(f.target, g.target, &tt);
  for (const auto& [n, blocks] : os) {
    if (!ot.contains(n)) continue;
    IntMatrix m(ts[n], tt[n]);
    for (const auto& [p, start] : blocks) {
      if (!ot.at(n).contains(p)) continue;
      const IntMatrix k = kronecker(f.at(p), g.at(n - p));
      const std::size_t col0 = ot.at(n).at(p);
      for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) m(start + i, col0 + j) = k(i, j);
    }
    if (!m.is_zero()) h.maps[n] = std::move(m);
  }
  return h;
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  ChainMap h{direct_sum(f.source, g.source), direct_sum(f.target, g.target), {}};
  for (const auto& [q, r] : h.source.ranks) {
    IntMatrix m = block_diagonal(f.at(q), g.at(q));
    if (!m.is_zero()) h.maps[q] = std::move(m);
  }
  return h;
}

ChainComplex mapping_fiber(const ChainMap& f) {
  const ChainComplex& c = f.source;
  const ChainComplex& d = f.target;
  ChainComplex out;
  std::set<long> qs = degrees_of(c);
  for (long q : degrees_of(d)) qs.insert(q - 1);
  for (long q : qs) out.set_rank(q, c.rank(q) + d.rank(q + 1));
  for (long q : qs) {
    if (!out.ranks.contains(q - 1)) continue;
    const IntMatrix top = c.d(q).augment(f.at(q));
    const IntMatrix bottom = IntMatrix(d.rank(q + 1), c.rank(q - 1)).augment(d.d(q + 1).scaled(-1));
    out.set_d(q, top.stack(bottom));
  }
  out.valid_hi = std::min(c.valid_hi, add_valid(d.valid_hi, -1));
  out.substitutions = c.substitutions;
  out.substitutions.insert(out.substitutions.end(), d.substitutions.begin(), d.substitutions.end());
  return out;
}

// ---------------------------------------------------------------------------

HomologyGroup homology_group(const ChainComplex& c, long q) {
  if (q > c.valid_hi)
    throw InputError("homology: degree " + std::to_string(q) + " is beyond the valid range (<= " +
                     std::to_string(c.valid_hi) + ")");
  HomologyGroup h;
  h.degree = q;
  const std::size_t n = c.rank(q);
  h.cycles = n == 0 ? IntMatrix(0, 0) : left_kernel(c.d(q));
  const std::size_t k = h.cycles.rows();
  const IntMatrix up = c.d(q + 1);
  IntMatrix b(0, k);
  for (std::size_t i = 0; i < up.rows(); ++i) {
    auto z = solve_left(h.cycles, up.row(i));
    if (!z) throw CertificateError("homology: d^2 != 0 in degree " + std::to_string(q + 1));
    b.append_row(*z);
  }
  h.quotient = cokernel(GroupHom(FgAbGroup::free(up.rows()), FgAbGroup::free(k), std::move(b)));
  h.group = h.quotient.group;
  return h;
}

FgAbGroup homology(const ChainComplex& c, long q) { return homology_group(c, q).group; }

std::map<long, FgAbGroup> homology_table(const ChainComplex& c) {
  std::map<long, FgAbGroup> out;
  if (c.empty()) return out;
  const long hi = std::min(c.max_degree(), c.valid_hi);
  for (long q = c.min_degree(); q <= hi; ++q) out.emplace(q, homology(c, q));
  return out;
}

bool is_acyclic(const ChainComplex& c) {
  if (c.empty()) return true;
  if (c.max_degree() > c.valid_hi)
    throw InputError("acyclicity: the complex extends to degree " + std::to_string(c.max_degree()) +
                     " but is valid only through " + std::to_string(c.valid_hi));
  for (const auto& [q, g] : homology_table(c))
    if (!g.is_trivial()) return false;
  return true;
}

std::string describe_homology(const std::map<long, FgAbGroup>& table) {
  std::string out;
  for (const auto& [q, g] : table) {
    if (g.is_trivial()) continue;
    if (!out.empty()) out += ", ";
    out += "H" + std::to_string(q) + " = " + g.describe();
  }
  return out.empty() ? "0" : out;
}

GroupHom induced_map(const ChainMap& f, const HomologyGroup& hs, const HomologyGroup& ht) {
  if (hs.degree != ht.degree) throw InputError("induced map: degrees differ");
  const IntMatrix fq = f.at(hs.degree);
  IntMatrix m(0, ht.group.n_gens());
  for (std::size_t i = 0; i < hs.group.n_gens(); ++i) {
    const IntVector chain = row_times(row_times(hs.quotient.section.row(i), hs.cycles), fq);
    auto z = solve_left(ht.cycles, chain);
    if (!z) throw CertificateError("induced map: image of a cycle is not a cycle");
    m.append_row(ht.quotient.projection.apply(*z));
  }
  return GroupHom(hs.group, ht.group, std::move(m));
}

LesReport les_check(const ChainMap& f) {
  LesReport r;
  const ChainComplex fib = mapping_fiber(f);
  const ChainComplex& c = f.source;
  const ChainComplex& d = f.target;
  if (c.empty() && d.empty()) return r;
  long top = LONG_MIN, bottom = LONG_MAX;
  for (const ChainComplex* x : {&c, &d, &fib})
    if (!x->empty()) {
      top = std::max(top, x->max_degree());
      bottom = std::min(bottom, x->min_degree());
    }
  r.hi = std::min({top + 1, c.valid_hi, d.valid_hi, fib.valid_hi});
  r.lo = bottom - 1;
  if (r.hi < r.lo) return r;

  // Projection Fib -> C and inclusion D_q -> Fib_{q-1}.
  ChainMap p{fib, c, {}}, delta{shift(d, -1), fib, {}};
  for (long q = r.lo - 1; q <= r.hi + 1; ++q) {
    IntMatrix pm(fib.rank(q), c.rank(q));
    for (std::size_t i = 0; i < c.rank(q); ++i) pm(i, i) = 1;
    p.maps[q] = std::move(pm);
    IntMatrix dm(d.rank(q + 1), fib.rank(q));
    for (std::size_t i = 0; i < d.rank(q + 1); ++i) dm(i, c.rank(q) + i) = 1;
    delta.maps[q] = std::move(dm);
  }

  std::map<long, HomologyGroup> hf, hc, hd;
  for (long q = r.lo - 1; q <= r.hi; ++q) {
    hf.emplace(q, homology_group(fib, q));
    hc.emplace(q, homology_group(c, q));
    hd.emplace(q, homology_group(d, q));
  }
  std::vector<GroupHom> seq;
  for (long q = r.hi; q >= r.lo; --q) {
    seq.push_back(induced_map(p, hf.at(q), hc.at(q)));
    seq.push_back(induced_map(f, hc.at(q), hd.at(q)));
    // H_q(D) is H_{q-1} of the shifted copy, whose cycles are the same rows.
    HomologyGroup hd_shifted = hd.at(q);
    hd_shifted.degree = q - 1;
    seq.push_back(induced_map(delta, hd_shifted, hf.at(q - 1)));
  }
  r.detail = is_exact(seq);
  r.exact = r.detail.exact;
  return r;
}

}  // namespace thr
