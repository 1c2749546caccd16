#include "thr/cubes.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "thr/error.hpp"

namespace thr {

namespace {

int popcount(std::size_t b) { return std::popcount(b); }

// (-1)^{number of set bits of b below k}
int edge_sign(std::size_t b, std::size_t k) { return (popcount(b & ((std::size_t{1} << k) - 1)) % 2) ? -1 : 1; }

long add_valid(long v, long k) { return v == kAllDegrees ? kAllDegrees : v + k; }

void add_block(IntMatrix& m, std::size_t r0, std::size_t c0, const IntMatrix& blk, int sign) {
  for (std::size_t i = 0; i < blk.rows(); ++i)
    for (std::size_t j = 0; j < blk.cols(); ++j)
      if (blk(i, j) != 0) m(r0 + i, c0 + j) += sign * blk(i, j);
}

void append_unique(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& s : more)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

// Old vertex of the face with coordinate k fixed, from the face vertex c.
std::size_t insert_bit(std::size_t c, std::size_t k, bool value) {
  const std::size_t low = c & ((std::size_t{1} << k) - 1);
  const std::size_t high = (c >> k) << (k + 1);
  return high | low | (value ? (std::size_t{1} << k) : 0);
}

// Per degree, the offset of each block (vertex) in a totalization where
// vertex b contributes entries[b] in degree q + shift(b).
struct Layout {
  std::map<long, std::map<std::size_t, std::size_t>> offset;
  std::map<long, std::size_t> total;
};

template <class Shift>
Layout layout(const CubeDiagram& q, std::size_t first, Shift shift) {
  Layout l;
  for (std::size_t b = first; b < q.entries.size(); ++b)
    for (const auto& [m, r] : q.entries[b].ranks) {
      const long deg = m - shift(b);
      auto& t = l.total[deg];
      l.offset[deg][b] = t;
      t += r;
    }
  return l;
}

}  // namespace

CubeDiagram make_cube(std::size_t dim, std::vector<ChainComplex> entries, const EdgeMatrices& edge) {
  const std::size_t n = std::size_t{1} << dim;
  if (entries.size() != n) throw InputError("cube: expected " + std::to_string(n) + " entries");
  CubeDiagram q;
  q.dim = dim;
  q.entries = std::move(entries);
  q.edges.assign(n, std::vector<ChainMap>(dim));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < dim; ++k)
      if (!(b >> k & 1)) q.edges[b][k] = make_chain_map(q.entries[b], q.entries[b | (std::size_t{1} << k)], edge(b, k));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t l = k + 1; l < dim; ++l) {
        if ((b >> k & 1) || (b >> l & 1)) continue;
        const ChainMap& a1 = q.edges[b][k];
        const ChainMap& a2 = q.edges[b | (std::size_t{1} << k)][l];
        const ChainMap& b1 = q.edges[b][l];
        const ChainMap& b2 = q.edges[b | (std::size_t{1} << l)][k];
        for (const auto& [m, r] : q.entries[b].ranks)
          if (!(a1.at(m) * a2.at(m) == b1.at(m) * b2.at(m)))
            throw InputError("cube: square at vertex " + std::to_string(b) + " in directions " + std::to_string(k) +
                             ", " + std::to_string(l) + " does not commute in degree " + std::to_string(m));
      }
  for (const auto& e : q.entries) append_unique(q.substitutions, e.substitutions);
  return q;
}

CubeDiagram face(const CubeDiagram& q, std::size_t k, bool value) {
  if (k >= q.dim) throw InputError("cube face: direction out of range");
  CubeDiagram f;
  f.dim = q.dim - 1;
  const std::size_t n = std::size_t{1} << f.dim;
  f.edges.assign(n, std::vector<ChainMap>(f.dim));
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t b = insert_bit(c, k, value);
    f.entries.push_back(q.entries[b]);
    for (std::size_t m = 0; m < f.dim; ++m)
      if (!(c >> m & 1)) f.edges[c][m] = q.edges[b][m < k ? m : m + 1];
  }
  f.substitutions = q.substitutions;
  return f;
}

CubeDiagram cube_with_identity_edge(const CubeDiagram& f, std::size_t k) {
  if (k > f.dim) throw InputError("cube: direction out of range");
  CubeDiagram q;
  q.dim = f.dim + 1;
  const std::size_t n = std::size_t{1} << q.dim;
  q.entries.resize(n);
  q.edges.assign(n, std::vector<ChainMap>(q.dim));
  for (std::size_t c = 0; c < (std::size_t{1} << f.dim); ++c)
    for (bool v : {false, true}) {
      const std::size_t b = insert_bit(c, k, v);
      q.entries[b] = f.entries[c];
      for (std::size_t m = 0; m < f.dim; ++m)
        if (!(c >> m & 1)) q.edges[b][m < k ? m : m + 1] = f.edges[c][m];
      if (!v) q.edges[b][k] = identity_map(f.entries[c]);
    }
  q.substitutions = f.substitutions;
  return q;
}

CubeDiagram direct_sum(const CubeDiagram& a, const CubeDiagram& b) {
  if (a.dim != b.dim) throw InputError("cube sum: dimensions differ");
  CubeDiagram q;
  q.dim = a.dim;
  q.edges.assign(a.entries.size(), std::vector<ChainMap>(a.dim));
  for (std::size_t v = 0; v < a.entries.size(); ++v) {
    q.entries.push_back(direct_sum(a.entries[v], b.entries[v]));
    for (std::size_t k = 0; k < a.dim; ++k)
      if (!(v >> k & 1)) q.edges[v][k] = direct_sum_map(a.edges[v][k], b.edges[v][k]);
  }
  q.substitutions = a.substitutions;
  append_unique(q.substitutions, b.substitutions);
  return q;
}

ChainComplex punctured_limit(const CubeDiagram& q) {
  ChainComplex out;
  const Layout l = layout(q, 1, [](std::size_t b) { return static_cast<long>(popcount(b)) - 1; });
  for (const auto& [deg, t] : l.total) out.set_rank(deg, t);
  for (const auto& [deg, blocks] : l.offset) {
    if (!l.total.contains(deg - 1)) continue;
    IntMatrix m(out.rank(deg), out.rank(deg - 1));
    const auto& lower = l.offset.at(deg - 1);
    for (const auto& [b, row0] : blocks) {
      const long inner = deg + popcount(b) - 1;
      const int sign = (popcount(b) - 1) % 2 ? -1 : 1;
      if (lower.contains(b)) add_block(m, row0, lower.at(b), q.entries[b].d(inner), sign);
      for (std::size_t k = 0; k < q.dim; ++k) {
        if (b >> k & 1) continue;
        const std::size_t c = b | (std::size_t{1} << k);
        if (!lower.contains(c)) continue;
        add_block(m, row0, lower.at(c), q.edges[b][k].at(inner), sign * edge_sign(b, k));
      }
    }
    out.set_d(deg, std::move(m));
  }
  long valid = kAllDegrees;
  for (std::size_t b = 1; b < q.entries.size(); ++b)
    valid = std::min(valid, add_valid(q.entries[b].valid_hi, -(popcount(b) - 1)));
  out.valid_hi = valid;
  out.substitutions = q.substitutions;
  return out;
}

ChainMap limit_comparison(const CubeDiagram& q) {
  const ChainComplex lim = punctured_limit(q);
  const Layout l = layout(q, 1, [](std::size_t b) { return static_cast<long>(popcount(b)) - 1; });
  std::map<long, IntMatrix> maps;
  for (const auto& [m, r] : q.entries[0].ranks) {
    IntMatrix f(r, lim.rank(m));
    for (std::size_t k = 0; k < q.dim; ++k) {
      const std::size_t b = std::size_t{1} << k;
      auto it = l.offset.find(m);
      if (it == l.offset.end() || !it->second.contains(b)) continue;
      add_block(f, 0, it->second.at(b), q.edges[0][k].at(m), 1);
    }
    maps[m] = std::move(f);
  }
  return make_chain_map(q.entries[0], lim, std::move(maps));
}

ChainComplex total_fiber(const CubeDiagram& q) { return mapping_fiber(limit_comparison(q)); }

// ---------------------------------------------------------------------------

RecursionReport tfib_recursion_check(const CubeDiagram& q) {
  RecursionReport rep;
  if (q.dim == 0) return rep;
  const ChainComplex t = total_fiber(q);
  const auto ht = homology_table(t);
  for (std::size_t k = 0; k < q.dim; ++k) {
    Check c{"direction " + std::to_string(k), true, {}};
    const CubeDiagram f0 = face(q, k, false), f1 = face(q, k, true);
    const ChainComplex t0 = total_fiber(f0), t1 = total_fiber(f1);
    // Blocks of a total fiber in degree d: vertex c contributes F(c)_{d + |c|}.
    const auto shift = [](std::size_t c) { return static_cast<long>(popcount(c)); };
    const Layout l0 = layout(f0, 0, shift), l1 = layout(f1, 0, shift);
    std::map<long, IntMatrix> maps;
    for (const auto& [deg, blocks] : l0.offset) {
      IntMatrix m(t0.rank(deg), t1.rank(deg));
      auto it = l1.offset.find(deg);
      for (const auto& [cv, row0] : blocks) {
        if (it == l1.offset.end() || !it->second.contains(cv)) continue;
        add_block(m, row0, it->second.at(cv), q.edges[insert_bit(cv, k, false)][k].at(deg + popcount(cv)), 1);
      }
      maps[deg] = std::move(m);
    }
    try {
      const ChainMap g = make_chain_map(t0, t1, std::move(maps));
      const LesReport les = les_check(g);
      const auto hf = homology_table(mapping_fiber(g));
      std::set<long> degs;
      for (const auto& [d, h] : ht) degs.insert(d);
      for (const auto& [d, h] : hf) degs.insert(d);
      for (long d : degs) {
        const FgAbGroup a = ht.contains(d) ? ht.at(d) : FgAbGroup();
        const FgAbGroup b = hf.contains(d) ? hf.at(d) : FgAbGroup();
        if (!a.isomorphic(b)) {
          c.ok = false;
          c.detail = "H" + std::to_string(d) + ": tfib " + a.describe() + " vs fiber " + b.describe();
          break;
        }
      }
      if (c.ok && !les.exact) {
        c.ok = false;
        c.detail = "long exact sequence of the face map is not exact";
      }
    } catch (const Error& e) {
      c.ok = false;
      c.detail = e.what();
    }
    rep.ok = rep.ok && c.ok;
    rep.directions.push_back(std::move(c));
  }
  return rep;
}

CubeDiagram tensor_cube(const std::vector<ChainMap>& maps) {
  const std::size_t dim = maps.size();
  const std::size_t n = std::size_t{1} << dim;
  std::vector<ChainComplex> entries;
  for (std::size_t b = 0; b < n; ++b) {
    ChainComplex c = unit_complex();
    for (std::size_t k = 0; k < dim; ++k) c = tensor_product(c, (b >> k & 1) ? maps[k].target : maps[k].source);
    entries.push_back(std::move(c));
  }
  return make_cube(dim, std::move(entries), [&](std::size_t b, std::size_t k) {
    ChainMap f = identity_map(unit_complex());
    for (std::size_t l = 0; l < dim; ++l) {
      const ChainComplex& x = (b >> l & 1) ? maps[l].target : maps[l].source;
      f = tensor_map(f, l == k ? maps[l] : identity_map(x));
    }
    return f.maps;
  });
}

SmashReport smash_cube_check(const std::vector<ChainMap>& maps) {
  SmashReport rep;
  ChainComplex lhs = unit_complex();
  for (const auto& f : maps) lhs = tensor_product(lhs, mapping_fiber(f));
  rep.fibers_tensor = homology_table(lhs);
  rep.total_fiber = homology_table(total_fiber(tensor_cube(maps)));
  std::set<long> degs;
  for (const auto& [d, h] : rep.fibers_tensor) degs.insert(d);
  for (const auto& [d, h] : rep.total_fiber) degs.insert(d);
  for (long d : degs) {
    const FgAbGroup a = rep.fibers_tensor.contains(d) ? rep.fibers_tensor.at(d) : FgAbGroup();
    const FgAbGroup b = rep.total_fiber.contains(d) ? rep.total_fiber.at(d) : FgAbGroup();
    if (!a.isomorphic(b)) {
      rep.ok = false;
      rep.detail = "H" + std::to_string(d) + ": " + a.describe() + " vs " + b.describe();
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::string subset_label(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

ChainComplex torus_model(std::size_t d, std::size_t min_degree) {
  ChainComplex c;
  for (std::size_t q = min_degree; q <= d; ++q) {
    std::vector<std::string> names;
    for (const auto& s : subsets(d, q)) names.push_back(subset_label(s));
    const std::size_t r = names.size();
    c.set_rank(static_cast<long>(q), r, std::move(names));
  }
  return c;
}

ChainComplex smash_model(std::size_t d) { return torus_model(d, d); }

ChainMap torus_map(const IntMatrix& a, std::size_t min_degree) {
  const ChainComplex src = torus_model(a.rows(), min_degree);
  const ChainComplex tgt = torus_model(a.cols(), min_degree);
  std::map<long, IntMatrix> maps;
  for (std::size_t q = min_degree; q <= std::min(a.rows(), a.cols()); ++q) {
    const auto rs = subsets(a.rows(), q), cs = subsets(a.cols(), q);
    IntMatrix m(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) {
        IntMatrix minor(q, q);
        for (std::size_t r = 0; r < q; ++r)
          for (std::size_t s = 0; s < q; ++s) minor(r, s) = a(rs[i][r], cs[j][s]);
        m(i, j) = q == 0 ? Integer(1) : determinant(minor);
      }
    maps[static_cast<long>(q)] = std::move(m);
  }
  return make_chain_map(src, tgt, std::move(maps));
}

CofiberReport h_map_cofiber_check(std::size_t d) {
  if (d == 0) throw InputError("h map: d must be positive");
  CofiberReport rep;
  rep.d = d;
  IntMatrix a(d - 1, d);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    a(i, i) = 1;
    a(i, d - 1) = -1;
  }
  const ChainMap h = torus_map(a, d - 1);
  // Project the target onto its smash part (top degree).
  std::map<long, IntMatrix> proj;
  proj[static_cast<long>(d)] = IntMatrix::identity(1);
  const ChainMap p = make_chain_map(h.target, smash_model(d), std::move(proj));
  const ChainMap hs = compose(h, p);
  rep.homology = homology_table(shift(mapping_fiber(hs), 1));
  const long top = static_cast<long>(d);
  for (const auto& [q, g] : rep.homology) {
    const bool want = q == top ? (g.free_rank() == 2 && g.invariant_factors().empty()) : g.is_trivial();
    if (!want) {
      rep.ok = false;
      rep.detail = "H" + std::to_string(q) + " = " + g.describe();
    }
  }
  if (!rep.homology.contains(top)) {
    rep.ok = false;
    rep.detail = "no homology in degree " + std::to_string(top);
  }
  return rep;
}

}  // namespace thr
