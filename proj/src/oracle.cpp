#include "thr/oracle.hpp"

#include <algorithm>
#include <functional>

namespace thr::oracle {

namespace {

Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    const Integer t = m[0][c] * cofactor_det(sub);
    out += (c % 2 == 0) ? t : Integer(-t);
  }
  return out;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Integer> minor_gcd_invariants(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rs[i], cs[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(cofactor_det(sub))).get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

Integer g_level_order_by_enumeration(const InvolutiveRing& a) {
  const auto elems = a.additive().elements();
  const FgAbGroup t = tensor(a.additive(), a.additive());
  const auto twice = [](IntVector v) {
    for (auto& x : v) x *= 2;
    return v;
  };
  const auto diff = [](IntVector u, const IntVector& v) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= v[i];
    return u;
  };
  IntMatrix rels(0, t.n_gens());
  for (const auto& x : elems)
    for (const auto& s : elems)
      for (const auto& y : elems) {
        const IntVector s2 = a.mul(s, s);
        rels.append_row(diff(pure_tensor(x, a.mul(s2, y)), pure_tensor(a.mul(s2, x), y)));
        rels.append_row(diff(pure_tensor(x, twice(a.mul(s, y))), pure_tensor(twice(a.mul(s, x)), y)));
      }
  const Cokernel q = cokernel(GroupHom(FgAbGroup::free(rels.rows()), t, rels));
  return *q.group.order();
}

std::vector<std::vector<long>> compositions(long j, std::size_t q) {
  std::vector<std::vector<long>> out;
  std::vector<long> x(q + 1, 0);
  for (;;) {
    long s = 0;
    for (long v : x) s += v;
    if (s == j) out.push_back(x);
    std::size_t k = q + 1;
    while (k > 0 && x[k - 1] == j) x[--k] = 0;
    if (k == 0) break;
    ++x[k - 1];
  }
  return out;
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

FgAbGroup random_group(Rng& rng, std::size_t max_gens) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
  const std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n)));
  return FgAbGroup(n, random_matrix(rng, r, n, 4));
}

IntMatrix random_involution(Rng& rng, std::size_t n) {
  IntMatrix w(n, n);
  std::size_t i = 0;
  while (i < n) {
    if (i + 1 < n && uniform(rng, 0, 1)) {
      w(i, i + 1) = 1;
      w(i + 1, i) = 1;
      i += 2;
    } else {
      w(i, i) = uniform(rng, 0, 1) ? 1 : -1;
      ++i;
    }
  }
  if (n < 2) return w;
  const std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
  std::size_t c = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
  if (c >= r) ++c;
  const long k = uniform(rng, -2, 2);
  IntMatrix e = IntMatrix::identity(n), einv = IntMatrix::identity(n);
  e(r, c) = k;
  einv(r, c) = -k;
  return einv * w * e;
}

IntMatrix random_polynomial(Rng& rng, const IntMatrix& a) {
  const std::size_t r = a.rows();
  return IntMatrix::identity(r).scaled(uniform(rng, -2, 2)) + a.scaled(uniform(rng, -1, 1)) +
         (a * a).scaled(uniform(rng, -1, 1));
}

namespace {

ChainComplex poly_complex(const IntMatrix& d) {
  ChainComplex c;
  c.set_rank(0, d.rows());
  c.set_rank(1, d.rows());
  c.set_d(1, d);
  return c;
}

}  // namespace

PolyFamily random_poly_family(Rng& rng, std::size_t max_rank) {
  const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_rank)));
  PolyFamily f;
  f.a = random_matrix(rng, r, r, 2);
  f.complex = poly_complex(random_polynomial(rng, f.a));
  return f;
}

ChainMap random_poly_map(Rng& rng, std::size_t max_rank) {
  const PolyFamily f = random_poly_family(rng, max_rank);
  const IntMatrix pd = random_polynomial(rng, f.a);
  const ChainComplex target = poly_complex(pd);
  const IntMatrix s = random_polynomial(rng, f.a);
  std::map<long, IntMatrix> maps;
  maps[0] = s * pd;
  maps[1] = f.complex.d(1) * s;
  return make_chain_map(f.complex, target, std::move(maps));
}

CubeDiagram random_poly_cube(Rng& rng, std::size_t dim, std::size_t max_rank) {
  const PolyFamily f = random_poly_family(rng, max_rank);
  const std::size_t n = std::size_t{1} << dim;
  std::vector<IntMatrix> edge(dim);
  for (auto& m : edge) m = random_polynomial(rng, f.a);
  return make_cube(dim, std::vector<ChainComplex>(n, f.complex), [&](std::size_t, std::size_t k) {
    std::map<long, IntMatrix> out;
    out[0] = edge[k];
    out[1] = edge[k];
    return out;
  });
}

CubeDiagram random_tensor_cube(Rng& rng, std::size_t dim) {
  std::vector<ChainMap> maps;
  for (std::size_t k = 0; k < dim; ++k) maps.push_back(random_poly_map(rng, 2));
  return tensor_cube(maps);
}

}  // namespace thr::oracle
