#include "thr/dihedral.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <set>

#include "thr/error.hpp"

namespace thr {

namespace {

using Tuple = IntVector;

std::string label_string(const IntVector& v) { return vector_to_string(v); }

// ---------------------------------------------------------------------------
// Dihedral nerve tuples (x_0, ..., x_q), each slot of width n.

Tuple slot_sum(const Tuple& t, std::size_t n, std::size_t a, std::size_t b) {
  Tuple s(n);
  for (std::size_t c = 0; c < n; ++c) s[c] = t[a * n + c] + t[b * n + c];
  return s;
}

Tuple di_face(const Tuple& t, std::size_t n, std::size_t q, std::size_t i) {
  Tuple out;
  out.reserve(q * n);
  if (i < q) {
    for (std::size_t k = 0; k <= q; ++k) {
      if (k == i + 1) continue;
      if (k == i) {
        Tuple s = slot_sum(t, n, i, i + 1);
        out.insert(out.end(), s.begin(), s.end());
      } else {
        out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(k * n),
                   t.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
      }
    }
  } else {
    Tuple s = slot_sum(t, n, q, 0);
    out.insert(out.end(), s.begin(), s.end());
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(n), t.begin() + static_cast<std::ptrdiff_t>(q * n));
  }
  return out;
}

Tuple insert_zero_slot(const Tuple& t, std::size_t n, std::size_t slot) {
  Tuple out(t.begin(), t.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(slot * n), n, Integer(0));
  return out;
}

Tuple di_degen(const Tuple& t, std::size_t n, std::size_t i) { return insert_zero_slot(t, n, i + 1); }

Tuple di_rot(const Tuple& t, std::size_t n, std::size_t q) {
  Tuple out(t.end() - static_cast<std::ptrdiff_t>(n), t.end());
  out.insert(out.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(q * n));
  return out;
}

Tuple apply_sigma(std::span<const Integer> x, const IntMatrix& sigma) { return row_times(x, sigma); }

Tuple di_inv(const Tuple& t, std::size_t n, std::size_t q, const IntMatrix& sigma) {
  Tuple out;
  out.reserve(t.size());
  for (std::size_t k = 0; k <= q; ++k) {
    const std::size_t src = k == 0 ? 0 : q + 1 - k;
    Tuple s = apply_sigma(std::span<const Integer>(t).subspan(src * n, n), sigma);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Real nerve tuples (x_1, ..., x_q).

Tuple real_face(const Tuple& t, std::size_t n, std::size_t q, std::size_t i) {
  if (i == 0) return Tuple(t.begin() + static_cast<std::ptrdiff_t>(n), t.end());
  if (i == q) return Tuple(t.begin(), t.end() - static_cast<std::ptrdiff_t>(n));
  Tuple out;
  for (std::size_t k = 0; k < q; ++k) {
    if (k == i) continue;
    if (k == i - 1) {
      Tuple s = slot_sum(t, n, i - 1, i);
      out.insert(out.end(), s.begin(), s.end());
    } else {
      out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(k * n),
                 t.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    }
  }
  return out;
}

Tuple real_degen(const Tuple& t, std::size_t n, std::size_t i) { return insert_zero_slot(t, n, i); }

Tuple real_inv(const Tuple& t, std::size_t n, std::size_t q, const IntMatrix& sigma) {
  Tuple out;
  for (std::size_t k = 0; k < q; ++k) {
    Tuple s = apply_sigma(std::span<const Integer>(t).subspan((q - 1 - k) * n, n), sigma);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t index_of(const std::vector<IntVector>& sorted, const IntVector& label) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), label);
  if (it == sorted.end() || *it != label) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

template <class F>
IndexMap map_level(const std::vector<IntVector>& src, const std::vector<IntVector>& dst, F f, const char* what) {
  IndexMap out(src.size());
  long missing = -1;
#pragma omp parallel for schedule(static) if (src.size() >= 256)
  for (long x = 0; x < static_cast<long>(src.size()); ++x) {
    const std::size_t y = index_of(dst, f(src[static_cast<std::size_t>(x)]));
    out[static_cast<std::size_t>(x)] = y;
    if (y == dst.size()) {
#pragma omp critical(thr_map_level)
      if (missing < 0 || x < missing) missing = x;
    }
  }
  if (missing >= 0)
    throw CertificateError(std::string(what) + " leaves the simplex set at " +
                           label_string(src[static_cast<std::size_t>(missing)]));
  return out;
}

struct TupleOps {
  std::function<Tuple(const Tuple&, std::size_t q, std::size_t i)> face;
  std::function<Tuple(const Tuple&, std::size_t q, std::size_t i)> degen;
  std::function<Tuple(const Tuple&, std::size_t q)> rot;
  std::function<Tuple(const Tuple&, std::size_t q)> inv;
};

TruncDihedralSet build(std::vector<std::vector<IntVector>> levels, const TupleOps& ops) {
  TruncDihedralSet x;
  x.q_max = levels.size() - 1;
  x.simplices = std::move(levels);
  x.face.resize(x.q_max + 1);
  x.degen.resize(x.q_max + 1);
  for (std::size_t q = 0; q <= x.q_max; ++q) {
    const auto& cur = x.simplices[q];
    if (q >= 1)
      for (std::size_t i = 0; i <= q; ++i)
        x.face[q].push_back(map_level(cur, x.simplices[q - 1], [&](const Tuple& t) { return ops.face(t, q, i); }, "face"));
    if (q < x.q_max)
      for (std::size_t i = 0; i <= q; ++i)
        x.degen[q].push_back(
            map_level(cur, x.simplices[q + 1], [&](const Tuple& t) { return ops.degen(t, q, i); }, "degeneracy"));
    if (ops.rot) x.rot.push_back(map_level(cur, cur, [&](const Tuple& t) { return ops.rot(t, q); }, "rotation"));
    if (ops.inv) x.inv.push_back(map_level(cur, cur, [&](const Tuple& t) { return ops.inv(t, q); }, "involution"));
  }
  return x;
}

IntVector difference(std::span<const Integer> a, std::span<const Integer> b) {
  IntVector d(a.begin(), a.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return d;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

AffineMonoid power(const AffineMonoid& m, std::size_t k) {
  AffineMonoid p = m;
  for (std::size_t i = 1; i < k; ++i) p = AffineMonoid::product(p, m);
  return p;
}

IntMatrix sum_map(std::size_t n, std::size_t copies) {
  IntMatrix w(0, n);
  for (std::size_t c = 0; c < copies; ++c) w = w.stack(IntMatrix::identity(n));
  return w;
}

std::vector<IntVector> recursive_tuples(const AffineMonoid& m, std::size_t q, std::span<const Integer> v) {
  if (q == 0) return reference::weight_tuples(m, 0, v);
  std::vector<IntVector> out;
  const std::size_t n = m.rank();
  std::vector<IntVector> firsts;
  for (const auto& pair : reference::weight_tuples(m, 1, v)) firsts.emplace_back(pair.begin(), pair.begin() + static_cast<std::ptrdiff_t>(n));
  firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
  for (const auto& u : firsts) {
    for (auto& rest : recursive_tuples(m, q - 1, difference(v, u))) {
      IntVector t = u;
      t.insert(t.end(), rest.begin(), rest.end());
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool TruncDihedralSet::is_degenerate(std::size_t q, std::size_t x) const {
  if (q == 0) return false;
  for (const auto& s : degen[q - 1])
    if (std::find(s.begin(), s.end(), x) != s.end()) return true;
  return false;
}

std::vector<std::size_t> TruncDihedralSet::nondegenerate(std::size_t q) const {
  std::vector<bool> deg(size(q));
  if (q > 0)
    for (const auto& s : degen[q - 1])
      for (auto y : s) deg[y] = true;
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(q); ++x)
    if (!deg[x]) out.push_back(x);
  return out;
}

std::optional<std::size_t> TruncDihedralSet::find(std::size_t q, std::span<const Integer> label) const {
  const std::size_t i = index_of(simplices[q], IntVector(label.begin(), label.end()));
  if (i == simplices[q].size()) return std::nullopt;
  return i;
}

namespace reference {

std::vector<IntVector> weight_tuples(const AffineMonoid& m, std::size_t q, std::span<const Integer> v) {
  const std::size_t n = m.rank();
  std::vector<IntVector> out;
  for (auto& e : elements_of_weight(power(m, q + 1), sum_map(n, q + 1), v)) out.push_back(std::move(e.value));
  return out;
}

}  // namespace reference

std::vector<IntVector> weight_tuples(const AffineMonoid& m, std::size_t q, std::span<const Integer> v) {
  if (q == 0) return reference::weight_tuples(m, 0, v);
  const std::size_t n = m.rank();
  std::vector<IntVector> firsts;
  for (const auto& pair : reference::weight_tuples(m, 1, v)) firsts.emplace_back(pair.begin(), pair.begin() + static_cast<std::ptrdiff_t>(n));
  firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
  std::vector<std::vector<IntVector>> parts(firsts.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(firsts.size()); ++k) {
    try {
      const IntVector& u = firsts[static_cast<std::size_t>(k)];
      auto rest = recursive_tuples(m, q - 1, difference(v, u));
      auto& part = parts[static_cast<std::size_t>(k)];
      for (auto& r : rest) {
        IntVector t = u;
        t.insert(t.end(), r.begin(), r.end());
        part.push_back(std::move(t));
      }
    } catch (...) {
#pragma omp critical(thr_weight_tuples)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<IntVector> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

TruncDihedralSet dihedral_nerve_piece(const AffineMonoid& m, const std::vector<IntVector>& weights, std::size_t q_max) {
  const std::size_t n = m.rank();
  std::vector<IntVector> ws = weights;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  for (const auto& v : ws) {
    if (v.size() != n) throw InputError("nerve piece: weight has wrong length");
    if (!std::binary_search(ws.begin(), ws.end(), m.apply_involution(v)))
      throw InputError("nerve piece: weight set not closed under the involution at " + vector_to_string(v));
  }
  const auto lambda = positive_grading(m, IntMatrix::identity(n));
  if (!lambda) throw InfeasibleError("nerve piece: monoid has no positive grading, pieces are infinite");

  std::vector<std::vector<IntVector>> levels(q_max + 1);
  for (std::size_t q = 0; q <= q_max; ++q) {
    for (const auto& v : ws) {
      auto t = weight_tuples(m, q, v);
      levels[q].insert(levels[q].end(), t.begin(), t.end());
    }
    std::sort(levels[q].begin(), levels[q].end());
  }
  const IntMatrix sigma = m.involution();
  TupleOps ops{[n](const Tuple& t, std::size_t q, std::size_t i) { return di_face(t, n, q, i); },
               [n](const Tuple& t, std::size_t, std::size_t i) { return di_degen(t, n, i); },
               [n](const Tuple& t, std::size_t q) { return di_rot(t, n, q); },
               [n, sigma](const Tuple& t, std::size_t q) { return di_inv(t, n, q, sigma); }};
  TruncDihedralSet x = build(std::move(levels), ops);
  // A nondegenerate simplex has x_1, ..., x_q nonzero, each of grade >= 1.
  Integer bound = 0;
  for (const auto& v : ws) bound = std::max(bound, dot(v, *lambda));
  x.nondegenerate_bound = bound.get_ui();
  return x;
}

TruncDihedralSet real_nerve(const AffineMonoid& m, const Integer& budget, std::size_t q_max) {
  const std::size_t n = m.rank();
  const IntMatrix id = IntMatrix::identity(n);
  const auto lambda = positive_grading(m, id);
  if (!lambda) throw InfeasibleError("real nerve: monoid has no positive grading; supply a finite model");
  if (row_times(*lambda, m.involution().transpose()) != *lambda)
    throw InfeasibleError("real nerve: grading is not invariant under the involution");
  const auto elems = elements_up_to_grade(m, id, *lambda, budget);

  std::vector<std::vector<IntVector>> levels(q_max + 1);
  auto extend = [&](auto&& self, std::size_t q, std::size_t filled, const Integer& left, IntVector& acc) -> void {
    if (filled == q) {
      levels[q].push_back(acc);
      return;
    }
    for (const auto& e : elems) {
      const Integer g = dot(e.value, *lambda);
      if (g > left) continue;
      acc.insert(acc.end(), e.value.begin(), e.value.end());
      self(self, q, filled + 1, left - g, acc);
      acc.resize(acc.size() - n);
    }
  };
  for (std::size_t q = 0; q <= q_max; ++q) {
    IntVector acc;
    extend(extend, q, 0, budget, acc);
    std::sort(levels[q].begin(), levels[q].end());
    levels[q].erase(std::unique(levels[q].begin(), levels[q].end()), levels[q].end());
  }
  const IntMatrix sigma = m.involution();
  TupleOps ops{[n](const Tuple& t, std::size_t q, std::size_t i) { return real_face(t, n, q, i); },
               [n](const Tuple& t, std::size_t, std::size_t i) { return real_degen(t, n, i); }, nullptr,
               [n, sigma](const Tuple& t, std::size_t q) { return real_inv(t, n, q, sigma); }};
  TruncDihedralSet x = build(std::move(levels), ops);
  x.nondegenerate_bound = budget.get_ui();
  return x;
}

TruncDihedralSet circle_model(std::size_t q_max) {
  std::vector<std::vector<IntVector>> levels(q_max + 1);
  for (std::size_t q = 0; q <= q_max; ++q)
    for (std::size_t k = 0; k <= q; ++k) levels[q].push_back({Integer(static_cast<unsigned long>(k))});
  auto norm = [](long k, std::size_t len) -> Tuple {
    if (k <= 0 || static_cast<std::size_t>(k) >= len) return {Integer(0)};
    return {Integer(k)};
  };
  TupleOps ops{[norm](const Tuple& t, std::size_t q, std::size_t i) {
                 const long k = t[0].get_si();
                 if (k == 0) return Tuple{Integer(0)};
                 return norm(static_cast<long>(i) < k ? k - 1 : k, q);
               },
               [norm](const Tuple& t, std::size_t q, std::size_t i) {
                 const long k = t[0].get_si();
                 if (k == 0) return Tuple{Integer(0)};
                 return norm(static_cast<long>(i) < k ? k + 1 : k, q + 2);
               },
               nullptr,
               [norm](const Tuple& t, std::size_t q) {
                 const long k = t[0].get_si();
                 if (k == 0) return Tuple{Integer(0)};
                 return norm(static_cast<long>(q) + 1 - k, q + 1);
               }};
  TruncDihedralSet x = build(std::move(levels), ops);
  x.nondegenerate_bound = 1;
  return x;
}

TruncDihedralSet point(std::size_t q_max) {
  return dihedral_nerve_piece(AffineMonoid::trivial(), {IntVector{}}, q_max);
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_structure(const TruncDihedralSet& x) {
  ValidationReport r;
  auto fail = [&](const std::string& what, std::size_t q, std::size_t s) {
    if (r.ok) {
      r.ok = false;
      r.first_violation = what + " fails in degree " + std::to_string(q) + " at simplex " + std::to_string(s) +
                          " " + label_string(x.simplices[q][s]);
    }
  };
  auto check = [&](bool ok, const std::string& what, std::size_t q, std::size_t s) {
    ++r.checks;
    if (!ok) fail(what, q, s);
  };
  const auto& d = x.face;
  const auto& sd = x.degen;
  for (std::size_t q = 0; q <= x.q_max && r.ok; ++q) {
    for (std::size_t s = 0; s < x.size(q); ++s) {
      if (q >= 2)
        for (std::size_t j = 1; j <= q; ++j)
          for (std::size_t i = 0; i < j; ++i)
            check(d[q - 1][i][d[q][j][s]] == d[q - 1][j - 1][d[q][i][s]],
                  "d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                      std::to_string(i),
                  q, s);
      if (q + 1 <= x.q_max)
        for (std::size_t j = 0; j <= q; ++j)
          for (std::size_t i = 0; i <= q + 1; ++i) {
            const std::size_t lhs = d[q + 1][i][sd[q][j][s]];
            std::size_t rhs;
            if (i < j)
              rhs = sd[q - 1][j - 1][d[q][i][s]];
            else if (i == j || i == j + 1)
              rhs = s;
            else
              rhs = sd[q - 1][j][d[q][i - 1][s]];
            check(lhs == rhs, "d_" + std::to_string(i) + " s_" + std::to_string(j), q, s);
          }
      if (q + 2 <= x.q_max)
        for (std::size_t j = 0; j <= q; ++j)
          for (std::size_t i = 0; i <= j; ++i)
            check(sd[q + 1][i][sd[q][j][s]] == sd[q + 1][j + 1][sd[q][i][s]],
                  "s_" + std::to_string(i) + " s_" + std::to_string(j), q, s);

      if (x.has_rotation()) {
        const auto& t = x.rot;
        std::size_t y = s;
        for (std::size_t k = 0; k <= q; ++k) y = t[q][y];
        check(y == s, "t^(q+1) = id", q, s);
        if (q >= 1) {
          check(d[q][0][t[q][s]] == d[q][q][s], "d_0 t = d_q", q, s);
          for (std::size_t i = 1; i <= q; ++i)
            check(d[q][i][t[q][s]] == t[q - 1][d[q][i - 1][s]], "d_" + std::to_string(i) + " t = t d_" + std::to_string(i - 1), q, s);
        }
        if (q + 1 <= x.q_max) {
          check(sd[q][0][t[q][s]] == t[q + 1][t[q + 1][sd[q][q][s]]], "s_0 t = t^2 s_q", q, s);
          for (std::size_t i = 1; i <= q; ++i)
            check(sd[q][i][t[q][s]] == t[q + 1][sd[q][i - 1][s]], "s_" + std::to_string(i) + " t = t s_" + std::to_string(i - 1), q, s);
        }
      }
      if (x.has_involution()) {
        const auto& w = x.inv;
        check(w[q][w[q][s]] == s, "w^2 = id", q, s);
        if (q >= 1)
          for (std::size_t i = 0; i <= q; ++i)
            check(d[q][i][w[q][s]] == w[q - 1][d[q][q - i][s]], "d_" + std::to_string(i) + " w = w d_" + std::to_string(q - i), q, s);
        if (q + 1 <= x.q_max)
          for (std::size_t i = 0; i <= q; ++i)
            check(sd[q][i][w[q][s]] == w[q + 1][sd[q][q - i][s]], "s_" + std::to_string(i) + " w = w s_" + std::to_string(q - i), q, s);
        if (x.has_rotation()) check(x.rot[q][w[q][x.rot[q][s]]] == w[q][s], "w t = t^-1 w", q, s);
      }
      if (x.has_action()) {
        const auto& a = x.action;
        std::size_t y = s;
        for (std::size_t k = 0; k < x.action_order; ++k) y = a[q][y];
        check(y == s, "action has the stated order", q, s);
        if (q >= 1)
          for (std::size_t i = 0; i <= q; ++i)
            check(d[q][i][a[q][s]] == a[q - 1][d[q][i][s]], "action commutes with d_" + std::to_string(i), q, s);
        if (q + 1 <= x.q_max)
          for (std::size_t i = 0; i <= q; ++i)
            check(sd[q][i][a[q][s]] == a[q + 1][sd[q][i][s]], "action commutes with s_" + std::to_string(i), q, s);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subdivision and fixed points

TruncDihedralSet sd_sigma(const TruncDihedralSet& x) {
  if (!x.has_involution()) throw InputError("sd_sigma: no involution");
  if (x.q_max < 1) throw InputError("sd_sigma: truncation degree must be at least 1");
  TruncDihedralSet out;
  out.q_max = (x.q_max - 1) / 2;
  out.face.resize(out.q_max + 1);
  out.degen.resize(out.q_max + 1);
  out.substitutions = x.substitutions;
  for (std::size_t q = 0; q <= out.q_max; ++q) {
    const std::size_t big = 2 * q + 1;
    out.simplices.push_back(x.simplices[big]);
    if (q >= 1)
      for (std::size_t i = 0; i <= q; ++i) {
        IndexMap m(x.size(big));
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = x.face[big - 1][i][x.face[big][big - i][s]];
        out.face[q].push_back(std::move(m));
      }
    if (q < out.q_max)
      for (std::size_t i = 0; i <= q; ++i) {
        IndexMap m(x.size(big));
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = x.degen[big + 1][i][x.degen[big][big - i][s]];
        out.degen[q].push_back(std::move(m));
      }
    out.action.push_back(x.inv[big]);
  }
  out.action_order = 2;
  return out;
}

TruncDihedralSet sd_r(const TruncDihedralSet& x, std::size_t r) {
  if (r == 0) throw InputError("sd_r: r must be positive");
  if (!x.has_rotation()) throw InputError("sd_r: no cyclic structure");
  if (x.q_max + 1 < r) throw InputError("sd_r: truncation degree too small");
  TruncDihedralSet out;
  out.q_max = (x.q_max + 1) / r - 1;
  out.face.resize(out.q_max + 1);
  out.degen.resize(out.q_max + 1);
  out.substitutions = x.substitutions;
  for (std::size_t q = 0; q <= out.q_max; ++q) {
    const std::size_t big = r * (q + 1) - 1;
    out.simplices.push_back(x.simplices[big]);
    if (q >= 1)
      for (std::size_t i = 0; i <= q; ++i) {
        IndexMap m(x.size(big));
        for (std::size_t s = 0; s < m.size(); ++s) {
          std::size_t y = s, deg = big;
          for (std::size_t k = r; k-- > 0; --deg) y = x.face[deg][i + k * (q + 1)][y];
          m[s] = y;
        }
        out.face[q].push_back(std::move(m));
      }
    if (q < out.q_max)
      for (std::size_t i = 0; i <= q; ++i) {
        IndexMap m(x.size(big));
        for (std::size_t s = 0; s < m.size(); ++s) {
          std::size_t y = s, deg = big;
          for (std::size_t k = r; k-- > 0; ++deg) y = x.degen[deg][i + k * (q + 1)][y];
          m[s] = y;
        }
        out.degen[q].push_back(std::move(m));
      }
    IndexMap a(x.size(big));
    for (std::size_t s = 0; s < a.size(); ++s) {
      std::size_t y = s;
      for (std::size_t k = 0; k <= q; ++k) y = x.rot[big][y];
      a[s] = y;
    }
    out.action.push_back(std::move(a));
  }
  out.action_order = r;
  return out;
}

TruncDihedralSet fixed_subset(const TruncDihedralSet& x) {
  if (!x.has_action()) throw InputError("fixed_subset: no levelwise action");
  TruncDihedralSet out;
  out.q_max = x.q_max;
  out.face.resize(x.q_max + 1);
  out.degen.resize(x.q_max + 1);
  out.substitutions = x.substitutions;
  std::vector<IndexMap> keep(x.q_max + 1);
  std::vector<std::vector<std::size_t>> pos(x.q_max + 1);
  for (std::size_t q = 0; q <= x.q_max; ++q) {
    pos[q].assign(x.size(q), x.size(q));
    out.simplices.emplace_back();
    for (std::size_t s = 0; s < x.size(q); ++s)
      if (x.action[q][s] == s) {
        pos[q][s] = keep[q].size();
        keep[q].push_back(s);
        out.simplices[q].push_back(x.simplices[q][s]);
      }
  }
  auto restrict = [&](const IndexMap& m, std::size_t q_src, std::size_t q_dst, const char* what) {
    IndexMap r(keep[q_src].size());
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::size_t y = m[keep[q_src][k]];
      if (pos[q_dst][y] == x.size(q_dst))
        throw CertificateError(std::string("fixed_subset: ") + what + " does not preserve fixed simplices");
      r[k] = pos[q_dst][y];
    }
    return r;
  };
  for (std::size_t q = 0; q <= x.q_max; ++q) {
    if (q >= 1)
      for (const auto& m : x.face[q]) out.face[q].push_back(restrict(m, q, q - 1, "face"));
    if (q < x.q_max)
      for (const auto& m : x.degen[q]) out.degen[q].push_back(restrict(m, q, q + 1, "degeneracy"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Components

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Pi0 pi0(const TruncDihedralSet& x) {
  UnionFind uf(x.size(0));
  if (x.q_max >= 1)
    for (std::size_t e = 0; e < x.size(1); ++e) uf.unite(x.face[1][0][e], x.face[1][1][e]);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < x.size(0); ++v) groups[uf.find(v)].push_back(v);
  Pi0 p;
  for (auto& [root, members] : groups) p.classes.push_back(std::move(members));
  p.count = p.classes.size();
  return p;
}

WindowedPi0 pi0_windowed(const EdgeFamily& edges, long bound) {
  if (bound < 0) throw InputError("pi0_windowed: negative bound");
  WindowedPi0 out;
  std::vector<std::vector<std::size_t>> labelings;
  for (long b = bound; b <= bound + 2; ++b) {
    UnionFind uf(static_cast<std::size_t>(2 * b + 1));
    for (const auto& [u, v] : edges(b)) {
      if (std::abs(u) > b || std::abs(v) > b) throw InputError("pi0_windowed: edge outside the window");
      uf.unite(static_cast<std::size_t>(u + b), static_cast<std::size_t>(v + b));
    }
    std::map<std::size_t, std::size_t> relabel;
    std::vector<std::size_t> labels;
    for (long v = -bound; v <= bound; ++v) {
      const std::size_t root = uf.find(static_cast<std::size_t>(v + b));
      auto it = relabel.emplace(root, relabel.size()).first;
      labels.push_back(it->second);
    }
    out.counts.push_back(relabel.size());
    labelings.push_back(std::move(labels));
  }
  out.stable = labelings[0] == labelings[1] && labelings[1] == labelings[2];
  out.count = out.counts[0];
  out.labels = labelings[0];
  return out;
}

std::vector<std::pair<long, long>> sym_z_edges(long b) {
  std::vector<std::pair<long, long>> out;
  const IntMatrix sigma = IntMatrix::identity(1);
  for (long x1 = -b; x1 <= b; ++x1)
    for (long x2 = -b; x2 <= b; ++x2) {
      const Tuple t{Integer(x1), Integer(x2), Integer(x1)};
      if (real_inv(t, 1, 3, sigma) != t) continue;
      // Faces of sd_sigma in degree 1: d_0 d_3 and d_1 d_2.
      const Tuple a = real_face(real_face(t, 1, 3, 3), 1, 2, 0);
      const Tuple c = real_face(real_face(t, 1, 3, 2), 1, 2, 1);
      const long u = a[0].get_si(), v = c[0].get_si();
      if (std::abs(u) <= b && std::abs(v) <= b) out.emplace_back(u, v);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism checks

namespace {

Tuple repeat(const Tuple& t, std::size_t r) {
  Tuple out;
  for (std::size_t k = 0; k < r; ++k) out.insert(out.end(), t.begin(), t.end());
  return out;
}

// Calls f on every composition of `total` into `parts` nonnegative parts.
template <class F>
void for_each_composition(long total, std::size_t parts, F&& f) {
  std::vector<long> c(parts, 0);
  auto rec = [&](auto&& self, std::size_t k, long left) -> void {
    if (k + 1 == parts) {
      c[k] = left;
      f(c);
      return;
    }
    for (long a = 0; a <= left; ++a) {
      c[k] = a;
      self(self, k + 1, left - a);
    }
  };
  if (parts > 0) rec(rec, 0, total);
}

bool periodic(const std::vector<long>& c, std::size_t period) {
  for (std::size_t i = 0; i + period < c.size(); ++i)
    if (c[i] != c[i + period]) return false;
  return true;
}

Tuple to_tuple(const std::vector<long>& c) {
  Tuple t;
  for (long a : c) t.emplace_back(a);
  return t;
}

}  // namespace

IsoCheckReport power_map_fixed_iso_check(std::size_t j, std::size_t r, std::size_t q_max) {
  if (r == 0) throw InputError("power map: r must be positive");
  IsoCheckReport rep;
  const AffineMonoid nat = AffineMonoid::naturals();
  const IntMatrix id = IntMatrix::identity(1);
  auto fail = [&](const std::string& why) {
    if (rep.ok) {
      rep.ok = false;
      rep.failure = why;
    }
  };
  auto sd_face = [&](Tuple y, std::size_t q, std::size_t i) {
    std::size_t deg = r * (q + 1) - 1;
    for (std::size_t k = r; k-- > 0; --deg) y = di_face(y, 1, deg, i + k * (q + 1));
    return y;
  };
  auto sd_degen = [&](Tuple y, std::size_t q, std::size_t i) {
    for (std::size_t k = r; k-- > 0;) y = di_degen(y, 1, i + k * (q + 1));
    return y;
  };
  for (std::size_t q = 0; q <= q_max; ++q) {
    const std::size_t big = r * (q + 1) - 1;
    const auto xs = weight_tuples(nat, q, std::vector<Integer>{Integer(static_cast<unsigned long>(j))});
    // t^{q+1} fixes a tuple of length r(q+1) iff the tuple has period q + 1.
    std::vector<Tuple> fixed;
    for_each_composition(static_cast<long>(r * j), big + 1, [&](const std::vector<long>& c) {
      if (periodic(c, q + 1)) fixed.push_back(to_tuple(c));
    });
    std::vector<Tuple> image;
    for (const auto& x : xs) image.push_back(repeat(x, r));
    std::sort(image.begin(), image.end());
    rep.source_counts.push_back(xs.size());
    rep.target_counts.push_back(fixed.size());
    if (image != fixed) fail("degree " + std::to_string(q) + ": power map is not a bijection onto the fixed simplices");
    for (const auto& x : xs) {
      const Tuple px = repeat(x, r);
      if (q >= 1)
        for (std::size_t i = 0; i <= q; ++i)
          if (repeat(di_face(x, 1, q, i), r) != sd_face(px, q, i))
            fail("degree " + std::to_string(q) + ": power map does not commute with d_" + std::to_string(i));
      if (q < q_max)
        for (std::size_t i = 0; i <= q; ++i)
          if (repeat(di_degen(x, 1, i), r) != sd_degen(px, q, i))
            fail("degree " + std::to_string(q) + ": power map does not commute with s_" + std::to_string(i));
      if (repeat(di_rot(x, 1, q), r) != di_rot(px, 1, big))
        fail("degree " + std::to_string(q) + ": power map does not commute with t");
      if (repeat(di_inv(x, 1, q, id), r) != di_inv(px, 1, big, id))
        fail("degree " + std::to_string(q) + ": power map does not commute with w");
    }
    for (std::size_t k = 1; k < r; ++k) {
      for_each_composition(static_cast<long>(r * j + k), big + 1, [&](const std::vector<long>& c) {
        if (periodic(c, q + 1))
          fail("weight " + std::to_string(r * j + k) + " has a C_" + std::to_string(r) + "-fixed simplex " +
               label_string(to_tuple(c)));
      });
    }
  }
  return rep;
}

IsoCheckReport shuffle_iso_check(const AffineMonoid& m, const AffineMonoid& l, const std::vector<IntVector>& xw,
                                 const std::vector<IntVector>& yw, std::size_t q_max) {
  IsoCheckReport rep;
  const std::size_t nm = m.rank(), nl = l.rank();
  std::vector<IntVector> pw;
  for (const auto& a : xw)
    for (const auto& b : yw) {
      IntVector v = a;
      v.insert(v.end(), b.begin(), b.end());
      pw.push_back(std::move(v));
    }
  const TruncDihedralSet prod = dihedral_nerve_piece(AffineMonoid::product(m, l), pw, q_max);
  const TruncDihedralSet xm = dihedral_nerve_piece(m, xw, q_max);
  const TruncDihedralSet xl = dihedral_nerve_piece(l, yw, q_max);
  auto fail = [&](const std::string& why) {
    if (rep.ok) {
      rep.ok = false;
      rep.failure = why;
    }
  };
  // shuffle[q][s] = (index in xm, index in xl)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sh(q_max + 1);
  for (std::size_t q = 0; q <= q_max; ++q) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : prod.simplices[q]) {
      IntVector a, b;
      for (std::size_t k = 0; k <= q; ++k) {
        auto slot = std::span<const Integer>(t).subspan(k * (nm + nl), nm + nl);
        a.insert(a.end(), slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(nm));
        b.insert(b.end(), slot.begin() + static_cast<std::ptrdiff_t>(nm), slot.end());
      }
      const auto ia = xm.find(q, a), ib = xl.find(q, b);
      if (!ia || !ib) {
        fail("degree " + std::to_string(q) + ": shuffle image missing for " + label_string(t));
        sh[q].emplace_back(0, 0);
        continue;
      }
      sh[q].emplace_back(*ia, *ib);
      seen.emplace(*ia, *ib);
    }
    rep.source_counts.push_back(prod.size(q));
    rep.target_counts.push_back(xm.size(q) * xl.size(q));
    if (seen.size() != prod.size(q) || seen.size() != xm.size(q) * xl.size(q))
      fail("degree " + std::to_string(q) + ": shuffle map is not bijective");
  }
  if (!rep.ok) return rep;
  for (std::size_t q = 0; q <= q_max; ++q)
    for (std::size_t s = 0; s < prod.size(q); ++s) {
      const auto [a, b] = sh[q][s];
      auto same = [&](std::size_t q2, std::size_t image, std::size_t ia, std::size_t ib) {
        return sh[q2][image] == std::make_pair(ia, ib);
      };
      if (q >= 1)
        for (std::size_t i = 0; i <= q; ++i)
          if (!same(q - 1, prod.face[q][i][s], xm.face[q][i][a], xl.face[q][i][b]))
            fail("shuffle does not commute with d_" + std::to_string(i) + " in degree " + std::to_string(q));
      if (q < q_max)
        for (std::size_t i = 0; i <= q; ++i)
          if (!same(q + 1, prod.degen[q][i][s], xm.degen[q][i][a], xl.degen[q][i][b]))
            fail("shuffle does not commute with s_" + std::to_string(i) + " in degree " + std::to_string(q));
      if (!same(q, prod.rot[q][s], xm.rot[q][a], xl.rot[q][b]))
        fail("shuffle does not commute with t in degree " + std::to_string(q));
      if (!same(q, prod.inv[q][s], xm.inv[q][a], xl.inv[q][b]))
        fail("shuffle does not commute with w in degree " + std::to_string(q));
    }
  return rep;
}

}  // namespace thr
