#include "thr/involutive_algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "thr/error.hpp"

namespace thr {

namespace {

std::string gen_name(const std::vector<std::string>& names, std::size_t i) {
  return i < names.size() ? names[i] : "e" + std::to_string(i);
}

Integer inf_norm(std::span<const Integer> v) {
  Integer m = 0;
  for (const auto& x : v) m = std::max(m, Integer(abs(x)));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// InvolutiveRing

InvolutiveRing::InvolutiveRing(FgAbGroup add, std::vector<std::vector<IntVector>> table, IntVector one,
                               IntMatrix involution, std::vector<std::string> names)
    : add_(std::move(add)), table_(std::move(table)), one_(std::move(one)), names_(std::move(names)) {
  const std::size_t n = add_.n_gens();
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back(gen_name({}, i));
  if (names_.size() != n) throw InputError("ring: wrong number of generator names");
  if (table_.size() != n) throw InputError("ring: multiplication table has wrong size");
  for (const auto& row : table_) {
    if (row.size() != n) throw InputError("ring: multiplication table has wrong size");
    for (const auto& e : row)
      if (e.size() != n) throw InputError("ring: table entry has wrong length");
  }
  if (one_.size() != n) throw InputError("ring: unit has wrong length");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!add_.equal(table_[i][j], table_[j][i]))
        throw InputError("ring axiom failed: commutativity, " + names_[i] + "*" + names_[j] +
                         " != " + names_[j] + "*" + names_[i]);

  const IntMatrix& rel = add_.relations();
  for (std::size_t r = 0; r < rel.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      IntVector ej = add_.unit_vector(j);
      if (!add_.is_zero(mul(rel.row(r), ej)))
        throw InputError("ring axiom failed: multiplication not well defined, relation " +
                         vector_to_string(rel.row(r)) + " times " + names_[j] + " is nonzero");
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        IntVector lhs = mul(table_[i][j], add_.unit_vector(k));
        IntVector rhs = mul(add_.unit_vector(i), table_[j][k]);
        if (!add_.equal(lhs, rhs))
          throw InputError("ring axiom failed: associativity at (" + names_[i] + "*" + names_[j] + ")*" +
                           names_[k]);
      }

  for (std::size_t i = 0; i < n; ++i)
    if (!add_.equal(mul(one_, add_.unit_vector(i)), add_.unit_vector(i)))
      throw InputError("ring axiom failed: unit is not neutral on " + names_[i]);

  try {
    w_ = GroupHom(add_, add_, std::move(involution));
  } catch (const InputError& e) {
    throw InputError(std::string("ring: involution is not additive: ") + e.what());
  }
  if (!w_.then(w_).equals(GroupHom::identity(add_)))
    throw InputError("ring axiom failed: involution does not have order 2");
  if (!add_.equal(conj(one_), one_)) throw InputError("ring axiom failed: involution does not fix 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!add_.equal(conj(table_[i][j]), mul(w_.matrix().row(i), w_.matrix().row(j))))
        throw InputError("ring axiom failed: involution not multiplicative on " + names_[i] + "*" + names_[j]);
}

bool InvolutiveRing::has_trivial_involution() const { return w_.equals(GroupHom::identity(add_)); }

IntVector InvolutiveRing::mul(std::span<const Integer> a, std::span<const Integer> b) const {
  const std::size_t n = n_gens();
  IntVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      kernels::reference::axpy(out, a[i] * b[j], table_[i][j]);
    }
  }
  return out;
}

GroupHom InvolutiveRing::multiplication_by(std::span<const Integer> a) const {
  IntMatrix m(n_gens(), n_gens());
  for (std::size_t i = 0; i < n_gens(); ++i) {
    IntVector r = mul(a, add_.unit_vector(i));
    std::copy(r.begin(), r.end(), m.row(i).begin());
  }
  return GroupHom(add_, add_, std::move(m));
}

std::string InvolutiveRing::format(std::span<const Integer> a) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) out << (a[i] > 0 ? "+" : "");
    if (a[i] == -1)
      out << '-';
    else if (a[i] != 1)
      out << a[i].get_str() << '*';
    out << names_[i];
    first = false;
  }
  return first ? "0" : out.str();
}

InvolutiveRing mod2(const InvolutiveRing& a) {
  const std::size_t n = a.n_gens();
  FgAbGroup add(n, a.additive().relations().stack(IntMatrix::identity(n).scaled(2)));
  std::vector<std::vector<IntVector>> table(n, std::vector<IntVector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = a.product(i, j);
  return InvolutiveRing(std::move(add), std::move(table), a.one(), a.involution().matrix(), a.names());
}

GroupHom frobenius(const InvolutiveRing& a) {
  const FgAbGroup& g = a.additive();
  for (std::size_t i = 0; i < g.n_gens(); ++i) {
    IntVector two = g.unit_vector(i);
    two[i] = 2;
    if (!g.is_zero(two)) throw InputError("frobenius: 2 is not zero in the ring");
  }
  IntMatrix m(g.n_gens(), g.n_gens());
  for (std::size_t i = 0; i < g.n_gens(); ++i)
    std::copy(a.product(i, i).begin(), a.product(i, i).end(), m.row(i).begin());
  return GroupHom(g, g, std::move(m));
}

RingHom make_ring_hom(const InvolutiveRing& source, const InvolutiveRing& target, IntMatrix images) {
  GroupHom f;
  try {
    f = GroupHom(source.additive(), target.additive(), std::move(images));
  } catch (const InputError& e) {
    throw InputError(std::string("ring hom is not additive: ") + e.what());
  }
  if (!target.additive().equal(f.apply(source.one()), target.one()))
    throw InputError("ring hom does not preserve 1");
  for (std::size_t i = 0; i < source.n_gens(); ++i)
    for (std::size_t j = 0; j < source.n_gens(); ++j)
      if (!target.additive().equal(f.apply(source.product(i, j)),
                                   target.mul(f.matrix().row(i), f.matrix().row(j))))
        throw InputError("ring hom not multiplicative on " + source.names()[i] + "*" + source.names()[j]);
  if (!source.involution().then(f).equals(f.then(target.involution())))
    throw InputError("ring hom does not commute with the involutions");
  return {source, target, std::move(f)};
}

namespace rings {

InvolutiveRing quadratic(const Integer& m, const Integer& a, const Integer& b) {
  std::vector<Integer> orders{m, m};
  std::vector<std::vector<IntVector>> table{{{1, 0}, {0, 1}}, {{0, 1}, {b, a}}};
  return InvolutiveRing(FgAbGroup::from_orders(orders), std::move(table), {1, 0}, IntMatrix::identity(2),
                        {"1", "t"});
}

InvolutiveRing z_mod(const Integer& m) {
  std::vector<Integer> orders{m};
  return InvolutiveRing(FgAbGroup::from_orders(orders), {{{1}}}, {1}, IntMatrix::identity(1), {"1"});
}

InvolutiveRing integers() { return z_mod(0); }
InvolutiveRing f2() { return z_mod(2); }
InvolutiveRing f4() { return quadratic(2, 1, 1); }
InvolutiveRing f2_dual() { return quadratic(2, 0, 0); }

InvolutiveRing gaussian() {
  std::vector<Integer> orders{0, 0};
  std::vector<std::vector<IntVector>> table{{{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}};
  return InvolutiveRing(FgAbGroup::from_orders(orders), std::move(table), {1, 0},
                        IntMatrix::from_rows({{1, 0}, {0, -1}}), {"1", "i"});
}

}  // namespace rings

// ---------------------------------------------------------------------------
// AffineMonoid

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<IntVector> generators, IntMatrix involution)
    : rank_(rank), gens_(std::move(generators)), w_(std::move(involution)) {
  if (w_.rows() == 0 && w_.cols() == 0) w_ = IntMatrix::identity(rank_);
  if (w_.rows() != rank_ || w_.cols() != rank_) throw InputError("monoid: involution has wrong shape");
  for (const auto& g : gens_)
    if (g.size() != rank_) throw InputError("monoid: generator " + vector_to_string(g) + " has wrong length");
  if (!(w_ * w_ == IntMatrix::identity(rank_))) throw InputError("monoid: involution does not square to 1");
  for (const auto& g : gens_) {
    const IntVector wg = apply_involution(g);
    if (std::find(gens_.begin(), gens_.end(), wg) != gens_.end()) continue;
    if (!member(wg))
      throw InputError("monoid: involution maps generator " + vector_to_string(g) + " outside the monoid");
  }
}

AffineMonoid AffineMonoid::trivial() { return AffineMonoid(0, {}, IntMatrix(0, 0)); }
AffineMonoid AffineMonoid::naturals() { return AffineMonoid(1, {{1}}, IntMatrix::identity(1)); }
AffineMonoid AffineMonoid::integers() { return AffineMonoid(1, {{1}, {-1}}, IntMatrix::identity(1)); }
AffineMonoid AffineMonoid::integers_sigma() { return AffineMonoid(1, {{1}, {-1}}, IntMatrix::from_rows({{-1}})); }

AffineMonoid AffineMonoid::naturals_reversed(std::size_t n) {
  std::vector<IntVector> gens;
  IntMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector g(n);
    g[i] = 1;
    gens.push_back(g);
    w(i, n - 1 - i) = 1;
  }
  return AffineMonoid(n, std::move(gens), std::move(w));
}

AffineMonoid AffineMonoid::product(const AffineMonoid& a, const AffineMonoid& b) {
  const std::size_t n = a.rank_ + b.rank_;
  std::vector<IntVector> gens;
  for (const auto& g : a.gens_) {
    IntVector v(n);
    std::copy(g.begin(), g.end(), v.begin());
    gens.push_back(v);
  }
  for (const auto& g : b.gens_) {
    IntVector v(n);
    std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(a.rank_));
    gens.push_back(v);
  }
  IntMatrix w(n, n);
  for (std::size_t i = 0; i < a.rank_; ++i)
    for (std::size_t j = 0; j < a.rank_; ++j) w(i, j) = a.w_(i, j);
  for (std::size_t i = 0; i < b.rank_; ++i)
    for (std::size_t j = 0; j < b.rank_; ++j) w(a.rank_ + i, a.rank_ + j) = b.w_(i, j);
  return AffineMonoid(n, std::move(gens), std::move(w));
}

IntVector AffineMonoid::evaluate(std::span<const Integer> certificate) const {
  IntVector v(rank_);
  for (std::size_t k = 0; k < gens_.size(); ++k)
    if (certificate[k] != 0) kernels::reference::axpy(v, certificate[k], gens_[k]);
  return v;
}

std::optional<MonoidElement> AffineMonoid::member(std::span<const Integer> v) const {
  if (v.size() != rank_) throw InputError("monoid: element has wrong length");
  Integer gmax = 0;
  for (const auto& g : gens_) gmax = std::max(gmax, inf_norm(g));
  const Integer radius = inf_norm(v) + Integer(static_cast<unsigned long>(rank_)) * gmax;
  Integer box = 1;
  for (std::size_t i = 0; i < rank_; ++i) box *= 2 * radius + 1;
  if (box > 4000000) throw InfeasibleError("monoid membership: search box too large");

  const IntVector target(v.begin(), v.end());
  std::map<IntVector, std::pair<IntVector, std::size_t>> parent;
  const IntVector origin(rank_);
  parent.emplace(origin, std::make_pair(origin, gens_.size()));
  std::deque<IntVector> queue{origin};
  while (!queue.empty() && !parent.contains(target)) {
    IntVector cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      IntVector next = cur;
      kernels::reference::axpy(next, 1, gens_[k]);
      if (inf_norm(next) > radius || parent.contains(next)) continue;
      parent.emplace(next, std::make_pair(cur, k));
      queue.push_back(std::move(next));
    }
  }
  auto it = parent.find(target);
  if (it == parent.end()) return std::nullopt;
  MonoidElement e{target, std::vector<Integer>(gens_.size())};
  IntVector cur = target;
  while (cur != origin) {
    const auto& [prev, k] = parent.at(cur);
    e.certificate[k] += 1;
    cur = prev;
  }
  return e;
}

namespace {

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool certificate_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer sa = 0, sb = 0;
  for (const auto& x : a) sa += x;
  for (const auto& x : b) sb += x;
  if (sa != sb) return sa < sb;
  return a < b;
}

}  // namespace

std::vector<MonoidElement> elements_of_weight(const AffineMonoid& m, const IntMatrix& weight,
                                              std::span<const Integer> v) {
  if (weight.rows() != m.rank()) throw InputError("weight map has wrong number of rows");
  if (v.size() != weight.cols()) throw InputError("weight has wrong length");

  if (hermite(weight).rank == m.rank()) {
    std::vector<MonoidElement> out;
    if (auto x = solve_left(weight, v)) {
      if (auto e = m.member(*x)) out.push_back(std::move(*e));
    }
    return out;
  }

  std::vector<IntVector> gw;
  for (const auto& g : m.generators()) gw.push_back(row_times(g, weight));
  for (std::size_t k = 0; k < gw.size(); ++k) {
    bool zero_gen = std::all_of(m.generators()[k].begin(), m.generators()[k].end(),
                                [](const Integer& x) { return x == 0; });
    bool zero_weight = std::all_of(gw[k].begin(), gw[k].end(), [](const Integer& x) { return x == 0; });
    if (zero_weight && !zero_gen)
      throw InfeasibleError("weight fiber is infinite: generator " + vector_to_string(m.generators()[k]) +
                            " has weight zero");
  }

  const auto lambda = positive_grading(m, weight);
  if (!lambda) throw InfeasibleError("weight fiber could not be shown finite: no positive grading found");
  std::vector<Integer> grade;
  for (const auto& w : gw) grade.push_back(dot(w, *lambda));
  const std::size_t dim = weight.cols();

  const Integer budget = dot(v, *lambda);
  std::map<IntVector, std::vector<Integer>> found;
  if (budget >= 0) {
    const IntVector target(v.begin(), v.end());
    std::vector<Integer> counts(gw.size());
    IntVector acc(dim);
    // Depth-first over generator multiplicities.
    auto dfs = [&](auto&& self, std::size_t k, const Integer& left) -> void {
      if (k == gw.size()) {
        if (acc != target) return;
        IntVector value = m.evaluate(counts);
        auto it = found.find(value);
        if (it == found.end())
          found.emplace(std::move(value), counts);
        else if (certificate_less(counts, it->second))
          it->second = counts;
        return;
      }
      const Integer cap = left / grade[k];
      for (Integer c = 0; c <= cap; ++c) {
        counts[k] = c;
        self(self, k + 1, left - c * grade[k]);
        kernels::reference::axpy(acc, 1, gw[k]);
      }
      kernels::reference::axpy(acc, -(cap + 1), gw[k]);
      counts[k] = 0;
    };
    dfs(dfs, 0, budget);
  }
  std::vector<MonoidElement> out;
  for (auto& [value, cert] : found) out.push_back({value, cert});
  return out;
}

std::optional<IntVector> positive_grading(const AffineMonoid& m, const IntMatrix& weight) {
  const std::size_t dim = weight.cols();
  if (dim > 6) throw InfeasibleError("grading search: weight dimension too large");
  std::vector<IntVector> gw;
  for (const auto& g : m.generators()) gw.push_back(row_times(g, weight));
  IntVector lambda(dim, Integer(-3));
  for (;;) {
    if (std::all_of(gw.begin(), gw.end(), [&](const IntVector& w) { return dot(w, lambda) >= 1; }))
      return lambda;
    std::size_t i = 0;
    for (; i < dim; ++i) {
      if (++lambda[i] <= 3) break;
      lambda[i] = -3;
    }
    if (i == dim) return std::nullopt;
  }
}

std::vector<MonoidElement> elements_up_to_grade(const AffineMonoid& m, const IntMatrix& weight,
                                                std::span<const Integer> lambda, const Integer& budget) {
  std::vector<Integer> grade;
  for (const auto& g : m.generators()) {
    grade.push_back(dot(row_times(g, weight), lambda));
    if (grade.back() < 1) throw InputError("elements_up_to_grade: grading is not positive on generators");
  }
  std::map<IntVector, std::vector<Integer>> found;
  std::vector<Integer> counts(grade.size());
  auto dfs = [&](auto&& self, std::size_t k, const Integer& left) -> void {
    if (k == grade.size()) {
      IntVector value = m.evaluate(counts);
      auto it = found.find(value);
      if (it == found.end())
        found.emplace(std::move(value), counts);
      else if (certificate_less(counts, it->second))
        it->second = counts;
      return;
    }
    for (Integer c = 0; c * grade[k] <= left; ++c) {
      counts[k] = c;
      self(self, k + 1, left - c * grade[k]);
    }
    counts[k] = 0;
  };
  if (budget >= 0) dfs(dfs, 0, budget);
  std::vector<MonoidElement> out;
  for (auto& [value, cert] : found) out.push_back({value, cert});
  return out;
}

std::vector<std::vector<IntVector>> sigma_orbits(const AffineMonoid& m, const std::vector<IntVector>& window) {
  std::vector<IntVector> sorted = window;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<IntVector>> orbits;
  std::vector<bool> used(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    IntVector partner = m.apply_involution(sorted[i]);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), partner);
    if (it == sorted.end() || *it != partner)
      throw InputError("sigma_orbits: window is not closed under the involution at " +
                       vector_to_string(sorted[i]));
    used[i] = true;
    std::vector<IntVector> orbit{sorted[i]};
    const auto j = static_cast<std::size_t>(it - sorted.begin());
    if (j != i) {
      used[j] = true;
      orbit.push_back(partner);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace thr
