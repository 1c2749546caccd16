#include "thr/fgab.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "thr/error.hpp"

namespace thr {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool is_zero_vector(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError("IntMatrix: entry count != rows * cols");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("IntMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("IntMatrix::from_rows: ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  kernels::gemm(rows_, cols_, rhs.cols_, data_, rhs.data_, out.data_);
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("IntMatrix: shape mismatch in sum");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const { return *this + rhs.scaled(-1); }

IntMatrix IntMatrix::scaled(const Integer& k) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= k;
  return out;
}

bool IntMatrix::is_zero() const { return is_zero_vector(data_); }

IntMatrix IntMatrix::stack(const IntMatrix& below) const {
  if (rows_ == 0) return below.rows_ == 0 ? IntMatrix(0, std::max(cols_, below.cols_)) : below;
  if (below.rows_ == 0) return *this;
  if (cols_ != below.cols_) throw InputError("IntMatrix::stack: column mismatch");
  IntMatrix out = *this;
  out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
  out.rows_ += below.rows_;
  return out;
}

IntMatrix IntMatrix::augment(const IntMatrix& right) const {
  if (rows_ != right.rows_) throw InputError("IntMatrix::augment: row mismatch");
  IntMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::copy(row(i).begin(), row(i).end(), out.row(i).begin());
    std::copy(right.row(i).begin(), right.row(i).end(), out.row(i).begin() + cols_);
  }
  return out;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  assert(r0 + nr <= rows_ && c0 + nc <= cols_);
  IntMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void IntMatrix::append_row(std::span<const Integer> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw InputError("IntMatrix::append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ", ";
    out << vector_to_string(row(i));
  }
  out << ']';
  return out.str();
}

IntVector row_times(std::span<const Integer> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw InputError("row_times: length mismatch");
  IntVector out(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) kernels::reference::axpy(out, v[i], m.row(i));
  }
  return out;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
    }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith and Hermite forms

namespace {

// Nearest-integer quotient, so remainders satisfy |a - q b| <= |b| / 2.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (sgn(r) == sgn(b)) ? 1 : -1;
  return q;
}

template <bool Track>
SmithForm smith_reduce(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  IntMatrix a = m;
  IntMatrix u = Track ? IntMatrix::identity(r) : IntMatrix();
  IntMatrix v = Track ? IntMatrix::identity(c) : IntMatrix();
  IntMatrix vi = Track ? IntMatrix::identity(c) : IntMatrix();

  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    kernels::axpy(a.row(dst), k, a.row(src));
    if constexpr (Track) kernels::axpy(u.row(dst), k, u.row(src));
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if constexpr (Track) u.swap_rows(x, y);
  };
  // column dst += k * column src; the inverse transform acts on rows of vi.
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < r; ++i)
      if (a(i, src) != 0) a(i, dst) += k * a(i, src);
    if constexpr (Track) {
      for (std::size_t i = 0; i < c; ++i)
        if (v(i, src) != 0) v(i, dst) += k * v(i, src);
      kernels::axpy(vi.row(src), -k, vi.row(dst));
    }
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if constexpr (Track) {
      v.swap_cols(x, y);
      vi.swap_rows(x, y);
    }
  };

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      // Smallest entry of row t and column t goes to the pivot.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < r; ++i)
        if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
      for (std::size_t j = t + 1; j < c; ++j)
        if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
      if (bi != t) row_swap(t, bi);
      if (bj != t) col_swap(t, bj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i)
        if (a(i, t) != 0) {
          row_add(i, t, -nearest_quotient(a(i, t), a(t, t)));
          dirty = dirty || a(i, t) != 0;
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (a(t, j) != 0) {
          col_add(j, t, -nearest_quotient(a(t, j), a(t, t)));
          dirty = dirty || a(t, j) != 0;
        }
      if (dirty) continue;
      // Pivot must divide the whole remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      for (auto& x : a.row(t)) x = -x;
      if constexpr (Track)
        for (auto& x : u.row(t)) x = -x;
    }
  }
  return {std::move(a), std::move(u), std::move(v), std::move(vi)};
}

}  // namespace

SmithForm snf(const IntMatrix& m) { return smith_reduce<true>(m); }

std::vector<Integer> smith_diagonal(const IntMatrix& m) {
  const SmithForm s = smith_reduce<false>(m);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (s.S(i, i) != 0) d.push_back(s.S(i, i));
  return d;
}

HermiteForm hermite(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  HermiteForm out{m, IntMatrix::identity(r), 0, {}};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    kernels::axpy(h.row(dst), k, h.row(src));
    kernels::axpy(u.row(dst), k, u.row(src));
  };
  std::size_t p = 0;
  for (std::size_t col = 0; col < c && p < r; ++col) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = p; i < r; ++i)
        if (h(i, col) != 0 && (best == r || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best == r) break;
      h.swap_rows(p, best);
      u.swap_rows(p, best);
      bool clean = true;
      for (std::size_t i = p + 1; i < r; ++i) {
        if (h(i, col) == 0) continue;
        Integer q = h(i, col) / h(p, col);
        row_add(i, p, -q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(p, col) == 0) continue;
    if (h(p, col) < 0) {
      for (auto& x : h.row(p)) x = -x;
      for (auto& x : u.row(p)) x = -x;
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q = floor_div(h(i, col), h(p, col));
      if (q != 0) row_add(i, p, -q);
    }
    out.pivot_cols.push_back(col);
    ++p;
  }
  out.rank = p;
  return out;
}

IntMatrix left_kernel(const IntMatrix& a) {
  const HermiteForm h = hermite(a);
  return h.U.block(h.rank, 0, a.rows() - h.rank, a.rows());
}

std::optional<IntVector> solve_left(const IntMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.cols()) throw InputError("solve_left: length mismatch");
  const HermiteForm h = hermite(a);
  IntVector rest(b.begin(), b.end());
  IntVector coeff(h.rank);
  for (std::size_t k = 0; k < h.rank; ++k) {
    const std::size_t col = h.pivot_cols[k];
    if (rest[col] % h.H(k, col) != 0) return std::nullopt;
    coeff[k] = rest[col] / h.H(k, col);
    kernels::reference::axpy(rest, -coeff[k], h.H.row(k));
  }
  if (!is_zero_vector(rest)) return std::nullopt;
  IntVector z(a.rows());
  for (std::size_t k = 0; k < h.rank; ++k) kernels::reference::axpy(z, coeff[k], h.U.row(k));
  return z;
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(std::size_t dim) : dim_(dim), basis_(0, dim) {}

Lattice Lattice::span(const IntMatrix& generators) {
  Lattice l(generators.cols());
  const HermiteForm h = hermite(generators);
  l.basis_ = h.H.block(0, 0, h.rank, generators.cols());
  l.pivots_ = h.pivot_cols;
  return l;
}

bool Lattice::contains(std::span<const Integer> v) const {
  if (v.size() != dim_) throw InputError("Lattice::contains: dimension mismatch");
  IntVector rest(v.begin(), v.end());
  for (std::size_t k = 0; k < basis_.rows(); ++k) {
    const std::size_t col = pivots_[k];
    if (rest[col] % basis_(k, col) != 0) return false;
    kernels::reference::axpy(rest, -(rest[col] / basis_(k, col)), basis_.row(k));
  }
  return is_zero_vector(rest);
}

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t k = 0; k < other.basis_.rows(); ++k)
    if (!contains(other.basis_.row(k))) return false;
  return true;
}

bool Lattice::operator==(const Lattice& other) const {
  return dim_ == other.dim_ && basis_ == other.basis_;
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup::FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

FgAbGroup::FgAbGroup(std::size_t n_gens, IntMatrix relations)
    : n_gens_(n_gens), relations_(std::move(relations)) {
  if (relations_.rows() == 0) relations_ = IntMatrix(0, n_gens);
  if (relations_.cols() != n_gens)
    throw InputError("group: relation matrix has " + std::to_string(relations_.cols()) +
                     " columns, expected " + std::to_string(n_gens));
  lattice_ = Lattice::span(relations_);
  SmithForm s = snf(relations_);
  smith_orders_.assign(n_gens, Integer(0));
  for (std::size_t i = 0; i < std::min(relations_.rows(), n_gens); ++i) smith_orders_[i] = s.S(i, i);
  for (const auto& d : smith_orders_) {
    if (d == 0)
      ++free_rank_;
    else if (d > 1)
      factors_.push_back(d);
  }
  to_smith_ = std::move(s.V);
  from_smith_ = std::move(s.V_inverse);
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(0, rank)); }

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  std::vector<Integer> o{order};
  return from_orders(o);
}

FgAbGroup FgAbGroup::from_orders(std::span<const Integer> orders) {
  IntMatrix rel(0, orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0) continue;
    IntVector row(orders.size());
    row[i] = orders[i];
    rel.append_row(row);
  }
  return FgAbGroup(orders.size(), std::move(rel));
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  const std::size_t n = a.n_gens() + b.n_gens();
  IntMatrix rel(0, n);
  for (std::size_t i = 0; i < a.relations().rows(); ++i) {
    IntVector row(n);
    std::copy(a.relations().row(i).begin(), a.relations().row(i).end(), row.begin());
    rel.append_row(row);
  }
  for (std::size_t i = 0; i < b.relations().rows(); ++i) {
    IntVector row(n);
    std::copy(b.relations().row(i).begin(), b.relations().row(i).end(), row.begin() + a.n_gens());
    rel.append_row(row);
  }
  return FgAbGroup(n, std::move(rel));
}

std::optional<Integer> FgAbGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

IntVector FgAbGroup::canonical(std::span<const Integer> v) const {
  if (v.size() != n_gens_) throw InputError("group element has wrong length");
  IntVector y = row_times(v, to_smith_);
  for (std::size_t i = 0; i < n_gens_; ++i) {
    if (smith_orders_[i] != 0) y[i] = floor_mod(y[i], smith_orders_[i]);
  }
  return y;
}

bool FgAbGroup::is_zero(std::span<const Integer> v) const { return is_zero_vector(canonical(v)); }

bool FgAbGroup::equal(std::span<const Integer> a, std::span<const Integer> b) const {
  return canonical(a) == canonical(b);
}

std::vector<IntVector> FgAbGroup::elements() const {
  if (!is_finite()) throw InfeasibleError("elements(): group " + describe() + " is infinite");
  if (*order() > (1 << 20)) throw InfeasibleError("elements(): group too large to enumerate");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n_gens_; ++i)
    if (smith_orders_[i] > 1) idx.push_back(i);
  std::vector<IntVector> out;
  IntVector y(n_gens_);
  for (;;) {
    out.push_back(row_times(y, from_smith_));
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      y[idx[k]] += 1;
      if (y[idx[k]] < smith_orders_[idx[k]]) break;
      y[idx[k]] = 0;
    }
    if (k == idx.size()) break;
  }
  return out;
}

IntVector FgAbGroup::unit_vector(std::size_t i) const {
  IntVector v(n_gens_);
  v.at(i) = 1;
  return v;
}

bool FgAbGroup::isomorphic(const FgAbGroup& other) const {
  return free_rank_ == other.free_rank_ && factors_ == other.factors_;
}

bool FgAbGroup::same_presentation(const FgAbGroup& other) const {
  return n_gens_ == other.n_gens_ && lattice_ == other.lattice_;
}

std::string FgAbGroup::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& d : factors_) {
    if (!first) out << " + ";
    out << "Z/" << d.get_str();
    first = false;
  }
  if (free_rank_ > 0) {
    if (!first) out << " + ";
    out << "Z";
    if (free_rank_ > 1) out << '^' << free_rank_;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 && matrix_.cols() == 0) matrix_ = IntMatrix(source_.n_gens(), target_.n_gens());
  if (matrix_.rows() != source_.n_gens() || matrix_.cols() != target_.n_gens())
    throw InputError("hom: matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " + std::to_string(source_.n_gens()) +
                     "x" + std::to_string(target_.n_gens()));
  const IntMatrix& rel = source_.relations();
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    if (!target_.is_zero(row_times(rel.row(i), matrix_)))
      throw InputError("hom is ill-defined: relation " + vector_to_string(rel.row(i)) +
                       " does not map to zero");
  }
}

GroupHom GroupHom::identity(const FgAbGroup& g) {
  return GroupHom(g, g, IntMatrix::identity(g.n_gens()));
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return GroupHom(source, target, IntMatrix(source.n_gens(), target.n_gens()));
}

GroupHom GroupHom::scalar(const FgAbGroup& g, const Integer& k) {
  return GroupHom(g, g, IntMatrix::identity(g.n_gens()).scaled(k));
}

IntVector GroupHom::apply(std::span<const Integer> v) const { return row_times(v, matrix_); }

GroupHom GroupHom::then(const GroupHom& next) const {
  if (!target_.same_presentation(next.source_))
    throw InputError("composition: target and source presentations differ");
  return GroupHom(source_, next.target_, matrix_ * next.matrix_);
}

GroupHom GroupHom::operator+(const GroupHom& rhs) const {
  if (!source_.same_presentation(rhs.source_) || !target_.same_presentation(rhs.target_))
    throw InputError("sum of homs with different source or target");
  return GroupHom(source_, target_, matrix_ + rhs.matrix_);
}

GroupHom GroupHom::operator-(const GroupHom& rhs) const {
  if (!source_.same_presentation(rhs.source_) || !target_.same_presentation(rhs.target_))
    throw InputError("difference of homs with different source or target");
  return GroupHom(source_, target_, matrix_ - rhs.matrix_);
}

bool GroupHom::equals(const GroupHom& other) const {
  if (!source_.same_presentation(other.source_) || !target_.same_presentation(other.target_))
    return false;
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    IntVector d = matrix_.row_vector(i);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] -= other.matrix_(i, j);
    if (!target_.is_zero(d)) return false;
  }
  return true;
}

bool GroupHom::is_zero() const {
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    if (!target_.is_zero(matrix_.row(i))) return false;
  return true;
}

bool GroupHom::is_injective() const { return kernel(*this).group.is_trivial(); }

bool GroupHom::is_surjective() const { return cokernel(*this).group.is_trivial(); }

// ---------------------------------------------------------------------------
// Kernels, cokernels, images

Lattice kernel_lattice(const GroupHom& f) {
  const std::size_t n = f.source().n_gens();
  const IntMatrix k = left_kernel(f.matrix().stack(f.target().relations()));
  return Lattice::span(k.block(0, 0, k.rows(), n).stack(f.source().relations()));
}

Lattice image_lattice(const GroupHom& f) {
  return Lattice::span(f.matrix().stack(f.target().relations()));
}

Kernel kernel(const GroupHom& f) {
  const std::size_t n = f.source().n_gens();
  const IntMatrix k = left_kernel(f.matrix().stack(f.target().relations()));
  const Lattice gens = Lattice::span(k.block(0, 0, k.rows(), n));
  const IntMatrix& kg = gens.basis();
  const IntMatrix rel = left_kernel(kg.stack(f.source().relations()));
  FgAbGroup group(kg.rows(), rel.block(0, 0, rel.rows(), kg.rows()));
  GroupHom inclusion(group, f.source(), kg);
  Simplified s = simplify(group);
  return {s.group, s.from.then(inclusion)};
}

Cokernel cokernel(const GroupHom& f) {
  FgAbGroup group(f.target().n_gens(), f.target().relations().stack(f.matrix()));
  GroupHom projection(f.target(), group, IntMatrix::identity(group.n_gens()));
  Simplified s = simplify(group);
  return {s.group, projection.then(s.to), s.from.matrix()};
}

GroupHom induced_on_cokernels(const Cokernel& src, const GroupHom& f, const Cokernel& tgt) {
  if (!src.projection.source().same_presentation(f.source()) ||
      !f.target().same_presentation(tgt.projection.source()))
    throw InputError("induced_on_cokernels: map does not match the quotients");
  return GroupHom(src.group, tgt.group, src.section * f.matrix() * tgt.projection.matrix());
}

FgAbGroup image(const GroupHom& f) {
  const std::size_t n = f.source().n_gens();
  const IntMatrix k = left_kernel(f.matrix().stack(f.target().relations()));
  return simplify(FgAbGroup(n, k.block(0, 0, k.rows(), n))).group;
}

std::optional<GroupHom> lift(const GroupHom& f, const GroupHom& through) {
  if (!f.target().same_presentation(through.target()))
    throw InputError("lift: maps have different targets");
  const IntMatrix a = through.matrix().stack(through.target().relations());
  const std::size_t k = through.source().n_gens();
  IntMatrix m(f.source().n_gens(), k);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto z = solve_left(a, f.matrix().row(i));
    if (!z) return std::nullopt;
    std::copy(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(k), m.row(i).begin());
  }
  try {
    return GroupHom(f.source(), through.source(), std::move(m));
  } catch (const InputError&) {
    return std::nullopt;
  }
}

Simplified simplify(const FgAbGroup& g) {
  std::vector<std::size_t> idx;
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < g.n_gens(); ++i) {
    if (g.smith_orders()[i] != 1) {
      idx.push_back(i);
      orders.push_back(g.smith_orders()[i]);
    }
  }
  // Put torsion first in divisibility order, then free coordinates.
  std::vector<std::size_t> perm(idx.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const bool fa = orders[a] == 0, fb = orders[b] == 0;
    return fa != fb ? fb : false;
  });
  std::vector<Integer> sorted_orders;
  for (auto p : perm) sorted_orders.push_back(orders[p]);
  FgAbGroup s = FgAbGroup::from_orders(sorted_orders);
  IntMatrix to(g.n_gens(), idx.size());
  IntMatrix from(idx.size(), g.n_gens());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    const std::size_t c = idx[perm[j]];
    for (std::size_t i = 0; i < g.n_gens(); ++i) to(i, j) = g.to_smith()(i, c);
    std::copy(g.from_smith().row(c).begin(), g.from_smith().row(c).end(), from.row(j).begin());
  }
  return {s, GroupHom(g, s, std::move(to)), GroupHom(s, g, std::move(from))};
}

FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h) {
  const std::size_t ng = g.n_gens(), nh = h.n_gens();
  IntMatrix rel(0, ng * nh);
  for (std::size_t r = 0; r < g.relations().rows(); ++r)
    for (std::size_t j = 0; j < nh; ++j) {
      IntVector row(ng * nh);
      for (std::size_t i = 0; i < ng; ++i) row[i * nh + j] = g.relations()(r, i);
      rel.append_row(row);
    }
  for (std::size_t r = 0; r < h.relations().rows(); ++r)
    for (std::size_t i = 0; i < ng; ++i) {
      IntVector row(ng * nh);
      for (std::size_t j = 0; j < nh; ++j) row[i * nh + j] = h.relations()(r, j);
      rel.append_row(row);
    }
  return FgAbGroup(ng * nh, std::move(rel));
}

GroupHom tensor_hom(const GroupHom& f, const GroupHom& g) {
  return GroupHom(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                  kronecker(f.matrix(), g.matrix()));
}

IntVector pure_tensor(std::span<const Integer> x, std::span<const Integer> y) {
  IntVector out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
  }
  return out;
}

ExactnessReport is_exact(std::span<const GroupHom> seq) {
  ExactnessReport report;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!seq[i].target().same_presentation(seq[i + 1].source()))
      throw InputError("is_exact: maps " + std::to_string(i) + " and " + std::to_string(i + 1) +
                       " are not composable");
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Lattice im = image_lattice(seq[i]);
    const Lattice ker = kernel_lattice(seq[i + 1]);
    JointReport j;
    j.joint = i;
    j.image_in_kernel = ker.contains(im);
    j.kernel_in_image = im.contains(ker);
    if (!j.image_in_kernel) {
      for (std::size_t k = 0; k < im.basis().rows(); ++k)
        if (!ker.contains(im.basis().row(k))) {
          j.witness = "image element " + vector_to_string(im.basis().row(k)) + " not in kernel";
          break;
        }
    } else if (!j.kernel_in_image) {
      for (std::size_t k = 0; k < ker.basis().rows(); ++k)
        if (!im.contains(ker.basis().row(k))) {
          j.witness = "kernel element " + vector_to_string(ker.basis().row(k)) + " not in image";
          break;
        }
    }
    report.exact = report.exact && j.image_in_kernel && j.kernel_in_image;
    report.joints.push_back(std::move(j));
  }
  return report;
}

std::string vector_to_string(std::span<const Integer> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].get_str();
  }
  out << ')';
  return out.str();
}

}  // namespace thr
