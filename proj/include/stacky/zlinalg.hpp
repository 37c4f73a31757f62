#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms with unimodular
// transforms, kernels, cokernels as finitely generated abelian groups, and
// exact rational solving. Entries are GMP integers throughout.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stacky {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Floor division; the remainder a - q*b has the sign of b.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Non-negative remainder of a modulo |m|, for m != 0.
inline Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer gcd_of(const IntVector& values) {
  Integer g = 0;
  for (const auto& v : values) g = gcd(g, v);
  return g;
}

/// Dense row-major integer matrix. Zero rows or zero columns are legal.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Integer>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw std::invalid_argument("IntMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw std::invalid_argument("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols,
                                std::size_t rows_if_empty = 0) {
    IntMatrix m(cols.empty() ? rows_if_empty : cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_)
        throw std::invalid_argument("IntMatrix: ragged columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix diagonal(const IntVector& diag) {
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= cols_) throw std::out_of_range("IntMatrix: column index");
      for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
    }
    return m;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= rows_) throw std::out_of_range("IntMatrix: row index");
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    }
    return m;
  }

  /// Rows [begin, end).
  IntMatrix row_block(std::size_t begin, std::size_t end) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = begin; i < end; ++i) idx.push_back(i);
    return select_rows(idx);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Integer& x) { return sgn(x) == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product shape");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("IntMatrix: vector shape");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// [a b]; both sides must have the same row count.
inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

/// Rank over Q, by fraction-free elimination on a copy.
inline std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Integer f = a(i, c), piv = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = a(i, j) * piv - a(r, j) * f;
      Integer g = gcd_of(a.row(i));
      if (g > 1)
        for (std::size_t j = c; j < a.cols(); ++j) a(i, j) /= g;
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form (column style)

struct HnfResult {
  IntMatrix h;  ///< h = m * u
  IntMatrix u;  ///< unimodular, cols(m) x cols(m)
  std::size_t rank = 0;  ///< nonzero columns of h are exactly the first `rank`
};

/// Column-style Hermite normal form. The nonzero columns come first, form a
/// lower echelon basis of the column lattice, have positive pivots, and every
/// entry of a pivot row left of its pivot lies in [0, pivot). Two matrices
/// with the same row count have the same column lattice iff their h agree
/// after dropping zero columns.
inline HnfResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.cols());
  const std::size_t n = h.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.rows() && k < n; ++i) {
    // Euclid across columns k.. of row i until only column k is nonzero.
    while (true) {
      std::size_t best = n;
      for (std::size_t c = k; c < n; ++c) {
        if (sgn(h(i, c)) == 0) continue;
        if (best == n || abs(h(i, c)) < abs(h(i, best))) best = c;
      }
      if (best == n) break;
      h.swap_cols(k, best);
      u.swap_cols(k, best);
      bool clean = true;
      for (std::size_t c = k + 1; c < n; ++c) {
        if (sgn(h(i, c)) == 0) continue;
        Integer q = floor_div(h(i, c), h(i, k));
        h.add_col_multiple(c, k, -q);
        u.add_col_multiple(c, k, -q);
        if (sgn(h(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h(i, k)) == 0) continue;  // no pivot in this row
    if (sgn(h(i, k)) < 0) {
      h.negate_col(k);
      u.negate_col(k);
    }
    for (std::size_t c = 0; c < k; ++c) {
      Integer q = floor_div(h(i, c), h(i, k));
      h.add_col_multiple(c, k, -q);
      u.add_col_multiple(c, k, -q);
    }
    ++k;
  }
  return {std::move(h), std::move(u), k};
}

/// The nonzero columns of the HNF: a canonical basis of the column lattice.
inline IntMatrix lattice_basis(const IntMatrix& m) {
  auto r = hnf(m);
  std::vector<std::size_t> idx(r.rank);
  for (std::size_t k = 0; k < r.rank; ++k) idx[k] = k;
  return r.h.select_columns(idx);
}

inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && lattice_basis(a) == lattice_basis(b);
}

/// Inverse of a unimodular square matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("inverse_unimodular: not square");
  auto r = hnf(u);
  if (!(r.h == IntMatrix::identity(u.rows())))
    throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  return r.u;
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SnfDecomposition {
  IntMatrix s;  ///< u * m * v, diagonal with s11 | s22 | ... and non-negative
  IntMatrix u;  ///< unimodular, rows(m) x rows(m)
  IntMatrix v;  ///< unimodular, cols(m) x cols(m)

  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
    return d;
  }
};

/// Smith normal form by smallest-pivot-first reduction; deterministic.
inline SnfDecomposition snf(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t rows = s.rows(), cols = s.cols();

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool exhausted = false;
    while (true) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (sgn(s(i, j)) == 0) continue;
          if (pi == rows || abs(s(i, j)) < abs(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) {
        exhausted = true;
        break;
      }
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(s(i, t)) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (sgn(s(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(s(t, j)) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (sgn(s(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining block; otherwise fold in the offending row.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(mod_positive(s(i, j), s(t, t))) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      s.add_row_multiple(t, bad, 1);
      u.add_row_multiple(t, bad, 1);
    }
    if (exhausted) break;
    if (sgn(s(t, t)) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

/// Z^free_rank + Z/d1 + ... + Z/dk in invariant-factor form: every di >= 2
/// and di | d(i+1). Two groups are isomorphic iff the fields agree.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  IntVector invariant_factors;

  static FgAbelianGroup trivial() { return {}; }
  static FgAbelianGroup free(std::size_t rank) { return {rank, {}}; }
  static FgAbelianGroup cyclic(const Integer& order);
  /// Canonical form of Z^free_rank + (+) Z/orders[i]. An order of 0 counts as
  /// a free summand and an order of +-1 as trivial.
  static FgAbelianGroup from_cyclic(std::size_t free_rank, const IntVector& orders);

  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& d : invariant_factors) p *= d;
    return p;
  }
  /// Largest invariant factor; 1 for a torsion-free group.
  Integer exponent() const {
    return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
  }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  bool is_torsion_free() const { return invariant_factors.empty(); }
  FgAbelianGroup torsion() const { return {0, invariant_factors}; }

  FgAbelianGroup direct_sum(const FgAbelianGroup& other) const {
    IntVector all = invariant_factors;
    all.insert(all.end(), other.invariant_factors.begin(), other.invariant_factors.end());
    return from_cyclic(free_rank + other.free_rank, all);
  }

  /// "Z^r x Z/d1 x Z/d2", "Z" for rank one, "1" for the trivial group.
  std::string to_string() const {
    if (is_trivial()) return "1";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << '^' << free_rank;
      first = false;
    }
    for (const auto& d : invariant_factors) {
      os << (first ? "" : " x ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
  }
  friend std::ostream& operator<<(std::ostream& os, const FgAbelianGroup& g) {
    return os << g.to_string();
  }
};

/// Z^rows modulo the column lattice of m, with coordinates.
struct Cokernel {
  FgAbelianGroup group;
  /// Row k maps x in Z^rows to coordinate k: free coordinates first, then one
  /// coordinate per invariant factor, in group order.
  IntMatrix coordinates;
  /// moduli[k] = 0 for a free coordinate, else the invariant factor.
  IntVector moduli;
  /// Column k is a lift in Z^rows of the k-th generator.
  IntMatrix generators;

  /// The surjection Z^rows -> Z^r (+) Z/d1 (+) ..., torsion entries reduced.
  IntVector project(const IntVector& x) const {
    IntVector y = coordinates * x;
    for (std::size_t k = 0; k < y.size(); ++k)
      if (sgn(moduli[k]) != 0) y[k] = mod_positive(y[k], moduli[k]);
    return y;
  }
};

inline Cokernel cokernel(const IntMatrix& m) {
  auto d = snf(m);
  const std::size_t rows = m.rows();
  const std::size_t diag = std::min(m.rows(), m.cols());
  std::vector<std::size_t> free_idx, tors_idx;
  IntVector factors;
  for (std::size_t i = 0; i < rows; ++i) {
    if (i >= diag || sgn(d.s(i, i)) == 0) {
      free_idx.push_back(i);
    } else if (d.s(i, i) > 1) {
      tors_idx.push_back(i);
      factors.push_back(d.s(i, i));
    }
  }
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());

  Cokernel c;
  c.group = {free_idx.size(), factors};
  c.coordinates = d.u.select_rows(order);
  c.moduli.assign(free_idx.size(), Integer(0));
  c.moduli.insert(c.moduli.end(), factors.begin(), factors.end());
  c.generators = inverse_unimodular(d.u).select_columns(order);
  return c;
}

inline FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  return from_cyclic(0, {order});
}

inline FgAbelianGroup FgAbelianGroup::from_cyclic(std::size_t free_rank,
                                                  const IntVector& orders) {
  auto g = cokernel(IntMatrix::diagonal(orders)).group;
  g.free_rank += free_rank;
  return g;
}

/// Z-basis of {x : m x = 0}, one basis vector per column.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  auto r = hnf(m);
  std::vector<std::size_t> idx;
  for (std::size_t k = r.rank; k < m.cols(); ++k) idx.push_back(k);
  return r.u.select_columns(idx);
}

// ---------------------------------------------------------------------------
// Rational solving

/// Some exact x with m x = v, or nullopt when the system is inconsistent over Q.
/// Gauss-Jordan with first-nonzero pivoting; free variables are set to 0.
inline std::optional<RationalVector> solve_rational(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("solve_rational: shape");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<RationalVector> a(rows, RationalVector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
    a[i][cols] = v[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(a[i][cols]) != 0) return std::nullopt;
  RationalVector x(cols);
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = a[k][cols];
  return x;
}

}  // namespace stacky
