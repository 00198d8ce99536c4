#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqk/error.hpp"

namespace sqk {

using Integer = boost::multiprecision::cpp_int;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged-matrix", "rows of different length");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  /// row[target] += factor * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(source, c) != 0) (*this)(target, c) += factor * (*this)(source, c);
  }
  /// col[target] += factor * col[source]
  void add_col(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, source) != 0) (*this)(r, target) += factor * (*this)(r, source);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("dimension-mismatch", "matrix product dimensions");
    IntegerMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) p(i, j) += x * b(k, j);
      }
    return p;
  }

  bool operator==(const IntegerMatrix&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Rank and torsion coefficients of a finitely generated abelian group,
/// torsion in divisibility order with every entry >= 2.
struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const AbelianInvariants&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const AbelianInvariants& a) {
    os << "Z^" << a.rank;
    for (const auto& t : a.torsion) os << " + Z/" << t;
    return os;
  }
};

/// `U * M * V == S` with U, V unimodular and S diagonal, d_i | d_{i+1}.
struct SNFResult {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

/// Diagonalizes `a` in place with divisibility chain. Row operations are
/// mirrored on `u` (if given), column operations on `v` (if given).
inline void smith_in_place(IntegerMatrix& a, IntegerMatrix* u, IntegerMatrix* v) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
  };
  auto add_row = [&](std::size_t t, std::size_t s, const Integer& f) {
    a.add_row(t, s, f);
    if (u) u->add_row(t, s, f);
  };
  auto add_col = [&](std::size_t t, std::size_t s, const Integer& f) {
    a.add_col(t, s, f);
    if (v) v->add_col(t, s, f);
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest |entry| in the trailing block; ties by position
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Integer& x = a(i, j);
          if (x == 0) continue;
          Integer ax = abs(x);
          if (!pivot || ax < best) {
            best = ax;
            pivot = {i, j};
          }
        }
      if (!pivot) return;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
      if (offending) {
        add_row(t, *offending, Integer(1));
        continue;
      }
      if (a(t, t) < 0) {
        a.negate_row(t);
        if (u) u->negate_row(t);
      }
      break;
    }
  }
}

inline AbelianInvariants invariants_from_diagonal(std::size_t generators, const std::vector<Integer>& diag) {
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) inv.torsion.push_back(d);
  }
  inv.rank = generators - nonzero;
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

}  // namespace detail

/// Exact Smith normal form with transformation witnesses. Pivoting picks the
/// smallest nonzero absolute value, ties by position.
inline SNFResult smith_normal_form(const IntegerMatrix& m) {
  SNFResult r{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols())};
  detail::smith_in_place(r.S, &r.U, &r.V);
  return r;
}

/// Invariants of Z^cols / (row span of m), from the dense Smith form.
inline AbelianInvariants cokernel_invariants_dense(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  detail::smith_in_place(a, nullptr, nullptr);
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) diag.push_back(a(i, i));
  return detail::invariants_from_diagonal(m.cols(), diag);
}

using SparseVector = std::vector<std::pair<std::uint32_t, Integer>>;

namespace detail {

/// Replaces `rows` by a basis of the lattice they span (row echelon form
/// reached by unimodular row operations).
inline std::vector<std::vector<Integer>> lattice_basis(std::vector<std::vector<Integer>> rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::optional<std::size_t> pivot;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (!pivot || abs(rows[i][c]) < abs(rows[*pivot][c]))) pivot = i;
      if (!pivot) break;
      std::swap(rows[r], rows[*pivot]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const Integer q = rows[i][c] / rows[r][c];
        for (std::size_t k = c; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  rows.resize(r);
  return rows;
}

}  // namespace detail

/// Streams relation rows over Z^n and computes the invariants of
/// Z^n / (span of the rows).
///
/// Rows with a unit entry become pivots, kept in reduced echelon form (each
/// pivot row is +1 at its pivot column and 0 at every other pivot column);
/// every such pivot splits off a trivial summand. Other rows are reduced
/// against the pivots and kept as a residual lattice, finished by the dense
/// Smith form over the non-pivot columns.
class LatticeQuotient {
 public:
  explicit LatticeQuotient(std::size_t cols)
      : cols_(cols), pivot_(cols), scratch_(cols), touched_flag_(cols, false) {}

  std::size_t cols() const { return cols_; }

  void add_row(const SparseVector& row) {
    SparseVector r = reduce_(row);
    if (r.empty()) return;
    std::optional<std::size_t> unit;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i].second == 1 || r[i].second == -1) {
        unit = i;
        break;
      }
    if (!unit) {
      residual_.insert(std::move(r));
      if (residual_.size() > 4 * cols_ + 256) compact_();
      return;
    }
    const std::uint32_t c = r[*unit].first;
    if (r[*unit].second == -1)
      for (auto& [k, v] : r) v = -v;
    for (auto& p : pivot_) {
      if (!p) continue;
      auto it = std::lower_bound(p->begin(), p->end(), c,
                                 [](const auto& e, std::uint32_t key) { return e.first < key; });
      if (it == p->end() || it->first != c) continue;
      const Integer w = it->second;
      *p = axpy_(*p, -w, r);
    }
    pivot_[c] = std::move(r);
    ++pivots_;
  }

  void add_row(std::span<const Integer> dense) {
    SparseVector row;
    for (std::size_t c = 0; c < dense.size(); ++c)
      if (dense[c] != 0) row.emplace_back(static_cast<std::uint32_t>(c), dense[c]);
    add_row(row);
  }

  AbelianInvariants invariants() const {
    std::vector<std::size_t> free_cols;
    std::vector<std::size_t> position(cols_, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < cols_; ++c)
      if (!pivot_[c]) {
        position[c] = free_cols.size();
        free_cols.push_back(c);
      }
    std::vector<SparseVector> rest;
    for (const auto& r : residual_) {
      SparseVector red = reduce_(r);
      if (!red.empty()) rest.push_back(std::move(red));
    }
    IntegerMatrix m(rest.size(), free_cols.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (const auto& [c, v] : rest[i]) m(i, position[c]) = v;
    return cokernel_invariants_dense(m);
  }

 private:
  // row - sum over pivot columns of row[c] * pivot_c; supported off pivots.
  SparseVector reduce_(const SparseVector& row) const {
    std::vector<std::uint32_t> touched;
    auto touch = [&](std::uint32_t c) {
      if (!touched_flag_[c]) {
        touched_flag_[c] = true;
        touched.push_back(c);
      }
    };
    for (const auto& [c, v] : row) {
      touch(c);
      scratch_[c] += v;
    }
    const std::size_t original = touched.size();
    for (std::size_t i = 0; i < original; ++i) {
      const std::uint32_t c = touched[i];
      if (!pivot_[c] || scratch_[c] == 0) continue;
      const Integer coef = scratch_[c];
      for (const auto& [k, w] : *pivot_[c]) {
        touch(k);
        scratch_[k] -= coef * w;
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVector out;
    for (std::uint32_t c : touched) {
      if (scratch_[c] != 0) out.emplace_back(c, std::move(scratch_[c]));
      scratch_[c] = 0;
      touched_flag_[c] = false;
    }
    return out;
  }

  static SparseVector axpy_(const SparseVector& x, const Integer& a, const SparseVector& y) {
    SparseVector out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.emplace_back(y[j].first, a * y[j].second);
        ++j;
      } else {
        Integer v = x[i].second + a * y[j].second;
        if (v != 0) out.emplace_back(x[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void compact_() {
    std::vector<std::vector<Integer>> dense;
    for (const auto& r : residual_) {
      SparseVector red = reduce_(r);
      if (red.empty()) continue;
      std::vector<Integer> d(cols_);
      for (auto& [c, v] : red) d[c] = std::move(v);
      dense.push_back(std::move(d));
    }
    residual_.clear();
    for (auto& d : detail::lattice_basis(std::move(dense), cols_)) {
      SparseVector r;
      for (std::size_t c = 0; c < cols_; ++c)
        if (d[c] != 0) r.emplace_back(static_cast<std::uint32_t>(c), std::move(d[c]));
      residual_.insert(std::move(r));
    }
  }

  std::size_t cols_;
  std::vector<std::optional<SparseVector>> pivot_;
  std::size_t pivots_ = 0;
  std::set<SparseVector> residual_;
  mutable std::vector<Integer> scratch_;
  mutable std::vector<bool> touched_flag_;
};

/// Invariants of Z^cols / (row span of m) through `LatticeQuotient`.
inline AbelianInvariants cokernel_invariants(const IntegerMatrix& m) {
  LatticeQuotient q(m.cols());
  std::vector<Integer> row(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    q.add_row(std::span<const Integer>(row));
  }
  return q.invariants();
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntegerMatrix a) {
  if (a.rows() != a.cols()) throw Error("dimension-mismatch", "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Inverse of a unimodular matrix, read off its Smith form witnesses.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("dimension-mismatch", "inverse of non-square matrix");
  // U * m * V = I, hence m^-1 = V * U.
  SNFResult r = smith_normal_form(m);
  if (r.S != IntegerMatrix::identity(n)) throw Error("not-unimodular", "matrix is not unimodular");
  return r.V * r.U;
}

}  // namespace sqk
