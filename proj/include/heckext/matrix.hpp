#pragma once

// Dense matrices over an exact field and the row-reduction toolkit built on
// them (echelon forms, rank, kernels, solving, determinants).

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heckext/scalar.hpp"

namespace heckext {

template <typename F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(std::span<const std::vector<F>> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      assert(cols[j].size() == rows);
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix from_rows(std::span<const std::vector<F>> rs, std::size_t cols) {
    Matrix m(rs.size(), cols);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      assert(rs[i].size() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<F> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<F> column(std::size_t j) const {
    std::vector<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  const std::vector<F>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const F& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
  friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    F t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (bkj == 0) continue;
          t = aik * bkj;
          c(i, j) += t;
        }
      }
    return c;
  }

  friend std::vector<F> operator*(const Matrix& a, std::span<const F> v) {
    if (a.cols_ != v.size()) throw Error("matrix-vector shape mismatch");
    std::vector<F> out(a.rows_);
    F t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && v[k] != 0) {
          t = a(i, k) * v[k];
          out[i] += t;
        }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i) os << "; ";
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using QMatrix = Matrix<Scalar>;
using QVector = std::vector<Scalar>;

template <typename F>
F trace(const Matrix<F>& m) {
  F t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

/// Kronecker product a (x) b, row/column index (i_a, i_b) -> i_a * rows(b) + i_b.
template <typename F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (b(p, q) != 0) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

template <typename F>
struct Echelon {
  Matrix<F> reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; pivots chosen as the first nonzero entry in each column.
template <typename F>
Echelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  F factor, t;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    F inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) {
          t = factor * m(r, j);
          m(i, j) -= t;
        }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// Null space basis as columns; one vector per free column, with a 1 in that column.
template <typename F>
Matrix<F> kernel(const Matrix<F>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

/// Basis (as columns) of the column space, taking the pivot columns of m itself.
template <typename F>
Matrix<F> column_space(const Matrix<F>& m) {
  auto e = rref(m);
  Matrix<F> b(m.rows(), e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, k) = m(i, e.pivots[k]);
  return b;
}

/// Some X with a X = b, or nullopt if the system is inconsistent. Free variables are set to zero.
template <typename F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw Error("solve: shape mismatch");
  Matrix<F> aug(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() >= a.cols()) return std::nullopt;
  Matrix<F> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  return x;
}

template <typename F>
F determinant(Matrix<F> m) {
  if (!m.is_square()) throw Error("determinant of non-square matrix");
  const std::size_t n = m.rows();
  F det = 1;
  F factor;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      factor = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

template <typename F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  auto x = solve(m, Matrix<F>::identity(m.rows()));
  if (!x || rank(m) != m.rows()) return std::nullopt;
  return x;
}

/// Row vector times matrix.
template <typename F>
std::vector<F> row_times(std::span<const F> v, const Matrix<F>& m) {
  if (v.size() != m.rows()) throw Error("row-vector product shape mismatch");
  std::vector<F> out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(k, j) != 0) out[j] += v[k] * m(k, j);
  }
  return out;
}

template <typename F>
F dot(std::span<const F> a, std::span<const F> b) {
  if (a.size() != b.size()) throw Error("dot: length mismatch");
  F s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

/// Incrementally maintained row-echelon basis of a subspace of F^n.
///
/// Vectors are kept fully reduced against each other, so after `insert`
/// calls the stored rows are the reduced row echelon basis of their span and
/// the coordinates of a member vector are its entries at the pivot columns.
template <typename F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::vector<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Returns true if v enlarged the span.
  bool insert(std::vector<F> v) {
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](const F& x) { return x != 0; });
    if (it == v.end()) return false;
    std::size_t p = static_cast<std::size_t>(it - v.begin());
    F inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    F factor, t;
    for (auto& r : rows_) {
      if (r[p] == 0) continue;
      factor = r[p];
      for (std::size_t j = p; j < dim_; ++j)
        if (v[j] != 0) {
          t = factor * v[j];
          r[j] -= t;
        }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
  }

  bool contains(std::vector<F> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const F& x) { return x == 0; });
  }

  /// Coordinates of a member of the span; nullopt if v is not in it.
  std::optional<std::vector<F>> coordinates(const std::vector<F>& v) const {
    std::vector<F> c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
    std::vector<F> r = v;
    F t;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (c[k] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (rows_[k][j] != 0) {
          t = c[k] * rows_[k][j];
          r[j] -= t;
        }
    }
    if (!std::all_of(r.begin(), r.end(), [](const F& x) { return x == 0; })) return std::nullopt;
    return c;
  }

 private:
  void reduce(std::vector<F>& v) const {
    if (v.size() != dim_) throw Error("EchelonBasis: dimension mismatch");
    F factor, t;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (v[p] == 0) continue;
      factor = v[p];
      const auto& r = rows_[k];
      for (std::size_t j = p; j < dim_; ++j)
        if (r[j] != 0) {
          t = factor * r[j];
          v[j] -= t;
        }
    }
  }

  std::size_t dim_;
  std::vector<std::vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Null space of the rows spanned by `e`, in the same normal form as kernel().
template <typename F>
Matrix<F> kernel(const EchelonBasis<F>& e) {
  const std::size_t n = e.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < e.size(); ++r) k(e.pivots()[r], f) = -e.rows()[r][free[f]];
  }
  return k;
}


}  // namespace heckext
