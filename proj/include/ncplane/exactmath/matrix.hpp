#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncplane/exactmath/scalar.hpp"

namespace ncplane {

template <class K>
using Vec = std::vector<K>;

// Dense row-major matrix over an exact field.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n, const K& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vec<K>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec<K> column(std::size_t j) const {
    Vec<K> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const Vec<K>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }
  Vec<K> row(std::size_t i) const { return Vec<K>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

  bool is_zero() const {
    for (const K& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<K> apply(const Vec<K>& v) const {
    if (v.size() != c_) throw std::invalid_argument("apply: size mismatch");
    Vec<K> out(r_);
    for (std::size_t j = 0; j < c_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < r_; ++i)
        if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    }
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const K& a = x(i, k);
        if (a.is_zero()) continue;
        const K* yr = &y.a_[k * y.c_];
        K* zr = &z.a_[i * z.c_];
        for (std::size_t j = 0; j < y.c_; ++j)
          if (!yr[j].is_zero()) zr[j] += a * yr[j];
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t t = 0; t < x.a_.size(); ++t) x.a_[t] += y.a_[t];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t t = 0; t < x.a_.size(); ++t) x.a_[t] -= y.a_[t];
    return x;
  }
  friend Matrix operator*(const K& s, Matrix x) {
    for (K& v : x.a_) v = s * v;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  Matrix hstack(const Matrix& y) const {
    if (r_ != y.r_ && c_ && y.c_) throw std::invalid_argument("hstack: row mismatch");
    std::size_t rows = c_ ? r_ : y.r_;
    Matrix z(rows, c_ + y.c_);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < c_; ++j) z(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < y.c_; ++j) z(i, c_ + j) = y(i, j);
    }
    return z;
  }
  Matrix vstack(const Matrix& y) const {
    if (c_ != y.c_ && r_ && y.r_) throw std::invalid_argument("vstack: column mismatch");
    std::size_t cols = r_ ? c_ : y.c_;
    Matrix z(r_ + y.r_, cols);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < cols; ++j) z(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < y.r_; ++i)
      for (std::size_t j = 0; j < cols; ++j) z(r_ + i, j) = y(i, j);
    return z;
  }
  Matrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
    Matrix z(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) z(i, j) = (*this)(i0 + i, j0 + j);
    return z;
  }
  void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }
  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix z(r_, idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t)
      for (std::size_t i = 0; i < r_; ++i) z(i, t) = (*this)(i, idx[t]);
    return z;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap(a_[i * c_ + j], a_[k * c_ + j]);
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<K> a_;
};

// In-place reduced row echelon form.  Pivot = first nonzero entry of the
// current column among the remaining rows, columns scanned left to right.
template <class K>
std::vector<std::size_t> row_reduce(Matrix<K>& m, bool reduced = true) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    K inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) = m(row, j) * inv;
    std::size_t start = reduced ? 0 : row + 1;
    for (std::size_t i = start; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  if (m.rows() > m.cols()) m = m.transpose();
  return row_reduce(m, false).size();
}

// Basis of the right null space, one column vector per free column.
template <class K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m, const K& one) {
  Matrix<K> r = m;
  std::vector<std::size_t> piv = row_reduce(r);
  std::vector<char> is_piv(m.cols(), 0);
  for (std::size_t c : piv) is_piv[c] = 1;
  std::vector<Vec<K>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec<K> v(m.cols());
    v[f] = one;
    for (std::size_t t = 0; t < piv.size(); ++t)
      if (!r(t, f).is_zero()) v[piv[t]] = -r(t, f);
    out.push_back(std::move(v));
  }
  return out;
}

template <class K>
Matrix<K> kernel_matrix(const Matrix<K>& m, const K& one) {
  return Matrix<K>::from_columns(m.cols(), kernel_basis(m, one));
}

// Indices of a maximal independent subset of columns (leftmost first).
template <class K>
std::vector<std::size_t> independent_columns(const Matrix<K>& m) {
  Matrix<K> r = m;
  return row_reduce(r, false);
}

template <class K>
Matrix<K> column_basis(const Matrix<K>& m) {
  return m.select_columns(independent_columns(m));
}

// Columns of `extra` (as indices into extra) that enlarge span(base), chosen greedily.
template <class K>
std::vector<std::size_t> complement_columns(const Matrix<K>& base, const Matrix<K>& extra) {
  Matrix<K> joint = base.hstack(extra);
  std::vector<std::size_t> piv = independent_columns(joint);
  std::vector<std::size_t> out;
  for (std::size_t c : piv)
    if (c >= base.cols()) out.push_back(c - base.cols());
  return out;
}

template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
  Matrix<K> aug = m.hstack(Matrix<K>::from_columns(m.rows(), {b}));
  std::vector<std::size_t> piv = row_reduce(aug);
  Vec<K> x(m.cols());
  for (std::size_t t = 0; t < piv.size(); ++t) {
    if (piv[t] == m.cols()) return std::nullopt;
    x[piv[t]] = aug(t, m.cols());
  }
  return x;
}

template <class K>
bool in_column_span(const Matrix<K>& m, const Vec<K>& v) {
  return rank(m.hstack(Matrix<K>::from_columns(v.size(), {v}))) == rank(m);
}

template <class K>
bool is_zero_vector(const Vec<K>& v) {
  for (const K& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace ncplane
