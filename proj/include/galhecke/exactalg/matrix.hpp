#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/poly.hpp"

namespace galhecke {

// Dense row-major matrix over a scalar type following the Poly scalar
// protocol. Elimination routines assume S is a field.
template <class S>
class Matrix {
 public:
  using Scalar = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& zero)
      : rows_(rows), cols_(cols), zero_(zero), d_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const S& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<S>>& rows, const S& zero) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), zero);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const S& zero() const noexcept { return zero_; }

  S& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  std::vector<S> row(std::size_t i) const {
    return std::vector<S>(d_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          d_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<S> col(std::size_t j) const {
    std::vector<S> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = d_[k] + o.d_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = d_[k] - o.d_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }
  Matrix operator*(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.d_) x = x * s;
    return r;
  }
  std::vector<S> operator*(const std::vector<S>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
    std::vector<S> out(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < d_.size(); ++k)
      if (!(d_[k] == o.d_[k])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  S zero_{};
  std::vector<S> d_;
};

template <class S>
Matrix<S> pow(const Matrix<S>& m, unsigned e) {
  Matrix<S> r = Matrix<S>::identity(m.rows(), m.zero());
  Matrix<S> b = m;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// Laplace expansion; valid over any commutative ring. Used for n <= 3 and
// for scalar types without division.
template <class S>
S determinant_expand(const Matrix<S>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of non-square matrix");
  if (n == 0) return one_like(m.zero());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S acc = m.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (is_zero(m(0, j))) continue;
    Matrix<S> minor(n - 1, n - 1, m.zero());
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, c++) = m(i, k);
      }
    const S term = m(0, j) * determinant_expand(minor);
    if (j % 2 == 0) acc = acc + term;
    else acc = acc - term;
  }
  return acc;
}

// Gaussian elimination over a field.
template <class S>
S determinant(Matrix<S> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of non-square matrix");
  if (n <= 3) return determinant_expand(m);
  S det = one_like(m.zero());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return m.zero();
    if (piv != c) {
      m.swap_rows(piv, c);
      det = m.zero() - det;
    }
    det = det * m(c, c);
    const S inv = inverse(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      const S f = m(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(r, k) = m(r, k) - f * m(c, k);
    }
  }
  return det;
}

// Characteristic polynomial det(xI - M) via reduction to Hessenberg form
// (Cohen, A Course in Computational Algebraic Number Theory, Alg. 2.2.9).
template <class S>
Poly<S> charpoly(Matrix<S> h) {
  const std::size_t n = h.rows();
  if (n != h.cols()) throw DomainError("charpoly of non-square matrix");
  const S zero = h.zero();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && is_zero(h(i, m - 1))) ++i;
    if (i == n) continue;
    if (i != m) {
      h.swap_rows(i, m);
      h.swap_cols(i, m);
    }
    const S inv = inverse(h(m, m - 1));
    for (std::size_t j = m + 1; j < n; ++j) {
      if (is_zero(h(j, m - 1))) continue;
      const S u = h(j, m - 1) * inv;
      for (std::size_t k = 0; k < n; ++k) h(j, k) = h(j, k) - u * h(m, k);
      for (std::size_t k = 0; k < n; ++k) h(k, m) = h(k, m) + u * h(k, j);
    }
  }
  const Poly<S> x = Poly<S>::x(zero);
  std::vector<Poly<S>> p;
  p.push_back(Poly<S>::constant(one_like(zero)));
  for (std::size_t m = 1; m <= n; ++m) {
    Poly<S> pm = (x - Poly<S>::constant(h(m - 1, m - 1))) * p[m - 1];
    S t = one_like(zero);
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = t * h(i, i - 1);
      pm = pm - p[i - 1] * (t * h(i - 1, m - 1));
    }
    p.push_back(std::move(pm));
  }
  return p[n];
}

// In-place reduced row echelon form over a field; returns pivot columns.
template <class S>
std::vector<std::size_t> rref(Matrix<S>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    const S inv = inverse(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = m(r, k) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const S f = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) = m(i, k) - f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
std::size_t rank(Matrix<S> m) {
  return rref(m).size();
}

// Basis of the right kernel {v : M v = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> kernel(Matrix<S> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(m.cols(), m.zero());
    v[f] = one_like(m.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m.zero() - m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve M x = b for one solution; throws if inconsistent.
template <class S>
std::vector<S> solve(const Matrix<S>& m, const std::vector<S>& b) {
  Matrix<S> aug(m.rows(), m.cols() + 1, m.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) throw DomainError("inconsistent linear system");
  std::vector<S> x(m.cols(), m.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

template <class T, class S, class Map>
Matrix<T> map_entries(const Matrix<S>& m, const T& zero, Map f) {
  Matrix<T> r(m.rows(), m.cols(), zero);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
  return r;
}

}  // namespace galhecke
