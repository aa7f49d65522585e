#pragma once

#include <optional>
#include <vector>

#include "mtv/poly.hpp"

namespace mtv {

inline Rational field_inverse(const Rational& q) { return 1 / q; }

/// Dense row-major matrix over an exact field T.  T must provide the usual
/// arithmetic, `is_zero(const T&)` and `field_inverse(const T&)`.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, a_.empty() ? T{} : a_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainMismatch("matrix shape mismatch in product");
    Matrix r(a.rows_, b.cols_, a.zero_like());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainMismatch("matrix shape mismatch in sum");
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainMismatch("matrix shape mismatch in difference");
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DomainMismatch("matrix/vector shape mismatch");
    std::vector<T> out(rows_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  T trace() const {
    T t = zero_like();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// A zero of the same domain as the entries.
  T zero_like() const {
    if (a_.empty()) return T{};
    return a_[0] - a_[0];
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = field_inverse(m(row, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the right null space {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m, const T& one) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  T zero = one - one;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b; nullopt when inconsistent.  Free variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw DomainMismatch("solve: right-hand side length mismatch");
  T zero = m.zero_like();
  Matrix<T> aug(m.rows(), m.cols() + 1, zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
inline UniPoly charpoly(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw DomainMismatch("charpoly of a non-square matrix");
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix<Rational> m(n, n, Rational(0));
  Matrix<Rational> id = Matrix<Rational>::identity(n, Rational(0), Rational(1));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> cid = id;
    for (std::size_t i = 0; i < n; ++i) cid(i, i) = c[n - k + 1];
    m = a * m + cid;
    Matrix<Rational> am = a * m;
    c[n - k] = -am.trace() / Rational(static_cast<long>(k));
  }
  return UniPoly(std::move(c));
}

}  // namespace mtv
