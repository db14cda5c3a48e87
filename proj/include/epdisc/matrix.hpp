#pragma once

#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace epdisc {

/// Small dense row-major matrix over a ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

/// Fraction-free (Bareiss) determinant. Every division is exact over an
/// integral domain; a row swap is taken only when the positional pivot is
/// identically zero.
template <class T>
T bareiss_det(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  if (n == 0) throw Error("determinant of an empty matrix");
  bool negate = false;
  T prev = one_like(m(0, 0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t r = k + 1;
      while (r < n && is_zero(m(r, k))) ++r;
      if (r == n) return zero_like(m(0, 0));
      m.swap_rows(k, r);
      negate = !negate;
    }
    const T& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const bool row_zero = is_zero(m(i, k));
      for (std::size_t j = k + 1; j < n; ++j) {
        // Entries with a zero multiplier only need the scale/divide step.
        T num = pivot * m(i, j);
        if (!row_zero) num -= m(i, k) * m(k, j);
        m(i, j) = exact_div(num, prev);
      }
      m(i, k) = zero_like(m(i, k));
    }
    prev = m(k, k);
  }
  T det = std::move(m(n - 1, n - 1));
  return negate ? T(-det) : det;
}

/// Determinant by Gaussian elimination with partial (magnitude) pivoting,
/// for BigReal/BigComplex entries.
template <class T>
T pivoted_det(Matrix<T> m) {
  static_assert(is_float_scalar<T>::value, "pivoted_det needs a float scalar ring");
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  if (n == 0) throw Error("determinant of an empty matrix");
  T det = one_like(m(0, 0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    BigReal best_mag = magnitude(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal mag = magnitude(m(r, k));
      if (mag > best_mag) {
        best = r;
        best_mag = std::move(mag);
      }
    }
    if (best_mag.is_zero()) return zero_like(m(0, 0));
    if (best != k) {
      m.swap_rows(k, best);
      det = -det;
    }
    det = det * m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      const T factor = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return det;
}

/// Determinant choosing the elimination suited to the ring.
template <class T>
T determinant(const Matrix<T>& m) {
  if constexpr (is_float_scalar<T>::value) {
    return pivoted_det(m);
  } else {
    return bareiss_det(m);
  }
}

template <class U, class T, class F>
Matrix<U> map_entries(const Matrix<T>& m, F&& f) {
  Matrix<U> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
  }
  return r;
}

}  // namespace epdisc
