#pragma once

// Dense row-major matrices templated on the scalar type, plus arithmetic as
// free functions that take the ring as their first argument. A p x q matrix is
// the linear map R^q -> R^p; its columns are the images of the basis vectors.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kerpair/error.hpp"
#include "kerpair/ring.hpp"

namespace kerpair {

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  /// Builds a q x n matrix whose columns are the given vectors.
  static Matrix from_columns(std::size_t height, const std::vector<std::vector<T>>& columns) {
    Matrix m(height, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != height) throw Error(ErrorKind::DimensionMismatch, "column height mismatch");
      for (std::size_t i = 0; i < height; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void set_col(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimensionMismatch, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<u64>;
using PolyMatrix = Matrix<Poly>;

template <class T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "hcat: " + std::to_string(a.rows()) + " rows vs " + std::to_string(b.rows()));
  }
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

template <class T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vcat: column counts differ");
  Matrix<T> out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Ring-generic arithmetic. `Ring` is Zmod, PrimeField or PolyRing.

template <class Ring>
using scalar_t = typename Ring::value_type;

template <class Ring>
Matrix<scalar_t<Ring>> zeros(const Ring& R, std::size_t rows, std::size_t cols) {
  return Matrix<scalar_t<Ring>>(rows, cols, R.zero());
}

template <class Ring>
Matrix<scalar_t<Ring>> identity(const Ring& R, std::size_t n) {
  auto m = zeros(R, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = R.one();
  return m;
}

template <class Ring>
Matrix<scalar_t<Ring>> multiply(const Ring& R, const Matrix<scalar_t<Ring>>& a, const Matrix<scalar_t<Ring>>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                   " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  auto out = zeros(R, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (R.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = R.add(out(i, j), R.mul(aik, b(k, j)));
    }
  return out;
}

template <class Ring>
std::vector<scalar_t<Ring>> apply(const Ring& R, const Matrix<scalar_t<Ring>>& a, const std::vector<scalar_t<Ring>>& v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "apply: matrix has " + std::to_string(a.cols()) + " columns, vector has " + std::to_string(v.size()));
  }
  std::vector<scalar_t<Ring>> out(a.rows(), R.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = R.add(out[i], R.mul(a(i, j), v[j]));
  return out;
}

template <class Ring>
Matrix<scalar_t<Ring>> add(const Ring& R, const Matrix<scalar_t<Ring>>& a, const Matrix<scalar_t<Ring>>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "add: shapes differ");
  Matrix<scalar_t<Ring>> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = R.add(a(i, j), b(i, j));
  return out;
}

template <class Ring>
Matrix<scalar_t<Ring>> negate(const Ring& R, const Matrix<scalar_t<Ring>>& a) {
  Matrix<scalar_t<Ring>> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = R.neg(a(i, j));
  return out;
}

template <class Ring>
std::vector<scalar_t<Ring>> add(const Ring& R, const std::vector<scalar_t<Ring>>& a,
                                const std::vector<scalar_t<Ring>>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector add: lengths differ");
  std::vector<scalar_t<Ring>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = R.add(a[i], b[i]);
  return out;
}

template <class Ring>
std::vector<scalar_t<Ring>> negate(const Ring& R, const std::vector<scalar_t<Ring>>& a) {
  std::vector<scalar_t<Ring>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = R.neg(a[i]);
  return out;
}

template <class Ring>
bool is_zero(const Ring& R, const Matrix<scalar_t<Ring>>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [&](const auto& x) { return R.is_zero(x); });
}

template <class Ring>
bool is_zero(const Ring& R, const std::vector<scalar_t<Ring>>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return R.is_zero(x); });
}

/// Entrywise reduction of a residue matrix into a smaller modulus.
inline ScalarMatrix reduce_entries(const ScalarMatrix& a, const Zmod& target) {
  ScalarMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = target.reduce(a(i, j));
  return out;
}

/// [I_top ; 0] of shape (top + bottom) x top.
template <class Ring>
Matrix<scalar_t<Ring>> inclusion_first(const Ring& R, std::size_t top, std::size_t bottom) {
  auto m = zeros(R, top + bottom, top);
  for (std::size_t i = 0; i < top; ++i) m(i, i) = R.one();
  return m;
}

/// [0 | I_second] of shape second x (first + second).
template <class Ring>
Matrix<scalar_t<Ring>> projection_second(const Ring& R, std::size_t first, std::size_t second) {
  auto m = zeros(R, second, first + second);
  for (std::size_t i = 0; i < second; ++i) m(i, first + i) = R.one();
  return m;
}

}  // namespace kerpair
