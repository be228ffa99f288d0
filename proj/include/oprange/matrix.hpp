#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oprange/error.hpp"
#include "oprange/scalar.hpp"

namespace oprange {

template <Scalar T>
using Vector = std::vector<T>;

/// Dense row-major matrix over a single scalar field. Zero-sized dimensions
/// are legal and model operators to or from the trivial space.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix data size does not match its shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(std::span<const T> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }
  static Matrix diagonal(std::initializer_list<T> entries) {
    return diagonal(std::span<const T>(entries.begin(), entries.size()));
  }

  /// Matrix whose columns are the given vectors, all of length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector<T>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> data() const noexcept { return data_; }

  Vector<T> column(std::size_t j) const {
    Vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
      throw Error(ErrorKind::DimensionMismatch, "block out of range");
    }
    Matrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
    }
    return m;
  }

  Matrix rows_range(std::size_t row0, std::size_t nrows) const { return block(row0, 0, nrows, cols_); }
  Matrix cols_range(std::size_t col0, std::size_t ncols) const { return block(0, col0, rows_, ncols); }

  void set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
    if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_) {
      throw Error(ErrorKind::DimensionMismatch, "block out of range");
    }
    for (std::size_t i = 0; i < b.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(row0 + i, col0 + j) = b(i, j);
    }
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch, "product of " + a.shape() + " and " + b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    Vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    }
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimensionMismatch, "shape " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Real transpose; the adjoint of an operator between real coordinate spaces.
template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& m) {
  return m.transposed();
}

/// Column operator: `a` stacked above `b`.
template <Scalar T>
Matrix<T> stack_vertical(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vertical stack needs equal column counts");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

/// Row operator: `a` to the left of `b`.
template <Scalar T>
Matrix<T> stack_horizontal(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "horizontal stack needs equal row counts");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// [[a, 0], [0, b]].
template <Scalar T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <Scalar T>
Matrix<double> to_double(const Matrix<T>& m) {
  Matrix<double> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
  }
  return d;
}

template <Scalar T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const auto& x : m.data()) best = std::max(best, abs_value(x));
  return best;
}

template <Scalar T>
double frobenius_norm(const Matrix<T>& m) {
  double sum = 0.0;
  for (const auto& x : m.data()) {
    const double v = to_double(x);
    sum += v * v;
  }
  return std::sqrt(sum);
}

template <Scalar T>
bool is_zero(const Matrix<T>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const T& x) { return is_zero(x); });
}

template <Scalar T>
bool is_symmetric(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

template <Scalar T>
T trace(const Matrix<T>& m) {
  T t(0);
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

template <Scalar T>
T dot(const Vector<T>& x, const Vector<T>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace oprange
