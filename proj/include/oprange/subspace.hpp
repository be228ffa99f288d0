#pragma once

#include <cstddef>

#include "oprange/matrix.hpp"
#include "oprange/tolerance.hpp"

namespace oprange {

/// A linear subspace of a coordinate space, held by a canonical basis.
///
/// Exact mode keeps the reduced column echelon basis, so two values that
/// describe the same set are structurally equal. Float mode keeps an
/// orthonormal basis from an SVD; compare those with `same_subspace`.
template <Scalar T>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ambient, Matrix<T>(ambient, 0)); }
  static Subspace full(std::size_t ambient) { return Subspace(ambient, Matrix<T>::identity(ambient)); }

  /// Span of the columns of `columns`.
  static Subspace span(const Matrix<T>& columns, const Tolerance& tol = {});

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const Matrix<T>& basis() const noexcept { return basis_; }

  bool is_zero() const noexcept { return rank() == 0; }
  bool is_full() const noexcept { return rank() == ambient_; }

  /// Structural equality of the canonical data. Decisive in exact mode only.
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(std::size_t ambient, Matrix<T> basis) : ambient_(ambient), basis_(std::move(basis)) {}

  std::size_t ambient_ = 0;
  Matrix<T> basis_;
};

}  // namespace oprange
