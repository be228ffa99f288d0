#pragma once

#include <cstddef>
#include <utility>

#include "oprange/linalg.hpp"

namespace oprange {

/// A linear relation from H to K, stored as its graph: a subspace of H x K
/// with the H-coordinates first. Finite-dimensional graphs are closed.
template <Scalar T>
class LinearRelation {
 public:
  LinearRelation() = default;
  LinearRelation(std::size_t dim_h, std::size_t dim_k, Subspace<T> graph);

  /// Relation whose graph is spanned by the columns of `graph_columns`.
  static LinearRelation spanned_by(std::size_t dim_h, std::size_t dim_k, const Matrix<T>& graph_columns,
                                   const Tolerance& tol = {});

  std::size_t dim_h() const noexcept { return dim_h_; }
  std::size_t dim_k() const noexcept { return dim_k_; }
  const Subspace<T>& graph() const noexcept { return graph_; }

  /// H-block and K-block of the graph basis.
  Matrix<T> h_block() const { return graph_.basis().rows_range(0, dim_h_); }
  Matrix<T> k_block() const { return graph_.basis().rows_range(dim_h_, dim_k_); }

  bool is_closed() const noexcept { return true; }

 private:
  std::size_t dim_h_ = 0;
  std::size_t dim_k_ = 0;
  Subspace<T> graph_;
};

/// L(A, B) = {(Af, Bf) : f in E}, the range of the column operator.
template <Scalar T>
LinearRelation<T> from_pair(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// Representing pair read off the canonical graph basis; one member of the
/// equivalence class of representatives, so compare graphs, not matrices.
template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> to_pair(const LinearRelation<T>& t);

/// Graph of an everywhere defined operator.
template <Scalar T>
LinearRelation<T> operator_graph(const Matrix<T>& m, const Tolerance& tol = {});

template <Scalar T>
Subspace<T> dom(const LinearRelation<T>& t, const Tolerance& tol = {});
template <Scalar T>
Subspace<T> ran(const LinearRelation<T>& t, const Tolerance& tol = {});
/// {h : (h, 0) in T}.
template <Scalar T>
Subspace<T> ker(const LinearRelation<T>& t, const Tolerance& tol = {});
/// {k : (0, k) in T}.
template <Scalar T>
Subspace<T> mul(const LinearRelation<T>& t, const Tolerance& tol = {});

template <Scalar T>
bool is_operator(const LinearRelation<T>& t, const Tolerance& tol = {}) {
  return mul(t, tol).is_zero();
}

/// The flip J(f, g) = (g, -f) from H x K to K x H as a block matrix.
template <Scalar T>
Matrix<T> flip_operator(std::size_t dim_h, std::size_t dim_k);

/// T* = (J T)^perp, a relation from K to H.
template <Scalar T>
LinearRelation<T> adjoint_rel(const LinearRelation<T>& t, const Tolerance& tol = {});

/// L(A, B)* computed as the solution set {(k, h) : B* k = A* h}.
template <Scalar T>
LinearRelation<T> adjoint_of_pair(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// {(f, (I - P_mul) g) : (f, g) in T}; an operator with the same domain.
template <Scalar T>
LinearRelation<T> operator_part(const LinearRelation<T>& t, const Tolerance& tol = {});

template <Scalar T>
bool same_relation(const LinearRelation<T>& s, const LinearRelation<T>& t, const Tolerance& tol = {});

/// graph(t) is a subset of graph(s).
template <Scalar T>
bool includes(const LinearRelation<T>& s, const LinearRelation<T>& t, const Tolerance& tol = {});

/// ran Z with the inner product (Zx, Zy)_+ = (x, y) for x, y in (ker Z)^perp.
template <Scalar T>
class OperatorRange {
 public:
  explicit OperatorRange(Matrix<T> representative, const Tolerance& tol = {});

  std::size_t ambient_dim() const noexcept { return representative_.rows(); }
  const Matrix<T>& representative() const noexcept { return representative_; }
  const Matrix<T>& reduced_pinv() const noexcept { return reduced_pinv_; }
  const Subspace<T>& set() const noexcept { return set_; }

  /// Gram matrix of the plus-inner product on the canonical basis of the set.
  Matrix<T> plus_gram() const;

 private:
  Matrix<T> representative_;
  Matrix<T> reduced_pinv_;
  Subspace<T> set_;
  Tolerance tol_;

  template <Scalar U>
  friend U plus_inner(const OperatorRange<U>&, const Vector<U>&, const Vector<U>&);
};

/// <Z+ u, Z+ v>; NotInRange unless both vectors lie in ran Z.
template <Scalar T>
T plus_inner(const OperatorRange<T>& w, const Vector<T>& u, const Vector<T>& v);

/// sqrt of plus_inner(u, u), in binary64.
template <Scalar T>
double plus_norm(const OperatorRange<T>& w, const Vector<T>& u);

/// W = Z+ Z1 with Z W = Z1, given ran Z = ran Z1 (RangesDiffer otherwise).
template <Scalar T>
Matrix<T> representation_equivalence(const Matrix<T>& z, const Matrix<T>& z1, const Tolerance& tol = {});

}  // namespace oprange
