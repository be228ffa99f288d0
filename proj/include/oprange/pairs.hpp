#pragma once

#include <cstddef>

#include "oprange/linalg.hpp"
#include "oprange/linrel.hpp"

namespace oprange {

/// Two operators A: E -> H and B: E -> K on a shared domain, with the Gram
/// operator A*A + B*B computed once at construction.
template <Scalar T>
class OperatorPair {
 public:
  OperatorPair(Matrix<T> a, Matrix<T> b);

  const Matrix<T>& a() const noexcept { return a_; }
  const Matrix<T>& b() const noexcept { return b_; }
  const Matrix<T>& gram() const noexcept { return gram_; }

  std::size_t dim_e() const noexcept { return a_.cols(); }
  std::size_t dim_h() const noexcept { return a_.rows(); }
  std::size_t dim_k() const noexcept { return b_.rows(); }

 private:
  Matrix<T> a_;
  Matrix<T> b_;
  Matrix<T> gram_;
};

/// c(A, B): E -> H x K.
template <Scalar T>
Matrix<T> column(const Matrix<T>& a, const Matrix<T>& b);

/// r(A, B): H1 x H2 -> K, (f, g) -> Af + Bg.
template <Scalar T>
Matrix<T> row(const Matrix<T>& a, const Matrix<T>& b);

template <Scalar T>
struct ReducedPair {
  /// (A0, B0) acting on E0 = ran(A*A + B*B), in the coordinates of `embedding`.
  OperatorPair<T> pair;
  /// Basis of E0 as columns in E; A0 = A * embedding.
  Matrix<T> embedding;
  /// ker A intersected with ker B.
  Subspace<T> redundant;
};

template <Scalar T>
ReducedPair<T> reduce(const OperatorPair<T>& p, const Tolerance& tol = {});

/// Reduced pair rescaled by the inverse square root of its Gram operator, so
/// that A'*A' + B'*B' = I. Float mode only.
template <Scalar T>
OperatorPair<T> normalize(const OperatorPair<T>& p, const Tolerance& tol = {});

/// Whether A*A + B*B is an orthogonal projection.
template <Scalar T>
bool is_q_normalized(const OperatorPair<T>& p, const Tolerance& tol = {});

/// [[AA*, AB*], [BA*, BB*]], the projection of H x K onto L(A, B) when the
/// pair is Q-normalized (NotQNormalized otherwise).
template <Scalar T>
Matrix<T> graph_projection(const OperatorPair<T>& p, const Tolerance& tol = {});

/// [[I - BB*, BA*], [AB*, I - AA*]] on K x H, the projection onto L(A, B)*.
template <Scalar T>
Matrix<T> adjoint_graph_projection(const OperatorPair<T>& p, const Tolerance& tol = {});

/// C_A, C_B with A = C_A S, B = C_B S for S = (A*A + B*B)^(1/2), both
/// vanishing on ker S.
template <Scalar T>
struct CanonicalPair {
  Matrix<T> c_a;
  Matrix<T> c_b;
  /// S.
  Matrix<T> root;
  OperatorPair<T> parent;
};

/// Float mode only; C_A = A pinv(S), C_B = B pinv(S).
template <Scalar T>
CanonicalPair<T> canonical_contractions(const OperatorPair<T>& p, const Tolerance& tol = {});

/// c(C_A, C_B) is a partial isometry from ran(gram) onto ran c(A, B).
template <Scalar T>
bool check_polar(const CanonicalPair<T>& cp, const Tolerance& tol = {});

/// L(A, B)** = L(C_A, C_B). Exact mode returns L(A, B), which is closed.
template <Scalar T>
LinearRelation<T> closure(const OperatorPair<T>& p, const Tolerance& tol = {});

/// Partial isometry V with A = V (A*A)^(1/2), initial space ran A*, final
/// space ran A. Float mode only.
template <Scalar T>
Matrix<T> polar_isometry(const Matrix<T>& a, const Tolerance& tol = {});

/// Parts of L(A, B)* = {((I - BB*)^(1/2) k, V_A B* k + P h)} with P the
/// projection onto ker A*, for a normalized pair.
template <Scalar T>
struct AdjointParametrization {
  std::size_t dim_h = 0;
  std::size_t dim_k = 0;
  /// (I - BB*)^(1/2) on K.
  Matrix<T> k_part;
  /// V_A B*: K -> H.
  Matrix<T> coupling;
  /// ker A*.
  Subspace<T> h_part;

  /// Relation from K to H spanned by the two summands.
  LinearRelation<T> assemble(const Tolerance& tol = {}) const;
  /// The summands {(X k, Y k)} and {(0, P h)} are orthogonal in K x H.
  bool summands_orthogonal(const Tolerance& tol = {}) const;
};

/// Float mode only; NotNormalized unless A*A + B*B = I.
template <Scalar T>
AdjointParametrization<T> adjoint_param_representation(const OperatorPair<T>& p, const Tolerance& tol = {});

}  // namespace oprange
