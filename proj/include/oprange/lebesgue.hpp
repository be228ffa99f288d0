#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oprange/classify.hpp"
#include "oprange/linrel.hpp"
#include "oprange/pairs.hpp"

namespace oprange {

/// B = B1 + B2 with B1 = (I - P_M) B almost dominated by A and B2 = P_M B
/// singular with respect to A, where M = D(A, B)^perp + L.
template <Scalar T>
struct LebesgueDecomposition {
  Matrix<T> b_reg;
  Matrix<T> b_sing;
  /// P_M.
  Matrix<T> projector;
  Subspace<T> m_subspace;
  Subspace<T> l_subspace;
  /// B_reg is dominated by A, equivalently the decomposition is unique.
  bool unique = false;
  std::vector<Criterion> verification;
};

/// The canonical decomposition (L = {0}). VerificationFailed if any of the
/// checks on the parts fails.
template <Scalar T>
LebesgueDecomposition<T> lebesgue_decompose(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

struct LValidation {
  bool valid = false;
  /// Empty when valid; otherwise names the failed condition: "admissible.outside_closure",
  /// "admissible.meets_domain" or "closure_compatible".
  std::string reason;
};

/// Admissibility of L: L inside clos D(A, B) but meeting D(A, B) only in 0,
/// and clos(L^perp n D) = L^perp n clos D. Finite-dimensional D is closed,
/// so only L = {0} is admissible.
template <Scalar T>
LValidation validate_l(const Matrix<T>& a, const Matrix<T>& b, const Subspace<T>& l, const Tolerance& tol = {});

/// Lebesgue type decomposition attached to L. Throws InvalidL or
/// IncompatibleL (reason() holds the failed condition) for inadmissible L.
template <Scalar T>
LebesgueDecomposition<T> lebesgue_type_decompose(const Matrix<T>& a, const Matrix<T>& b, const Subspace<T>& l,
                                                 const Tolerance& tol = {});

/// R(A, B1) = L(A, B1)**, the minimal closed operator C with B1 = C A.
template <Scalar T>
struct RadonNikodymDerivative {
  LinearRelation<T> graph;
  /// ran A.
  Subspace<T> domain;
  /// R with R A = B1, zero on (ran A)^perp.
  Matrix<T> representative;
  bool bounded = false;
  std::optional<double> bound;
  bool finite_dim_collapse = true;
  /// max |R1 - R2| on ran A between the pseudoinverse quotient and the
  /// canonical-contraction quotient.
  double route_gap = 0.0;
  Matrix<T> a;
  Matrix<T> b1;
};

/// Agreement bound between the two routes, relative to max(1, |R|).
inline constexpr double kRouteTolerance = 1e-8;

/// NotAlmostDominated unless ker A is in ker B1; RouteDisagreement if B1 pinv(A)
/// and C_B0 pinv(C_A0) differ on ran A.
template <Scalar T>
RadonNikodymDerivative<T> rn_derivative(const Matrix<T>& a, const Matrix<T>& b1, const Tolerance& tol = {});

/// graph(d) is contained in graph(C) for a competing factorization C A = B1
/// (NotAFactorization otherwise).
template <Scalar T>
bool rn_minimality_check(const RadonNikodymDerivative<T>& d, const Matrix<T>& c, const Tolerance& tol = {});

/// RN derivatives of A and B with respect to S = (A*A + B*B)^(1/2); their
/// representatives coincide with C_A, C_B. Float mode only.
template <Scalar T>
std::pair<RadonNikodymDerivative<T>, RadonNikodymDerivative<T>> rn_of_gram_components(const OperatorPair<T>& p,
                                                                                      const Tolerance& tol = {});

/// The RN derivative depends only on the relation L(A, B). RelationsDiffer if
/// the two pairs represent different relations.
template <Scalar T>
bool rn_representation_invariance(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& a2, const Matrix<T>& b2,
                                  const Tolerance& tol = {});

}  // namespace oprange
