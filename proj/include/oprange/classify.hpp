#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oprange/linalg.hpp"
#include "oprange/linrel.hpp"

namespace oprange {

/// One evaluated equivalent condition and its verdict.
struct Criterion {
  std::string name;
  bool verdict = false;
};

/// Enclosing interval [lower, upper] for the squared domination constant:
/// B*B <= upper A*A holds and B*B <= lower A*A fails (unless both are zero).
struct ConstantBracket {
  Rational lower;
  Rational upper;
};

struct DominationResult {
  bool dominated = false;
  /// Least c with ||Bf|| <= c ||Af||. Exact mode reports sqrt(upper).
  std::optional<double> constant;
  std::optional<ConstantBracket> exact_bracket;
  std::vector<Criterion> criteria;
};

struct VerdictResult {
  bool verdict = false;
  std::vector<Criterion> criteria;
};

template <Scalar T>
struct Classification {
  Subspace<T> d_subspace;
  Subspace<T> r_subspace;
  bool dominated = false;
  std::optional<double> domination_constant;
  std::optional<ConstantBracket> exact_bracket;
  bool almost_dominated = false;
  bool singular = false;
  /// In finite dimensions D(A, B) is closed, so almost domination and
  /// domination coincide; both are still evaluated independently.
  bool finite_dim_collapse = true;
  std::vector<Criterion> criteria_trace;
};

/// D(A, B) = {k : B* k in ran A*}, a subspace of K.
template <Scalar T>
Subspace<T> d_subspace(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// R(A, B) = {h : A* h in ran B*}, a subspace of H.
template <Scalar T>
Subspace<T> r_subspace(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// Is B dominated by A. Evaluates range inclusion ran B* in ran A*, the PSD
/// order B*B <= c^2 A*A at an explicit a-priori bound for c^2, and triviality
/// of mul L(A, B); throws CriteriaDisagree if they differ.
template <Scalar T>
DominationResult is_dominated(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// Exact bisection for the squared domination constant, to a relative width
/// of 2^-40. Requires B to be dominated by A.
ConstantBracket domination_constant_bracket(const Matrix<Rational>& a, const Matrix<Rational>& b);

template <Scalar T>
VerdictResult is_almost_dominated(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

template <Scalar T>
VerdictResult is_singular(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// Runs every test above and cross-checks them; CriteriaDisagree on any
/// internal inconsistency.
template <Scalar T>
Classification<T> classify(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

}  // namespace oprange
