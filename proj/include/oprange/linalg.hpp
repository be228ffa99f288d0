#pragma once

// Dense kernel shared by every other module: rank decisions, ranges and
// kernels, the Moore-Penrose inverse, PSD square roots and order tests, and
// subspace algebra. Exact mode is tolerance-free; float mode makes its only
// discrete decision in the singular-value cutoff of `Tolerance::rank_rtol`.

#include <cstddef>

#include "oprange/matrix.hpp"
#include "oprange/subspace.hpp"
#include "oprange/tolerance.hpp"

namespace oprange {

template <Scalar T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol = {});

/// Column span.
template <Scalar T>
Subspace<T> range(const Matrix<T>& m, const Tolerance& tol = {});

/// Null space; rank(range(m)) + rank(kernel(m)) == m.cols().
template <Scalar T>
Subspace<T> kernel(const Matrix<T>& m, const Tolerance& tol = {});

/// Moore-Penrose inverse. Exact mode goes through a full-rank factorization
/// M = F G, M+ = G*(G G*)^-1 (F* F)^-1 F*; float mode truncates the SVD.
template <Scalar T>
Matrix<T> pinv(const Matrix<T>& m, const Tolerance& tol = {});

/// Inverse of a square nonsingular matrix.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m);

/// Symmetric PSD square root (float only). Eigenvalues with magnitude below
/// the rank cutoff are set to zero; eigenvalues below minus the cutoff are
/// rejected with NotPSD.
template <Scalar T>
Matrix<T> psd_sqrt(const Matrix<T>& m, const Tolerance& tol = {});

/// Exact mode: pivoted LDL* without square roots. Float mode: smallest
/// eigenvalue >= -eq_atol * scale.
template <Scalar T>
bool is_psd(const Matrix<T>& m, const Tolerance& tol = {});

/// True iff n - m is PSD.
template <Scalar T>
bool psd_order_leq(const Matrix<T>& m, const Matrix<T>& n, const Tolerance& tol = {});

/// Largest singular value, evaluated in binary64.
template <Scalar T>
double operator_norm(const Matrix<T>& m);

/// Exact equality, or entrywise agreement to eq_atol scaled by the larger
/// magnitude of the two operands.
template <Scalar T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

template <Scalar T>
Matrix<T> projection(const Subspace<T>& u);

template <Scalar T>
Subspace<T> orthogonal_complement(const Subspace<T>& u, const Tolerance& tol = {});

template <Scalar T>
Subspace<T> subspace_sum(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol = {});

/// Computed from the null space of [U | -V].
template <Scalar T>
Subspace<T> subspace_intersect(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol = {});

/// {x : m x in w} = kernel((I - P_w) m).
template <Scalar T>
Subspace<T> preimage(const Matrix<T>& m, const Subspace<T>& w, const Tolerance& tol = {});

/// m(u).
template <Scalar T>
Subspace<T> image(const Matrix<T>& m, const Subspace<T>& u, const Tolerance& tol = {});

/// u x v inside the product of the two ambient spaces, u-block first.
template <Scalar T>
Subspace<T> product(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol = {});

/// Same set. Float mode compares projections: ||P_u - P_v||_max <= eq_atol.
template <Scalar T>
bool same_subspace(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol = {});

/// v is a subset of u.
template <Scalar T>
bool contains(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol = {});

template <Scalar T>
bool contains_vector(const Subspace<T>& u, const Vector<T>& x, const Tolerance& tol = {});

/// ||P_u - P_v||_max in binary64; 0 means equal subspaces.
template <Scalar T>
double projection_distance(const Subspace<T>& u, const Subspace<T>& v);

namespace detail {

/// Float rank decisions measured against max(sigma_max(m), scale) instead of
/// sigma_max(m) alone. Used where `m` is a product whose exact value may
/// vanish, so its own sigma_max is rounding noise.
Subspace<double> kernel_scaled(const Matrix<double>& m, const Tolerance& tol, double scale);
Subspace<double> range_scaled(const Matrix<double>& m, const Tolerance& tol, double scale);

/// m with its singular values at or below rank_rtol * max(sigma_max, scale)
/// set to zero.
Matrix<double> truncate_scaled(const Matrix<double>& m, const Tolerance& tol, double scale);

/// psd_sqrt with the eigenvalue cutoff taken relative to max(|M|, scale), for
/// differences such as I - X*X whose exact value may vanish.
Matrix<double> psd_sqrt_scaled(const Matrix<double>& m, const Tolerance& tol, double scale);

/// Exact PSD test that consumes its argument as LDL* workspace.
bool exact_is_psd_consume(Matrix<Rational> m);

}  // namespace detail

}  // namespace oprange
