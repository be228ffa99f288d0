#include "oprange/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "eigen_bridge.hpp"

namespace oprange {

namespace {

using detail::from_eigen;
using detail::to_eigen;

// ---------------------------------------------------------------------------
// Exact kernels
// ---------------------------------------------------------------------------

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref_in_place(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) {
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Matrix<Rational> exact_kernel_basis(const Matrix<Rational>& m) {
  Matrix<Rational> r = m;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<Rational>> columns;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector<Rational> x(m.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r(i, f);
    columns.push_back(std::move(x));
  }
  return Matrix<Rational>::from_columns(m.cols(), columns);
}

/// Canonical basis: transpose of the nonzero rows of rref(columns*).
Matrix<Rational> exact_canonical_basis(const Matrix<Rational>& columns) {
  Matrix<Rational> t = columns.transposed();
  const auto pivots = rref_in_place(t);
  return t.rows_range(0, pivots.size()).transposed();
}

Matrix<Rational> exact_inverse(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  Matrix<Rational> aug = stack_horizontal(m, Matrix<Rational>::identity(n));
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw Error(ErrorKind::InvalidArgument, "matrix is singular");
  }
  return aug.cols_range(n, n);
}

Matrix<Rational> exact_pinv(const Matrix<Rational>& m) {
  Matrix<Rational> r = m;
  const auto pivots = rref_in_place(r);
  const std::size_t k = pivots.size();
  if (k == 0) return Matrix<Rational>(m.cols(), m.rows());
  Matrix<Rational> f(m.rows(), k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) f(i, j) = m(i, pivots[j]);
  }
  const Matrix<Rational> g = r.rows_range(0, k);
  const Matrix<Rational> gt = g.transposed();
  const Matrix<Rational> ft = f.transposed();
  return gt * exact_inverse(g * gt) * exact_inverse(ft * f) * ft;
}

/// Pivoted LDL* on a symmetric matrix, no square roots. A zero pivot forces
/// its whole row to vanish, otherwise the matrix is indefinite.
bool exact_is_psd(Matrix<Rational> s) {
  const std::size_t n = s.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const int sign = sgn(s(i, i));
      if (sign < 0) return false;
      if (sign > 0 && pick == n) pick = i;
    }
    if (pick == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[j] && !is_zero(s(i, j))) return false;
        }
      }
      return true;
    }
    done[pick] = true;
    const Rational d = s(pick, pick);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || is_zero(s(i, pick))) continue;
      const Rational f = s(i, pick) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j] && !is_zero(s(pick, j))) s(i, j) -= f * s(pick, j);
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Float kernels
// ---------------------------------------------------------------------------

struct FloatSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
  std::size_t rank = 0;
};

FloatSvd float_svd(const Matrix<double>& m, const Tolerance& tol, double scale, bool full_v) {
  FloatSvd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows()), 0);
    out.sigma = Eigen::VectorXd(0);
    const auto n = static_cast<Eigen::Index>(m.cols());
    if (full_v) {
      out.v = Eigen::MatrixXd::Identity(n, n);
    } else {
      out.v = Eigen::MatrixXd::Zero(n, 0);
    }
    return out;
  }
  const unsigned options = full_v ? (Eigen::ComputeThinU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), options);
  out.u = svd.matrixU();
  out.sigma = svd.singularValues();
  out.v = svd.matrixV();
  const double sigma_max = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  const double cutoff = tol.rank_rtol * std::max(sigma_max, scale);
  for (Eigen::Index k = 0; k < out.sigma.size(); ++k) {
    if (out.sigma(k) > cutoff) ++out.rank;
  }
  return out;
}

Matrix<double> float_range_basis(const Matrix<double>& m, const Tolerance& tol, double scale) {
  const auto svd = float_svd(m, tol, scale, false);
  return from_eigen(svd.u.leftCols(static_cast<Eigen::Index>(svd.rank)));
}

Matrix<double> float_kernel_basis(const Matrix<double>& m, const Tolerance& tol, double scale) {
  const auto svd = float_svd(m, tol, scale, true);
  const auto r = static_cast<Eigen::Index>(svd.rank);
  return from_eigen(svd.v.rightCols(svd.v.cols() - r));
}

Matrix<double> float_pinv(const Matrix<double>& m, const Tolerance& tol) {
  const auto svd = float_svd(m, tol, 0.0, false);
  const auto r = static_cast<Eigen::Index>(svd.rank);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.cols()), static_cast<Eigen::Index>(m.rows()));
  for (Eigen::Index k = 0; k < r; ++k) p += svd.v.col(k) * (svd.u.col(k).transpose() / svd.sigma(k));
  return from_eigen(p);
}

double symmetric_defect(const Matrix<double>& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  }
  return worst;
}

Eigen::VectorXd symmetric_eigenvalues(const Matrix<double>& m) {
  if (m.rows() == 0) return Eigen::VectorXd(0);
  const Eigen::MatrixXd e = to_eigen(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void require_square(const Matrix<double>& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a square matrix");
}
void require_square(const Matrix<Rational>& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a square matrix");
}

template <Scalar T>
void require_same_ambient(const Subspace<T>& u, const Subspace<T>& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in spaces of dimension " +
                                                  std::to_string(u.ambient_dim()) + " and " +
                                                  std::to_string(v.ambient_dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

template <Scalar T>
Subspace<T> Subspace<T>::span(const Matrix<T>& columns, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return Subspace(columns.rows(), exact_canonical_basis(columns));
  } else {
    return Subspace(columns.rows(), float_range_basis(columns, tol, 0.0));
  }
}

// ---------------------------------------------------------------------------
// Ranks, ranges, kernels, inverses
// ---------------------------------------------------------------------------

template <Scalar T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    Matrix<Rational> r = m;
    return rref_in_place(r).size();
  } else {
    return float_svd(m, tol, 0.0, false).rank;
  }
}

template <Scalar T>
Subspace<T> range(const Matrix<T>& m, const Tolerance& tol) {
  return Subspace<T>::span(m, tol);
}

template <Scalar T>
Subspace<T> kernel(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return Subspace<T>::span(exact_kernel_basis(m), tol);
  } else {
    return detail::kernel_scaled(m, tol, 0.0);
  }
}

Subspace<double> detail::kernel_scaled(const Matrix<double>& m, const Tolerance& tol, double scale) {
  return Subspace<double>::span(float_kernel_basis(m, tol, scale), tol);
}

Matrix<double> detail::truncate_scaled(const Matrix<double>& m, const Tolerance& tol, double scale) {
  const auto svd = float_svd(m, tol, scale, false);
  const auto r = static_cast<Eigen::Index>(svd.rank);
  if (r == svd.sigma.size()) return m;
  const Eigen::MatrixXd kept =
      svd.u.leftCols(r) * svd.sigma.head(r).asDiagonal() * svd.v.leftCols(r).transpose();
  return from_eigen(kept);
}

bool detail::exact_is_psd_consume(Matrix<Rational> m) {
  require_square(m, "is_psd");
  return exact_is_psd(std::move(m));
}

Subspace<double> detail::range_scaled(const Matrix<double>& m, const Tolerance& tol, double scale) {
  return Subspace<double>::span(float_range_basis(m, tol, scale), tol);
}

template <Scalar T>
Matrix<T> pinv(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return exact_pinv(m);
  } else {
    return float_pinv(m, tol);
  }
}

template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m) {
  require_square(m, "inverse");
  if constexpr (is_exact_v<T>) {
    return exact_inverse(m);
  } else {
    if (m.rows() == 0) return m;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    if (!lu.isInvertible()) throw Error(ErrorKind::InvalidArgument, "matrix is singular");
    return from_eigen(lu.inverse());
  }
}

Matrix<double> detail::psd_sqrt_scaled(const Matrix<double>& m, const Tolerance& tol, double scale) {
  require_square(m, "psd_sqrt");
  if (m.rows() == 0) return m;
  if (symmetric_defect(m) > tol.equality_bound(std::max(max_abs(m), scale))) {
    throw Error(ErrorKind::NotPSD, "matrix is not symmetric");
  }
  const Eigen::MatrixXd e = to_eigen(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (e + e.transpose()));
  Eigen::VectorXd lambda = solver.eigenvalues();
  const double cutoff = tol.rank_rtol * std::max(lambda.cwiseAbs().maxCoeff(), scale);
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) < -cutoff) throw Error(ErrorKind::NotPSD, "negative eigenvalue " + to_string(lambda(k)));
    lambda(k) = lambda(k) <= cutoff ? 0.0 : std::sqrt(lambda(k));
  }
  const Eigen::MatrixXd v = solver.eigenvectors();
  const Eigen::MatrixXd root = v * lambda.asDiagonal() * v.transpose();
  return from_eigen(0.5 * (root + root.transpose()));
}

template <Scalar T>
Matrix<T> psd_sqrt(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    (void)m;
    (void)tol;
    throw Error(ErrorKind::ExactModeUnsupported, "square roots are not rational; use float mode");
  } else {
    return detail::psd_sqrt_scaled(m, tol, 0.0);
  }
}

template <Scalar T>
bool is_psd(const Matrix<T>& m, const Tolerance& tol) {
  require_square(m, "is_psd");
  if constexpr (is_exact_v<T>) {
    (void)tol;
    if (!is_symmetric(m)) throw Error(ErrorKind::InvalidArgument, "PSD test needs a symmetric matrix");
    return exact_is_psd(m);
  } else {
    if (m.rows() == 0) return true;
    const double scale = max_abs(m);
    if (symmetric_defect(m) > tol.equality_bound(scale)) return false;
    return symmetric_eigenvalues(m).minCoeff() >= -tol.equality_bound(scale);
  }
}

template <Scalar T>
bool psd_order_leq(const Matrix<T>& m, const Matrix<T>& n, const Tolerance& tol) {
  require_square(m, "psd_order_leq");
  if (m.rows() != n.rows() || m.cols() != n.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "PSD order compares " + m.shape() + " with " + n.shape());
  }
  if constexpr (is_exact_v<T>) {
    return exact_is_psd(n - m);
  } else {
    if (m.rows() == 0) return true;
    const double scale = std::max(max_abs(m), max_abs(n));
    return symmetric_eigenvalues(n - m).minCoeff() >= -tol.equality_bound(scale);
  }
}

template <Scalar T>
double operator_norm(const Matrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(to_double(m)));
  return svd.singularValues()(0);
}

template <Scalar T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return a == b;
  } else {
    return max_abs(a - b) <= tol.equality_bound(std::max(max_abs(a), max_abs(b)));
  }
}

// ---------------------------------------------------------------------------
// Subspace algebra
// ---------------------------------------------------------------------------

template <Scalar T>
Matrix<T> projection(const Subspace<T>& u) {
  const Matrix<T>& b = u.basis();
  if (u.rank() == 0) return Matrix<T>(u.ambient_dim(), u.ambient_dim());
  const Matrix<T> bt = b.transposed();
  if constexpr (is_exact_v<T>) {
    return b * exact_inverse(bt * b) * bt;
  } else {
    return b * bt;
  }
}

template <Scalar T>
Subspace<T> orthogonal_complement(const Subspace<T>& u, const Tolerance& tol) {
  if (u.rank() == 0) return Subspace<T>::full(u.ambient_dim());
  return kernel(u.basis().transposed(), tol);
}

template <Scalar T>
Subspace<T> subspace_sum(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol) {
  require_same_ambient(u, v);
  return Subspace<T>::span(stack_horizontal(u.basis(), v.basis()), tol);
}

template <Scalar T>
Subspace<T> subspace_intersect(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol) {
  require_same_ambient(u, v);
  if (u.rank() == 0 || v.rank() == 0) return Subspace<T>::zero(u.ambient_dim());
  const Subspace<T> null = kernel(stack_horizontal(u.basis(), Matrix<T>(-v.basis())), tol);
  return Subspace<T>::span(u.basis() * null.basis().rows_range(0, u.rank()), tol);
}

template <Scalar T>
Subspace<T> preimage(const Matrix<T>& m, const Subspace<T>& w, const Tolerance& tol) {
  if (w.ambient_dim() != m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "preimage of a subspace of dimension " +
                                                  std::to_string(w.ambient_dim()) + " under a " +
                                                  m.shape() + " matrix");
  }
  const Matrix<T> residual = (Matrix<T>::identity(m.rows()) - projection(w)) * m;
  if constexpr (is_exact_v<T>) {
    return kernel(residual, tol);
  } else {
    return detail::kernel_scaled(residual, tol, operator_norm(m));
  }
}

template <Scalar T>
Subspace<T> image(const Matrix<T>& m, const Subspace<T>& u, const Tolerance& tol) {
  if (u.ambient_dim() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "image of a subspace of dimension " +
                                                  std::to_string(u.ambient_dim()) + " under a " +
                                                  m.shape() + " matrix");
  }
  if constexpr (is_exact_v<T>) {
    return range(Matrix<T>(m * u.basis()), tol);
  } else {
    return detail::range_scaled(m * u.basis(), tol, operator_norm(m));
  }
}

template <Scalar T>
Subspace<T> product(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol) {
  return Subspace<T>::span(block_diagonal(u.basis(), v.basis()), tol);
}

template <Scalar T>
bool same_subspace(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol) {
  if (u.ambient_dim() != v.ambient_dim()) return false;
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return u == v;
  } else {
    return u.rank() == v.rank() && projection_distance(u, v) <= tol.eq_atol;
  }
}

template <Scalar T>
bool contains(const Subspace<T>& u, const Subspace<T>& v, const Tolerance& tol) {
  require_same_ambient(u, v);
  if (v.rank() == 0) return true;
  const Matrix<T> residual = (Matrix<T>::identity(u.ambient_dim()) - projection(u)) * v.basis();
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return is_zero(residual);
  } else {
    return max_abs(residual) <= tol.eq_atol;
  }
}

template <Scalar T>
bool contains_vector(const Subspace<T>& u, const Vector<T>& x, const Tolerance& tol) {
  if (x.size() != u.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length does not match subspace");
  const Matrix<T> p = Matrix<T>::identity(u.ambient_dim()) - projection(u);
  const Vector<T> r = p * x;
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return std::all_of(r.begin(), r.end(), [](const T& z) { return is_zero(z); });
  } else {
    double rmax = 0.0, xmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      rmax = std::max(rmax, std::abs(r[i]));
      xmax = std::max(xmax, std::abs(x[i]));
    }
    return rmax <= tol.equality_bound(xmax);
  }
}

template <Scalar T>
double projection_distance(const Subspace<T>& u, const Subspace<T>& v) {
  require_same_ambient(u, v);
  return max_abs(to_double(Matrix<T>(projection(u) - projection(v))));
}

#define OPRANGE_INSTANTIATE_LINALG(T)                                                          \
  template class Subspace<T>;                                                                  \
  template std::size_t rank<T>(const Matrix<T>&, const Tolerance&);                            \
  template Subspace<T> range<T>(const Matrix<T>&, const Tolerance&);                           \
  template Subspace<T> kernel<T>(const Matrix<T>&, const Tolerance&);                          \
  template Matrix<T> pinv<T>(const Matrix<T>&, const Tolerance&);                              \
  template Matrix<T> inverse<T>(const Matrix<T>&);                                             \
  template Matrix<T> psd_sqrt<T>(const Matrix<T>&, const Tolerance&);                          \
  template bool is_psd<T>(const Matrix<T>&, const Tolerance&);                                 \
  template bool psd_order_leq<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);        \
  template double operator_norm<T>(const Matrix<T>&);                                          \
  template bool approx_equal<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);         \
  template Matrix<T> projection<T>(const Subspace<T>&);                                        \
  template Subspace<T> orthogonal_complement<T>(const Subspace<T>&, const Tolerance&);         \
  template Subspace<T> subspace_sum<T>(const Subspace<T>&, const Subspace<T>&, const Tolerance&); \
  template Subspace<T> subspace_intersect<T>(const Subspace<T>&, const Subspace<T>&, const Tolerance&); \
  template Subspace<T> preimage<T>(const Matrix<T>&, const Subspace<T>&, const Tolerance&);    \
  template Subspace<T> image<T>(const Matrix<T>&, const Subspace<T>&, const Tolerance&);       \
  template Subspace<T> product<T>(const Subspace<T>&, const Subspace<T>&, const Tolerance&);   \
  template bool same_subspace<T>(const Subspace<T>&, const Subspace<T>&, const Tolerance&);    \
  template bool contains<T>(const Subspace<T>&, const Subspace<T>&, const Tolerance&);         \
  template bool contains_vector<T>(const Subspace<T>&, const Vector<T>&, const Tolerance&);    \
  template double projection_distance<T>(const Subspace<T>&, const Subspace<T>&);

OPRANGE_INSTANTIATE_LINALG(Rational)
OPRANGE_INSTANTIATE_LINALG(double)

}  // namespace oprange
