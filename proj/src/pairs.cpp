#include "oprange/pairs.hpp"

#include <Eigen/Dense>

#include "eigen_bridge.hpp"

namespace oprange {

namespace {

template <Scalar T>
void require_float(const char* op) {
  if constexpr (is_exact_v<T>) {
    throw Error(ErrorKind::ExactModeUnsupported, std::string(op) + " needs square roots; use float mode");
  }
}

template <Scalar T>
bool is_orthogonal_projection(const Matrix<T>& q, const Tolerance& tol) {
  if (!q.is_square()) return false;
  if constexpr (is_exact_v<T>) {
    return is_symmetric(q) && q * q == q;
  } else {
    return approx_equal(q, q.transposed(), tol) && approx_equal(Matrix<T>(q * q), q, tol);
  }
}

}  // namespace

template <Scalar T>
OperatorPair<T>::OperatorPair(Matrix<T> a, Matrix<T> b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.cols() != b_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "A and B must share a domain: " + a_.shape() + " vs " + b_.shape());
  }
  gram_ = a_.transposed() * a_ + b_.transposed() * b_;
}

template <Scalar T>
Matrix<T> column(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "column operator needs a shared domain");
  return stack_vertical(a, b);
}

template <Scalar T>
Matrix<T> row(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "row operator needs a shared codomain");
  return stack_horizontal(a, b);
}

template <Scalar T>
ReducedPair<T> reduce(const OperatorPair<T>& p, const Tolerance& tol) {
  const Subspace<T> e0 = range(p.gram(), tol);
  Matrix<T> embedding = e0.basis();
  OperatorPair<T> reduced(p.a() * embedding, p.b() * embedding);
  return ReducedPair<T>{std::move(reduced), std::move(embedding), kernel(column(p.a(), p.b()), tol)};
}

template <Scalar T>
OperatorPair<T> normalize(const OperatorPair<T>& p, const Tolerance& tol) {
  require_float<T>("normalize");
  const ReducedPair<T> r = reduce(p, tol);
  const Matrix<T> inv_root = inverse(psd_sqrt(r.pair.gram(), tol));
  return OperatorPair<T>(r.pair.a() * inv_root, r.pair.b() * inv_root);
}

template <Scalar T>
bool is_q_normalized(const OperatorPair<T>& p, const Tolerance& tol) {
  return is_orthogonal_projection(p.gram(), tol);
}

template <Scalar T>
Matrix<T> graph_projection(const OperatorPair<T>& p, const Tolerance& tol) {
  if (!is_q_normalized(p, tol)) {
    throw Error(ErrorKind::NotQNormalized, "A*A + B*B is not an orthogonal projection");
  }
  const Matrix<T> phi = column(p.a(), p.b());
  return phi * phi.transposed();
}

template <Scalar T>
Matrix<T> adjoint_graph_projection(const OperatorPair<T>& p, const Tolerance& tol) {
  if (!is_q_normalized(p, tol)) {
    throw Error(ErrorKind::NotQNormalized, "A*A + B*B is not an orthogonal projection");
  }
  const Matrix<T>& a = p.a();
  const Matrix<T>& b = p.b();
  const Matrix<T> at = a.transposed();
  const Matrix<T> bt = b.transposed();
  Matrix<T> out(p.dim_k() + p.dim_h(), p.dim_k() + p.dim_h());
  out.set_block(0, 0, Matrix<T>::identity(p.dim_k()) - b * bt);
  out.set_block(0, p.dim_k(), b * at);
  out.set_block(p.dim_k(), 0, a * bt);
  out.set_block(p.dim_k(), p.dim_k(), Matrix<T>::identity(p.dim_h()) - a * at);
  return out;
}

template <Scalar T>
CanonicalPair<T> canonical_contractions(const OperatorPair<T>& p, const Tolerance& tol) {
  require_float<T>("canonical_contractions");
  Matrix<T> root = psd_sqrt(p.gram(), tol);
  const Matrix<T> root_pinv = pinv(root, tol);
  return CanonicalPair<T>{p.a() * root_pinv, p.b() * root_pinv, std::move(root), p};
}

template <Scalar T>
bool check_polar(const CanonicalPair<T>& cp, const Tolerance& tol) {
  const Matrix<T> m = column(cp.c_a, cp.c_b);
  const Matrix<T> initial = projection(range(cp.parent.gram(), tol));
  if (!approx_equal(Matrix<T>(m.transposed() * m), initial, tol)) return false;
  return same_subspace(range(m, tol), range(column(cp.parent.a(), cp.parent.b()), tol), tol);
}

template <Scalar T>
LinearRelation<T> closure(const OperatorPair<T>& p, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return from_pair(p.a(), p.b(), tol);
  } else {
    const CanonicalPair<T> cp = canonical_contractions(p, tol);
    return from_pair(cp.c_a, cp.c_b, tol);
  }
}

template <Scalar T>
Matrix<T> polar_isometry(const Matrix<T>& a, const Tolerance& tol) {
  require_float<T>("polar_isometry");
  if constexpr (is_exact_v<T>) {
    return a;
  } else {
    if (a.rows() == 0 || a.cols() == 0) return Matrix<T>(a.rows(), a.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double cutoff = tol.rank_rtol * sigma(0);
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff) ++r;
    return detail::from_eigen(svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).transpose());
  }
}

template <Scalar T>
LinearRelation<T> AdjointParametrization<T>::assemble(const Tolerance& tol) const {
  Matrix<T> columns(dim_k + dim_h, dim_k + dim_h);
  columns.set_block(0, 0, k_part);
  columns.set_block(dim_k, 0, coupling);
  columns.set_block(dim_k, dim_k, projection(h_part));
  return LinearRelation<T>::spanned_by(dim_k, dim_h, columns, tol);
}

template <Scalar T>
bool AdjointParametrization<T>::summands_orthogonal(const Tolerance& tol) const {
  // <(Xk, Yk), (0, Ph)> = <Yk, Ph>.
  const Matrix<T> cross = coupling.transposed() * projection(h_part);
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return is_zero(cross);
  } else {
    return max_abs(cross) <= tol.eq_atol;
  }
}

template <Scalar T>
AdjointParametrization<T> adjoint_param_representation(const OperatorPair<T>& p, const Tolerance& tol) {
  require_float<T>("adjoint_param_representation");
  if (!approx_equal(p.gram(), Matrix<T>::identity(p.dim_e()), tol)) {
    throw Error(ErrorKind::NotNormalized, "pair is not normalized: A*A + B*B != I");
  }
  const Matrix<T> bbt = p.b() * p.b().transposed();
  AdjointParametrization<T> out;
  out.dim_h = p.dim_h();
  out.dim_k = p.dim_k();
  if constexpr (!is_exact_v<T>) {
    out.k_part = detail::psd_sqrt_scaled(Matrix<T>(Matrix<T>::identity(p.dim_k()) - bbt), tol, 1.0);
  }
  out.coupling = polar_isometry(p.a(), tol) * p.b().transposed();
  out.h_part = kernel(p.a().transposed(), tol);
  return out;
}

#define OPRANGE_INSTANTIATE_PAIRS(T)                                                                   \
  template class OperatorPair<T>;                                                                      \
  template struct AdjointParametrization<T>;                                                           \
  template Matrix<T> column<T>(const Matrix<T>&, const Matrix<T>&);                                    \
  template Matrix<T> row<T>(const Matrix<T>&, const Matrix<T>&);                                       \
  template ReducedPair<T> reduce<T>(const OperatorPair<T>&, const Tolerance&);                         \
  template OperatorPair<T> normalize<T>(const OperatorPair<T>&, const Tolerance&);                     \
  template bool is_q_normalized<T>(const OperatorPair<T>&, const Tolerance&);                          \
  template Matrix<T> graph_projection<T>(const OperatorPair<T>&, const Tolerance&);                    \
  template Matrix<T> adjoint_graph_projection<T>(const OperatorPair<T>&, const Tolerance&);            \
  template CanonicalPair<T> canonical_contractions<T>(const OperatorPair<T>&, const Tolerance&);       \
  template bool check_polar<T>(const CanonicalPair<T>&, const Tolerance&);                             \
  template LinearRelation<T> closure<T>(const OperatorPair<T>&, const Tolerance&);                     \
  template Matrix<T> polar_isometry<T>(const Matrix<T>&, const Tolerance&);                            \
  template AdjointParametrization<T> adjoint_param_representation<T>(const OperatorPair<T>&, const Tolerance&);

OPRANGE_INSTANTIATE_PAIRS(Rational)
OPRANGE_INSTANTIATE_PAIRS(double)

}  // namespace oprange
