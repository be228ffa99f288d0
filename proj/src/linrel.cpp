#include "oprange/linrel.hpp"

#include <cmath>

namespace oprange {

namespace {

/// Span of a block of an orthonormal (float) or canonical (exact) basis. In
/// float mode the block has norm at most one, so rank is judged on that scale.
template <Scalar T>
Subspace<T> block_span(const Matrix<T>& block, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return range(block, tol);
  } else {
    return detail::range_scaled(block, tol, 1.0);
  }
}

template <Scalar T>
Subspace<T> slot(std::size_t dim_h, std::size_t dim_k, bool h_slot) {
  // H x {0} or {0} x K inside H x K.
  Matrix<T> basis(dim_h + dim_k, h_slot ? dim_h : dim_k);
  const std::size_t offset = h_slot ? 0 : dim_h;
  for (std::size_t i = 0; i < basis.cols(); ++i) basis(offset + i, i) = T(1);
  return Subspace<T>::span(basis);
}

}  // namespace

template <Scalar T>
LinearRelation<T>::LinearRelation(std::size_t dim_h, std::size_t dim_k, Subspace<T> graph)
    : dim_h_(dim_h), dim_k_(dim_k), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != dim_h_ + dim_k_) {
    throw Error(ErrorKind::DimensionMismatch, "graph does not live in H x K");
  }
}

template <Scalar T>
LinearRelation<T> LinearRelation<T>::spanned_by(std::size_t dim_h, std::size_t dim_k,
                                                const Matrix<T>& graph_columns, const Tolerance& tol) {
  if (graph_columns.rows() != dim_h + dim_k) {
    throw Error(ErrorKind::DimensionMismatch, "graph columns do not live in H x K");
  }
  return LinearRelation(dim_h, dim_k, Subspace<T>::span(graph_columns, tol));
}

template <Scalar T>
LinearRelation<T> from_pair(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "A and B must share a domain: " + a.shape() + " vs " + b.shape());
  }
  return LinearRelation<T>::spanned_by(a.rows(), b.rows(), stack_vertical(a, b), tol);
}

template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> to_pair(const LinearRelation<T>& t) {
  return {t.h_block(), t.k_block()};
}

template <Scalar T>
LinearRelation<T> operator_graph(const Matrix<T>& m, const Tolerance& tol) {
  return from_pair(Matrix<T>::identity(m.cols()), m, tol);
}

template <Scalar T>
Subspace<T> dom(const LinearRelation<T>& t, const Tolerance& tol) {
  return block_span(t.h_block(), tol);
}

template <Scalar T>
Subspace<T> ran(const LinearRelation<T>& t, const Tolerance& tol) {
  return block_span(t.k_block(), tol);
}

template <Scalar T>
Subspace<T> ker(const LinearRelation<T>& t, const Tolerance& tol) {
  const auto meet = subspace_intersect(t.graph(), slot<T>(t.dim_h(), t.dim_k(), true), tol);
  return block_span(meet.basis().rows_range(0, t.dim_h()), tol);
}

template <Scalar T>
Subspace<T> mul(const LinearRelation<T>& t, const Tolerance& tol) {
  const auto meet = subspace_intersect(t.graph(), slot<T>(t.dim_h(), t.dim_k(), false), tol);
  return block_span(meet.basis().rows_range(t.dim_h(), t.dim_k()), tol);
}

template <Scalar T>
Matrix<T> flip_operator(std::size_t dim_h, std::size_t dim_k) {
  Matrix<T> j(dim_k + dim_h, dim_h + dim_k);
  j.set_block(0, dim_h, Matrix<T>::identity(dim_k));
  j.set_block(dim_k, 0, Matrix<T>(-Matrix<T>::identity(dim_h)));
  return j;
}

template <Scalar T>
LinearRelation<T> adjoint_rel(const LinearRelation<T>& t, const Tolerance& tol) {
  const auto flipped = Subspace<T>::span(flip_operator<T>(t.dim_h(), t.dim_k()) * t.graph().basis(), tol);
  return LinearRelation<T>(t.dim_k(), t.dim_h(), orthogonal_complement(flipped, tol));
}

template <Scalar T>
LinearRelation<T> adjoint_of_pair(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "A and B must share a domain: " + a.shape() + " vs " + b.shape());
  }
  // (k, h) with B* k - A* h = 0.
  const Matrix<T> system = stack_horizontal(adjoint(b), Matrix<T>(-adjoint(a)));
  return LinearRelation<T>(b.rows(), a.rows(), kernel(system, tol));
}

template <Scalar T>
LinearRelation<T> operator_part(const LinearRelation<T>& t, const Tolerance& tol) {
  const Matrix<T> p_mul = projection(mul(t, tol));
  const Matrix<T> squash =
      block_diagonal(Matrix<T>::identity(t.dim_h()), Matrix<T>(Matrix<T>::identity(t.dim_k()) - p_mul));
  const Matrix<T> columns = squash * t.graph().basis();
  if constexpr (is_exact_v<T>) {
    return LinearRelation<T>::spanned_by(t.dim_h(), t.dim_k(), columns, tol);
  } else {
    return LinearRelation<T>(t.dim_h(), t.dim_k(), detail::range_scaled(columns, tol, 1.0));
  }
}

template <Scalar T>
bool same_relation(const LinearRelation<T>& s, const LinearRelation<T>& t, const Tolerance& tol) {
  return s.dim_h() == t.dim_h() && s.dim_k() == t.dim_k() && same_subspace(s.graph(), t.graph(), tol);
}

template <Scalar T>
bool includes(const LinearRelation<T>& s, const LinearRelation<T>& t, const Tolerance& tol) {
  if (s.dim_h() != t.dim_h() || s.dim_k() != t.dim_k()) {
    throw Error(ErrorKind::DimensionMismatch, "relations between different spaces");
  }
  return contains(s.graph(), t.graph(), tol);
}

// ---------------------------------------------------------------------------
// Operator ranges
// ---------------------------------------------------------------------------

template <Scalar T>
OperatorRange<T>::OperatorRange(Matrix<T> representative, const Tolerance& tol)
    : representative_(std::move(representative)),
      reduced_pinv_(pinv(representative_, tol)),
      set_(range(representative_, tol)),
      tol_(tol) {}

template <Scalar T>
Matrix<T> OperatorRange<T>::plus_gram() const {
  const Matrix<T> coords = reduced_pinv_ * set_.basis();
  return coords.transposed() * coords;
}

template <Scalar T>
T plus_inner(const OperatorRange<T>& w, const Vector<T>& u, const Vector<T>& v) {
  if (!contains_vector(w.set_, u, w.tol_) || !contains_vector(w.set_, v, w.tol_)) {
    throw Error(ErrorKind::NotInRange, "plus inner product is only defined on the operator range");
  }
  return dot(w.reduced_pinv_ * u, w.reduced_pinv_ * v);
}

template <Scalar T>
double plus_norm(const OperatorRange<T>& w, const Vector<T>& u) {
  return std::sqrt(std::max(0.0, to_double(plus_inner(w, u, u))));
}

template <Scalar T>
Matrix<T> representation_equivalence(const Matrix<T>& z, const Matrix<T>& z1, const Tolerance& tol) {
  if (z.rows() != z1.rows() || !same_subspace(range(z, tol), range(z1, tol), tol)) {
    throw Error(ErrorKind::RangesDiffer, "representatives have different ranges");
  }
  return pinv(z, tol) * z1;
}

#define OPRANGE_INSTANTIATE_LINREL(T)                                                                 \
  template class LinearRelation<T>;                                                                   \
  template class OperatorRange<T>;                                                                    \
  template LinearRelation<T> from_pair<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);      \
  template std::pair<Matrix<T>, Matrix<T>> to_pair<T>(const LinearRelation<T>&);                      \
  template LinearRelation<T> operator_graph<T>(const Matrix<T>&, const Tolerance&);                   \
  template Subspace<T> dom<T>(const LinearRelation<T>&, const Tolerance&);                            \
  template Subspace<T> ran<T>(const LinearRelation<T>&, const Tolerance&);                            \
  template Subspace<T> ker<T>(const LinearRelation<T>&, const Tolerance&);                            \
  template Subspace<T> mul<T>(const LinearRelation<T>&, const Tolerance&);                            \
  template Matrix<T> flip_operator<T>(std::size_t, std::size_t);                                      \
  template LinearRelation<T> adjoint_rel<T>(const LinearRelation<T>&, const Tolerance&);              \
  template LinearRelation<T> adjoint_of_pair<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&); \
  template LinearRelation<T> operator_part<T>(const LinearRelation<T>&, const Tolerance&);            \
  template bool same_relation<T>(const LinearRelation<T>&, const LinearRelation<T>&, const Tolerance&); \
  template bool includes<T>(const LinearRelation<T>&, const LinearRelation<T>&, const Tolerance&);    \
  template T plus_inner<T>(const OperatorRange<T>&, const Vector<T>&, const Vector<T>&);              \
  template double plus_norm<T>(const OperatorRange<T>&, const Vector<T>&);                            \
  template Matrix<T> representation_equivalence<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);

OPRANGE_INSTANTIATE_LINREL(Rational)
OPRANGE_INSTANTIATE_LINREL(double)

}  // namespace oprange
