#include "oprange/lebesgue.hpp"

#include <algorithm>

namespace oprange {

namespace {

template <Scalar T>
bool vanishes(const Matrix<T>& m, const Tolerance& tol, double scale) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    (void)scale;
    return is_zero(m);
  } else {
    return max_abs(m) <= tol.equality_bound(scale);
  }
}

template <Scalar T>
LebesgueDecomposition<T> split_along(const Matrix<T>& a, const Matrix<T>& b, Subspace<T> m_subspace,
                                     Subspace<T> l_subspace, const Tolerance& tol) {
  LebesgueDecomposition<T> out;
  out.projector = projection(m_subspace);
  out.b_sing = out.projector * b;
  out.b_reg = b - out.b_sing;
  if constexpr (!is_exact_v<T>) {
    // Rank decisions on the parts are made at the scale of B, so that a part
    // which vanishes exactly is not kept as rounding noise.
    const double norm_b = operator_norm(b);
    out.b_sing = detail::truncate_scaled(out.b_sing, tol, norm_b);
    out.b_reg = detail::truncate_scaled(out.b_reg, tol, norm_b);
  }
  out.m_subspace = std::move(m_subspace);
  out.l_subspace = std::move(l_subspace);

  const double scale = max_abs(b);
  auto& v = out.verification;
  v.push_back({"sum_is_b", approx_equal(Matrix<T>(out.b_reg + out.b_sing), b, tol)});
  v.push_back({"ranges_orthogonal", vanishes(Matrix<T>(out.b_reg.transposed() * out.b_sing), tol, scale * scale)});
  const auto reg = classify(a, out.b_reg, tol);
  const auto sing = classify(a, out.b_sing, tol);
  v.push_back({"reg_almost_dominated", reg.almost_dominated});
  v.push_back({"sing_singular", sing.singular});
  out.unique = reg.dominated;
  for (const auto& c : v) {
    if (!c.verdict) throw Error(ErrorKind::VerificationFailed, "Lebesgue decomposition check failed: " + c.name);
  }
  return out;
}

template <Scalar T>
Matrix<T> restrict_to(const Matrix<T>& m, const Subspace<T>& s) {
  return m * projection(s);
}

}  // namespace

template <Scalar T>
LebesgueDecomposition<T> lebesgue_decompose(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  const auto d = d_subspace(a, b, tol);
  return split_along(a, b, orthogonal_complement(d, tol), Subspace<T>::zero(b.rows()), tol);
}

template <Scalar T>
LValidation validate_l(const Matrix<T>& a, const Matrix<T>& b, const Subspace<T>& l, const Tolerance& tol) {
  if (l.ambient_dim() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "L must be a subspace of K");
  // D(A, B) = dom L(A, B)* is closed here, so clos D = D.
  const auto d = d_subspace(a, b, tol);
  const auto& d_closure = d;
  if (!contains(d_closure, l, tol)) return {false, "admissible.outside_closure"};
  if (!subspace_intersect(l, d, tol).is_zero()) return {false, "admissible.meets_domain"};
  const auto l_perp = orthogonal_complement(l, tol);
  const auto lhs = subspace_intersect(l_perp, d, tol);
  const auto rhs = subspace_intersect(l_perp, d_closure, tol);
  if (!same_subspace(lhs, rhs, tol)) return {false, "closure_compatible"};
  return {true, {}};
}

template <Scalar T>
LebesgueDecomposition<T> lebesgue_type_decompose(const Matrix<T>& a, const Matrix<T>& b, const Subspace<T>& l,
                                                 const Tolerance& tol) {
  const auto check = validate_l(a, b, l, tol);
  if (!check.valid) {
    const auto kind = check.reason == "closure_compatible" ? ErrorKind::IncompatibleL : ErrorKind::InvalidL;
    throw Error(kind, "L is not admissible: " + check.reason, check.reason);
  }
  const auto d = d_subspace(a, b, tol);
  auto out = split_along(a, b, subspace_sum(orthogonal_complement(d, tol), l, tol), l, tol);

  // ||B1 h|| <= ||B_reg h|| for all h.
  const auto canonical = lebesgue_decompose(a, b, tol);
  const bool optimal = psd_order_leq(Matrix<T>(out.b_reg.transposed() * out.b_reg),
                                     Matrix<T>(canonical.b_reg.transposed() * canonical.b_reg), tol);
  out.verification.push_back({"dominated_by_b_reg", optimal});
  if (!optimal) throw Error(ErrorKind::VerificationFailed, "Lebesgue type part exceeds B_reg");
  return out;
}

template <Scalar T>
RadonNikodymDerivative<T> rn_derivative(const Matrix<T>& a, const Matrix<T>& b1, const Tolerance& tol) {
  if (a.cols() != b1.cols()) throw Error(ErrorKind::DimensionMismatch, "A and B1 must share a domain");
  if (!is_almost_dominated(a, b1, tol).verdict) {
    throw Error(ErrorKind::NotAlmostDominated, "B1 is not almost dominated by A; ker A is not inside ker B1");
  }
  RadonNikodymDerivative<T> out;
  out.a = a;
  out.b1 = b1;
  out.domain = range(a, tol);
  out.representative = b1 * pinv(a, tol);

  // Second route, in binary64: the quotient of the canonical contractions of
  // the reduced pair, mapped back to E-coordinates through the embedding.
  const Matrix<double> ad = to_double(a);
  const Matrix<double> bd = to_double(b1);
  const Tolerance ftol = tol;
  const auto reduced = reduce(OperatorPair<double>(ad, bd), ftol);
  const auto cp = canonical_contractions(reduced.pair, ftol);
  const auto ker_ca = detail::kernel_scaled(cp.c_a, ftol, 1.0);
  const auto ker_cb = detail::kernel_scaled(cp.c_b, ftol, 1.0);
  if (!contains(ker_cb, ker_ca, ftol)) {
    throw Error(ErrorKind::RouteDisagreement, "ker C_A0 is not inside ker C_B0 for an almost dominated pair");
  }
  const Matrix<double> quotient = cp.c_b * pinv(cp.c_a, ftol);
  const Matrix<double> p_dom = projection(range(ad, ftol));
  const Matrix<double> r1 = to_double(out.representative);
  out.route_gap = max_abs(Matrix<double>((r1 - quotient) * p_dom));
  if (out.route_gap > kRouteTolerance * std::max(1.0, max_abs(r1))) {
    throw Error(ErrorKind::RouteDisagreement, "RN derivative routes differ by " + to_string(out.route_gap));
  }

  out.graph = closure(OperatorPair<T>(a, b1), tol);
  if (!is_operator(out.graph, tol)) throw Error(ErrorKind::VerificationFailed, "RN derivative is multivalued");
  if (!approx_equal(Matrix<T>(out.representative * a), b1, tol)) {
    throw Error(ErrorKind::VerificationFailed, "representative does not factor B1 through A");
  }
  out.bounded = is_dominated(a, b1, tol).dominated;
  out.bound = operator_norm(out.representative);
  return out;
}

template <Scalar T>
bool rn_minimality_check(const RadonNikodymDerivative<T>& d, const Matrix<T>& c, const Tolerance& tol) {
  if (c.cols() != d.a.rows() || c.rows() != d.b1.rows() || !approx_equal(Matrix<T>(c * d.a), d.b1, tol)) {
    throw Error(ErrorKind::NotAFactorization, "C A != B1");
  }
  return includes(operator_graph(c, tol), d.graph, tol);
}

template <Scalar T>
std::pair<RadonNikodymDerivative<T>, RadonNikodymDerivative<T>> rn_of_gram_components(const OperatorPair<T>& p,
                                                                                      const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    (void)p;
    (void)tol;
    throw Error(ErrorKind::ExactModeUnsupported, "the Gram square root is not rational; use float mode");
  } else {
    const auto cp = canonical_contractions(p, tol);
    auto of_a = rn_derivative(cp.root, p.a(), tol);
    auto of_b = rn_derivative(cp.root, p.b(), tol);
    const auto on_root = range(cp.root, tol);
    if (!approx_equal(restrict_to(of_a.representative, on_root), restrict_to(cp.c_a, on_root), tol) ||
        !approx_equal(restrict_to(of_b.representative, on_root), restrict_to(cp.c_b, on_root), tol)) {
      throw Error(ErrorKind::VerificationFailed, "RN derivatives with respect to S differ from C_A, C_B");
    }
    return {std::move(of_a), std::move(of_b)};
  }
}

template <Scalar T>
bool rn_representation_invariance(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& a2, const Matrix<T>& b2,
                                  const Tolerance& tol) {
  if (a.rows() != a2.rows() || b.rows() != b2.rows() ||
      !same_relation(from_pair(a, b, tol), from_pair(a2, b2, tol), tol)) {
    throw Error(ErrorKind::RelationsDiffer, "the two pairs represent different relations");
  }
  const auto d1 = rn_derivative(a, b, tol);
  const auto d2 = rn_derivative(a2, b2, tol);
  return same_relation(d1.graph, d2.graph, tol);
}

#define OPRANGE_INSTANTIATE_LEBESGUE(T)                                                                         \
  template struct LebesgueDecomposition<T>;                                                                     \
  template struct RadonNikodymDerivative<T>;                                                                    \
  template LebesgueDecomposition<T> lebesgue_decompose<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&); \
  template LValidation validate_l<T>(const Matrix<T>&, const Matrix<T>&, const Subspace<T>&, const Tolerance&); \
  template LebesgueDecomposition<T> lebesgue_type_decompose<T>(const Matrix<T>&, const Matrix<T>&,              \
                                                               const Subspace<T>&, const Tolerance&);           \
  template RadonNikodymDerivative<T> rn_derivative<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);    \
  template bool rn_minimality_check<T>(const RadonNikodymDerivative<T>&, const Matrix<T>&, const Tolerance&);   \
  template std::pair<RadonNikodymDerivative<T>, RadonNikodymDerivative<T>> rn_of_gram_components<T>(            \
      const OperatorPair<T>&, const Tolerance&);                                                                \
  template bool rn_representation_invariance<T>(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,           \
                                                const Matrix<T>&, const Tolerance&);

OPRANGE_INSTANTIATE_LEBESGUE(Rational)
OPRANGE_INSTANTIATE_LEBESGUE(double)

}  // namespace oprange
