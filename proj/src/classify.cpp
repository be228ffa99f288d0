#include "oprange/classify.hpp"

#include <cmath>
#include <limits>

#include "oprange/pairs.hpp"

namespace oprange {

namespace {

void require_shared_domain(std::size_t a_cols, std::size_t b_cols) {
  if (a_cols != b_cols) {
    throw Error(ErrorKind::DimensionMismatch, "A and B must share a domain (" + std::to_string(a_cols) + " vs " +
                                                  std::to_string(b_cols) + " columns)");
  }
}

/// All criteria must agree; returns the common verdict.
bool agreed(const std::vector<Criterion>& criteria, const std::string& property) {
  for (const auto& c : criteria) {
    if (c.verdict != criteria.front().verdict) {
      std::string detail;
      for (const auto& d : criteria) detail += " " + d.name + "=" + (d.verdict ? "true" : "false");
      throw Error(ErrorKind::CriteriaDisagree, "equivalent criteria for " + property + " disagree:" + detail);
    }
  }
  return criteria.front().verdict;
}

/// Kernel of a contraction; its norm is at most one, so rank is judged on
/// that scale rather than on its own largest singular value.
Subspace<double> contraction_kernel(const Matrix<double>& c, const Tolerance& tol) {
  return detail::kernel_scaled(c, tol, 1.0);
}

/// tr(B*B) tr(pinv(A*A)): if ran B* is in ran A*, then
/// B*B <= ||B||^2 P <= ||B||^2 / lambda_min+(A*A) A*A, and both factors are
/// dominated by the traces.
template <Scalar T>
T a_priori_bound(const Matrix<T>& ata, const Matrix<T>& btb, const Tolerance& tol) {
  return trace(btb) * trace(pinv(ata, tol));
}

}  // namespace

template <Scalar T>
Subspace<T> d_subspace(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  return preimage(adjoint(b), range(adjoint(a), tol), tol);
}

template <Scalar T>
Subspace<T> r_subspace(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  return preimage(adjoint(a), range(adjoint(b), tol), tol);
}

namespace {

/// Bisection below a squared constant `ceiling` already known to pass.
ConstantBracket bracket_below(const Matrix<Rational>& a, const Matrix<Rational>& b, const Matrix<Rational>& ata,
                              const Matrix<Rational>& btb, const Rational& ceiling) {
  if (is_zero(btb)) return {Rational(0), Rational(0)};
  const auto passes = [&](const Rational& c2) {
    Matrix<Rational> gap = ata;
    gap *= c2;
    gap -= btb;
    return detail::exact_is_psd_consume(std::move(gap));
  };

  // Seed the bracket from a binary64 estimate; every endpoint is re-checked
  // exactly, so the estimate only affects the number of steps.
  const Matrix<double> ad = to_double(a);
  const Matrix<double> bd = to_double(b);
  const double estimate = std::pow(operator_norm(Matrix<double>(bd * pinv(ad))), 2);
  Rational hi = ceiling;
  Rational lo = 0;
  if (std::isfinite(estimate) && estimate > 0.0) {
    Rational guess_hi(estimate * (1.0 + 1e-9));
    Rational guess_lo(estimate * (1.0 - 1e-9));
    if (guess_hi < hi && passes(guess_hi)) hi = guess_hi;
    if (guess_lo < hi && !passes(guess_lo)) lo = guess_lo;
  }
  const Rational width = hi / Rational(mpz_class(1) << 40);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

ConstantBracket domination_constant_bracket(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  require_shared_domain(a.cols(), b.cols());
  const Matrix<Rational> ata = a.transposed() * a;
  const Matrix<Rational> btb = b.transposed() * b;
  const Rational ceiling = a_priori_bound(ata, btb, Tolerance{});
  if (!psd_order_leq(btb, Matrix<Rational>(ceiling * ata))) {
    throw Error(ErrorKind::InvalidArgument, "B is not dominated by A; no domination constant exists");
  }
  return bracket_below(a, b, ata, btb, ceiling);
}

template <Scalar T>
DominationResult is_dominated(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  DominationResult out;

  const bool inclusion = contains(range(adjoint(a), tol), range(adjoint(b), tol), tol);
  out.criteria.push_back({"dominated.range_inclusion", inclusion});

  const Matrix<T> ata = a.transposed() * a;
  const Matrix<T> btb = b.transposed() * b;
  const T bound = a_priori_bound(ata, btb, tol);
  out.criteria.push_back({"dominated.psd_order", psd_order_leq(btb, Matrix<T>(bound * ata), tol)});

  out.criteria.push_back({"dominated.mul_trivial", is_operator(from_pair(a, b, tol), tol)});

  out.dominated = agreed(out.criteria, "domination");
  if (out.dominated) {
    if constexpr (is_exact_v<T>) {
      out.exact_bracket = bracket_below(a, b, ata, btb, bound);
      out.constant = std::sqrt(to_double(out.exact_bracket->upper));
    } else {
      out.constant = operator_norm(Matrix<T>(b * pinv(a, tol)));
    }
  }
  return out;
}

template <Scalar T>
VerdictResult is_almost_dominated(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  VerdictResult out;
  out.criteria.push_back({"almost_dominated.d_subspace_full", d_subspace(a, b, tol).is_full()});
  out.criteria.push_back({"almost_dominated.kernel_inclusion", contains(kernel(b, tol), kernel(a, tol), tol)});
  if constexpr (!is_exact_v<T>) {
    const auto cp = canonical_contractions(OperatorPair<T>(a, b), tol);
    out.criteria.push_back({"almost_dominated.canonical_kernel_inclusion",
                            contains(contraction_kernel(cp.c_b, tol), contraction_kernel(cp.c_a, tol), tol)});
  }
  out.verdict = agreed(out.criteria, "almost domination");
  return out;
}

template <Scalar T>
VerdictResult is_singular(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  VerdictResult out;
  const auto ran_a_star = range(adjoint(a), tol);
  const auto ran_b_star = range(adjoint(b), tol);
  out.criteria.push_back({"singular.range_intersection", subspace_intersect(ran_a_star, ran_b_star, tol).is_zero()});

  const auto adj = adjoint_rel(from_pair(a, b, tol), tol);
  const auto kernels = product(kernel(adjoint(b), tol), kernel(adjoint(a), tol), tol);
  out.criteria.push_back({"singular.adjoint_is_kernel_product", same_subspace(adj.graph(), kernels, tol)});

  const OperatorPair<T> pair(a, b);
  const auto ranges = product(range(a, tol), range(b, tol), tol);
  out.criteria.push_back({"singular.closure_is_range_product", same_subspace(closure(pair, tol).graph(), ranges, tol)});

  if constexpr (!is_exact_v<T>) {
    const auto cp = canonical_contractions(pair, tol);
    const auto sum = subspace_sum(contraction_kernel(cp.c_a, tol), contraction_kernel(cp.c_b, tol), tol);
    out.criteria.push_back({"singular.canonical_kernels_span_domain", sum.is_full()});
  }
  out.verdict = agreed(out.criteria, "singularity");
  return out;
}

template <Scalar T>
Classification<T> classify(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  require_shared_domain(a.cols(), b.cols());
  Classification<T> out;
  out.d_subspace = d_subspace(a, b, tol);
  out.r_subspace = r_subspace(a, b, tol);

  const auto adj = adjoint_rel(from_pair(a, b, tol), tol);
  const bool d_matches = same_subspace(out.d_subspace, dom(adj, tol), tol);
  const bool r_matches = same_subspace(out.r_subspace, ran(adj, tol), tol);
  out.criteria_trace.push_back({"d_subspace.equals_dom_adjoint", d_matches});
  out.criteria_trace.push_back({"r_subspace.equals_ran_adjoint", r_matches});
  if (!d_matches || !r_matches) {
    throw Error(ErrorKind::CriteriaDisagree, "D(A,B) or R(A,B) disagrees with the adjoint relation");
  }

  const auto dom_result = is_dominated(a, b, tol);
  const auto ad_result = is_almost_dominated(a, b, tol);
  const auto sing_result = is_singular(a, b, tol);
  out.dominated = dom_result.dominated;
  out.domination_constant = dom_result.constant;
  out.exact_bracket = dom_result.exact_bracket;
  out.almost_dominated = ad_result.verdict;
  out.singular = sing_result.verdict;
  for (const auto* list : {&dom_result.criteria, &ad_result.criteria, &sing_result.criteria}) {
    out.criteria_trace.insert(out.criteria_trace.end(), list->begin(), list->end());
  }

  if (out.dominated && !out.almost_dominated) {
    throw Error(ErrorKind::CriteriaDisagree, "dominated but not almost dominated");
  }
  if (out.dominated != out.almost_dominated) {
    throw Error(ErrorKind::CriteriaDisagree, "almost domination differs from domination in finite dimensions");
  }
  if (out.singular && out.almost_dominated) {
    const bool b_vanishes = approx_equal(b, Matrix<T>(b.rows(), b.cols()), tol);
    out.criteria_trace.push_back({"singular_and_regular.b_vanishes", b_vanishes});
    if (!b_vanishes) throw Error(ErrorKind::CriteriaDisagree, "B is singular and almost dominated but nonzero");
  }
  return out;
}

#define OPRANGE_INSTANTIATE_CLASSIFY(T)                                                         \
  template struct Classification<T>;                                                            \
  template Subspace<T> d_subspace<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);     \
  template Subspace<T> r_subspace<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);     \
  template DominationResult is_dominated<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&); \
  template VerdictResult is_almost_dominated<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&); \
  template VerdictResult is_singular<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);  \
  template Classification<T> classify<T>(const Matrix<T>&, const Matrix<T>&, const Tolerance&);

OPRANGE_INSTANTIATE_CLASSIFY(Rational)
OPRANGE_INSTANTIATE_CLASSIFY(double)

}  // namespace oprange
