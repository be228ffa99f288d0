#include "oprange/towers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace oprange {

Rational Generator::at(std::size_t k) const {
  const Rational kk(static_cast<unsigned long>(k));
  switch (family) {
    case Family::Reciprocal:
      return Rational(1) / kk;
    case Family::Power: {
      if (param.get_den() != 1 || !param.get_num().fits_slong_p()) {
        throw Error(ErrorKind::InvalidArgument, "power exponent must be an integer");
      }
      const long e = param.get_num().get_si();
      Rational r(1);
      for (long i = 0; i < std::labs(e); ++i) r *= kk;
      return e < 0 ? Rational(1) / r : r;
    }
    case Family::Geometric: {
      Rational r(1);
      for (std::size_t i = 0; i < k; ++i) r *= param;
      return r;
    }
    case Family::Constant:
      return param;
    case Family::List:
      if (k == 0 || k > values.size()) {
        throw Error(ErrorKind::InvalidArgument, "list generator has " + std::to_string(values.size()) + " entries");
      }
      return values[k - 1];
  }
  return Rational(0);
}

std::string family_name(Generator::Family f) {
  switch (f) {
    case Generator::Family::Reciprocal: return "reciprocal";
    case Generator::Family::Power: return "power";
    case Generator::Family::Geometric: return "geometric";
    case Generator::Family::Constant: return "constant";
    case Generator::Family::List: return "list";
  }
  return "?";
}

Generator::Family parse_family(const std::string& name) {
  for (auto f : {Generator::Family::Reciprocal, Generator::Family::Power, Generator::Family::Geometric,
                 Generator::Family::Constant, Generator::Family::List}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator family '" + name + "'");
}

std::string Generator::name() const {
  switch (family) {
    case Family::Reciprocal:
      return "reciprocal";
    case Family::List:
      return "list[" + std::to_string(values.size()) + "]";
    default:
      return family_name(family) + "(" + to_string(param) + ")";
  }
}

Matrix<Rational> DiagonalTower::a_section(std::size_t n) const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k <= n; ++k) d.push_back(alpha.at(k));
  return Matrix<Rational>::diagonal(d);
}

Matrix<Rational> DiagonalTower::b_section(std::size_t n) const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k <= n; ++k) d.push_back(beta.at(k));
  return Matrix<Rational>::diagonal(d);
}

std::string verdict_name(TowerVerdict v) {
  switch (v) {
    case TowerVerdict::DominatedLimit: return "dominated-limit";
    case TowerVerdict::AlmostDominatedNotDominated: return "almost-dominated-not-dominated";
    case TowerVerdict::SingularTrend: return "singular-trend";
    case TowerVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

/// Slope and intercept of y against x, with the residual sum of squares.
ModelFit linear_fit(const std::string& model, const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    sse += r * r;
  }
  return {model, slope, sse};
}

struct Section {
  std::optional<Rational> constant;
  bool dominated = false;
  bool regular = false;
  bool ranges_disjoint = false;
  bool consistent = false;
};

Section evaluate_section(const DiagonalTower& t, std::size_t n) {
  Section s;
  Rational c(0);
  bool infinite = false;
  s.ranges_disjoint = true;
  s.regular = true;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational a = t.alpha.at(k);
    const Rational b = t.beta.at(k);
    if (a != 0 && b != 0) s.ranges_disjoint = false;
    if (a == 0) {
      if (b != 0) {
        infinite = true;
        s.regular = false;
      }
      continue;
    }
    c = std::max(c, Rational(abs(b / a)));
  }
  if (!infinite) s.constant = c;

  const auto a_n = t.a_section(n);
  const auto b_n = t.b_section(n);
  const auto dom = is_dominated(a_n, b_n);
  s.dominated = dom.dominated;
  if (infinite) {
    s.consistent = !dom.dominated;
  } else if (!dom.dominated) {
    s.consistent = false;
  } else {
    const Rational c2 = c * c;
    s.consistent = dom.exact_bracket && dom.exact_bracket->lower <= c2 && c2 <= dom.exact_bracket->upper;
  }
  return s;
}

}  // namespace

GrowthFit fit_growth(const std::vector<std::size_t>& dims, const std::vector<double>& constants) {
  GrowthFit g;
  std::vector<double> x_log, x_lin, x_loglog, y;
  const std::size_t start = dims.size() / 2;
  for (std::size_t i = start; i < dims.size(); ++i) {
    const double n = static_cast<double>(dims[i]);
    x_log.push_back(std::log(n));
    x_lin.push_back(n);
    x_loglog.push_back(std::log(std::log(std::max(n, 2.0))));
    y.push_back(std::log(constants[i]));
  }
  const double tail_last = constants.empty() ? 0.0 : constants.back();
  const bool flat = std::all_of(constants.begin() + static_cast<long>(start), constants.end(),
                                [&](double c) { return c == tail_last; });
  if (flat || y.size() < 2) {
    g.model = "constant";
    g.parameter = tail_last;
    g.tail_slope = 0.0;
    g.candidates.push_back({"constant", tail_last, 0.0});
    return g;
  }
  const auto poly = linear_fit("polynomial", x_log, y);
  g.tail_slope = poly.parameter;
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  auto constant = linear_fit("constant", std::vector<double>(y.size(), 0.0), y);
  constant.parameter = std::exp(mean);
  g.candidates = {constant, poly, linear_fit("exponential", x_lin, y), linear_fit("logarithmic", x_loglog, y)};
  if (g.tail_slope < kBoundedSlope) {
    g.model = "constant";
    g.parameter = tail_last;
    return g;
  }
  const auto best = std::min_element(g.candidates.begin() + 1, g.candidates.end(),
                                     [](const ModelFit& l, const ModelFit& r) { return l.sse < r.sse; });
  g.model = best->model;
  g.parameter = best->parameter;
  return g;
}

TowerReport run_tower(const DiagonalTower& t) {
  if (t.max_dim < 2) throw Error(ErrorKind::InvalidArgument, "max_dim must be at least 2");
  for (std::size_t k = 1; k <= t.max_dim; ++k) {
    t.alpha.at(k);
    t.beta.at(k);
  }

  std::vector<Section> sections(t.max_dim);
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t n = 1 + w; n <= t.max_dim; n += workers) sections[n - 1] = evaluate_section(t, n);
    }));
  }
  for (auto& j : jobs) j.get();

  TowerReport r;
  r.cross_validated = true;
  for (std::size_t n = 1; n <= t.max_dim; ++n) {
    const auto& s = sections[n - 1];
    r.dims.push_back(n);
    r.constants.push_back(s.constant);
    r.dominated.push_back(s.dominated);
    r.regular.push_back(s.regular);
    r.ranges_disjoint.push_back(s.ranges_disjoint);
    r.cross_validated = r.cross_validated && s.consistent;
  }
  if (!r.cross_validated) {
    throw Error(ErrorKind::VerificationFailed, "tower constants disagree with is_dominated on some section");
  }
  for (std::size_t i = 1; i < r.constants.size(); ++i) {
    const auto& prev = r.constants[i - 1];
    const auto& cur = r.constants[i];
    if (!prev ? cur.has_value() : (cur && *cur < *prev)) {
      throw Error(ErrorKind::VerificationFailed, "tower constants decrease at n = " + std::to_string(i + 1));
    }
  }

  const bool all_dominated = std::all_of(r.dominated.begin(), r.dominated.end(), [](bool b) { return b; });
  if (all_dominated) {
    std::vector<double> c;
    for (const auto& v : r.constants) c.push_back(to_double(*v));
    if (c.back() == 0.0) {
      r.growth_fit = GrowthFit{"constant", 0.0, 0.0, {{"constant", 0.0, 0.0}}};
    } else {
      // Leading zero constants carry no growth information; fit from the first positive one.
      std::size_t first = 0;
      while (c[first] == 0.0) ++first;
      std::vector<std::size_t> dims(r.dims.begin() + static_cast<long>(first), r.dims.end());
      std::vector<double> tail(c.begin() + static_cast<long>(first), c.end());
      r.growth_fit = fit_growth(dims, tail);
    }
    r.verdict = r.growth_fit.tail_slope < kBoundedSlope ? TowerVerdict::DominatedLimit
                                                        : TowerVerdict::AlmostDominatedNotDominated;
  } else {
    r.growth_fit = GrowthFit{"infinite", std::numeric_limits<double>::infinity(), 0.0, {}};
    const bool disjoint = std::all_of(r.ranges_disjoint.begin(), r.ranges_disjoint.end(), [](bool b) { return b; });
    r.verdict = disjoint ? TowerVerdict::SingularTrend : TowerVerdict::Undetermined;
  }
  return r;
}

template <Scalar T>
WitnessReport<T> validate_ad_witness(const Matrix<T>& a, const Matrix<T>& b, const std::vector<Matrix<T>>& witnesses,
                                     const Tolerance& tol) {
  if (witnesses.empty()) throw Error(ErrorKind::InvalidArgument, "at least one witness is required");
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "A and B must share a domain");
  for (const auto& w : witnesses) {
    if (w.cols() != a.cols() || w.rows() != b.rows()) {
      throw Error(ErrorKind::DimensionMismatch, "witnesses must map the domain of A into the codomain of B");
    }
  }
  WitnessReport<T> r;
  std::vector<Matrix<T>> grams;
  for (const auto& w : witnesses) {
    const auto dom = is_dominated(a, w, tol);
    r.dominated.push_back(dom.dominated);
    r.constants.push_back(dom.constant);
    grams.push_back(w.transposed() * w);
  }
  for (std::size_t i = 0; i + 1 < grams.size(); ++i) {
    if (!psd_order_leq(grams[i], grams[i + 1], tol)) {
      r.monotone = false;
      r.first_violation = i;
      break;
    }
  }
  const Matrix<T> bb = b.transposed() * b;
  r.bounded_by_b = psd_order_leq(grams.back(), bb, tol);
  r.gap = bb - grams.back();
  r.gap_norm = operator_norm(r.gap);
  if constexpr (is_exact_v<T>) {
    r.gap_zero = is_zero(r.gap);
  } else {
    r.gap_zero = max_abs(r.gap) <= tol.equality_bound(max_abs(bb));
  }
  r.passed = std::all_of(r.dominated.begin(), r.dominated.end(), [](bool d) { return d; }) && r.monotone &&
             r.bounded_by_b;
  return r;
}

template struct WitnessReport<Rational>;
template struct WitnessReport<double>;
template WitnessReport<Rational> validate_ad_witness<Rational>(const Matrix<Rational>&, const Matrix<Rational>&,
                                                               const std::vector<Matrix<Rational>>&, const Tolerance&);
template WitnessReport<double> validate_ad_witness<double>(const Matrix<double>&, const Matrix<double>&,
                                                           const std::vector<Matrix<double>>&, const Tolerance&);

}  // namespace oprange
