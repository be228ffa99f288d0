#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oprange/classify.hpp"

namespace oprange {

/// Diagonal entry generator, indexed from k = 1.
struct Generator {
  enum class Family { Reciprocal, Power, Geometric, Constant, List };

  Family family = Family::Constant;
  /// Exponent for Power (k^p, p an integer), ratio for Geometric (r^k), value for Constant.
  Rational param{1};
  std::vector<Rational> values;

  static Generator reciprocal() { return {Family::Reciprocal, Rational(1), {}}; }
  static Generator power(long exponent) { return {Family::Power, Rational(exponent), {}}; }
  static Generator geometric(Rational ratio) { return {Family::Geometric, std::move(ratio), {}}; }
  static Generator constant(Rational value) { return {Family::Constant, std::move(value), {}}; }
  static Generator list(std::vector<Rational> v) { return {Family::List, Rational(0), std::move(v)}; }

  Rational at(std::size_t k) const;
  std::string name() const;
};

std::string family_name(Generator::Family f);
/// Inverse of family_name; InvalidArgument on unknown names.
Generator::Family parse_family(const std::string& name);

/// A_n = diag(alpha_1..alpha_n), B_n = diag(beta_1..beta_n) for n <= max_dim.
struct DiagonalTower {
  Generator alpha;
  Generator beta;
  std::size_t max_dim = 2;

  Matrix<Rational> a_section(std::size_t n) const;
  Matrix<Rational> b_section(std::size_t n) const;
};

enum class TowerVerdict { DominatedLimit, AlmostDominatedNotDominated, SingularTrend, Undetermined };

std::string verdict_name(TowerVerdict v);

struct ModelFit {
  std::string model;
  double parameter = 0.0;
  double sse = 0.0;
};

/// Least squares on log c_n over the upper half of the sections.
struct GrowthFit {
  /// Chosen model: "constant" when the tail slope is below kBoundedSlope,
  /// otherwise the best of "polynomial", "exponential", "logarithmic".
  std::string model;
  double parameter = 0.0;
  /// d log c_n / d log n over the tail window.
  double tail_slope = 0.0;
  std::vector<ModelFit> candidates;
};

inline constexpr double kBoundedSlope = 0.05;

struct TowerReport {
  std::vector<std::size_t> dims;
  /// c_n, or nullopt for the infinity marker (ker A_n not inside ker B_n).
  std::vector<std::optional<Rational>> constants;
  std::vector<bool> dominated;
  /// L(A_n, B_n) is an operator.
  std::vector<bool> regular;
  /// ran A_n n ran B_n = {0}.
  std::vector<bool> ranges_disjoint;
  /// c_n^2 lies in the bisection bracket of is_dominated at every dominated section.
  bool cross_validated = false;
  TowerVerdict verdict = TowerVerdict::Undetermined;
  GrowthFit growth_fit;
};

/// Sections are evaluated in parallel. VerificationFailed if the ratio formula
/// disagrees with is_dominated on some section.
TowerReport run_tower(const DiagonalTower& t);

GrowthFit fit_growth(const std::vector<std::size_t>& dims, const std::vector<double>& constants);

template <Scalar T>
struct WitnessReport {
  /// Check (a): each B_n dominated by A, with its constant.
  std::vector<bool> dominated;
  std::vector<std::optional<double>> constants;
  /// Check (b): B_n*B_n <= B_{n+1}*B_{n+1}; first failing n otherwise.
  bool monotone = true;
  std::optional<std::size_t> first_violation;
  /// Check (c): B_N*B_N <= B*B, with gap = B*B - B_N*B_N.
  bool bounded_by_b = false;
  Matrix<T> gap;
  double gap_norm = 0.0;
  bool gap_zero = false;
  bool passed = false;
};

template <Scalar T>
WitnessReport<T> validate_ad_witness(const Matrix<T>& a, const Matrix<T>& b, const std::vector<Matrix<T>>& witnesses,
                                     const Tolerance& tol = {});

}  // namespace oprange
