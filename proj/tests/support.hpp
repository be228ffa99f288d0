#pragma once

#include <random>
#include <utility>

#include "oprange/linalg.hpp"
#include "oprange/matrix.hpp"

namespace oprange::testing {

using Q = Rational;
using MQ = Matrix<Rational>;
using MD = Matrix<double>;

inline Q q(long p, long d = 1) { return rational(p, d); }

struct Shape {
  std::size_t e, h, k;
};

/// Entries p/d with p in {-3..3}, d in {1..3}; each entry is zero with
/// probability `sparsity`.
inline MQ random_rational(std::mt19937& rng, std::size_t rows, std::size_t cols, double sparsity = 0.0) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
  std::bernoulli_distribution zero(sparsity);
  MQ m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = zero(rng) ? q(0) : q(num(rng), den(rng));
  }
  return m;
}

/// Like random_rational, but with probability 1/3 some columns are copies of
/// others (rank deficient while staying inside the entry set).
inline MQ random_rational_structured(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> sparsity_pick(0, 2);
  const double sparsity[] = {0.0, 0.35, 0.7};
  MQ m = random_rational(rng, rows, cols, sparsity[sparsity_pick(rng)]);
  std::bernoulli_distribution copy(1.0 / 3.0);
  if (cols > 1 && copy(rng)) {
    std::uniform_int_distribution<std::size_t> col(0, cols - 1);
    const std::size_t src = col(rng), dst = col(rng);
    for (std::size_t i = 0; i < rows; ++i) m(i, dst) = m(i, src);
  }
  return m;
}

inline Shape random_shape(std::mt19937& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> d(1, max_dim);
  return {d(rng), d(rng), d(rng)};
}

inline MD random_float(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MD m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

/// Random float matrix of rank at most r.
inline MD random_float_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return random_float(rng, rows, r) * random_float(rng, r, cols);
}

/// Float matrix with rank drawn from 0..min(rows, cols).
inline MD random_float_structured(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<std::size_t> r(0, std::min(rows, cols));
  const std::size_t rk = r(rng);
  if (rk == std::min(rows, cols)) return random_float(rng, rows, cols);
  return random_float_rank(rng, rows, cols, rk);
}

/// Invertible rational matrix: unit lower times unit upper triangular.
inline MQ random_invertible(std::mt19937& rng, std::size_t n) {
  MQ l = MQ::identity(n), u = MQ::identity(n);
  std::uniform_int_distribution<long> num(-2, 2), den(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = q(num(rng), den(rng));
      u(j, i) = q(num(rng), den(rng));
    }
  }
  return l * u;
}

/// Rational orthogonal matrix (I - S)(I + S)^-1 for a random skew-symmetric S.
inline MQ random_rational_orthogonal(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
  MQ s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      s(i, j) = q(num(rng), den(rng));
      s(j, i) = -s(i, j);
    }
  }
  const MQ id = MQ::identity(n);
  return MQ(id - s) * inverse(MQ(id + s));
}

/// Exact Q-normalized pair: c(A, B) is a rational orthogonal matrix with some
/// columns zeroed, so A*A + B*B is a coordinate projection.
inline std::pair<MQ, MQ> random_q_normalized(std::mt19937& rng, std::size_t h, std::size_t k, std::size_t e) {
  const MQ o = random_rational_orthogonal(rng, h + k);
  std::bernoulli_distribution keep(0.7);
  MQ phi(h + k, e);
  for (std::size_t j = 0; j < e && j < h + k; ++j) {
    if (!keep(rng)) continue;
    for (std::size_t i = 0; i < h + k; ++i) phi(i, j) = o(i, j);
  }
  return {phi.rows_range(0, h), phi.rows_range(h, k)};
}

}  // namespace oprange::testing
