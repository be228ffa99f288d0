#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

namespace oprange {

/// Arbitrary-precision rational. Values produced by arithmetic are always in
/// lowest terms with a positive denominator; use `rational(p, q)` rather than
/// the raw two-argument constructor, which does not canonicalize.
using Rational = mpq_class;

/// Scalar field tag. A matrix is homogeneous in its field, and there are no
/// conversions between fields except the explicit `to_double`.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "exact";
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "float";
};

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

Rational rational(long numerator, long denominator = 1);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline double abs_value(const Rational& q) { return std::abs(q.get_d()); }
inline double abs_value(double x) { return x < 0 ? -x : x; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
/// Shortest decimal that round-trips to the same binary64 value.
std::string to_string(double x);

/// Accepts integers, "p/q", and decimals with optional exponent ("-1.25e-3").
/// Decimals are converted exactly.
Rational parse_rational(std::string_view text);
/// Accepts everything `parse_rational` does; fractions are evaluated in binary64.
double parse_double(std::string_view text);

template <Scalar T>
T parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<T>) {
    return parse_rational(text);
  } else {
    return parse_double(text);
  }
}

template <Scalar T>
T from_ratio(long numerator, long denominator = 1) {
  if constexpr (is_exact_v<T>) {
    return rational(numerator, denominator);
  } else {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
}

}  // namespace oprange
