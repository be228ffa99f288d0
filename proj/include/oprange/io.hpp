#pragma once

#include <string>

#include "oprange/matrix.hpp"

namespace oprange {

enum class MatrixFormat { MatrixMarket, Csv, Json };

/// From the extension: .mtx, .csv, .json. InvalidArgument otherwise.
MatrixFormat format_from_path(const std::string& path);

/// Matrix Market (array or coordinate, real or integer), CSV with one row per
/// line, or JSON as {"rows", "cols", "data"} or a bare array of rows. Entries
/// may be integers, decimals or "p/q"; exact mode reads decimals exactly.
/// Parse on malformed input.
template <Scalar T>
Matrix<T> parse_matrix(const std::string& text, MatrixFormat format);

/// Io if the file cannot be read.
template <Scalar T>
Matrix<T> read_matrix(const std::string& path);

/// Inverse of parse_matrix. Rationals are written as "p/q" (csv, json) or as
/// terminating decimals (Matrix Market, InvalidArgument if impossible);
/// doubles use the shortest round-trip decimal.
template <Scalar T>
std::string serialize_matrix(const Matrix<T>& m, MatrixFormat format);

template <Scalar T>
void write_matrix(const Matrix<T>& m, const std::string& path);

/// Exact decimal rendering of a rational with a 2^a 5^b denominator.
std::string terminating_decimal(const Rational& q);

}  // namespace oprange
