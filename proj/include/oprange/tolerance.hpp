#pragma once

#include <algorithm>
#include <cstddef>

#include "oprange/error.hpp"

namespace oprange {

/// Float-mode decision thresholds. Exact mode ignores both.
struct Tolerance {
  /// Singular values at or below `rank_rtol * sigma_max` count as zero.
  double rank_rtol = 1e-10;
  /// Float equalities accept `|x - y| <= eq_atol * max(1, scale)`.
  double eq_atol = 1e-9;

  double equality_bound(double scale) const { return eq_atol * std::max(1.0, scale); }

  void validate() const {
    if (!(rank_rtol > 0.0) || !(eq_atol > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
    }
  }
};

}  // namespace oprange
