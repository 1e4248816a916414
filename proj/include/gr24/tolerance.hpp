#pragma once

#include <cmath>
#include <concepts>

#include "gr24/error.hpp"

namespace gr24 {

/// Thresholds for approximate comparisons. A comparison against an
/// expression of natural magnitude M passes when |value| <= abs + rel * M.
template <std::floating_point Real>
struct BasicTolerance {
  Real rel = Real(1e-9);
  Real abs = Real(1e-12);

  static BasicTolerance make(Real rel, Real abs) {
    BasicTolerance tol{rel, abs};
    tol.validate();
    return tol;
  }

  void validate() const {
    if (!(std::isfinite(rel) && rel > 0))
      throw Error(ErrorCode::InvalidTolerance, "relative tolerance must be finite and > 0");
    if (!(std::isfinite(abs) && abs >= 0))
      throw Error(ErrorCode::InvalidTolerance, "absolute tolerance must be finite and >= 0");
  }

  constexpr Real scale(Real magnitude) const { return abs + rel * magnitude; }
};

using Tolerance = BasicTolerance<double>;

}  // namespace gr24
