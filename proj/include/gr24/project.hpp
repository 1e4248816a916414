#pragma once

// Orthogonal projection of a noisy minor sextuple onto the Plücker quadric
// x1 x2 + x3 x4 + x5 x6 = 0.
//
// At a point X of the quadric the normal is X* (pairwise swap), so the foot
// X of the perpendicular from Y satisfies Y = X + p X* and (X, X*) = 0.
// Solving the first for X gives X = (Y - p Y*) / (1 - p^2); substituting into
// the second leaves p^2 - 2p (Y,Y)/(Y,Y*) + 1 = 0, whose two roots multiply
// to 1. The root with |p| < 1 is the one near Y.

#include <algorithm>
#include <cmath>
#include <concepts>

#include "gr24/core.hpp"
#include "gr24/error.hpp"
#include "gr24/tolerance.hpp"

namespace gr24 {

template <std::floating_point Real>
BasicPluckerVector<Real> star(const BasicPluckerVector<Real>& v) {
  return {{v[1], v[0], v[3], v[2], v[5], v[4]}};
}

template <std::floating_point Real>
Real dot(const BasicPluckerVector<Real>& u, const BasicPluckerVector<Real>& v) {
  Real s = 0;
  for (std::size_t k = 0; k < 6; ++k) s += u[k] * v[k];
  return s;
}

template <std::floating_point Real>
struct BasicProjectionResult {
  BasicMinorSextuple<Real> corrected;
  Real p = 0;
  Real defect_before = 0;
  Real defect_after = 0;
};

using ProjectionResult = BasicProjectionResult<double>;

/// Small root of p^2 - 2p a/b + 1 = 0 for a = (Y,Y), b = (Y,Y*), b != 0.
/// Written as b / (a + sqrt(a^2 - b^2)), which equals
/// (a - sqrt(a^2 - b^2)) / b without the cancellation when |b| << a.
template <std::floating_point Real>
Real projection_parameter(Real yy, Real yys) {
  const Real disc = std::max(Real(0), yy * yy - yys * yys);
  return yys / (yy + std::sqrt(disc));
}

/// Throws AllZeroInput for an all-zero sextuple and DegenerateProjection when
/// |p| reaches 1, where the nearest point is not unique.
template <std::floating_point Real>
BasicProjectionResult<Real> project(const BasicMinorSextuple<Real>& noisy,
                                    const BasicTolerance<Real>& tol = {}) {
  if (noisy.all_below(tol.abs))
    throw Error(ErrorCode::AllZeroInput, "cannot project the all-zero sextuple");

  const BasicPluckerVector<Real> y = to_plucker(noisy);
  const BasicPluckerVector<Real> y_star = star(y);
  const Real yy = dot(y, y);
  const Real yys = dot(y, y_star);

  BasicProjectionResult<Real> out;
  out.defect_before = plucker_defect(noisy);

  // (Y,Y*) = 2 * defect: already on the surface.
  if (std::abs(yys) <= tol.scale(yy)) {
    out.corrected = noisy;
    out.defect_after = out.defect_before;
    return out;
  }

  const Real p = projection_parameter(yy, yys);
  const Real denom = Real(1) - p * p;
  if (std::abs(denom) <= tol.rel)
    throw Error(ErrorCode::DegenerateProjection,
                "|p| = 1: the nearest point on the quadric is not unique");

  BasicPluckerVector<Real> x = y - p * y_star;
  for (std::size_t k = 0; k < 6; ++k) x[k] /= denom;
  out.corrected = from_plucker(x);
  out.p = p;
  out.defect_after = plucker_defect(out.corrected);
  return out;
}

}  // namespace gr24
