#pragma once

// Matrices from minors, and linear equivalence of 2x4 matrices.
//
// Two rank-2 matrices A and B have the same row span iff B = S A for a
// non-singular 2x2 S iff minors(B) = t minors(A) with t = det S != 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <string>

#include "gr24/core.hpp"
#include "gr24/error.hpp"
#include "gr24/tolerance.hpp"

namespace gr24 {

/// Non-singular change of basis S with B = S A.
template <std::floating_point Real>
class BasicTransform2x2 {
 public:
  /// Throws SingularTransform when |det| <= abs + rel * (max |s|)^2.
  BasicTransform2x2(Real s11, Real s12, Real s21, Real s22, const BasicTolerance<Real>& tol = {})
      : s_{{{s11, s12}, {s21, s22}}} {
    for (const auto& row : s_)
      for (Real v : row)
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "transform entry is not finite");
    const Real mag = max_abs();
    if (std::abs(det()) <= tol.scale(mag * mag))
      throw Error(ErrorCode::SingularTransform, "2x2 transform is singular");
  }

  Real operator()(int r, int c) const { return s_[r][c]; }
  Real det() const { return s_[0][0] * s_[1][1] - s_[0][1] * s_[1][0]; }

  Real max_abs() const {
    Real m = 0;
    for (const auto& row : s_)
      for (Real v : row) m = std::max(m, std::abs(v));
    return m;
  }

  BasicMatrix2x4<Real> apply(const BasicMatrix2x4<Real>& a) const {
    typename BasicMatrix2x4<Real>::Row r0{}, r1{};
    for (int c = 0; c < 4; ++c) {
      r0[c] = s_[0][0] * a(0, c) + s_[0][1] * a(1, c);
      r1[c] = s_[1][0] * a(0, c) + s_[1][1] * a(1, c);
    }
    return {r0, r1};
  }

 private:
  std::array<std::array<Real, 2>, 2> s_;
};

using Transform2x2 = BasicTransform2x2<double>;

/// The minor that drives a reconstruction.
struct Pivot {
  MinorPair pair = MinorPair::p12;

  /// Throws PivotTooSmall unless |m_pair| > abs + rel * max |m|.
  template <std::floating_point Real>
  static Pivot checked(const BasicMinorSextuple<Real>& m, MinorPair pair,
                       const BasicTolerance<Real>& tol = {}) {
    if (!(std::abs(m[pair]) > tol.scale(m.max_abs())))
      throw Error(ErrorCode::PivotTooSmall,
                  "pivot minor A" + std::string(label_of(pair)) + " is zero at the given tolerance");
    return Pivot{pair};
  }

  friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// Largest |minor|; ties go to the earlier pair in storage order.
template <std::floating_point Real>
Pivot select_pivot(const BasicMinorSextuple<Real>& m, const BasicTolerance<Real>& tol = {}) {
  if (m.all_below(tol.abs))
    throw Error(ErrorCode::DegenerateInput, "all minors vanish; no pivot exists");
  MinorPair best = MinorPair::p12;
  for (MinorPair p : kMinorPairs)
    if (std::abs(m[p]) > std::abs(m[best])) best = p;
  return Pivot{best};
}

namespace detail {

template <std::floating_point Real>
void require_reconstructible(const BasicMinorSextuple<Real>& m, Pivot pivot,
                             const BasicTolerance<Real>& tol) {
  Pivot::checked(m, pivot.pair, tol);
  if (!satisfies_plucker(m, tol))
    throw Error(ErrorCode::PluckerViolated,
                "minors violate A12*A34 - A13*A24 + A14*A23 = 0 (defect " +
                    std::to_string(plucker_defect(m)) + ")");
}

// Matrix whose pivot columns form the identity and whose minors equal n,
// given n[pivot] == 1 and n consistent.
template <std::floating_point Real>
BasicMatrix2x4<Real> unit_pivot_template(const BasicMinorSextuple<Real>& n, MinorPair pivot) {
  using Row = typename BasicMatrix2x4<Real>::Row;
  switch (pivot) {
    case MinorPair::p12:
      return {Row{1, 0, -n.m23, -n.m24}, Row{0, 1, n.m13, n.m14}};
    case MinorPair::p13:
      return {Row{1, n.m23, 0, -n.m34}, Row{0, n.m12, 1, n.m14}};
    case MinorPair::p14:
      return {Row{1, n.m24, n.m34, 0}, Row{0, n.m12, n.m13, 1}};
    case MinorPair::p23:
      return {Row{n.m13, 1, 0, -n.m34}, Row{-n.m12, 0, 1, n.m24}};
    case MinorPair::p24:
      return {Row{n.m14, 1, n.m34, 0}, Row{-n.m12, 0, n.m23, 1}};
    case MinorPair::p34:
      return {Row{n.m14, n.m24, 1, 0}, Row{-n.m13, -n.m23, 0, 1}};
  }
  return {};
}

template <std::floating_point Real>
BasicMatrix2x4<Real> scale_first_row(const BasicMatrix2x4<Real>& a, Real factor) {
  auto r0 = a.row(0);
  for (Real& v : r0) v *= factor;
  return {r0, a.row(1)};
}

template <std::floating_point Real>
Real max_cross_determinant(const BasicMinorSextuple<Real>& a, const BasicMinorSextuple<Real>& b) {
  const auto u = a.values();
  const auto v = b.values();
  Real worst = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) worst = std::max(worst, std::abs(u[i] * v[j] - u[j] * v[i]));
  return worst;
}

}  // namespace detail

/// Matrix whose minors are m / m_pivot, hence linearly equivalent to every
/// matrix with minors m. Pivot columns hold the 2x2 identity.
/// Throws PivotTooSmall or PluckerViolated.
template <std::floating_point Real>
BasicMatrix2x4<Real> reconstruct_canonical(const BasicMinorSextuple<Real>& m, Pivot pivot,
                                           const BasicTolerance<Real>& tol = {}) {
  detail::require_reconstructible(m, pivot, tol);
  return detail::unit_pivot_template(m.scaled(Real(1) / m[pivot.pair]), pivot.pair);
}

/// Matrix whose minors are m itself: the canonical template with its first
/// row multiplied by m_pivot.
template <std::floating_point Real>
BasicMatrix2x4<Real> reconstruct_exact(const BasicMinorSextuple<Real>& m, Pivot pivot,
                                       const BasicTolerance<Real>& tol = {}) {
  return detail::scale_first_row(reconstruct_canonical(m, pivot, tol), m[pivot.pair]);
}

/// Largest 2x2 determinant of [a; b] relative to max|a| * max|b|. Zero iff
/// the sextuples are proportional.
template <std::floating_point Real>
Real proportionality_residual(const BasicMinorSextuple<Real>& a, const BasicMinorSextuple<Real>& b) {
  const Real denom = a.max_abs() * b.max_abs();
  if (denom == 0) return 0;
  return detail::max_cross_determinant(a, b) / denom;
}

/// Least-squares t with b ≈ t a.
template <std::floating_point Real>
Real proportionality_factor(const BasicMinorSextuple<Real>& a, const BasicMinorSextuple<Real>& b) {
  const auto u = a.values();
  const auto v = b.values();
  Real uv = 0, uu = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    uv += u[k] * v[k];
    uu += u[k] * u[k];
  }
  return uv / uu;
}

namespace detail {

template <std::floating_point Real>
void require_rank_two(const BasicMatrix2x4<Real>& a, const BasicMatrix2x4<Real>& b,
                      const BasicTolerance<Real>& tol) {
  if (rank(a, tol) != 2) throw Error(ErrorCode::RankDeficient, "matrix A does not have rank 2", "A");
  if (rank(b, tol) != 2) throw Error(ErrorCode::RankDeficient, "matrix B does not have rank 2", "B");
}

}  // namespace detail

/// True iff minors(a) and minors(b) are proportional with a nonzero factor.
/// Throws RankDeficient naming the offending operand.
template <std::floating_point Real>
bool are_equivalent(const BasicMatrix2x4<Real>& a, const BasicMatrix2x4<Real>& b,
                    const BasicTolerance<Real>& tol = {}) {
  detail::require_rank_two(a, b, tol);
  const auto ma = minors(a);
  const auto mb = minors(b);
  if (ma.all_below(tol.abs) || mb.all_below(tol.abs)) return false;
  return detail::max_cross_determinant(ma, mb) <= tol.scale(ma.max_abs() * mb.max_abs());
}

/// S with b = S a. Solved on the column pair with the largest |A_ij| and
/// verified on all four columns; throws NotEquivalent if that check fails.
template <std::floating_point Real>
BasicTransform2x2<Real> recover_transform(const BasicMatrix2x4<Real>& a, const BasicMatrix2x4<Real>& b,
                                          const BasicTolerance<Real>& tol = {}) {
  detail::require_rank_two(a, b, tol);
  const auto ma = minors(a);
  MinorPair best = MinorPair::p12;
  for (MinorPair p : kMinorPairs)
    if (std::abs(ma[p]) > std::abs(ma[best])) best = p;
  const auto [i, j] = columns_of(best);
  const Real d = ma[best];

  // S = B_ij adj(A_ij) / det(A_ij)
  const Real s11 = (b(0, i) * a(1, j) - b(0, j) * a(1, i)) / d;
  const Real s12 = (b(0, j) * a(0, i) - b(0, i) * a(0, j)) / d;
  const Real s21 = (b(1, i) * a(1, j) - b(1, j) * a(1, i)) / d;
  const Real s22 = (b(1, j) * a(0, i) - b(1, i) * a(0, j)) / d;

  const Real s_mag = std::max({std::abs(s11), std::abs(s12), std::abs(s21), std::abs(s22)});
  const Real bound = tol.scale(std::max(b.max_abs(), s_mag * a.max_abs()));
  for (int c = 0; c < 4; ++c) {
    const Real r0 = s11 * a(0, c) + s12 * a(1, c) - b(0, c);
    const Real r1 = s21 * a(0, c) + s22 * a(1, c) - b(1, c);
    if (std::abs(r0) > bound || std::abs(r1) > bound)
      throw Error(ErrorCode::NotEquivalent, "B is not S*A for any 2x2 S (column " +
                                                std::to_string(c + 1) + " residual too large)");
  }
  try {
    return BasicTransform2x2<Real>(s11, s12, s21, s22, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularTransform) throw;
    throw Error(ErrorCode::NotEquivalent, "B = S*A only for singular S");
  }
}

}  // namespace gr24
