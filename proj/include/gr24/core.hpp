#pragma once

// Real 2x4 matrices, their six 2x2 minors, the Plücker relation and the
// linear system describing the row span.
//
// Columns are 0-based in code. Documentation and messages use the 1-based
// names a_{ri} and A_ij (i < j), so A_12 is the minor on columns 0 and 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gr24/error.hpp"
#include "gr24/tolerance.hpp"

namespace gr24 {

/// Names one minor by its column pair. Enumerator order is the storage order
/// of a minor sextuple.
enum class MinorPair : std::uint8_t { p12, p13, p14, p23, p24, p34 };

inline constexpr std::array<MinorPair, 6> kMinorPairs{
    MinorPair::p12, MinorPair::p13, MinorPair::p14,
    MinorPair::p23, MinorPair::p24, MinorPair::p34};

struct ColumnPair {
  int first;
  int second;
};

constexpr std::size_t index_of(MinorPair p) { return static_cast<std::size_t>(p); }

constexpr ColumnPair columns_of(MinorPair p) {
  constexpr std::array<ColumnPair, 6> table{
      ColumnPair{0, 1}, ColumnPair{0, 2}, ColumnPair{0, 3},
      ColumnPair{1, 2}, ColumnPair{1, 3}, ColumnPair{2, 3}};
  return table[index_of(p)];
}

constexpr std::string_view label_of(MinorPair p) {
  constexpr std::array<std::string_view, 6> labels{"12", "13", "14", "23", "24", "34"};
  return labels[index_of(p)];
}

inline std::optional<MinorPair> parse_minor_pair(std::string_view text) {
  for (MinorPair p : kMinorPairs)
    if (label_of(p) == text) return p;
  return std::nullopt;
}

template <std::floating_point Real>
class BasicMatrix2x4 {
 public:
  using Row = std::array<Real, 4>;

  BasicMatrix2x4() = default;

  /// Throws NonFiniteValue if any entry is NaN or infinite.
  BasicMatrix2x4(const Row& first, const Row& second) : rows_{first, second} {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c)
        if (!std::isfinite(rows_[r][c]))
          throw Error(ErrorCode::NonFiniteValue,
                      "matrix entry a_" + std::to_string(r + 1) + std::to_string(c + 1) +
                          " is not finite");
  }

  Real operator()(int r, int c) const { return rows_[r][c]; }
  const Row& row(int r) const { return rows_[r]; }

  Real max_abs() const {
    Real m = 0;
    for (const Row& row : rows_)
      for (Real v : row) m = std::max(m, std::abs(v));
    return m;
  }

  BasicMatrix2x4 with_rows_swapped() const { return {rows_[1], rows_[0]}; }

  friend bool operator==(const BasicMatrix2x4&, const BasicMatrix2x4&) = default;

 private:
  std::array<Row, 2> rows_{};
};

/// The six minors (A12, A13, A14, A23, A24, A34) in storage order.
/// Reversed-index minors follow from A_ji = -A_ij; see minor_value.
template <std::floating_point Real>
struct BasicMinorSextuple {
  Real m12 = 0, m13 = 0, m14 = 0, m23 = 0, m24 = 0, m34 = 0;

  static BasicMinorSextuple from_values(const std::array<Real, 6>& v) {
    for (std::size_t k = 0; k < 6; ++k)
      if (!std::isfinite(v[k]))
        throw Error(ErrorCode::NonFiniteValue,
                    "minor m" + std::string(label_of(kMinorPairs[k])) + " is not finite");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }

  std::array<Real, 6> values() const { return {m12, m13, m14, m23, m24, m34}; }

  Real operator[](MinorPair p) const { return values()[index_of(p)]; }

  Real max_abs() const {
    Real m = 0;
    for (Real v : values()) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_below(Real threshold) const { return max_abs() <= threshold; }

  BasicMinorSextuple scaled(Real factor) const {
    return {m12 * factor, m13 * factor, m14 * factor,
            m23 * factor, m24 * factor, m34 * factor};
  }

  friend bool operator==(const BasicMinorSextuple&, const BasicMinorSextuple&) = default;
};

/// Coordinates in which the Plücker relation reads x1 x2 + x3 x4 + x5 x6 = 0.
/// x[0..5] hold x1..x6.
template <std::floating_point Real>
struct BasicPluckerVector {
  std::array<Real, 6> x{};

  Real& operator[](std::size_t k) { return x[k]; }
  Real operator[](std::size_t k) const { return x[k]; }

  friend BasicPluckerVector operator+(const BasicPluckerVector& a, const BasicPluckerVector& b) {
    BasicPluckerVector r;
    for (std::size_t k = 0; k < 6; ++k) r.x[k] = a.x[k] + b.x[k];
    return r;
  }
  friend BasicPluckerVector operator-(const BasicPluckerVector& a, const BasicPluckerVector& b) {
    BasicPluckerVector r;
    for (std::size_t k = 0; k < 6; ++k) r.x[k] = a.x[k] - b.x[k];
    return r;
  }
  friend BasicPluckerVector operator*(Real s, const BasicPluckerVector& a) {
    BasicPluckerVector r;
    for (std::size_t k = 0; k < 6; ++k) r.x[k] = s * a.x[k];
    return r;
  }

  friend bool operator==(const BasicPluckerVector&, const BasicPluckerVector&) = default;
};

using Matrix2x4 = BasicMatrix2x4<double>;
using MinorSextuple = BasicMinorSextuple<double>;
using PluckerVector = BasicPluckerVector<double>;

// The only place the reorder and the sign x4 = -A24 live.
template <std::floating_point Real>
BasicPluckerVector<Real> to_plucker(const BasicMinorSextuple<Real>& m) {
  return {{m.m12, m.m34, m.m13, -m.m24, m.m14, m.m23}};
}

template <std::floating_point Real>
BasicMinorSextuple<Real> from_plucker(const BasicPluckerVector<Real>& v) {
  return {v[0], v[2], v[4], v[5], -v[3], v[1]};
}

/// Minor on columns (i, j), 0-based, any order: a_{1i} a_{2j} - a_{1j} a_{2i}.
template <std::floating_point Real>
Real minor(const BasicMatrix2x4<Real>& a, int i, int j) {
  return a(0, i) * a(1, j) - a(0, j) * a(1, i);
}

template <std::floating_point Real>
BasicMinorSextuple<Real> minors(const BasicMatrix2x4<Real>& a) {
  return {minor(a, 0, 1), minor(a, 0, 2), minor(a, 0, 3),
          minor(a, 1, 2), minor(a, 1, 3), minor(a, 2, 3)};
}

/// A_ij for 0-based columns in any order, derived from the stored sextuple.
template <std::floating_point Real>
Real minor_value(const BasicMinorSextuple<Real>& m, int i, int j) {
  if (i == j) return 0;
  const bool reversed = i > j;
  const int lo = reversed ? j : i;
  const int hi = reversed ? i : j;
  Real v = 0;
  for (MinorPair p : kMinorPairs) {
    const ColumnPair c = columns_of(p);
    if (c.first == lo && c.second == hi) v = m[p];
  }
  return reversed ? -v : v;
}

/// 2 when some minor exceeds abs + rel * (max |entry|)^2, 0 when every entry
/// is at most abs, 1 otherwise.
template <std::floating_point Real>
int rank(const BasicMatrix2x4<Real>& a, const BasicTolerance<Real>& tol = {}) {
  const Real entry = a.max_abs();
  if (entry <= tol.abs) return 0;
  return minors(a).max_abs() > tol.scale(entry * entry) ? 2 : 1;
}

/// Signed left side of A12 A34 - A13 A24 + A14 A23 = 0.
template <std::floating_point Real>
Real plucker_defect(const BasicMinorSextuple<Real>& m) {
  return m.m12 * m.m34 - m.m13 * m.m24 + m.m14 * m.m23;
}

template <std::floating_point Real>
bool satisfies_plucker(const BasicMinorSextuple<Real>& m, const BasicTolerance<Real>& tol = {}) {
  const Real mag = m.max_abs();
  return std::abs(plucker_defect(m)) <= tol.scale(mag * mag);
}

/// Residuals of the four equations whose joint vanishing says x lies in the
/// row span of any matrix with minors m (each is a 3x3 determinant of the
/// matrix with x appended, expanded along x).
template <std::floating_point Real>
std::array<Real, 4> span_residuals(const BasicMinorSextuple<Real>& m, std::span<const Real, 4> x) {
  return {m.m23 * x[0] - m.m13 * x[1] + m.m12 * x[2],
          m.m24 * x[0] - m.m14 * x[1] + m.m12 * x[3],
          m.m34 * x[0] - m.m14 * x[2] + m.m13 * x[3],
          m.m34 * x[1] - m.m24 * x[2] + m.m23 * x[3]};
}

/// Throws DegenerateInput if every minor is at most tol.abs, PluckerViolated
/// if m is not the minor sextuple of any matrix.
template <std::floating_point Real>
bool span_contains(const BasicMinorSextuple<Real>& m, std::span<const Real, 4> x,
                   const BasicTolerance<Real>& tol = {}) {
  if (m.all_below(tol.abs))
    throw Error(ErrorCode::DegenerateInput, "all minors vanish; the row span is undefined");
  if (!satisfies_plucker(m, tol))
    throw Error(ErrorCode::PluckerViolated, "minors do not describe a rank-2 matrix");
  Real x_mag = 0;
  for (Real v : x) x_mag = std::max(x_mag, std::abs(v));
  const Real bound = tol.scale(m.max_abs() * x_mag);
  for (Real r : span_residuals(m, x))
    if (std::abs(r) > bound) return false;
  return true;
}

template <std::floating_point Real>
bool span_contains(const BasicMinorSextuple<Real>& m, const std::array<Real, 4>& x,
                   const BasicTolerance<Real>& tol = {}) {
  return span_contains(m, std::span<const Real, 4>(x), tol);
}

}  // namespace gr24
