#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "robustab/hurwitz.hpp"
#include "robustab/polynomial.hpp"

namespace robustab {

/// The family of real polynomials sum a_i z^i with a_i in [lo_i, hi_i],
/// i = 0..n. Requires lo_i <= hi_i and a leading interval that is not {0}.
class IntervalPolynomial {
 public:
  IntervalPolynomial(std::vector<double> lo, std::vector<double> hi);

  /// Point box at p.
  static IntervalPolynomial point(const RealPolynomial& p);

  std::size_t order() const noexcept { return lo_.size() - 1; }
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }

  bool degree_invariant() const noexcept { return lo_.back() * hi_.back() != 0.0; }
  bool degree_drop() const noexcept { return !degree_invariant(); }
  bool is_point() const noexcept { return lo_ == hi_; }

  /// Exact coefficientwise membership; coefficients past the order must be 0.
  bool contains(const RealPolynomial& p) const noexcept;

  /// The box -P = {-p : p in P}.
  IntervalPolynomial negated() const;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// The four Kharitonov polynomials and their imaginary-axis parts:
///   k1(iw) = h-(w) + i g-(w)    k2(iw) = h+(w) + i g-(w)
///   k3(iw) = h+(w) + i g+(w)    k4(iw) = h-(w) + i g+(w)
struct KharitonovQuad {
  std::array<RealPolynomial, 4> k;
  RealPolynomial h_minus;
  RealPolynomial h_plus;
  RealPolynomial g_minus;
  RealPolynomial g_plus;
};

/// Index i of k_j takes hi when the period-4 pattern entry is true. Patterns
/// (lo,lo,hi,hi), (hi,lo,lo,hi), (hi,hi,lo,lo), (lo,hi,hi,lo).
bool kharitonov_takes_upper(std::size_t j, std::size_t i) noexcept;

KharitonovQuad kharitonov_polys(const IntervalPolynomial& box);

/// Value-set rectangle of the box at a fixed frequency w >= 0.
struct RectangleSample {
  double omega = 0.0;
  std::array<Complex, 4> corners{};  ///< k_j(i w), j = 1..4
  double h_minus = 0.0;
  double h_plus = 0.0;
  double g_minus = 0.0;
  double g_plus = 0.0;
  bool contains_zero = false;
  /// Max relative gap between k_j(iw) and the corner built from h+-/g+-.
  double corner_discrepancy = 0.0;
  /// All lower bounds are nonnegative, the hypothesis under which every member
  /// value is known to lie inside the rectangle.
  bool nonnegative_lower_bounds = false;
};

RectangleSample rectangle(const IntervalPolynomial& box, double omega);
RectangleSample rectangle(const IntervalPolynomial& box, const KharitonovQuad& quad, double omega);

/// Rectangles on the uniform grid w_k = omega_max * k / steps (k = 0..steps)
/// plus refined samples at and between sign changes of h+- and g+-, sorted by w.
std::vector<RectangleSample> rectangle_sweep(const IntervalPolynomial& box, double omega_max, int steps);

/// The subset of rectangle_sweep whose rectangle contains the origin. Empty
/// output is evidence, not proof, of zero exclusion.
std::vector<RectangleSample> zero_exclusion_sweep(const IntervalPolynomial& box, double omega_max, int steps);

struct LowerBoundReport {
  bool pass = false;
  std::optional<std::size_t> violating_index;
};

/// Verifies lower-bound positivity for a box whose Kharitonov polynomials are
/// all stable with hi_n > 0: n = 0 and lo_0 > 0, or lo_n >= 0 and lo_j > 0
/// for j < n. Throws HypothesisNotMet when the premises fail.
LowerBoundReport lower_bound_check(const IntervalPolynomial& box);

struct KharitonovVerdict {
  StabilityVerdict verdict;  ///< overall; witness_root comes from the failing member
  std::array<StabilityVerdict, 4> per_poly{};
  KharitonovQuad quad;       ///< built from the sign-normalized box
  bool negated = false;      ///< box was replaced by -P to make hi_n > 0
  /// Index 0..3 of the first failing k_j; nullopt if stable or if the
  /// failing member is not a Kharitonov polynomial (constant boxes through 0).
  std::optional<std::size_t> failing_index;
  /// A member of the original box that is not Hurwitz stable.
  std::optional<RealPolynomial> witness_member;
};

/// Robust Hurwitz stability of the whole box from its four Kharitonov
/// polynomials. Degree drop needs no special handling.
KharitonovVerdict kharitonov_test(const IntervalPolynomial& box, double axis_tol = kDefaultAxisTol);

}  // namespace robustab
