#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robustab/hurwitz.hpp"
#include "robustab/interval.hpp"
#include "robustab/polynomial.hpp"

namespace robustab {

/// A continuous one-parameter family p_t, t in [a, b], with real coefficient
/// functions a_j(t) of fixed nominal order.
class PolynomialPath {
 public:
  using Generator = std::function<RealPolynomial(double)>;

  PolynomialPath(std::string name, double a, double b, std::size_t order, Generator gen);

  /// (1 - t) from + t to on [0, 1].
  static PolynomialPath convex(const RealPolynomial& from, const RealPolynomial& to);

  /// Piecewise-linear interpolation between polynomials at increasing breakpoints.
  static PolynomialPath piecewise_linear(std::vector<double> breakpoints, std::vector<RealPolynomial> polys);

  /// a_0(t) = 1, a_1(t) = (2t - 1)^2 - 1 on [0, 1]. Degree drops at both ends.
  static PolynomialPath faedo_loop();
  /// The same coefficient functions on [0, 1/2]; degree drops only at t = 0.
  static PolynomialPath faedo_half();

  /// Family from a Kharitonov polynomial of full degree to a box member, the
  /// path used to show that an unstable member forces an axis crossing.
  static PolynomialPath kharitonov_proof(const IntervalPolynomial& box, const RealPolynomial& member);

  /// Built-in family by name ("faedo-loop", "faedo-half"); nullopt if unknown.
  static std::optional<PolynomialPath> named(const std::string& name);

  const std::string& name() const noexcept { return name_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t order() const noexcept { return order_; }

  /// p_t; t outside [a, b] throws InvalidArgument.
  RealPolynomial at(double t) const;
  /// Coefficient a_n(t) of the nominal order n.
  double leading_coefficient(double t) const { return at(t)[order_]; }

 private:
  std::string name_;
  double a_;
  double b_;
  std::size_t order_;
  Generator gen_;
};

struct SweepResult {
  std::vector<double> t;
  std::vector<StabilityVerdict> verdicts;
  std::optional<std::size_t> first_loss;  ///< first grid index that is not Stable
};

/// is_hurwitz on t_k = a + (b - a) k / steps, k = 0..steps. A vanishing p_t
/// raises ZeroPolynomialError naming t.
SweepResult sweep_stability(const PolynomialPath& path, int steps);

struct CrossingWitness {
  double t_star = 0.0;
  double omega_star = 0.0;
  double residual = 0.0;      ///< |p_{t*}(i w*)|
  double t_stable = 0.0;      ///< stable side of the final bisection bracket
};

struct HypothesisReport {
  bool start_stable = false;
  /// a_n(t) stayed above tolerance on every grid point of [a, b).
  bool leading_nonzero = false;
  std::optional<double> leading_vanishes_at;  ///< first grid t in [a, b) where it failed
};

enum class CrossingOutcome { StableAll, Crossing, NoCrossingUnstable };

std::string_view to_string(CrossingOutcome o) noexcept;

struct CrossingResult {
  CrossingOutcome outcome = CrossingOutcome::StableAll;
  std::optional<CrossingWitness> witness;
  HypothesisReport hypotheses;
  std::optional<double> first_unstable_t;  ///< grid point where stability was first lost
  std::string note;
};

struct CrossingOptions {
  int steps = 200;
  double refine_tol = 1e-10;
  double crossing_tol = 1e-8;        ///< residual bound, relative to the coefficient scale of p_{t*}
  double leading_tol = 1e-12;
};

/// Localize the first loss of stability along the path and report the
/// imaginary-axis root there. When the leading coefficient stays nonzero on
/// [a, b) and p_a is stable the outcome is never NoCrossingUnstable.
CrossingResult find_crossing(const PolynomialPath& path, const CrossingOptions& options = {});
CrossingResult find_crossing(const PolynomialPath& path, double refine_tol);

struct WronskianIdentity {
  double lhs = 0.0;  ///< W[h, g](w) for the alpha-weighted h and g
  double rhs = 0.0;  ///< four-term bilinear expansion in W[h+-, g+-](w)
};

/// h = (a1 + a4) h- + (a2 + a3) h+ and g = (a1 + a2) g- + (a3 + a4) g+.
/// alpha must be nonnegative and sum to 1 within 1e-12.
WronskianIdentity wronskian_identity_check(const std::array<double, 4>& alpha, const KharitonovQuad& quad, double omega);

}  // namespace robustab
