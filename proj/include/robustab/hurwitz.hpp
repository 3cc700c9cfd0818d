#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "robustab/polynomial.hpp"
#include "robustab/roots.hpp"

namespace robustab {

enum class Status { Stable, Unstable, Marginal, Degenerate };
enum class Method { Routh, Roots, Stodola };

std::string_view to_string(Status s) noexcept;
std::string_view to_string(Method m) noexcept;

/// Outcome of a single-polynomial stability test.
///
/// Unstable and Marginal verdicts from is_hurwitz always carry witness_root,
/// a root with Re >= -axis_tol. witness_index is the failing coefficient for
/// Stodola rejections or the Routh array row of a sign change / singularity.
struct StabilityVerdict {
  Status status = Status::Degenerate;
  Method method = Method::Routh;
  std::optional<Complex> witness_root;
  std::optional<std::size_t> witness_index;

  bool stable() const noexcept { return status == Status::Stable; }
};

inline constexpr double kDefaultAxisTol = 1e-9;

struct StodolaResult {
  bool pass = false;
  std::optional<std::size_t> failing_index;
};

/// Necessary condition: every coefficient up to the effective degree is
/// nonzero and has the sign of a_0. failing_index is the first one that is not.
StodolaResult stodola_precheck(const RealPolynomial& p);

/// Routh array test. Singular arrays (a zero leading element or a zero row)
/// give Degenerate with witness_index set to the offending row.
StabilityVerdict routh_hurwitz(const RealPolynomial& p);

/// Hurwitz stability: Stodola, then Routh, cross-checked against the roots.
/// Roots within axis_tol of the imaginary axis make the verdict Marginal.
/// Throws ZeroPolynomialError, and MethodDisagreement if the Routh array and
/// the root locations contradict one another outside the axis band.
StabilityVerdict is_hurwitz(const RealPolynomial& p, double axis_tol = kDefaultAxisTol);

}  // namespace robustab
