#include "robustab/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "robustab/error.hpp"

namespace robustab {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Stable: return "STABLE";
    case Status::Unstable: return "UNSTABLE";
    case Status::Marginal: return "MARGINAL";
    case Status::Degenerate: return "DEGENERATE";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Routh: return "ROUTH";
    case Method::Roots: return "ROOTS";
    case Method::Stodola: return "STODOLA";
  }
  return "?";
}

StodolaResult stodola_precheck(const RealPolynomial& p) {
  const auto deg = p.degree();
  if (!deg) throw ZeroPolynomialError("stodola_precheck: polynomial is identically zero");
  if (!(std::abs(p[0]) > p.zero_tol())) return {false, 0};
  const double sign = p[0] > 0.0 ? 1.0 : -1.0;
  for (std::size_t i = 1; i <= *deg; ++i) {
    if (!(sign * p[i] > 0.0)) return {false, i};
  }
  return {true, std::nullopt};
}

StabilityVerdict routh_hurwitz(const RealPolynomial& p) {
  const auto deg = p.degree();
  if (!deg) throw ZeroPolynomialError("routh_hurwitz: polynomial is identically zero");
  const std::size_t n = *deg;
  StabilityVerdict v;
  v.method = Method::Routh;
  if (n == 0) {
    v.status = Status::Stable;
    return v;
  }

  // Descending coefficients, leading made positive.
  const double sign = p[n] > 0.0 ? 1.0 : -1.0;
  std::vector<double> d(n + 1);
  for (std::size_t i = 0; i <= n; ++i) d[i] = sign * p[n - i];

  const std::size_t width = n / 2 + 1;
  std::vector<double> prev2(width, 0.0);
  std::vector<double> prev1(width, 0.0);
  for (std::size_t j = 0; 2 * j <= n; ++j) prev2[j] = d[2 * j];
  for (std::size_t j = 0; 2 * j + 1 <= n; ++j) prev1[j] = d[2 * j + 1];

  constexpr double kCancel = 64.0 * std::numeric_limits<double>::epsilon();
  auto is_zero_row = [](const std::vector<double>& r) {
    return std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; });
  };

  if (is_zero_row(prev1) || prev1[0] == 0.0) {
    v.status = Status::Degenerate;
    v.witness_index = 1;
    return v;
  }
  if (prev1[0] < 0.0) {
    v.status = Status::Unstable;
    v.witness_index = 1;
    return v;
  }

  for (std::size_t row = 2; row <= n; ++row) {
    std::vector<double> next(width, 0.0);
    for (std::size_t j = 0; j + 1 < width; ++j) {
      // next_j = prev2_{j+1} - prev2_0 * prev1_{j+1} / prev1_0
      const double a = prev2[j + 1];
      const double b = prev2[0] * prev1[j + 1] / prev1[0];
      double value = a - b;
      if (std::abs(value) <= kCancel * std::max(std::abs(a), std::abs(b))) value = 0.0;
      next[j] = value;
    }
    if (is_zero_row(next) || next[0] == 0.0) {
      v.status = Status::Degenerate;
      v.witness_index = row;
      return v;
    }
    if (next[0] < 0.0) {
      v.status = Status::Unstable;
      v.witness_index = row;
      return v;
    }
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  v.status = Status::Stable;
  return v;
}

namespace {

/// Root with the largest real part.
Complex rightmost(const RootSet& roots) {
  Complex best = roots.roots.front().location;
  for (const auto& r : roots.roots) {
    if (r.location.real() > best.real()) best = r.location;
  }
  return best;
}

}  // namespace

StabilityVerdict is_hurwitz(const RealPolynomial& p, double axis_tol) {
  const auto deg = p.degree();
  if (!deg) throw ZeroPolynomialError("is_hurwitz: polynomial is identically zero");
  if (*deg == 0) return {Status::Stable, Method::Routh, std::nullopt, std::nullopt};

  const RootSet roots = all_roots(p);
  const Complex right = rightmost(roots);
  const Status by_roots = right.real() > axis_tol     ? Status::Unstable
                          : right.real() >= -axis_tol ? Status::Marginal
                                                      : Status::Stable;

  StabilityVerdict v;
  const StodolaResult stodola = stodola_precheck(p);
  if (!stodola.pass) {
    if (by_roots == Status::Stable) {
      throw MethodDisagreement("is_hurwitz: coefficient a_" + std::to_string(*stodola.failing_index) +
                               " fails the positivity test but every root lies left of the axis band");
    }
    v.status = by_roots;
    v.method = Method::Stodola;
    v.witness_index = stodola.failing_index;
    v.witness_root = right;
    return v;
  }

  const StabilityVerdict routh = routh_hurwitz(p);
  if (routh.status == Status::Degenerate) {
    v.status = by_roots;
    v.method = Method::Roots;
    v.witness_index = routh.witness_index;
  } else {
    if ((routh.status == Status::Stable && by_roots == Status::Unstable) ||
        (routh.status == Status::Unstable && by_roots == Status::Stable)) {
      throw MethodDisagreement("is_hurwitz: Routh array says " + std::string(to_string(routh.status)) +
                               " but the rightmost root has real part " + format_number(right.real()));
    }
    // Inside the axis band the root method decides.
    v.status = by_roots;
    v.method = by_roots == Status::Marginal ? Method::Roots : Method::Routh;
    v.witness_index = routh.witness_index;
  }
  if (v.status != Status::Stable) v.witness_root = right;
  return v;
}

}  // namespace robustab
