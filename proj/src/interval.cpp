#include "robustab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include "robustab/error.hpp"

namespace robustab {

IntervalPolynomial::IntervalPolynomial(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty()) throw InvalidIntervalPolynomial("interval polynomial needs at least one coefficient interval");
  if (lo_.size() != hi_.size()) {
    throw InvalidIntervalPolynomial("lower and upper bound lists differ in length (" + std::to_string(lo_.size()) +
                                    " vs " + std::to_string(hi_.size()) + ")");
  }
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) {
      throw InvalidIntervalPolynomial("interval a_" + std::to_string(i) + " has a non-finite bound");
    }
    if (lo_[i] > hi_[i]) {
      throw InvalidIntervalPolynomial("interval a_" + std::to_string(i) + " has lower bound " + format_number(lo_[i]) +
                                      " above upper bound " + format_number(hi_[i]));
    }
  }
  if (lo_.back() == 0.0 && hi_.back() == 0.0) {
    throw InvalidIntervalPolynomial("leading interval a_" + std::to_string(order()) + " is {0}");
  }
}

IntervalPolynomial IntervalPolynomial::point(const RealPolynomial& p) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  return IntervalPolynomial(c, c);
}

bool IntervalPolynomial::contains(const RealPolynomial& p) const noexcept {
  for (std::size_t i = 0; i < std::max(p.size(), lo_.size()); ++i) {
    const double a = p[i];
    if (i >= lo_.size()) {
      if (a != 0.0) return false;
    } else if (a < lo_[i] || a > hi_[i]) {
      return false;
    }
  }
  return true;
}

IntervalPolynomial IntervalPolynomial::negated() const {
  std::vector<double> lo(lo_.size());
  std::vector<double> hi(hi_.size());
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    lo[i] = -hi_[i] + 0.0;
    hi[i] = -lo_[i] + 0.0;
  }
  return IntervalPolynomial(std::move(lo), std::move(hi));
}

bool kharitonov_takes_upper(std::size_t j, std::size_t i) noexcept {
  static constexpr bool kUpper[4][4] = {
      {false, false, true, true},   // k1
      {true, false, false, true},   // k2
      {true, true, false, false},   // k3
      {false, true, true, false},   // k4
  };
  return kUpper[j % 4][i % 4];
}

KharitonovQuad kharitonov_polys(const IntervalPolynomial& box) {
  KharitonovQuad q;
  const std::size_t len = box.order() + 1;
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<double> c(len);
    for (std::size_t i = 0; i < len; ++i) c[i] = kharitonov_takes_upper(j, i) ? box.hi()[i] : box.lo()[i];
    q.k[j] = RealPolynomial(std::move(c));
  }
  auto s1 = hg_split(q.k[0]);
  q.h_minus = std::move(s1.h);
  q.g_minus = std::move(s1.g);
  q.h_plus = hg_split(q.k[1]).h;
  q.g_plus = hg_split(q.k[2]).g;
  return q;
}

namespace {

double coefficient_scale(const IntervalPolynomial& box, double omega) {
  double s = 0.0;
  for (std::size_t i = box.order() + 1; i-- > 0;) {
    s = s * std::abs(omega) + std::max(std::abs(box.lo()[i]), std::abs(box.hi()[i]));
  }
  return s;
}

RectangleSample make_sample(const IntervalPolynomial& box, const KharitonovQuad& quad, double omega, double hm,
                            double hp, double gm, double gp) {
  RectangleSample s;
  s.omega = omega;
  s.h_minus = hm;
  s.h_plus = hp;
  s.g_minus = gm;
  s.g_plus = gp;
  const Complex iw{0.0, omega};
  for (std::size_t j = 0; j < 4; ++j) s.corners[j] = evaluate(quad.k[j], iw);
  const std::array<Complex, 4> expected = {Complex{hm, gm}, Complex{hp, gm}, Complex{hp, gp}, Complex{hm, gp}};
  const double scale = std::max(coefficient_scale(box, omega), std::numeric_limits<double>::min());
  for (std::size_t j = 0; j < 4; ++j) {
    s.corner_discrepancy = std::max(s.corner_discrepancy, std::abs(s.corners[j] - expected[j]) / scale);
  }
  s.contains_zero = hm <= 0.0 && 0.0 <= hp && gm <= 0.0 && 0.0 <= gp;
  s.nonnegative_lower_bounds = std::all_of(box.lo().begin(), box.lo().end(), [](double a) { return a >= 0.0; });
  return s;
}

}  // namespace

RectangleSample rectangle(const IntervalPolynomial& box, const KharitonovQuad& quad, double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidArgument("rectangle: omega must be finite and >= 0");
  return make_sample(box, quad, omega, evaluate(quad.h_minus, omega), evaluate(quad.h_plus, omega),
                     evaluate(quad.g_minus, omega), evaluate(quad.g_plus, omega));
}

RectangleSample rectangle(const IntervalPolynomial& box, double omega) {
  return rectangle(box, kharitonov_polys(box), omega);
}

std::vector<RectangleSample> rectangle_sweep(const IntervalPolynomial& box, double omega_max, int steps) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw InvalidArgument("rectangle_sweep: omega_max must be > 0");
  if (steps < 2) throw InvalidArgument("rectangle_sweep: steps must be >= 2");

  const KharitonovQuad quad = kharitonov_polys(box);
  const auto count = static_cast<std::size_t>(steps) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = omega_max * static_cast<double>(k) / static_cast<double>(steps);
  }
  const std::array<const RealPolynomial*, 4> bounds = {&quad.h_minus, &quad.h_plus, &quad.g_minus, &quad.g_plus};
  std::array<std::vector<double>, 4> values;
  for (std::size_t b = 0; b < 4; ++b) values[b] = evaluate_batch(*bounds[b], grid);

  std::vector<RectangleSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(make_sample(box, quad, grid[k], values[0][k], values[1][k], values[2][k], values[3][k]));
  }

  // Extra samples at sign changes of the bounds and between them.
  std::vector<double> extra;
  for (std::size_t k = 0; k + 1 < count; ++k) {
    std::vector<double> cuts;
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(values[b][k] * values[b][k + 1] < 0.0)) continue;
      double lo = grid[k];
      double hi = grid[k + 1];
      const bool lo_negative = values[b][k] < 0.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = evaluate(*bounds[b], mid);
        if (v == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((v < 0.0) == lo_negative) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      cuts.push_back(lo);
      if (hi != lo) cuts.push_back(hi);
    }
    if (cuts.empty()) continue;
    cuts.push_back(grid[k]);
    cuts.push_back(grid[k + 1]);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      if (c > 0 && c + 1 < cuts.size()) extra.push_back(cuts[c]);
      if (c + 1 < cuts.size()) {
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        if (mid > cuts[c] && mid < cuts[c + 1]) extra.push_back(mid);
      }
    }
  }
  for (double w : extra) out.push_back(rectangle(box, quad, w));
  std::sort(out.begin(), out.end(), [](const RectangleSample& a, const RectangleSample& b) { return a.omega < b.omega; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RectangleSample& a, const RectangleSample& b) { return a.omega == b.omega; }),
            out.end());
  return out;
}

std::vector<RectangleSample> zero_exclusion_sweep(const IntervalPolynomial& box, double omega_max, int steps) {
  auto all = rectangle_sweep(box, omega_max, steps);
  std::vector<RectangleSample> flagged;
  std::copy_if(all.begin(), all.end(), std::back_inserter(flagged), [](const RectangleSample& s) { return s.contains_zero; });
  return flagged;
}

namespace {

StabilityVerdict verdict_or_zero(const RealPolynomial& p, double axis_tol) {
  if (p.is_zero()) {
    // Every point is a root of the zero polynomial; the origin serves as witness.
    return {Status::Unstable, Method::Roots, Complex{0.0, 0.0}, std::nullopt};
  }
  return is_hurwitz(p, axis_tol);
}

}  // namespace

LowerBoundReport lower_bound_check(const IntervalPolynomial& box) {
  const std::size_t n = box.order();
  if (!(box.hi()[n] > 0.0)) throw HypothesisNotMet("lower_bound_check: requires a_n^+ > 0");
  const KharitonovQuad quad = kharitonov_polys(box);
  for (std::size_t j = 0; j < 4; ++j) {
    if (!verdict_or_zero(quad.k[j], kDefaultAxisTol).stable()) {
      throw HypothesisNotMet("lower_bound_check: k" + std::to_string(j + 1) + " is not Hurwitz stable");
    }
  }
  if (n == 0) {
    if (box.lo()[0] > 0.0) return {true, std::nullopt};
    return {false, 0};
  }
  if (!(box.lo()[n] >= 0.0)) return {false, n};
  for (std::size_t j = 0; j < n; ++j) {
    if (!(box.lo()[j] > 0.0)) return {false, j};
  }
  return {true, std::nullopt};
}

KharitonovVerdict kharitonov_test(const IntervalPolynomial& box, double axis_tol) {
  KharitonovVerdict out;
  out.negated = !(box.hi().back() > 0.0);
  const IntervalPolynomial norm = out.negated ? box.negated() : box;
  out.quad = kharitonov_polys(norm);
  const auto to_original = [&out](const RealPolynomial& p) { return out.negated ? p.negated() : p; };

  for (std::size_t j = 0; j < 4; ++j) out.per_poly[j] = verdict_or_zero(out.quad.k[j], axis_tol);

  if (norm.order() == 0) {
    // Constant family: stable iff 0 is outside [a_0^-, a_0^+].
    const double lo = norm.lo()[0];
    if (lo > 0.0) {
      out.verdict = {Status::Stable, Method::Roots, std::nullopt, std::nullopt};
    } else {
      out.verdict = {Status::Unstable, Method::Roots, Complex{0.0, 0.0}, std::nullopt};
      out.witness_member = RealPolynomial(std::vector<double>{0.0});
      if (lo == 0.0) out.failing_index = 0;
    }
    return out;
  }

  std::optional<std::size_t> worst;
  for (std::size_t j = 0; j < 4; ++j) {
    const Status s = out.per_poly[j].status;
    if (s == Status::Stable) continue;
    if (!worst || (s == Status::Unstable && out.per_poly[*worst].status != Status::Unstable)) worst = j;
  }
  if (!worst) {
    out.verdict = {Status::Stable, Method::Routh, std::nullopt, std::nullopt};
    return out;
  }
  out.failing_index = worst;
  out.verdict = out.per_poly[*worst];
  out.witness_member = to_original(out.quad.k[*worst]);
  return out;
}

}  // namespace robustab
