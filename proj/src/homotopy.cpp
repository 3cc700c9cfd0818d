#include "robustab/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "robustab/error.hpp"

namespace robustab {

std::string_view to_string(CrossingOutcome o) noexcept {
  switch (o) {
    case CrossingOutcome::StableAll: return "STABLE_ALL";
    case CrossingOutcome::Crossing: return "CROSSING";
    case CrossingOutcome::NoCrossingUnstable: return "NO_CROSSING_UNSTABLE";
  }
  return "?";
}

PolynomialPath::PolynomialPath(std::string name, double a, double b, std::size_t order, Generator gen)
    : name_(std::move(name)), a_(a), b_(b), order_(order), gen_(std::move(gen)) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("PolynomialPath: need finite a < b");
  if (!gen_) throw InvalidArgument("PolynomialPath: empty generator");
}

RealPolynomial PolynomialPath::at(double t) const {
  if (!(t >= a_ && t <= b_)) {
    throw InvalidArgument("PolynomialPath::at: t = " + format_number(t) + " outside [" + format_number(a_) + ", " +
                          format_number(b_) + "]");
  }
  return gen_(t);
}

PolynomialPath PolynomialPath::convex(const RealPolynomial& from, const RealPolynomial& to) {
  const std::size_t order = std::max<std::size_t>(std::max(from.size(), to.size()), 1) - 1;
  return PolynomialPath("convex", 0.0, 1.0, order, [from, to](double t) { return convex_combine(from, to, t); });
}

PolynomialPath PolynomialPath::piecewise_linear(std::vector<double> breakpoints, std::vector<RealPolynomial> polys) {
  if (breakpoints.size() < 2 || breakpoints.size() != polys.size()) {
    throw InvalidArgument("piecewise_linear: need matching breakpoint and polynomial lists of length >= 2");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) throw InvalidArgument("piecewise_linear: breakpoints must increase");
  }
  std::size_t order = 0;
  for (const auto& p : polys) order = std::max(order, std::max<std::size_t>(p.size(), 1) - 1);
  const double a = breakpoints.front();
  const double b = breakpoints.back();
  return PolynomialPath("piecewise-linear", a, b, order, [bp = std::move(breakpoints), ps = std::move(polys)](double t) {
    auto it = std::upper_bound(bp.begin(), bp.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - bp.begin());
    if (hi >= bp.size()) return ps.back();
    if (hi == 0) return ps.front();
    const std::size_t lo = hi - 1;
    const double s = (t - bp[lo]) / (bp[hi] - bp[lo]);
    return convex_combine(ps[lo], ps[hi], std::clamp(s, 0.0, 1.0));
  });
}

namespace {

RealPolynomial faedo_member(double t) {
  const double u = 2.0 * t - 1.0;
  return RealPolynomial({1.0, u * u - 1.0});
}

}  // namespace

PolynomialPath PolynomialPath::faedo_loop() { return PolynomialPath("faedo-loop", 0.0, 1.0, 1, faedo_member); }

PolynomialPath PolynomialPath::faedo_half() { return PolynomialPath("faedo-half", 0.0, 0.5, 1, faedo_member); }

PolynomialPath PolynomialPath::kharitonov_proof(const IntervalPolynomial& box, const RealPolynomial& member) {
  const std::size_t n = box.order();
  if (!(box.hi()[n] > 0.0)) throw InvalidArgument("kharitonov_proof: box must have a_n^+ > 0");
  if (!box.contains(member)) throw InvalidArgument("kharitonov_proof: polynomial is not a member of the box");
  const KharitonovQuad quad = kharitonov_polys(box);
  for (std::size_t j = 0; j < 4; ++j) {
    if (kharitonov_takes_upper(j, n)) {
      PolynomialPath path = convex(quad.k[j], member);
      path.name_ = "kharitonov-proof/k" + std::to_string(j + 1);
      return path;
    }
  }
  throw InvalidArgument("kharitonov_proof: no Kharitonov polynomial of full degree");
}

std::optional<PolynomialPath> PolynomialPath::named(const std::string& name) {
  if (name == "faedo-loop") return faedo_loop();
  if (name == "faedo-half") return faedo_half();
  return std::nullopt;
}

SweepResult sweep_stability(const PolynomialPath& path, int steps) {
  if (steps < 2) throw InvalidArgument("sweep_stability: steps must be >= 2");
  SweepResult r;
  for (int k = 0; k <= steps; ++k) {
    const double t = k == steps ? path.b() : path.a() + (path.b() - path.a()) * k / steps;
    const RealPolynomial p = path.at(t);
    if (p.is_zero()) throw ZeroPolynomialError("sweep_stability: p_t vanishes at t = " + format_number(t));
    r.t.push_back(t);
    r.verdicts.push_back(is_hurwitz(p));
    if (!r.first_loss && !r.verdicts.back().stable()) r.first_loss = r.verdicts.size() - 1;
  }
  return r;
}

namespace {

bool stable_at(const PolynomialPath& path, double t) {
  const RealPolynomial p = path.at(t);
  return !p.is_zero() && is_hurwitz(p).stable();
}

}  // namespace

CrossingResult find_crossing(const PolynomialPath& path, double refine_tol) {
  CrossingOptions o;
  o.refine_tol = refine_tol;
  return find_crossing(path, o);
}

CrossingResult find_crossing(const PolynomialPath& path, const CrossingOptions& options) {
  if (!(options.refine_tol > 0.0)) throw InvalidArgument("find_crossing: refine_tol must be positive");
  if (options.steps < 2) throw InvalidArgument("find_crossing: steps must be >= 2");

  CrossingResult r;
  const int steps = options.steps;
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) {
    grid.push_back(k == steps ? path.b() : path.a() + (path.b() - path.a()) * k / steps);
  }

  r.hypotheses.leading_nonzero = true;
  std::optional<std::size_t> first_loss;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const RealPolynomial p = path.at(grid[k]);
    if (k + 1 < grid.size()) {
      const double lead = p[path.order()];
      if (!(std::abs(lead) > options.leading_tol * std::max(1.0, p.max_abs())) && r.hypotheses.leading_nonzero) {
        r.hypotheses.leading_nonzero = false;
        r.hypotheses.leading_vanishes_at = grid[k];
      }
    }
    const bool ok = !p.is_zero() && is_hurwitz(p).stable();
    if (k == 0) r.hypotheses.start_stable = ok;
    if (!ok && !first_loss) first_loss = k;
  }

  if (!first_loss) {
    r.outcome = CrossingOutcome::StableAll;
    return r;
  }
  r.first_unstable_t = grid[*first_loss];
  if (*first_loss == 0) {
    r.outcome = CrossingOutcome::NoCrossingUnstable;
    r.note = "start polynomial p_a is not Hurwitz stable; the boundary-crossing argument does not apply";
    return r;
  }

  double lo = grid[*first_loss - 1];
  double hi = grid[*first_loss];
  while (hi - lo > options.refine_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (stable_at(path, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  const RealPolynomial p_star = path.at(hi);
  CrossingWitness w;
  w.t_star = hi;
  w.t_stable = lo;
  if (p_star.is_zero()) {
    w.omega_star = 0.0;
    w.residual = 0.0;
    r.outcome = CrossingOutcome::Crossing;
    r.witness = w;
    r.note = "p_t vanishes identically at t*";
    return r;
  }

  std::optional<Complex> nearest;
  if (*p_star.degree() > 0) {
    for (const auto& root : all_roots(p_star).roots) {
      if (!nearest || std::abs(root.location.real()) < std::abs(nearest->real())) nearest = root.location;
    }
  }
  if (nearest) {
    w.omega_star = std::abs(nearest->imag());
    w.residual = std::abs(evaluate(p_star, Complex{0.0, w.omega_star}));
  } else {
    w.omega_star = 0.0;
    w.residual = std::abs(p_star[0]);
  }
  r.witness = w;

  if (w.residual <= options.crossing_tol * p_star.max_abs()) {
    r.outcome = CrossingOutcome::Crossing;
    return r;
  }
  r.outcome = CrossingOutcome::NoCrossingUnstable;
  std::ostringstream note;
  note << "stability is lost at t* = " << format_number(hi) << " without a root on the imaginary axis (residual "
       << format_number(w.residual) << ")";
  if (!r.hypotheses.leading_nonzero) {
    note << "; the leading coefficient a_" << path.order() << "(t) vanishes at t = "
         << format_number(*r.hypotheses.leading_vanishes_at)
         << " inside [a, b), so a root escaped through infinity instead of crossing the axis";
  }
  r.note = note.str();
  return r;
}

WronskianIdentity wronskian_identity_check(const std::array<double, 4>& alpha, const KharitonovQuad& quad, double omega) {
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0)) throw InvalidArgument("wronskian_identity_check: weights must be nonnegative");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("wronskian_identity_check: weights must sum to 1");

  const double a_hm = alpha[0] + alpha[3];
  const double a_hp = alpha[1] + alpha[2];
  const double a_gm = alpha[0] + alpha[1];
  const double a_gp = alpha[2] + alpha[3];
  const RealPolynomial h = a_hm * quad.h_minus + a_hp * quad.h_plus;
  const RealPolynomial g = a_gm * quad.g_minus + a_gp * quad.g_plus;

  WronskianIdentity out;
  out.lhs = evaluate(wronskian(h, g), omega);
  out.rhs = a_hm * a_gm * evaluate(wronskian(quad.h_minus, quad.g_minus), omega) +
            a_hm * a_gp * evaluate(wronskian(quad.h_minus, quad.g_plus), omega) +
            a_hp * a_gm * evaluate(wronskian(quad.h_plus, quad.g_minus), omega) +
            a_hp * a_gp * evaluate(wronskian(quad.h_plus, quad.g_plus), omega);
  return out;
}

}  // namespace robustab
