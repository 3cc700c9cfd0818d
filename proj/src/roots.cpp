#include "robustab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

namespace robustab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct HornerResult {
  Complex value;
  Complex slope;
  double abs_bound;  ///< sum |c_i| |z|^i, the scale of the rounding error
};

HornerResult horner_with_derivative(const std::vector<double>& c, Complex z) {
  const double rz = std::abs(z);
  Complex v{c.back(), 0.0};
  Complex d{0.0, 0.0};
  double b = std::abs(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
    b = b * rz + std::abs(c[i]);
  }
  return {v, d, b};
}

/// Newton step p(z)/p'(z), via the reversed polynomial outside the unit disc.
/// `converged` reports whether the residual is at the rounding floor.
Complex newton_ratio(const std::vector<double>& c, const std::vector<double>& rev, Complex z, bool& converged) {
  const double m = static_cast<double>(c.size() - 1);
  const double floor_factor = 2.0 * m * kEps;
  if (std::abs(z) <= 1.0) {
    const auto r = horner_with_derivative(c, z);
    converged = std::abs(r.value) <= floor_factor * r.abs_bound;
    return r.value / r.slope;
  }
  const Complex y = 1.0 / z;
  const auto r = horner_with_derivative(rev, y);
  converged = std::abs(r.value) <= floor_factor * r.abs_bound;
  return 1.0 / (y * (m - y * r.slope / r.value));
}

/// Starting points on circles with radii from the upper convex hull of
/// (i, log|c_i|).
std::vector<Complex> initial_guesses(const std::vector<double>& c) {
  const std::size_t m = c.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i <= m; ++i) {
    if (c[i] != 0.0) pts.emplace_back(static_cast<double>(i), std::log(std::abs(c[i])));
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const double cross = (a.first - o.first) * (p.second - o.second) - (a.second - o.second) * (p.first - o.first);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<Complex> z;
  z.reserve(m);
  constexpr double kOffset = 0.4;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto [i0, l0] = hull[e];
    const auto [i1, l1] = hull[e + 1];
    const auto count = static_cast<std::size_t>(i1 - i0);
    const double radius = std::exp((l0 - l1) / (i1 - i0));
    const double start = two_pi * static_cast<double>(z.size()) / static_cast<double>(m);
    for (std::size_t l = 0; l < count; ++l) {
      const double angle = two_pi * static_cast<double>(l) / static_cast<double>(count) + start + kOffset;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

/// Enforce exact conjugate symmetry: each root is paired with the nearest
/// conjugate of another root and the pair is averaged; a root that is its own
/// nearest conjugate partner is made real.
void symmetrize(std::vector<Complex>& z) {
  const std::size_t n = z.size();
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k]) continue;
    used[k] = true;
    const double self_dist = 2.0 * std::abs(z[k].imag());
    std::size_t best = n;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(z[j] - std::conj(z[k]));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < n && best_dist < self_dist) {
      const Complex mean = 0.5 * (z[k] + std::conj(z[best]));
      z[k] = mean;
      z[best] = std::conj(mean);
      used[best] = true;
    } else if (std::abs(z[k].imag()) <= 1e-7 * (1.0 + std::abs(z[k]))) {
      z[k] = {z[k].real(), 0.0};
    }
  }
}

bool root_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::size_t RootSet::total_multiplicity() const noexcept {
  std::size_t s = 0;
  for (const auto& r : roots) s += static_cast<std::size_t>(r.multiplicity);
  return s;
}

double RootSet::max_real_part() const noexcept {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots) m = std::max(m, r.location.real());
  return m;
}

std::vector<Complex> RootSet::expanded() const {
  std::vector<Complex> out;
  for (const auto& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.location);
  return out;
}

std::vector<Complex> aberth_roots(const RealPolynomial& p, const AberthOptions& options) {
  const auto deg = p.degree();
  if (!deg) throw ZeroPolynomialError("all_roots: polynomial is identically zero");
  std::vector<Complex> result;
  if (*deg == 0) return result;

  std::size_t zeros = 0;
  while (p[zeros] == 0.0) ++zeros;
  result.assign(zeros, Complex{0.0, 0.0});

  std::vector<double> c(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros),
                        p.coeffs().begin() + static_cast<std::ptrdiff_t>(*deg) + 1);
  const std::size_t m = c.size() - 1;
  if (m == 0) return result;
  if (m == 1) {
    result.emplace_back(-c[0] / c[1], 0.0);
    return result;
  }
  std::vector<double> rev(c.rbegin(), c.rend());

  std::vector<Complex> z = initial_guesses(c);
  std::vector<bool> done(m, false);
  bool all_done = false;
  for (int it = 0; it < options.max_iter && !all_done; ++it) {
    all_done = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (done[k]) continue;
      bool at_floor = false;
      const Complex ratio = newton_ratio(c, rev, z[k], at_floor);
      if (at_floor) {
        done[k] = true;
        continue;
      }
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        // Stationary point of p: nudge off it.
        z[k] += Complex{1e-8, 1e-8} * (1.0 + std::abs(z[k]));
        all_done = false;
        continue;
      }
      Complex repulsion{0.0, 0.0};
      for (std::size_t j = 0; j < m; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= options.step_tol * (1.0 + std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
  }
  if (!std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
    result.insert(result.end(), z.begin(), z.end());
    throw NonConvergence("all_roots: Aberth iteration did not converge in " + std::to_string(options.max_iter) +
                             " iterations",
                         std::move(result));
  }
  symmetrize(z);
  result.insert(result.end(), z.begin(), z.end());
  return result;
}

RootSet all_roots(const RealPolynomial& p, const AberthOptions& options) {
  std::vector<Complex> z = aberth_roots(p, options);
  std::sort(z.begin(), z.end(), root_less);

  // Single-linkage clustering within cluster_radius * (1 + |z|).
  const std::size_t n = z.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  auto find = [&label](std::size_t i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = options.cluster_radius * (1.0 + std::max(std::abs(z[i]), std::abs(z[j])));
      if (std::abs(z[i] - z[j]) <= r) label[find(j)] = find(i);
    }
  }
  RootSet set;
  set.source_degree = *p.degree();
  std::vector<std::size_t> slot(n, n);
  std::vector<Complex> sums;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = set.roots.size();
      set.roots.push_back({Complex{0.0, 0.0}, 0});
      sums.emplace_back(0.0, 0.0);
    }
    sums[slot[root]] += z[i];
    set.roots[slot[root]].multiplicity += 1;
  }
  for (std::size_t k = 0; k < set.roots.size(); ++k) {
    set.roots[k].location = sums[k] / static_cast<double>(set.roots[k].multiplicity);
  }
  std::sort(set.roots.begin(), set.roots.end(),
            [](const Root& a, const Root& b) { return root_less(a.location, b.location); });
  return set;
}

RootMatching match_roots(const RootSet& a, const RootSet& b) {
  struct Candidate {
    double distance;
    std::size_t ia;
    std::size_t ib;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(a.roots.size() * b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
      candidates.push_back({std::abs(a.roots[i].location - b.roots[j].location), i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });

  std::vector<int> capacity_a(a.roots.size());
  std::vector<int> remaining_b(b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) capacity_a[i] = a.roots[i].multiplicity;
  for (std::size_t j = 0; j < b.roots.size(); ++j) remaining_b[j] = b.roots[j].multiplicity;

  RootMatching m;
  for (const auto& c : candidates) {
    while (capacity_a[c.ia] > 0 && remaining_b[c.ib] > 0) {
      m.pairs.push_back({c.ia, c.ib, c.distance});
      --capacity_a[c.ia];
      --remaining_b[c.ib];
    }
  }
  for (std::size_t j = 0; j < b.roots.size(); ++j) {
    for (int u = 0; u < remaining_b[j]; ++u) m.escaped.push_back(j);
  }
  return m;
}

ContinuityReport root_continuity_check(const RealPolynomial& q, double epsilon, int trials, double delta,
                                       std::uint64_t rng_seed) {
  if (q.is_zero()) throw ZeroPolynomialError("root_continuity_check: q must be nonzero");
  if (!(epsilon > 0.0)) throw InvalidArgument("root_continuity_check: epsilon must be positive");
  if (!(delta > 0.0)) throw InvalidArgument("root_continuity_check: delta must be positive");
  if (trials < 0) throw InvalidArgument("root_continuity_check: trials must be nonnegative");

  const RootSet base = all_roots(q);
  // Strictly inside the open delta ball.
  const double radius = std::nextafter(delta, 0.0);

  ContinuityReport report;
  report.trials = trials;
  report.min_escaped_magnitude = std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(rng_seed + static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> c(q.coeffs().begin(), q.coeffs().end());
    for (double& a : c) a += radius * unit(rng);
    const RealPolynomial p(std::move(c));

    std::ostringstream why;
    bool ok = true;
    RootSet moved;
    try {
      moved = all_roots(p);
    } catch (const ZeroPolynomialError&) {
      ok = false;
      why << "trial " << t << ": perturbed polynomial vanished";
    }
    if (ok) {
      const RootMatching match = match_roots(base, moved);
      std::vector<int> near_count(base.roots.size(), 0);
      for (const auto& pr : match.pairs) {
        report.worst_matched_distance = std::max(report.worst_matched_distance, pr.distance);
        if (pr.distance < epsilon) ++near_count[pr.index_a];
      }
      for (std::size_t i = 0; i < base.roots.size() && ok; ++i) {
        if (near_count[i] != base.roots[i].multiplicity) {
          ok = false;
          why << "trial " << t << ": root " << format_number(base.roots[i].location.real()) << (base.roots[i].location.imag() < 0 ? "" : "+")
              << format_number(base.roots[i].location.imag()) << "i attracted " << near_count[i] << " of "
              << base.roots[i].multiplicity << " roots within epsilon";
        }
      }
      for (std::size_t j : match.escaped) {
        const double mag = std::abs(moved.roots[j].location);
        ++report.escaped_roots;
        report.min_escaped_magnitude = std::min(report.min_escaped_magnitude, mag);
        if (ok && !(mag > 1.0 / epsilon)) {
          ok = false;
          why << "trial " << t << ": escaped root of magnitude " << format_number(mag) << " is within 1/epsilon";
        }
      }
    }
    if (ok) {
      ++report.passed;
    } else {
      ++report.failed;
      if (report.first_failure.empty()) report.first_failure = why.str();
    }
  }
  return report;
}

}  // namespace robustab
