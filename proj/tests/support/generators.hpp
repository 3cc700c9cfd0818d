#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "robustab/interval.hpp"
#include "robustab/polynomial.hpp"

namespace robustab::testing {

inline const IntervalPolynomial& example_box() {
  static const IntervalPolynomial box({10, 46, 38, 6, 0}, {21, 50, 40, 12, 1});
  return box;
}

// Product of linear and quadratic factors with roots in the open left half plane.
struct StablePoly {
  RealPolynomial p;
  std::vector<Complex> roots;
};

inline StablePoly random_stable(std::mt19937_64& rng, int min_degree = 1, int max_degree = 8) {
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  std::uniform_real_distribution<double> re(-3.0, -0.1);
  std::uniform_real_distribution<double> im(0.0, 3.0);
  std::uniform_real_distribution<double> lead(0.5, 4.0);
  std::bernoulli_distribution pair(0.5);
  const int n = deg(rng);
  RealPolynomial p{lead(rng)};
  std::vector<Complex> roots;
  int d = 0;
  while (d < n) {
    const double r = re(rng);
    if (d + 2 <= n && pair(rng)) {
      const double w = im(rng);
      p = p * RealPolynomial{r * r + w * w, -2.0 * r, 1.0};
      roots.emplace_back(r, w);
      roots.emplace_back(r, -w);
      d += 2;
    } else {
      p = p * RealPolynomial{-r, 1.0};
      roots.emplace_back(r, 0.0);
      d += 1;
    }
  }
  return {p, roots};
}

inline RealPolynomial random_poly(std::mt19937_64& rng, int degree, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = u(rng);
  return RealPolynomial(std::move(c));
}

// n in 1..5, lo in [-2, 5], width in [0, 3]. Box k gets lo[n] = 0 whenever k % 10 < 3.
inline IntervalPolynomial random_box(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> deg(1, 5);
  std::uniform_real_distribution<double> lo_d(-2.0, 5.0);
  std::uniform_real_distribution<double> width(0.0, 3.0);
  const auto n = static_cast<std::size_t>(deg(rng));
  std::vector<double> lo(n + 1);
  std::vector<double> hi(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    lo[i] = lo_d(rng);
    hi[i] = lo[i] + width(rng);
  }
  if (k % 10 < 3) {
    lo[n] = 0.0;
    do {
      hi[n] = width(rng);
    } while (hi[n] == 0.0);
  }
  while (lo[n] == 0.0 && hi[n] == 0.0) hi[n] = width(rng);
  return IntervalPolynomial(std::move(lo), std::move(hi));
}

inline RealPolynomial random_member(std::mt19937_64& rng, const IntervalPolynomial& box) {
  std::vector<double> c(box.order() + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uniform_real_distribution<double> u(box.lo()[i], box.hi()[i]);
    c[i] = box.lo()[i] == box.hi()[i] ? box.lo()[i] : std::clamp(u(rng), box.lo()[i], box.hi()[i]);
  }
  return RealPolynomial(std::move(c));
}

// Independent evaluation by explicit powers.
inline Complex power_sum(const RealPolynomial& p, Complex z) {
  Complex s = 0.0;
  Complex zi = 1.0;
  for (double c : p.coeffs()) {
    s += c * zi;
    zi *= z;
  }
  return s;
}

}  // namespace robustab::testing
