#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "robustab/error.hpp"
#include "robustab/roots.hpp"
#include "support/generators.hpp"

using namespace robustab;

namespace {

// Distance from each expected root to the nearest computed root.
double worst_gap(const std::vector<Complex>& expected, const std::vector<Complex>& got) {
  double worst = 0.0;
  for (const auto& e : expected) {
    double best = HUGE_VAL;
    for (const auto& g : got) best = std::min(best, std::max(std::abs(e.real() - g.real()), std::abs(e.imag() - g.imag())));
    worst = std::max(worst, best);
  }
  return worst;
}

void expect_roots_2dp(const RealPolynomial& p, const std::vector<Complex>& printed) {
  const RootSet rs = all_roots(p);
  ASSERT_EQ(rs.total_multiplicity(), printed.size());
  EXPECT_LE(worst_gap(printed, rs.expanded()), 0.005);
  EXPECT_LE(worst_gap(rs.expanded(), printed), 0.005);
}

}  // namespace

TEST(Roots, PrintedExampleValues) {
  expect_roots_2dp(RealPolynomial{10, 46, 40, 12}, {{-0.28, 0}, {-1.53, 0.81}, {-1.53, -0.81}});
  expect_roots_2dp(RealPolynomial{21, 46, 38, 12, 1}, {{-7.87, 0}, {-2.13, 0}, {-1.00, 0.51}, {-1.00, -0.51}});
  expect_roots_2dp(RealPolynomial{21, 50, 38, 6, 1}, {{-2.23, 5.05}, {-2.23, -5.05}, {-0.77, 0.31}, {-0.77, -0.31}});
  expect_roots_2dp(RealPolynomial{10, 50, 40, 6}, {{-5.10, 0}, {-1.32, 0}, {-0.25, 0}});
}

TEST(Roots, Trivial) {
  const RootSet rs = all_roots(RealPolynomial{1, 0, 1});
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(rs.roots[0].location.real(), 0.0, 1e-14);
  EXPECT_NEAR(rs.roots[0].location.imag(), -1.0, 1e-14);
  EXPECT_NEAR(rs.roots[1].location.imag(), 1.0, 1e-14);
  EXPECT_TRUE(all_roots(RealPolynomial{4}).empty());
  EXPECT_THROW(all_roots(RealPolynomial{0, 0}), ZeroPolynomialError);
  const RootSet z = all_roots(RealPolynomial{0, 0, 2, 2});
  ASSERT_EQ(z.roots.size(), 2u);
  EXPECT_EQ(z.roots[1].location, Complex(0, 0));
  EXPECT_EQ(z.roots[1].multiplicity, 2);
}

TEST(Roots, SortedAndClustered) {
  // (z + 1)^2 (z - 2)
  const RealPolynomial p = RealPolynomial{1, 2, 1} * RealPolynomial{-2, 1};
  const RootSet rs = all_roots(p);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_EQ(rs.roots[0].multiplicity, 2);
  EXPECT_NEAR(rs.roots[0].location.real(), -1.0, 1e-6);
  EXPECT_NEAR(rs.roots[1].location.real(), 2.0, 1e-10);
  EXPECT_EQ(rs.total_multiplicity(), 3u);
  EXPECT_NEAR(rs.max_real_part(), 2.0, 1e-10);
  for (std::size_t i = 1; i < rs.roots.size(); ++i) {
    EXPECT_GT(std::abs(rs.roots[i].location - rs.roots[i - 1].location), 1e-6);
  }
  // a triple root splits by about eps^(1/3), wider than the cluster radius
  const RootSet triple = all_roots(RealPolynomial{1, 3, 3, 1});
  EXPECT_EQ(triple.total_multiplicity(), 3u);
  for (const auto& z : triple.expanded()) EXPECT_NEAR(std::abs(z + 1.0), 0.0, 1e-4);
}

TEST(Roots, DegreeDropUsesEffectiveDegree) {
  const RootSet rs = all_roots(RealPolynomial{2, 1, 0, 0});
  EXPECT_EQ(rs.source_degree, 1u);
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_EQ(rs.roots[0].location, Complex(-2, 0));
}

TEST(Roots, ResidualsConjugacyAndCount) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int k = 0; k < 300; ++k) {
    const RealPolynomial p = robustab::testing::random_poly(rng, deg(rng), 10);
    const RootSet rs = all_roots(p);
    ASSERT_EQ(rs.total_multiplicity(), *p.degree());
    const auto zs = rs.expanded();
    const double d = static_cast<double>(*p.degree());
    for (const auto& z : zs) {
      EXPECT_LE(std::abs(evaluate(p, z)), 1e-8 * p.max_abs() * std::pow(std::max(1.0, std::abs(z)), d));
    }
    std::vector<Complex> conj;
    for (const auto& z : zs) conj.push_back(std::conj(z));
    EXPECT_LE(worst_gap(conj, zs), 1e-8);
  }
}

TEST(Roots, RecoversConstructedRoots) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 200; ++k) {
    const auto s = robustab::testing::random_stable(rng);
    const RootSet rs = all_roots(s.p);
    EXPECT_LE(worst_gap(s.roots, rs.expanded()), 1e-5);
  }
}

TEST(MatchRoots, Fixtures) {
  const RootSet a = all_roots(RealPolynomial{1, 1});
  const RootMatching same = match_roots(a, a);
  ASSERT_EQ(same.pairs.size(), 1u);
  EXPECT_EQ(same.pairs[0].distance, 0.0);
  EXPECT_TRUE(same.escaped.empty());

  const double eps = 1e-6;
  const RootSet b = all_roots(RealPolynomial{1, 1, eps});
  const RootMatching m = match_roots(a, b);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_LE(m.pairs[0].distance, 1e-5);
  ASSERT_EQ(m.escaped.size(), 1u);
  const double big = std::abs(b.roots[m.escaped[0]].location);
  EXPECT_NEAR(big, (1 + std::sqrt(1 - 4 * eps)) / (2 * eps), 1e-3);

  const RootSet dbl = all_roots(RealPolynomial{1, 2, 1});
  const RootSet split = all_roots(RealPolynomial{1.0001, 2, 1});
  const RootMatching md = match_roots(dbl, split);
  ASSERT_EQ(md.pairs.size(), 2u);
  for (const auto& pr : md.pairs) EXPECT_LE(pr.distance, 0.02);
}

TEST(Continuity, Fixtures) {
  const auto lin = root_continuity_check(RealPolynomial{1, 1}, 0.1, 100, 1e-4, 5);
  EXPECT_EQ(lin.passed, 100);
  const auto k1 = root_continuity_check(RealPolynomial{10, 46, 40, 12}, 0.05, 100, 1e-6, 5);
  EXPECT_EQ(k1.passed, 100);
  EXPECT_LE(k1.worst_matched_distance, 0.05);
  const auto bad = root_continuity_check(RealPolynomial{1, 1}, 0.1, 100, 10.0, 5);
  EXPECT_GT(bad.failed, 0);
  EXPECT_FALSE(bad.first_failure.empty());
}

TEST(Continuity, EscapedRootsBeyondInverseEpsilon) {
  // a zero slot above the leading coefficient lets a root run off to infinity
  const auto r = root_continuity_check(RealPolynomial{1, 1, 0}, 0.1, 50, 1e-4, 9);
  EXPECT_EQ(r.passed, 50);
  EXPECT_GT(r.escaped_roots, 0);
  EXPECT_GT(r.min_escaped_magnitude, 10.0);
}

TEST(Continuity, ShrinkingDeltaNeverWorsens) {
  for (const RealPolynomial& q : {RealPolynomial{10, 46, 40, 12}, RealPolynomial{10, 50, 40, 6}}) {
    double prev = HUGE_VAL;
    for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const auto r = root_continuity_check(q, 0.05, 50, delta, 77);
      EXPECT_LE(r.worst_matched_distance, prev);
      prev = r.worst_matched_distance;
    }
  }
}

TEST(Continuity, Deterministic) {
  const auto a = root_continuity_check(RealPolynomial{21, 46, 38, 12, 1}, 0.05, 20, 1e-6, 123);
  const auto b = root_continuity_check(RealPolynomial{21, 46, 38, 12, 1}, 0.05, 20, 1e-6, 123);
  EXPECT_EQ(a.worst_matched_distance, b.worst_matched_distance);
}
