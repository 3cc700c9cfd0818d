#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <vector>

#include "robustab/polynomial.hpp"
#include "robustab/simd/horner.hpp"

using namespace robustab;
namespace simd = robustab::simd;

namespace {

struct IsaGuard {
  ~IsaGuard() { simd::reset_isa_override(); }
};

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Simd, ScalarMatchesHorner) {
  const std::vector<double> c{1, -2, 3};
  const std::vector<double> xs{0, 1, 2, -1.5};
  std::vector<double> out(xs.size());
  simd::horner_scalar(c, xs, out);
  for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_EQ(out[k], 1 - 2 * xs[k] + 3 * xs[k] * xs[k]);
}

TEST(Simd, EmptyCoefficientsGiveZero) {
  const std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> out(xs.size(), 5.0);
  simd::horner_scalar({}, xs, out);
  for (double v : out) EXPECT_EQ(v, 0.0);
  if (simd::avx2_supported()) {
    std::fill(out.begin(), out.end(), 5.0);
    simd::horner_avx2({}, xs, out);
    for (double v : out) EXPECT_EQ(v, 0.0);
  }
}

TEST(Simd, Avx2BitIdenticalToScalar) {
  if (!simd::avx2_supported()) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1001u}) {
    for (std::size_t deg : {0u, 1u, 2u, 5u, 12u}) {
      std::vector<double> c(deg + 1);
      for (auto& x : c) x = u(rng);
      std::vector<double> xs(n);
      for (auto& x : xs) x = u(rng);
      std::vector<double> a(n);
      std::vector<double> b(n);
      simd::horner_scalar(c, xs, a);
      simd::horner_avx2(c, xs, b);
      for (std::size_t k = 0; k < n; ++k) ASSERT_TRUE(bits_equal(a[k], b[k])) << "n=" << n << " deg=" << deg << " k=" << k;
    }
  }
}

TEST(Simd, SpecialValuesPropagateAlike) {
  if (!simd::avx2_supported()) GTEST_SKIP() << "no AVX2 on this CPU";
  const std::vector<double> c{1, 1e300, 1e300};
  const std::vector<double> xs{1e200, -1e200, 0.0, -0.0, 1e-320, 3, 4, 5, 6};
  std::vector<double> a(xs.size());
  std::vector<double> b(xs.size());
  simd::horner_scalar(c, xs, a);
  simd::horner_avx2(c, xs, b);
  for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_TRUE(bits_equal(a[k], b[k])) << k;
}

TEST(Simd, OverrideSelectsKernel) {
  IsaGuard guard;
  simd::set_isa_override(simd::Isa::Scalar);
  EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
  simd::set_isa_override(simd::Isa::Avx2);
  EXPECT_EQ(simd::active_isa(), simd::avx2_supported() ? simd::Isa::Avx2 : simd::Isa::Scalar);
  simd::reset_isa_override();
  EXPECT_EQ(simd::active_isa(), simd::avx2_supported() ? simd::Isa::Avx2 : simd::Isa::Scalar);
  EXPECT_EQ(simd::isa_name(simd::Isa::Scalar), "scalar");
}

TEST(Simd, BatchEvaluationAgreesAcrossIsas) {
  IsaGuard guard;
  const RealPolynomial p{21, 0, -38, 0, 1};
  std::vector<double> xs(257);
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = 0.04 * static_cast<double>(k);
  simd::set_isa_override(simd::Isa::Scalar);
  const auto a = evaluate_batch(p, xs);
  simd::set_isa_override(simd::Isa::Avx2);
  const auto b = evaluate_batch(p, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    EXPECT_TRUE(bits_equal(a[k], b[k])) << k;
    EXPECT_EQ(a[k], evaluate(p, xs[k])) << k;
  }
}
