#include "robustab/simd/horner.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define ROBUSTAB_HAVE_AVX2_TU 1
#endif

namespace robustab::simd {

#if defined(ROBUSTAB_HAVE_AVX2_TU)

void horner_avx2(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept {
  const std::size_t n = xs.size();
  if (coeffs.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    return;
  }
  const std::size_t top = coeffs.size() - 1;
  const double* x_ptr = xs.data();
  double* out_ptr = out.data();

  std::size_t k = 0;
  // Two independent accumulators per iteration.
  for (; k + 8 <= n; k += 8) {
    const __m256d x0 = _mm256_loadu_pd(x_ptr + k);
    const __m256d x1 = _mm256_loadu_pd(x_ptr + k + 4);
    __m256d acc0 = _mm256_set1_pd(coeffs[top]);
    __m256d acc1 = acc0;
    for (std::size_t i = top; i-- > 0;) {
      const __m256d c = _mm256_set1_pd(coeffs[i]);
      acc0 = _mm256_add_pd(_mm256_mul_pd(acc0, x0), c);
      acc1 = _mm256_add_pd(_mm256_mul_pd(acc1, x1), c);
    }
    _mm256_storeu_pd(out_ptr + k, acc0);
    _mm256_storeu_pd(out_ptr + k + 4, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d x0 = _mm256_loadu_pd(x_ptr + k);
    __m256d acc0 = _mm256_set1_pd(coeffs[top]);
    for (std::size_t i = top; i-- > 0;) {
      acc0 = _mm256_add_pd(_mm256_mul_pd(acc0, x0), _mm256_set1_pd(coeffs[i]));
    }
    _mm256_storeu_pd(out_ptr + k, acc0);
  }
  if (k < n) {
    horner_scalar(coeffs, xs.subspan(k), out.subspan(k));
  }
}

#else

void horner_avx2(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept {
  horner_scalar(coeffs, xs, out);
}

#endif

}  // namespace robustab::simd
