#include "robustab/simd/horner.hpp"

namespace robustab::simd {

void horner_scalar(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept {
  const std::size_t n = xs.size();
  if (coeffs.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    return;
  }
  const std::size_t top = coeffs.size() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = xs[k];
    double acc = coeffs[top];
    for (std::size_t i = top; i-- > 0;) {
      double prod = acc * x;
      acc = prod + coeffs[i];
    }
    out[k] = acc;
  }
}

}  // namespace robustab::simd
