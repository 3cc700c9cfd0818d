#include <atomic>

#include "robustab/simd/horner.hpp"

namespace robustab::simd {

namespace {

// -1: no override; otherwise the Isa value.
std::atomic<int> g_override{-1};

Isa detect() noexcept { return avx2_supported() ? Isa::Avx2 : Isa::Scalar; }

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

bool avx2_supported() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

Isa active_isa() noexcept {
  static const Isa detected = detect();
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced < 0) return detected;
  const auto isa = static_cast<Isa>(forced);
  if (isa == Isa::Avx2 && !avx2_supported()) return Isa::Scalar;
  return isa;
}

void set_isa_override(Isa isa) noexcept { g_override.store(static_cast<int>(isa), std::memory_order_relaxed); }

void reset_isa_override() noexcept { g_override.store(-1, std::memory_order_relaxed); }

void horner(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept {
  if (active_isa() == Isa::Avx2) {
    horner_avx2(coeffs, xs, out);
  } else {
    horner_scalar(coeffs, xs, out);
  }
}

}  // namespace robustab::simd
