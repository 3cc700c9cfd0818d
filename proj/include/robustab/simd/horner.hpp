#pragma once

// Batched Horner evaluation of a real polynomial at many real abscissae.
//
// Every frequency sweep in the library (rectangle bounds, Wronskian sampling)
// reduces to this loop. The scalar kernel is the reference; the AVX2 kernel
// evaluates four abscissae per lane group with separate multiply and add so
// its results are bit-identical to the scalar kernel.

#include <cstddef>
#include <span>
#include <string_view>

namespace robustab::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Reference kernel: out[k] = sum_i coeffs[i] * xs[k]^i.
void horner_scalar(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept;

/// Only callable when avx2_supported() is true.
void horner_avx2(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept;

bool avx2_supported() noexcept;

/// Best kernel for the running CPU, honouring any override.
Isa active_isa() noexcept;

/// Force a kernel (tests and benchmarks). Requests for an unsupported ISA fall
/// back to Scalar; reset_isa_override() restores detection.
void set_isa_override(Isa isa) noexcept;
void reset_isa_override() noexcept;

/// Dispatching entry point. xs and out must have equal length.
void horner(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) noexcept;

}  // namespace robustab::simd
