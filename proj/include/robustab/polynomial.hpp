#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robustab {

using Complex = std::complex<double>;

/// Real polynomial a_0 + a_1 z + ... + a_N z^N, coefficients stored ascending.
///
/// The stored coefficient list is never trimmed: an entry given as 0 stays in
/// place, so an interval member keeps its nominal order even when its leading
/// coefficient vanishes. The effective degree is computed against zero_tol,
/// which defaults to 1e-12 * max|a_i|.
class RealPolynomial {
 public:
  static constexpr double kDefaultRelativeZeroTol = 1e-12;

  RealPolynomial() = default;
  RealPolynomial(std::initializer_list<double> coeffs);
  explicit RealPolynomial(std::vector<double> coeffs);
  RealPolynomial(std::vector<double> coeffs, double zero_tol);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  const std::vector<double>& coeff_vector() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of z^i; zero beyond the stored length.
  double operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0.0; }

  double zero_tol() const noexcept { return zero_tol_; }
  double max_abs() const noexcept;

  /// Largest i with |a_i| > zero_tol, or nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept;
  bool is_zero() const noexcept { return !degree().has_value(); }

  /// Coefficient at the effective degree (0 for the zero polynomial).
  double leading() const noexcept;

  RealPolynomial negated() const;
  RealPolynomial scaled(double c) const;

  friend bool operator==(const RealPolynomial& a, const RealPolynomial& b) noexcept {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<double> coeffs_;
  double zero_tol_ = 0.0;
};

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
RealPolynomial operator*(double c, const RealPolynomial& p);

/// Horner evaluation at a complex point. Throws OverflowError when the result
/// is not finite.
Complex evaluate(const RealPolynomial& p, Complex z);

/// Horner evaluation at a real point.
double evaluate(const RealPolynomial& p, double x);

/// Horner evaluation over a batch of real points, using the fastest kernel
/// available on this CPU.
void evaluate_batch(const RealPolynomial& p, std::span<const double> xs, std::span<double> out);
std::vector<double> evaluate_batch(const RealPolynomial& p, std::span<const double> xs);

RealPolynomial derivative(const RealPolynomial& p);

/// W[h, g] = h g' - h' g.
RealPolynomial wronskian(const RealPolynomial& h, const RealPolynomial& g);

/// Real and imaginary parts of p on the imaginary axis.
struct ImagAxisSplit {
  RealPolynomial h;  ///< h(w) = Re p(iw) = a_0 - a_2 w^2 + a_4 w^4 - ...
  RealPolynomial g;  ///< g(w) = Im p(iw) = a_1 w - a_3 w^3 + a_5 w^5 - ...
};
ImagAxisSplit hg_split(const RealPolynomial& p);

/// Coefficientwise (1 - t) p + t q; t = 0 and t = 1 return p and q exactly.
RealPolynomial convex_combine(const RealPolynomial& p, const RealPolynomial& q, double t);

/// "10 + 46z + 40z^2 + 12z^3"; zero terms are omitted.
std::string to_string(const RealPolynomial& p, std::string_view var = "z");

/// Coefficients with trailing exact zeros removed (display helper).
std::vector<double> trimmed_coeffs(const RealPolynomial& p);

/// Shortest round-trip decimal form of a double.
std::string format_number(double x);

}  // namespace robustab
