#include "robustab/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "robustab/error.hpp"
#include "robustab/simd/horner.hpp"

namespace robustab {

namespace {

void require_finite(const std::vector<double>& coeffs) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i])) {
      throw InvalidArgument("coefficient a_" + std::to_string(i) + " is not finite");
    }
  }
}

double max_abs_of(const std::vector<double>& coeffs) {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

RealPolynomial::RealPolynomial(std::initializer_list<double> coeffs) : RealPolynomial(std::vector<double>(coeffs)) {}

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_);
  zero_tol_ = kDefaultRelativeZeroTol * max_abs_of(coeffs_);
}

RealPolynomial::RealPolynomial(std::vector<double> coeffs, double zero_tol) : coeffs_(std::move(coeffs)), zero_tol_(zero_tol) {
  require_finite(coeffs_);
  if (!(zero_tol >= 0.0) || !std::isfinite(zero_tol)) {
    throw InvalidArgument("zero_tol must be a finite nonnegative number");
  }
}

double RealPolynomial::max_abs() const noexcept { return max_abs_of(coeffs_); }

std::optional<std::size_t> RealPolynomial::degree() const noexcept {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (std::abs(coeffs_[i]) > zero_tol_) return i;
  }
  return std::nullopt;
}

double RealPolynomial::leading() const noexcept {
  const auto d = degree();
  return d ? coeffs_[*d] : 0.0;
}

RealPolynomial RealPolynomial::negated() const {
  std::vector<double> c(coeffs_.size());
  // + 0.0 turns -0 into +0.
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](double a) { return -a + 0.0; });
  return RealPolynomial(std::move(c), zero_tol_);
}

RealPolynomial RealPolynomial::scaled(double factor) const {
  std::vector<double> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [factor](double a) { return factor * a; });
  return RealPolynomial(std::move(c));
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.size() == 0 || b.size() == 0) return RealPolynomial{};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double c, const RealPolynomial& p) { return p.scaled(c); }

Complex evaluate(const RealPolynomial& p, Complex z) {
  const auto c = p.coeffs();
  if (c.empty()) return {0.0, 0.0};
  Complex acc{c.back(), 0.0};
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
    throw OverflowError("polynomial value overflows at z = (" + format_number(z.real()) + ", " +
                        format_number(z.imag()) + ")");
  }
  return acc;
}

double evaluate(const RealPolynomial& p, double x) {
  const auto c = p.coeffs();
  if (c.empty()) return 0.0;
  double acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  if (!std::isfinite(acc)) throw OverflowError("polynomial value overflows at x = " + format_number(x));
  return acc;
}

void evaluate_batch(const RealPolynomial& p, std::span<const double> xs, std::span<double> out) {
  if (xs.size() != out.size()) throw InvalidArgument("evaluate_batch: output span size mismatch");
  simd::horner(p.coeffs(), xs, out);
}

std::vector<double> evaluate_batch(const RealPolynomial& p, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  simd::horner(p.coeffs(), xs, out);
  return out;
}

RealPolynomial derivative(const RealPolynomial& p) {
  if (p.size() <= 1) return RealPolynomial{0.0};
  std::vector<double> c(p.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(i + 1) * p[i + 1];
  return RealPolynomial(std::move(c));
}

RealPolynomial wronskian(const RealPolynomial& h, const RealPolynomial& g) {
  // w_k = sum over i < j, i + j = k + 1 of (j - i)(h_i g_j - h_j g_i)
  const std::size_t n = std::max(h.size(), g.size());
  if (n < 2) return RealPolynomial(std::vector<double>(1, 0.0));
  std::vector<double> w(2 * n - 3, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; 2 * i < k + 1; ++i) {
      const std::size_t j = k + 1 - i;
      if (j >= n) continue;
      s += static_cast<double>(j - i) * (h[i] * g[j] - h[j] * g[i]);
    }
    w[k] = s;
  }
  return RealPolynomial(std::move(w));
}

ImagAxisSplit hg_split(const RealPolynomial& p) {
  // i^k cycles 1, i, -1, -i.
  std::vector<double> h(std::max<std::size_t>(p.size(), 1), 0.0);
  std::vector<double> g(std::max<std::size_t>(p.size(), 1), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double a = p[k];
    switch (k % 4) {
      case 0: h[k] = a; break;
      case 1: g[k] = a; break;
      case 2: h[k] = -a + 0.0; break;
      case 3: g[k] = -a + 0.0; break;
    }
  }
  return {RealPolynomial(std::move(h)), RealPolynomial(std::move(g))};
}

RealPolynomial convex_combine(const RealPolynomial& p, const RealPolynomial& q, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("convex_combine: t must lie in [0, 1]");
  const std::size_t n = std::max(p.size(), q.size());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t == 0.0) {
      c[i] = p[i];
    } else if (t == 1.0) {
      c[i] = q[i];
    } else {
      c[i] = (1.0 - t) * p[i] + t * q[i];
    }
  }
  return RealPolynomial(std::move(c));
}

std::vector<double> trimmed_coeffs(const RealPolynomial& p) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  std::string s(buf, end);
  return s == "-0" ? "0" : s;
}

std::string to_string(const RealPolynomial& p, std::string_view var) {
  const auto c = trimmed_coeffs(p);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = c[i];
    if (a == 0.0 && !(c.size() == 1)) continue;
    const double mag = std::abs(a);
    if (first) {
      if (a < 0) os << '-';
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1.0) os << format_number(mag);
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace robustab
