#pragma once

/// \file incomplete_gamma.hpp
/// \brief Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/log_gamma.hpp>
#include <lzero/precision.hpp>

#include <algorithm>
#include <cmath>

namespace lzero {

namespace detail {

inline constexpr int kIncompleteGammaMaxTerms = 100000;

/// sum_{n >= 0} x^n / (s)_{n+1}, together with the largest term seen.
struct LowerSeries {
  Complex sum;
  Real largest;
};

inline LowerSeries lower_gamma_series(const Complex& s, const Real& x) {
  Complex term = Complex(1) / s;
  Complex sum = term;
  Real largest = abs(term);
  const Real eps = epsilon();
  for (int n = 1; n < kIncompleteGammaMaxTerms; ++n) {
    term = term * x / (s + static_cast<long>(n));
    sum += term;
    const Real size = abs(term);
    if (size > largest) largest = size;
    // Terms decay geometrically once n exceeds x - |s|.
    if (n > x.to_double() && size < eps * abs(sum)) return {sum, largest};
  }
  throw PrecisionError("upper_incomplete_gamma: power series did not converge");
}

/// Continued fraction for e^x x^{-s} Gamma(s, x), modified Lentz.
inline Complex upper_gamma_fraction(const Complex& s, const Real& x) {
  const Real tiny = pow10(-(static_cast<long>(lzero::working_bits()) / 2));
  Complex b = x + 1L - s;
  Complex c = Complex(1) / Complex(tiny);
  Complex d = Complex(1) / b;
  Complex h = d;
  const Real eps = epsilon();
  for (int i = 1; i < kIncompleteGammaMaxTerms; ++i) {
    const Complex an = -(Complex(Real(static_cast<long>(i))) * (static_cast<long>(i) - s));
    b += Complex(2);
    d = an * d + b;
    if (abs(d) < tiny) d = Complex(tiny);
    c = b + an / c;
    if (abs(c) < tiny) c = Complex(tiny);
    d = Complex(1) / d;
    const Complex delta = d * c;
    h *= delta;
    if (abs(delta - Complex(1)) < eps) return h;
  }
  throw PrecisionError("upper_incomplete_gamma: continued fraction did not converge");
}

/// Gamma(-m, x) for integer m >= 0: E_1(x) by its power series, then the recurrence
/// Gamma(s, x) = (Gamma(s + 1, x) - x^s e^{-x}) / s downwards.
inline Real upper_gamma_nonpositive_integer(long m, const Real& x) {
  Real sum(0);
  Real term(1);
  const Real eps = epsilon();
  for (long n = 1; n < kIncompleteGammaMaxTerms; ++n) {
    term = -(term * x) / n;
    const Real contribution = term / n;
    sum += contribution;
    if (n > x.to_double() && abs(contribution) < eps * (abs(sum) + 1L)) break;
  }
  Real value = -euler_gamma() - log(x) - sum;
  const Real e_minus_x = exp(-x);
  for (long k = 1; k <= m; ++k) {
    const Real x_pow = exp(-(log(x) * k)) * e_minus_x;
    value = (value - x_pow) / (-k);
  }
  return value;
}

}  // namespace detail

/// Gamma(s, x) = integral_x^inf t^{s-1} e^{-t} dt for x > 0.
/// Uses the power series of the lower function when x < |s| + 10 and a continued
/// fraction otherwise. Cancellation in the series is measured and the evaluation is
/// repeated at higher precision when it would eat into the target.
inline Complex upper_incomplete_gamma(const Complex& s, const Real& x, const PrecisionContext& ctx) {
  if (x <= 0L) throw DomainError("upper_incomplete_gamma: x must be positive");
  if (s.im.is_zero() && s.re <= 0L && s.re.is_integer()) {
    const double xd0 = x.to_double();
    WorkingPrecision wp(digits_to_bits(ctx.working_digits(magnitude_digits(std::exp(xd0)) + 2)));
    return Complex(detail::upper_gamma_nonpositive_integer(-s.re.to_long(), at_working(x)));
  }
  const double xd = x.to_double();
  const double abs_s = std::abs(s.to_double());
  // The phase t log x of x^s and the size of log Gamma(s) must both be resolved.
  const int base = magnitude_digits(std::fabs(s.im.to_double()) * std::log(xd + 1.0)) +
                   magnitude_digits(abs_s * std::log(abs_s + 2.0)) + 2;

  if (xd >= abs_s + 10.0) {
    WorkingPrecision wp(digits_to_bits(ctx.working_digits(base)));
    const Complex sw = at_working(s);
    const Real xw = at_working(x);
    return exp(sw * log(xw) - xw) * detail::upper_gamma_fraction(sw, xw);
  }

  int extra = base;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const int wd = ctx.working_digits(extra);
    WorkingPrecision wp(digits_to_bits(wd));
    const Complex sw = at_working(s);
    const Real xw = at_working(x);
    const Complex prefactor = exp(sw * log(xw) - xw);
    const detail::LowerSeries series = detail::lower_gamma_series(sw, xw);
    const Complex lower = prefactor * series.sum;
    const Complex full = exp(detail::log_gamma_raw(sw, wd));
    const Complex result = full - lower;

    const Real size = abs(result);
    if (size.is_zero()) throw PrecisionError("upper_incomplete_gamma: result cancelled to zero");
    const Real peak = abs(prefactor) * series.largest + abs(full);
    const int lost = std::max(0, static_cast<int>(std::ceil((log10(peak) - log10(size)).to_double())));
    if (lost <= extra - base) return result;
    extra = base + lost + 2;
  }
  throw PrecisionError("upper_incomplete_gamma: cancellation persists after precision increase");
}

}  // namespace lzero
