#pragma once

/// \file log_gamma.hpp
/// \brief Principal branch of log Gamma for complex arguments.
///
/// The principal branch is the continuation of the real log Gamma on (0, inf) to the
/// plane cut along (-inf, 0]. It satisfies log Gamma(z+1) = log Gamma(z) + log z with
/// the principal log everywhere off the cut, which is what the upward shift below uses.

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/bernoulli.hpp>
#include <lzero/precision.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lzero {

namespace detail {

/// Stirling series at the current working precision; requires |w| large (see shift below).
inline Complex log_gamma_stirling(const Complex& w) {
  const Real half_log_2pi = log(pi() * 2L) / 2L;
  Complex result = (w - Complex(Real(1) / 2L)) * log(w) - w + half_log_2pi;
  const Complex inv = Complex(1) / w;
  const Complex inv2 = inv * inv;
  Complex power = inv;  // w^{1-2m}
  const Real eps = epsilon();
  const Real scale = abs(result) + 1L;
  Real previous(0);
  for (std::size_t m = 1;; ++m) {
    // B_{2m} / (2m (2m-1)) = (2m-2)! * B_{2m}/(2m)!
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), 2 * m - 2);
    const Real coeff(bernoulli_scaled_even(m) * mpq_class(fact));
    Complex term = power * coeff;
    const Real size = abs(term);
    result += term;
    if (size < eps * scale) break;
    if (m > 4 && size > previous) throw PrecisionError("log_gamma: Stirling series diverged");
    previous = size;
    power *= inv2;
  }
  return result;
}

/// Distance from the origin beyond which the Stirling series reaches `working_digits`.
inline double stirling_radius(int working_digits) { return 0.4 * working_digits + 10.0; }

/// log Gamma at the current working precision.
inline Complex log_gamma_raw(const Complex& z_in, int working_digits) {
  const Complex z = at_working(z_in);
  if (z.im.is_zero() && z.re <= 0L && z.re.is_integer())
    throw PoleError("log_gamma: pole at non-positive integer " + z.re.to_fixed(0));

  const double radius = stirling_radius(working_digits);
  const double x = z.re.to_double();
  const double y = z.im.to_double();
  long shift = 0;
  if (std::fabs(y) < radius) {
    const double need = std::sqrt(radius * radius - y * y) - x;
    shift = need > 0 ? static_cast<long>(std::ceil(need)) : 0;
  }
  if (shift == 0) return log_gamma_stirling(z);

  // log Gamma(z) = log Gamma(z + N) - sum_j log(z + j), each log principal.
  Complex product(1);
  double arg_sum = 0.0;
  for (long j = 0; j < shift; ++j) {
    Complex factor = z + j;
    product *= factor;
    arg_sum += std::atan2(y, x + static_cast<double>(j));
  }
  Complex log_product = log(product);
  const double wraps = std::round((arg_sum - log_product.im.to_double()) / (2.0 * std::numbers::pi));
  if (wraps != 0.0) log_product.im += pi() * (2L * static_cast<long>(wraps));
  return log_gamma_stirling(z + shift) - log_product;
}

}  // namespace detail

/// Principal log Gamma(z) to an absolute accuracy of 10^-ctx.digits.
/// Throws PoleError at z = 0, -1, -2, ...
inline Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
  const double size = std::abs(z.to_double());
  const int extra = magnitude_digits(size * std::log(size + 2.0)) + 2;
  const int wd = ctx.working_digits(extra);
  WorkingPrecision wp(digits_to_bits(wd));
  return detail::log_gamma_raw(z, wd);
}

/// Gamma(z) = exp(log Gamma(z)).
inline Complex gamma(const Complex& z, const PrecisionContext& ctx) {
  return exp(log_gamma(z, ctx));
}

}  // namespace lzero
