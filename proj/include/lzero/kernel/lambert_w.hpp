#pragma once

/// \file lambert_w.hpp
/// \brief Principal real branch W0 of the Lambert function.

#include <lzero/errors.hpp>
#include <lzero/precision.hpp>
#include <lzero/real.hpp>

#include <algorithm>
#include <cmath>

namespace lzero {

namespace detail {

/// Double-precision starting point for Halley's iteration; `branch` is e x + 1.
inline double lambert_w0_seed(double x, double branch) {
  if (x < -0.32) {
    // Expansion about the branch point in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * branch));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace detail

/// W0(x), the solution w >= -1 of w e^w = x, for x >= -1/e.
/// Values of x within rounding of -1/e return -1. Throws LambertDomainError below -1/e.
inline Real lambert_w0(const Real& x, const PrecisionContext& ctx) {
  // Near the branch point W loses half its digits to the square-root singularity.
  const double xd = x.to_double();
  const int extra = xd < -0.3 ? ctx.working_digits() : magnitude_digits(std::log(std::fabs(xd) + 2.0)) + 2;
  WorkingPrecision wp(digits_to_bits(ctx.working_digits(extra)));
  const Real xw = at_working(x);

  const Real branch = xw * exp(Real(1)) + 1L;
  const Real input_ulp = ldexp(Real(1), -static_cast<long>(x.bits()) + 4);
  if (branch < -input_ulp) throw LambertDomainError("lambert_w0: argument below -1/e");
  if (abs(branch) <= input_ulp) return Real(-1);
  if (xw.is_zero()) return Real(0);

  Real w(detail::lambert_w0_seed(xd, branch.to_double()));
  const Real tolerance = pow10(-ctx.working_digits() - 2);
  for (int iter = 0; iter < 200; ++iter) {
    const Real ew = exp(w);
    const Real f = w * ew - xw;
    const Real w1 = w + 1L;
    const Real step = f / (ew * w1 - (w + 2L) * f / (w1 * 2L));
    w -= step;
    if (abs(step) <= tolerance * (abs(w) + 1L)) return w;
  }
  throw PrecisionError("lambert_w0: Halley iteration did not converge");
}

}  // namespace lzero
