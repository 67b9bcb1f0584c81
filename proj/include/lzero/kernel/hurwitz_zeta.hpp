#pragma once

/// \file hurwitz_zeta.hpp
/// \brief Hurwitz zeta by Euler-Maclaurin summation, continued to all s != 1.

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/bernoulli.hpp>
#include <lzero/precision.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lzero {

namespace detail {

/// Number of directly summed terms for a given height and working precision.
inline long hurwitz_shift(double abs_im, int working_digits, int guard) {
  const double by_digits = std::ceil(working_digits * std::numbers::ln10 / (2.0 * std::numbers::pi));
  const double by_height = std::ceil(abs_im / 2.0);
  return static_cast<long>(std::max(by_digits, by_height)) + guard;
}

/// zeta(s, q) at the working precision with `shift` direct terms. Requires s != 1.
inline Complex hurwitz_raw(const Complex& s_in, const Real& q_in, long shift) {
  const Complex s = at_working(s_in);
  const Real q = at_working(q_in);
  Complex sum(0);
  for (long j = 0; j < shift; ++j) sum += real_pow_neg(q + j, s);

  const Real w = q + shift;
  const Complex w_neg_s = real_pow_neg(w, s);
  const Complex s_minus_1 = s - 1L;
  sum += w_neg_s * w / s_minus_1;
  sum += w_neg_s / 2L;

  // sum_m B_{2m}/(2m)! (s)_{2m-1} w^{-s-2m+1}
  const Real inv_w = Real(1) / w;
  const Real inv_w2 = inv_w * inv_w;
  Complex rising = s * inv_w;  // (s)_{2m-1} w^{1-2m}
  Complex power = w_neg_s;
  const Real eps = epsilon();
  Real previous(0);
  for (std::size_t m = 1;; ++m) {
    Complex term = rising * power * Real(bernoulli_scaled_even(m));
    const Real size = abs(term);
    sum += term;
    const Real scale = abs(sum) + 1L;
    if (size < eps * scale) break;
    if (m > 3 && size > previous)
      throw PrecisionError("hurwitz_zeta: Euler-Maclaurin remainder stopped decreasing");
    previous = size;
    const long a = static_cast<long>(2 * m - 1);
    rising *= (s + a) * (s + (a + 1)) * inv_w2;
  }
  return sum;
}

/// Extra working digits needed by hurwitz_raw at this height and shift.
inline int hurwitz_extra_digits(const Complex& s, long shift) {
  const double t = std::fabs(s.im.to_double());
  const double sigma = s.re.to_double();
  const double lw = std::log(static_cast<double>(shift) + 1.0);
  // Phase t log w must be exact to the target, and the partial sums grow like w^{1-sigma}.
  int extra = magnitude_digits(t * lw) + 2;
  if (sigma < 1.0) extra += magnitude_digits(std::exp((1.0 - sigma) * lw));
  return extra;
}

}  // namespace detail

/// Hurwitz zeta(s, q) = sum_{m >= 0} (m + q)^{-s}, analytically continued; q in (0, 1].
/// Throws PoleError at s = 1.
inline Complex hurwitz_zeta(const Complex& s, const mpq_class& q, const PrecisionContext& ctx) {
  if (q <= 0 || q > 1) throw DomainError("hurwitz_zeta: q must lie in (0, 1]");
  if (s.im.is_zero() && s.re == 1L) throw PoleError("hurwitz_zeta: pole at s = 1");
  const double t = std::fabs(s.im.to_double());
  const long shift = detail::hurwitz_shift(t, ctx.working_digits(), ctx.guard);
  const int wd = ctx.working_digits(detail::hurwitz_extra_digits(s, shift));
  WorkingPrecision wp(digits_to_bits(wd));
  return detail::hurwitz_raw(s, Real(q), shift);
}

/// Riemann zeta(s) = zeta(s, 1).
inline Complex riemann_zeta(const Complex& s, const PrecisionContext& ctx) {
  return hurwitz_zeta(s, mpq_class(1), ctx);
}

}  // namespace lzero
