#pragma once

/// \file dirichlet_l.hpp
/// \brief Dirichlet L-functions through the Hurwitz decomposition, the completed
/// function xi(z, chi) and its polar form.

#include <lzero/characters.hpp>
#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/hurwitz_zeta.hpp>
#include <lzero/kernel/log_gamma.hpp>
#include <lzero/precision.hpp>

#include <cmath>

namespace lzero {

/// xi(z, chi) with its modulus and phase: xi = a_modulus * exp(i theta_phase).
struct DirichletLValue {
  Complex l;
  Complex xi;
  Real a_modulus;
  /// Sum of principal arguments; not reduced mod 2 pi.
  Real theta_phase;
};

/// Generalized Riemann-Siegel function Im log Gamma(1/4 + a/2 + i y/2) - (y/2) log(pi/k).
inline Real vartheta_ka(const Real& y, long k, int a, const PrecisionContext& ctx) {
  const int extra = magnitude_digits(std::fabs(y.to_double()) * std::log(std::fabs(y.to_double()) + 3.0));
  WorkingPrecision wp(ctx.bits(extra));
  const Real yw = at_working(y);
  const Complex w(Real(1 + 2 * a) / 4L, yw / 2L);
  const Real arg_gamma = log_gamma(w, ctx.with_digits(ctx.digits + extra)).im;
  return arg_gamma - yw / 2L * log(pi() / Real(k));
}

/// L(z, chi) for a primitive character. Inputs that are not primitive are replaced by
/// their inducing character at construction, which has the same zeros in the strip.
class DirichletL {
 public:
  explicit DirichletL(const DirichletCharacter& chi)
      : original_modulus_(chi.modulus()), chi_(conductor(chi).character) {}

  const DirichletCharacter& character() const { return chi_; }
  long modulus() const { return chi_.modulus(); }
  int parity() const { return chi_.parity(); }
  /// True when the input character was imprimitive and has been replaced.
  bool reduced() const { return original_modulus_ != chi_.modulus(); }

  /// L(z, chi) = k^{-z} sum_{m=1}^{k} chi(m) zeta(z, m/k). Throws PoleError at z = 1 for k = 1.
  Complex l_value(const Complex& z, const PrecisionContext& ctx) const {
    const long k = chi_.modulus();
    if (k == 1) return riemann_zeta(z, ctx);
    const double t = std::fabs(z.im.to_double());
    const double sigma = z.re.to_double();
    const long shift = detail::hurwitz_shift(t, ctx.working_digits(), ctx.guard);
    const int extra = detail::hurwitz_extra_digits(z, shift) +
                      magnitude_digits(std::pow(static_cast<double>(k), std::fabs(sigma) + 1.0));
    WorkingPrecision wp(ctx.bits(extra));
    const Complex zw = at_working(z);
    Complex sum(0);
    for (long m = 1; m < k; ++m) {
      if (chi_.vanishes_at(m)) continue;
      const Complex term = detail::hurwitz_raw(zw, Real(mpq_class(m, k)), shift);
      sum += chi_.value(m) * term;
    }
    return sum * detail::real_pow_neg(Real(k), zw);
  }

  /// xi(z, chi) = i^{a/2} k^{1/4} G^{-1/2} (k/pi)^{(z+a)/2} Gamma((z+a)/2) L(z, chi),
  /// with the principal square root of G.
  DirichletLValue xi_value(const Complex& z, const PrecisionContext& ctx) const {
    const int a = parity();
    const long k = chi_.modulus();
    const int extra = magnitude_digits(std::abs(z.to_double()) * std::log(std::abs(z.to_double()) + 3.0)) + 2;
    const PrecisionContext inner = ctx.with_digits(ctx.digits + extra);
    const Complex l = l_value(z, inner);
    const GaussSum g = gauss_sum(chi_, inner);
    WorkingPrecision wp(ctx.bits(extra));
    const Complex zw = at_working(z);
    const Complex half = (zw + static_cast<long>(a)) / 2L;
    const Complex log_gamma_half = log_gamma(half, inner);
    const Real log_k_over_pi = log(Real(k) / pi());

    const Real log_modulus = log(Real(k)) / 4L - log(g.modulus_squared) / 4L + half.re * log_k_over_pi +
                             log_gamma_half.re + log(abs(l));
    const Real theta = pi() * static_cast<long>(a) / 4L - g.argument / 2L + half.im * log_k_over_pi +
                       log_gamma_half.im + arg(l);
    DirichletLValue out{l, Complex(0), l.is_zero() ? Real(0) : exp(log_modulus), theta};
    out.xi = expi(theta) * out.a_modulus;
    return out;
  }

  /// Principal arg L(1/2 + delta + i y). Throws ZeroOfLError when |L| is below the
  /// working accuracy, which means delta is too small for the precision in use.
  Real arg_l_on_line(const Real& y, const Real& delta, const PrecisionContext& ctx) const {
    if (delta <= 0L) throw DomainError("arg_l_on_line: delta must be positive");
    WorkingPrecision wp(ctx.bits());
    const Complex z(Real(1) / 2L + at_working(delta), at_working(y));
    const Complex l = l_value(z, ctx);
    if (abs(l) < pow10(-(ctx.digits + ctx.guard - 2)))
      throw ZeroOfLError("arg_l_on_line: |L| vanishes to working precision; increase digits or delta");
    return arg(l);
  }

 private:
  long original_modulus_;
  DirichletCharacter chi_;
};

inline Complex l_value(const Complex& z, const DirichletCharacter& chi, const PrecisionContext& ctx) {
  return DirichletL(chi).l_value(z, ctx);
}

inline DirichletLValue xi_value(const Complex& z, const DirichletCharacter& chi, const PrecisionContext& ctx) {
  return DirichletL(chi).xi_value(z, ctx);
}

inline Real arg_l_on_line(const Real& y, const Real& delta, const DirichletCharacter& chi,
                          const PrecisionContext& ctx) {
  return DirichletL(chi).arg_l_on_line(y, delta, ctx);
}

}  // namespace lzero
