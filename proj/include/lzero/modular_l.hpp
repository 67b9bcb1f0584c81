#pragma once

/// \file modular_l.hpp
/// \brief L-functions of level-one cusp forms, evaluated on the native line Re z = k/2.
///
/// The completed function Lambda_f(z) = (2 pi)^{-z} Gamma(z) L_f(z) is computed from the
/// Mellin integral split at t = 1:
///   Lambda_f(z) = sum_n a(n) [(2 pi n)^{-z} Gamma(z, 2 pi n)
///                             + (-1)^{k/2} (2 pi n)^{z-k} Gamma(k-z, 2 pi n)],
/// which converges like e^{-2 pi n} for every z.

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/incomplete_gamma.hpp>
#include <lzero/kernel/log_gamma.hpp>
#include <lzero/precision.hpp>

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace lzero {

/// tau(1), ..., tau(N).
struct TauSeries {
  std::vector<mpz_class> values;

  std::size_t length() const { return values.size(); }
  /// tau(n), 1-based.
  const mpz_class& operator()(std::size_t n) const { return values.at(n - 1); }
};

namespace detail {

/// Product of two power series truncated to `length` coefficients.
inline std::vector<mpz_class> series_multiply(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                              std::size_t length) {
  std::vector<mpz_class> out(length, 0);
  for (std::size_t i = 0; i < a.size() && i < length; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < length; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace detail

/// Exact tau(1..N) from q prod (1 - q^n)^24: pentagonal expansion, then 24 = 16 + 8.
inline TauSeries tau_coefficients(std::size_t count) {
  if (count == 0) throw DomainError("tau_coefficients: count must be positive");
  std::vector<mpz_class> euler(count, 0);
  // prod (1 - q^n) = sum_j (-1)^j q^{j(3j-1)/2}, j over all integers.
  for (long j = 0;; ++j) {
    bool any = false;
    for (long s : {j, -j}) {
      if (j == 0 && s != 0) continue;
      const long exponent = s * (3 * s - 1) / 2;
      if (exponent < static_cast<long>(count)) {
        euler[static_cast<std::size_t>(exponent)] = (j % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any && j > 0) break;
  }
  std::vector<mpz_class> p2 = detail::series_multiply(euler, euler, count);
  std::vector<mpz_class> p4 = detail::series_multiply(p2, p2, count);
  std::vector<mpz_class> p8 = detail::series_multiply(p4, p4, count);
  std::vector<mpz_class> p16 = detail::series_multiply(p8, p8, count);
  return {detail::series_multiply(p16, p8, count)};
}

/// Fourier data of a level-one cusp form of even weight k >= 4.
class ModularForm {
 public:
  /// Produces the first `count` coefficients a(1..count).
  using CoefficientSource = std::function<std::vector<mpz_class>(std::size_t count)>;

  ModularForm(int weight, std::vector<mpz_class> coefficients, CoefficientSource source = {})
      : weight_(weight), cache_(std::make_shared<Cache>()) {
    if (weight < 4 || weight % 2 != 0)
      throw InvalidDescriptor("modular weight must be an even integer >= 4, got " + std::to_string(weight));
    if (coefficients.empty() && !source) throw InvalidDescriptor("modular form needs coefficients");
    cache_->values = std::make_shared<const std::vector<mpz_class>>(std::move(coefficients));
    cache_->source = std::move(source);
  }

  /// Ramanujan Delta, weight 12, with tau coefficients generated on demand.
  static ModularForm ramanujan_delta(std::size_t initial = 64) {
    auto source = [](std::size_t n) { return tau_coefficients(n).values; };
    return ModularForm(12, source(initial), source);
  }

  int weight() const { return weight_; }
  /// (-1)^{k/2}
  int sign() const { return (weight_ / 2) % 2 == 0 ? 1 : -1; }
  bool extensible() const { return static_cast<bool>(cache_->source); }

  /// At least `count` coefficients, generating more when a source is attached.
  /// Throws InsufficientCoefficients otherwise.
  std::shared_ptr<const std::vector<mpz_class>> coefficients(std::size_t count) const {
    std::lock_guard lock(cache_->mutex);
    if (cache_->values->size() >= count) return cache_->values;
    if (!cache_->source) throw InsufficientCoefficients(count, cache_->values->size());
    const std::size_t target = std::max(count, 2 * cache_->values->size());
    cache_->values = std::make_shared<const std::vector<mpz_class>>(cache_->source(target));
    return cache_->values;
  }

  std::size_t available() const {
    std::lock_guard lock(cache_->mutex);
    return cache_->values->size();
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::shared_ptr<const std::vector<mpz_class>> values;
    CoefficientSource source;
  };
  int weight_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

/// log of an upper bound for Gamma(sigma, x), real sigma; +inf when no cheap bound applies.
inline double log_upper_gamma_bound(double sigma, double x) {
  if (sigma <= 1.0) return (sigma - 1.0) * std::log(x) - x;
  if (x <= sigma) return std::numeric_limits<double>::infinity();
  return (sigma - 1.0) * std::log(x) - x + std::log(x / (x - sigma + 1.0));
}

/// Number of terms of the split sum needed for absolute error below 10^-working_digits,
/// assuming |a(n)| <= 2 n^{k/2}.
inline std::size_t modular_terms_needed(const Complex& z, int weight, int working_digits) {
  const double sigma = z.re.to_double();
  const double threshold = -(working_digits + 2) * std::numbers::ln10;
  for (std::size_t n = 1; n < 1000000; ++n) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(n);
    const double log_a = std::log(2.0) + 0.5 * weight * std::log(static_cast<double>(n));
    const double first = log_a - sigma * std::log(x) + log_upper_gamma_bound(sigma, x);
    const double second = log_a + (sigma - weight) * std::log(x) + log_upper_gamma_bound(weight - sigma, x);
    if (first < threshold && second < threshold) return n;
  }
  throw PrecisionError("modular L: coefficient requirement unbounded");
}

/// Digits cancelled in the split sum: |Lambda| falls like e^{-pi |y| / 2}.
inline int modular_cancellation_digits(const Complex& z) {
  return static_cast<int>(std::ceil(std::numbers::pi * std::fabs(z.im.to_double()) / (2.0 * std::numbers::ln10))) + 5;
}

}  // namespace detail

/// Number of coefficients lambda_value needs at z for the given context.
inline std::size_t required_coefficients(const Complex& z, const ModularForm& f, const PrecisionContext& ctx) {
  return detail::modular_terms_needed(z, f.weight(), ctx.working_digits(detail::modular_cancellation_digits(z)));
}

/// Lambda_f(z) = (2 pi)^{-z} Gamma(z) L_f(z).
inline Complex lambda_value(const Complex& z, const ModularForm& f, const PrecisionContext& ctx) {
  const int cancel = detail::modular_cancellation_digits(z);
  const int wd = ctx.working_digits(cancel);
  const std::size_t terms = detail::modular_terms_needed(z, f.weight(), wd);
  const auto coefficients = f.coefficients(terms);
  const PrecisionContext inner = ctx.with_digits(ctx.digits + cancel);

  WorkingPrecision wp(digits_to_bits(wd));
  const Complex zw = at_working(z);
  const Complex reflected = Complex(Real(static_cast<long>(f.weight()))) - zw;
  const Real two_pi = pi() * 2L;
  Complex sum(0);
  for (std::size_t n = 1; n <= terms; ++n) {
    const mpz_class& a = (*coefficients)[n - 1];
    if (a == 0) continue;
    const Real x = two_pi * static_cast<long>(n);
    const Complex direct = detail::real_pow_neg(x, zw) * upper_incomplete_gamma(zw, x, inner);
    Complex mirrored = detail::real_pow_neg(x, reflected) * upper_incomplete_gamma(reflected, x, inner);
    if (f.sign() < 0) mirrored = -mirrored;
    sum += (direct + mirrored) * Real(a);
  }
  return sum;
}

/// L_f(z) = (2 pi)^z Lambda_f(z) / Gamma(z). Throws PoleError at non-positive integers.
inline Complex l_f_value(const Complex& z, const ModularForm& f, const PrecisionContext& ctx) {
  const Complex lambda = lambda_value(z, f, ctx);
  const int extra = detail::modular_cancellation_digits(z);
  WorkingPrecision wp(ctx.bits(extra));
  const Complex zw = at_working(z);
  const Complex log_factor = zw * log(pi() * 2L) - log_gamma(zw, ctx.with_digits(ctx.digits + extra));
  return lambda * exp(log_factor);
}

/// xi_f(z): Lambda_f for k/2 even, e^{-i pi/2} Lambda_f for k/2 odd.
inline Complex xi_f_value(const Complex& z, const ModularForm& f, const PrecisionContext& ctx) {
  const Complex lambda = lambda_value(z, f, ctx);
  return f.sign() > 0 ? lambda : Complex(lambda.im, -lambda.re);
}

/// theta_k(y) = Im log Gamma(k/2 + i y) - y log 2 pi.
inline Real vartheta_weight(const Real& y, int weight, const PrecisionContext& ctx) {
  const double yd = std::fabs(y.to_double());
  const int extra = magnitude_digits(yd * std::log(yd + 3.0));
  WorkingPrecision wp(ctx.bits(extra));
  const Real yw = at_working(y);
  const Complex w(Real(static_cast<long>(weight)) / 2L, yw);
  return log_gamma(w, ctx.with_digits(ctx.digits + extra)).im - yw * log(pi() * 2L);
}

}  // namespace lzero
