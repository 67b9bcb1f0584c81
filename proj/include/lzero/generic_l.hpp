#pragma once

/// \file generic_l.hpp
/// \brief Descriptor-driven L-functions: degree d, conductor k, local parameters a_j at
/// infinity and the root-number phase beta, with a pluggable evaluator.
///
/// Lambda(z, f) = k^{z/2} pi^{-d z/2} prod_j Gamma((z + a_j)/2) L(z, f) is assumed to satisfy
/// Lambda(z, f) = e^{i beta} conj(Lambda(1 - conj z, f)), so xi = e^{-i beta/2} Lambda is real
/// on Re z = 1/2.

#include <lzero/characters.hpp>
#include <lzero/complex.hpp>
#include <lzero/dirichlet_l.hpp>
#include <lzero/errors.hpp>
#include <lzero/kernel/lambert_w.hpp>
#include <lzero/kernel/log_gamma.hpp>
#include <lzero/modular_l.hpp>
#include <lzero/precision.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace lzero {

/// Evaluation strategy for L(z, f) = sum lambda(n) n^{-z} and its continuation.
class LSeries {
 public:
  virtual ~LSeries() = default;
  /// lambda(n), n >= 1.
  virtual Complex coefficient(std::size_t n, const PrecisionContext& ctx) const = 0;
  virtual Complex evaluate(const Complex& z, const PrecisionContext& ctx) const = 0;
};

/// L(z, f*) = conj(L(conj z, f)).
class DualSeries final : public LSeries {
 public:
  explicit DualSeries(std::shared_ptr<const LSeries> base) : base_(std::move(base)) {}
  Complex coefficient(std::size_t n, const PrecisionContext& ctx) const override {
    return conj(base_->coefficient(n, ctx));
  }
  Complex evaluate(const Complex& z, const PrecisionContext& ctx) const override {
    return conj(base_->evaluate(conj(z), ctx));
  }

 private:
  std::shared_ptr<const LSeries> base_;
};

/// Dirichlet series of a character, continued through Hurwitz zeta.
class CharacterSeries final : public LSeries {
 public:
  explicit CharacterSeries(const DirichletCharacter& chi) : l_(chi) {}
  Complex coefficient(std::size_t n, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    return l_.character().value(static_cast<long>(n));
  }
  Complex evaluate(const Complex& z, const PrecisionContext& ctx) const override { return l_.l_value(z, ctx); }
  const DirichletL& function() const { return l_; }

 private:
  DirichletL l_;
};

/// Coefficients repeating with period q: L(z) = q^{-z} sum_{m=1}^{q} c(m) zeta(z, m/q).
class PeriodicSeries final : public LSeries {
 public:
  /// c(1), ..., c(q) as exact complex rationals (re, im).
  explicit PeriodicSeries(std::vector<std::pair<mpq_class, mpq_class>> period) : period_(std::move(period)) {
    if (period_.empty()) throw InvalidDescriptor("periodic coefficients must not be empty");
  }
  Complex coefficient(std::size_t n, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    const auto& [re, im] = period_[(n - 1) % period_.size()];
    return {Real(re), Real(im)};
  }
  Complex evaluate(const Complex& z, const PrecisionContext& ctx) const override {
    const long q = static_cast<long>(period_.size());
    const double t = std::fabs(z.im.to_double());
    const long shift = detail::hurwitz_shift(t, ctx.working_digits(), ctx.guard);
    const int extra = detail::hurwitz_extra_digits(z, shift) +
                      magnitude_digits(std::pow(static_cast<double>(q), std::fabs(z.re.to_double()) + 1.0));
    WorkingPrecision wp(ctx.bits(extra));
    const Complex zw = at_working(z);
    Complex sum(0);
    for (long m = 1; m <= q; ++m) {
      const auto& [re, im] = period_[static_cast<std::size_t>(m - 1)];
      if (re == 0 && im == 0) continue;
      sum += Complex(Real(re), Real(im)) * detail::hurwitz_raw(zw, Real(mpq_class(m, q)), shift);
    }
    return sum * detail::real_pow_neg(Real(q), zw);
  }

 private:
  std::vector<std::pair<mpq_class, mpq_class>> period_;
};

/// Cusp form moved to the line Re z = 1/2: L(z) = L_f(z + (k-1)/2).
class ModularShiftedSeries final : public LSeries {
 public:
  explicit ModularShiftedSeries(ModularForm form) : form_(std::move(form)) {}
  Complex coefficient(std::size_t n, const PrecisionContext& ctx) const override {
    const auto a = form_.coefficients(n);
    WorkingPrecision wp(ctx.bits());
    return Complex(Real((*a)[n - 1]) / pow(Real(static_cast<long>(n)), Real(form_.weight() - 1) / 2L));
  }
  Complex evaluate(const Complex& z, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    return l_f_value(at_working(z) + Real(form_.weight() - 1) / 2L, form_, ctx);
  }
  const ModularForm& form() const { return form_; }

 private:
  ModularForm form_;
};

/// Evaluator given by plain functions.
class FunctionSeries final : public LSeries {
 public:
  using Evaluator = std::function<Complex(const Complex&, const PrecisionContext&)>;
  using Coefficients = std::function<Complex(std::size_t, const PrecisionContext&)>;
  FunctionSeries(Evaluator evaluate, Coefficients coefficient)
      : evaluate_(std::move(evaluate)), coefficient_(std::move(coefficient)) {}
  Complex coefficient(std::size_t n, const PrecisionContext& ctx) const override { return coefficient_(n, ctx); }
  Complex evaluate(const Complex& z, const PrecisionContext& ctx) const override { return evaluate_(z, ctx); }

 private:
  Evaluator evaluate_;
  Coefficients coefficient_;
};

struct LocalParameter {
  mpq_class re;
  mpq_class im;
  friend bool operator==(const LocalParameter&, const LocalParameter&) = default;
};

/// beta at a given precision; empty means "derive from xi(1/2) real".
using PhaseProvider = std::function<Real(const PrecisionContext&)>;

class LFunctionDescriptor {
 public:
  LFunctionDescriptor(int degree, long conductor, std::vector<LocalParameter> local_params, PhaseProvider beta,
                      std::shared_ptr<const LSeries> series)
      : degree_(degree),
        conductor_(conductor),
        params_(std::move(local_params)),
        beta_(std::move(beta)),
        series_(std::move(series)) {
    if (degree_ < 1) throw InvalidDescriptor("degree must be positive");
    if (conductor_ < 1) throw InvalidDescriptor("conductor must be positive");
    if (static_cast<int>(params_.size()) != degree_)
      throw InvalidDescriptor("expected " + std::to_string(degree_) + " local parameters, got " +
                              std::to_string(params_.size()));
    if (!series_) throw InvalidDescriptor("descriptor needs an evaluator");
    std::vector<LocalParameter> conjugates;
    for (const auto& p : params_) conjugates.push_back({p.re, -p.im});
    for (const auto& p : params_) {
      auto it = std::find(conjugates.begin(), conjugates.end(), p);
      if (it == conjugates.end()) throw InvalidDescriptor("local parameters must come in conjugate pairs");
      conjugates.erase(it);
    }
    for (const auto& p : params_) {
      const mpq_class s = mpq_class(1, 4) + p.re / 2;
      if (p.im == 0 && s <= 0 && s.get_den() == 1)
        throw PoleError("local parameter puts a Gamma pole on the critical line");
    }
    const Complex first = series_->coefficient(1, PrecisionContext(15));
    if (abs(first - Complex(1)) > Real(1e-12)) throw InvalidDescriptor("lambda(1) must equal 1");
  }

  int degree() const { return degree_; }
  long conductor() const { return conductor_; }
  const std::vector<LocalParameter>& local_params() const { return params_; }
  const LSeries& series() const { return *series_; }
  std::shared_ptr<const LSeries> series_ptr() const { return series_; }
  bool has_explicit_beta() const { return static_cast<bool>(beta_); }
  const PhaseProvider& beta_provider() const { return beta_; }

  /// The dual f*: conjugated coefficients, beta -> -beta.
  LFunctionDescriptor dual() const {
    PhaseProvider beta;
    if (beta_) beta = [b = beta_](const PrecisionContext& ctx) { return -b(ctx); };
    return LFunctionDescriptor(degree_, conductor_, params_, std::move(beta), std::make_shared<DualSeries>(series_));
  }

 private:
  int degree_;
  long conductor_;
  std::vector<LocalParameter> params_;
  PhaseProvider beta_;
  std::shared_ptr<const LSeries> series_;
};

/// Descriptor of L(z, chi): d = 1, a_1 = a, beta = arg G(chi) - pi a / 2.
inline LFunctionDescriptor dirichlet_descriptor(const DirichletCharacter& chi) {
  auto series = std::make_shared<CharacterSeries>(chi);
  const DirichletCharacter primitive = series->function().character();
  const int a = primitive.parity();
  PhaseProvider beta = [primitive, a](const PrecisionContext& ctx) {
    const GaussSum g = gauss_sum(primitive, ctx);
    WorkingPrecision wp(ctx.bits());
    return g.argument - pi() * static_cast<long>(a) / 2L;
  };
  return LFunctionDescriptor(1, primitive.modulus(), {{mpq_class(a), mpq_class(0)}}, std::move(beta),
                             std::move(series));
}

/// Descriptor of a weight-k cusp form on the line Re z = 1/2: d = 2, conductor 1,
/// a = ((k-1)/2, (k+1)/2). beta is derived.
inline LFunctionDescriptor modular_descriptor(const ModularForm& form) {
  const int k = form.weight();
  std::vector<LocalParameter> params{{mpq_class(k - 1, 2), mpq_class(0)}, {mpq_class(k + 1, 2), mpq_class(0)}};
  return LFunctionDescriptor(2, 1, std::move(params), {}, std::make_shared<ModularShiftedSeries>(form));
}

namespace detail {

inline Complex local_parameter_value(const LocalParameter& p) { return {Real(p.re), Real(p.im)}; }

/// arg L(center) approached from above (side = +1) or below (side = -1). Off the
/// negative real axis this is the principal value; on it the side picks +-pi, and a
/// vanishing value is replaced by the direction of approach.
inline Real arg_from_side(const std::function<Complex(const Complex&)>& evaluate, const Real& center, int side,
                          const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.bits());
  const Complex v = evaluate(Complex(center));
  const Real tolerance = pow10(-(ctx.digits - 5));
  if (abs(v) < tolerance) {
    const Real h = pow10(-(ctx.digits / 2));
    return arg(evaluate(Complex(center, h * static_cast<long>(side))));
  }
  if (abs(v.im) > tolerance * abs(v) || v.re > 0L) return arg(v);
  const Complex near = evaluate(Complex(center, pow10(-8) * static_cast<long>(side)));
  return near.im >= 0L ? pi() : -pi();
}

inline Real arg_l_at_center(const LSeries& series, const PrecisionContext& ctx) {
  return arg_from_side([&](const Complex& z) { return series.evaluate(z, ctx); }, Real(1) / 2L, 1, ctx);
}

}  // namespace detail

/// sum_j [Im log Gamma(1/4 + a_j/2 + i y/2) - (y/2) log(pi / k^{1/d})].
inline Real generic_theta_sum(const Real& y, const LFunctionDescriptor& f, const PrecisionContext& ctx) {
  const double yd = std::fabs(y.to_double());
  const int extra = magnitude_digits(yd * std::log(yd + 3.0)) + magnitude_digits(f.degree());
  const PrecisionContext inner = ctx.with_digits(ctx.digits + extra);
  WorkingPrecision wp(ctx.bits(extra));
  const Real yw = at_working(y);
  const Real log_scale = log(pi()) - log(Real(f.conductor())) / static_cast<long>(f.degree());
  Real sum(0);
  for (const auto& p : f.local_params()) {
    const Complex a = detail::local_parameter_value(p);
    const Complex w(Real(1) / 4L + a.re / 2L, a.im / 2L + yw / 2L);
    sum += log_gamma(w, inner).im - yw / 2L * log_scale;
  }
  return sum;
}

/// beta, supplied or derived from arg xi(1/2) = 0:
/// beta/2 = sum_j arg Gamma(1/4 + a_j/2) + arg L(1/2, f).
inline Real generic_beta(const LFunctionDescriptor& f, const PrecisionContext& ctx) {
  if (f.has_explicit_beta()) return f.beta_provider()(ctx);
  const Real arg_center = detail::arg_l_at_center(f.series(), ctx);
  WorkingPrecision wp(ctx.bits());
  Real half = arg_center;
  for (const auto& p : f.local_params()) {
    const Complex a = detail::local_parameter_value(p);
    half += log_gamma(Complex(Real(1) / 4L + a.re / 2L, a.im / 2L), ctx).im;
  }
  return half * 2L;
}

/// sum_j theta_{k,a_j}(y) + arg L(1/2 + delta + i y, f) - beta/2.
inline Real generic_equation_lhs(const Real& y, const Real& delta, const LFunctionDescriptor& f,
                                 const PrecisionContext& ctx, const Real& beta) {
  if (delta <= 0L) throw DomainError("generic_equation_lhs: delta must be positive");
  const Real theta = generic_theta_sum(y, f, ctx);
  WorkingPrecision wp(ctx.bits());
  const Complex z(Real(1) / 2L + at_working(delta), at_working(y));
  const Complex l = f.series().evaluate(z, ctx);
  if (abs(l) < pow10(-(ctx.digits + ctx.guard - 2)))
    throw ZeroOfLError("generic_equation_lhs: |L| vanishes to working precision");
  return theta + arg(l) - beta / 2L;
}

inline Real generic_equation_lhs(const Real& y, const Real& delta, const LFunctionDescriptor& f,
                                 const PrecisionContext& ctx) {
  return generic_equation_lhs(y, delta, f, ctx, generic_beta(f, ctx));
}

namespace detail {

/// 2 pi A / (d W(k^{1/d} A / (d e))) with A = m - 1/2 + beta/(2 pi) - sum_j (2 a_j - 1)/8,
/// for any integer m; the upper-half-plane branch of the estimate.
inline Real generic_lambert_upper(long m, const LFunctionDescriptor& f, const PrecisionContext& ctx,
                                  const Real& beta) {
  WorkingPrecision wp(ctx.bits());
  const long d = f.degree();
  Real a_n = Real(m) - Real(1) / 2L + beta / (pi() * 2L);
  for (const auto& p : f.local_params()) a_n -= (Real(p.re) * 2L - 1L) / 8L;
  const Real e = exp(Real(1));
  const Real scale = pow(Real(f.conductor()), Real(1) / d) / (e * d);
  const Real w = lambert_w0(scale * a_n, ctx);
  if (w.is_zero()) throw LambertDomainError("generic_lambert_guess: W argument is zero");
  return pi() * 2L * a_n / (w * d);
}

}  // namespace detail

/// Lambert-W estimate of the ordinate with label n (n >= 1 above the axis; n <= 0 below,
/// through the dual). Throws LambertDomainError when the W argument is below -1/e.
inline Real generic_lambert_guess(long n, const LFunctionDescriptor& f, const PrecisionContext& ctx,
                                  const Real& beta) {
  if (n <= 0) return -detail::generic_lambert_upper(1 - n, f.dual(), ctx, -beta);
  return detail::generic_lambert_upper(n, f, ctx, beta);
}

inline Real generic_lambert_guess(long n, const LFunctionDescriptor& f, const PrecisionContext& ctx) {
  return generic_lambert_guess(n, f, ctx, generic_beta(f, ctx));
}

/// N_0^+(T) = (1/pi) sum_j [theta_{k,a_j}(T) - arg Gamma(1/4 + a_j/2)]
///            + (1/pi) [arg L(1/2 + i T, f) - arg L(1/2, f)],
/// with arg L(1/2) taken from above so that a negative or vanishing central value counts
/// consistently.
inline Real generic_counting(const Real& height, const LFunctionDescriptor& f, const PrecisionContext& ctx) {
  if (height <= 0L) throw DomainError("generic_counting: height must be positive");
  const Real arg_center = detail::arg_l_at_center(f.series(), ctx);
  const Real theta = generic_theta_sum(height, f, ctx) - generic_theta_sum(Real(0), f, ctx);
  WorkingPrecision wp(ctx.bits());
  const Complex l = f.series().evaluate(Complex(Real(1) / 2L, at_working(height)), ctx);
  return (theta + arg(l) - arg_center) / pi();
}

/// |xi(z) - conj(xi(1 - conj z))|, a diagnostic for descriptors whose evaluator and
/// claimed functional equation might disagree.
inline Real functional_equation_residual(const Complex& z, const LFunctionDescriptor& f,
                                         const PrecisionContext& ctx) {
  const Real beta = generic_beta(f, ctx);
  WorkingPrecision wp(ctx.bits());
  auto xi = [&](const Complex& s) {
    Complex log_factor = s / 2L * (log(Real(f.conductor())) - log(pi()) * static_cast<long>(f.degree()));
    for (const auto& p : f.local_params())
      log_factor += log_gamma((s + detail::local_parameter_value(p)) / 2L, ctx);
    return exp(log_factor - Complex(Real(0), beta / 2L)) * f.series().evaluate(s, ctx);
  };
  const Complex zw = at_working(z);
  const Complex mirrored = Complex(1) - conj(zw);
  return abs(xi(zw) - conj(xi(mirrored)));
}

}  // namespace lzero
