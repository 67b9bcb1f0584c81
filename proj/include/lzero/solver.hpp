#pragma once

/// \file solver.hpp
/// \brief Zero finding on the critical line by delta-annealing of the exact equation
///   F_delta(y) = (n - n0 - c) pi,
/// where F_delta is the smooth phase plus arg L(center + delta + i y) minus a constant,
/// plus the counting functions and the staircase check built on the same phase.

#include <lzero/characters.hpp>
#include <lzero/complex.hpp>
#include <lzero/dirichlet_l.hpp>
#include <lzero/errors.hpp>
#include <lzero/generic_l.hpp>
#include <lzero/kernel/lambert_w.hpp>
#include <lzero/modular_l.hpp>
#include <lzero/precision.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace lzero {

/// n0 on each side of the real axis: label n carries the zero solving the equation with
/// n - n0 in place of n. The first zero above the axis has label 1, the first below label 0.
struct LabelOffset {
  long positive = 0;
  long negative = 0;

  long for_label(long n) const { return n >= 1 ? positive : negative; }
  friend bool operator==(const LabelOffset&, const LabelOffset&) = default;
};

enum class FamilyKind { dirichlet, modular, generic };

/// c in the right-hand side (n - n0 - c) pi. `parameter` is the parity a for Dirichlet
/// characters and the weight k for modular forms; generic descriptors ignore it.
///
///   dirichlet   c = 1/2 + a/4
///   modular     c = (1 + (-1)^{k/2}) / 4
///   generic     c = 1/2
inline mpq_class target_constant(FamilyKind kind, int parameter) {
  switch (kind) {
    case FamilyKind::dirichlet:
      return mpq_class(1, 2) + mpq_class(parameter, 4);
    case FamilyKind::modular:
      return mpq_class(1 + ((parameter / 2) % 2 == 0 ? 1 : -1), 4);
    case FamilyKind::generic:
      return mpq_class(1, 2);
  }
  throw DomainError("target_constant: unknown family");
}

/// (n - n0(n) - c) pi at the working precision.
inline Real equation_target(long n, const LabelOffset& n0, const mpq_class& c) {
  return (Real(mpq_class(n - n0.for_label(n)) - c)) * pi();
}

/// The exact equation of one L-function, with its constants fixed at construction.
class ZeroEquation {
 public:
  virtual ~ZeroEquation() = default;

  virtual FamilyKind kind() const = 0;
  /// Stable textual id, e.g. "dirichlet:7:0,1/3,...".
  virtual std::string id() const = 0;
  /// Real part of the critical line.
  virtual Real center() const = 0;
  virtual mpq_class target_constant() const = 0;
  /// Smooth part of the phase, odd in y.
  virtual Real theta(const Real& y, const PrecisionContext& ctx) const = 0;
  /// First-order Stirling form of theta.
  virtual Real theta_asymptotic(const Real& y, const PrecisionContext& ctx) const = 0;
  /// Constant subtracted from the phase (arg G/2, beta/2 or 0).
  virtual const Real& phase_constant() const = 0;
  virtual Complex l_value(const Complex& z, const PrecisionContext& ctx) const = 0;
  /// Lambert-W ordinate estimate for label n, evaluated at the shifted label m = n - n0;
  /// the side of the axis follows n. Throws LambertDomainError where no estimate exists.
  virtual Real lambert_guess(long n, long shifted, const PrecisionContext& ctx) const = 0;

  /// F_delta(y). Throws ZeroOfLError when delta is too small for the precision.
  Real lhs(const Real& y, const Real& delta, const PrecisionContext& ctx) const {
    if (delta <= 0L) throw DomainError("equation_lhs: delta must be positive");
    const Real smooth = theta(y, ctx);
    WorkingPrecision wp(ctx.bits());
    const Complex l = l_value(Complex(center() + at_working(delta), at_working(y)), ctx);
    if (abs(l) < pow10(-(ctx.digits + ctx.guard - 2)))
      throw ZeroOfLError("equation_lhs: |L| vanishes to working precision; increase digits or delta");
    return smooth + arg(l) - phase_constant();
  }

  /// The phase on the line itself (delta = 0), principal arg.
  Real lhs_on_line(const Real& y, const PrecisionContext& ctx) const {
    const Real smooth = theta(y, ctx);
    WorkingPrecision wp(ctx.bits());
    const Complex l = l_value(Complex(center(), at_working(y)), ctx);
    return smooth + arg(l) - phase_constant();
  }

  /// Real function on the line whose sign changes are the zeros:
  /// Re[e^{i(theta - phase + (c + 1/2) pi)} L(center + i y)].
  Real z_function(const Real& y, const PrecisionContext& ctx) const {
    const Real smooth = theta(y, ctx);
    WorkingPrecision wp(ctx.bits());
    const Complex l = l_value(Complex(center(), at_working(y)), ctx);
    const Real phase = smooth - phase_constant() + (Real(target_constant()) + Real(1) / 2L) * pi();
    return (expi(phase) * l).re;
  }

  /// |L(center + i y)|.
  Real residual(const Real& y, const PrecisionContext& ctx) const {
    WorkingPrecision wp(ctx.bits());
    return abs(l_value(Complex(center(), at_working(y)), ctx));
  }

  /// arg L(center) approached from above (side = +1) or below (side = -1).
  Real arg_center(int side, const PrecisionContext& ctx) const {
    return detail::arg_from_side([&](const Complex& z) { return l_value(z, ctx); }, center(), side, ctx);
  }
};

/// L(z, chi) on Re z = 1/2.
class DirichletEquation final : public ZeroEquation {
 public:
  DirichletEquation(const DirichletCharacter& chi, const PrecisionContext& ctx)
      : input_(chi), l_(chi), parity_(l_.parity()) {
    const GaussSum g = gauss_sum(l_.character(), ctx.with_digits(ctx.digits + 10));
    WorkingPrecision wp(ctx.bits(10));
    arg_g_ = g.argument;
    half_arg_g_ = g.argument / 2L;
  }

  FamilyKind kind() const override { return FamilyKind::dirichlet; }
  std::string id() const override {
    std::ostringstream out;
    out << "dirichlet:" << input_.modulus() << ":";
    const auto& row = input_.row();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      if (row[i]) out << row[i]->get_str(); else out << "-";
    }
    return out.str();
  }
  Real center() const override { return Real(1) / 2L; }
  mpq_class target_constant() const override { return lzero::target_constant(FamilyKind::dirichlet, parity_); }
  Real theta(const Real& y, const PrecisionContext& ctx) const override {
    return vartheta_ka(y, l_.modulus(), parity_, ctx);
  }
  /// sgn(y) [(|y|/2) log(k |y| / 2 pi e) + (2a - 1) pi / 8]
  Real theta_asymptotic(const Real& y, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    const Real t = abs(at_working(y));
    const Real value = t / 2L * log(Real(l_.modulus()) * t / (pi() * 2L * exp(Real(1)))) +
                       pi() * static_cast<long>(2 * parity_ - 1) / 8L;
    return y < 0L ? -value : value;
  }
  const Real& phase_constant() const override { return half_arg_g_; }
  Complex l_value(const Complex& z, const PrecisionContext& ctx) const override { return l_.l_value(z, ctx); }

  /// A = sigma (m + arg G / 2 pi) + (1 - 4 sigma - 2 a (sigma + 1)) / 8,
  /// y = 2 pi sigma A / W(k A / e), sigma = +1 for n >= 1 and -1 otherwise.
  Real lambert_guess(long n, long shifted, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    const long sigma = n >= 1 ? 1 : -1;
    const Real a_n = (Real(shifted) + arg_g_ / (pi() * 2L)) * sigma +
                     Real(1 - 4 * sigma - 2 * parity_ * (sigma + 1)) / 8L;
    const Real w = lambert_w0(Real(l_.modulus()) * a_n / exp(Real(1)), ctx);
    if (w.is_zero()) throw LambertDomainError("lambert_guess: W argument is zero");
    return pi() * 2L * a_n * sigma / w;
  }

  const DirichletL& function() const { return l_; }
  const Real& gauss_argument() const { return arg_g_; }

 private:
  DirichletCharacter input_;
  DirichletL l_;
  int parity_;
  Real arg_g_;
  Real half_arg_g_;
};

/// L_f(z) of a level-one cusp form on its native line Re z = k/2.
class ModularEquation final : public ZeroEquation {
 public:
  explicit ModularEquation(ModularForm form) : form_(std::move(form)), zero_(0) {}

  FamilyKind kind() const override { return FamilyKind::modular; }
  std::string id() const override { return "modular:" + std::to_string(form_.weight()); }
  Real center() const override { return Real(static_cast<long>(form_.weight())) / 2L; }
  mpq_class target_constant() const override {
    return lzero::target_constant(FamilyKind::modular, form_.weight());
  }
  Real theta(const Real& y, const PrecisionContext& ctx) const override {
    return vartheta_weight(y, form_.weight(), ctx);
  }
  /// sgn(y) [|y| log(|y| / 2 pi e) + (k - 1) pi / 4]
  Real theta_asymptotic(const Real& y, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    const Real t = abs(at_working(y));
    const Real value = t * log(t / (pi() * 2L * exp(Real(1)))) + pi() * static_cast<long>(form_.weight() - 1) / 4L;
    return y < 0L ? -value : value;
  }
  const Real& phase_constant() const override { return zero_; }
  Complex l_value(const Complex& z, const PrecisionContext& ctx) const override {
    return l_f_value(z, form_, ctx);
  }

  /// A = m - (k + (-1)^{k/2}) / 4, y = A pi / W(A / 2e); below the axis the real
  /// coefficients mirror label 1 - m.
  Real lambert_guess(long n, long shifted, const PrecisionContext& ctx) const override {
    if (n <= 0) return -lambert_guess(1 - n, 1 - shifted, ctx);
    WorkingPrecision wp(ctx.bits());
    const Real a_n = Real(shifted) - Real(form_.weight() + form_.sign()) / 4L;
    const Real w = lambert_w0(a_n / (exp(Real(1)) * 2L), ctx);
    if (w.is_zero()) throw LambertDomainError("lambert_guess_modular: W argument is zero");
    return a_n * pi() / w;
  }

  const ModularForm& form() const { return form_; }

 private:
  ModularForm form_;
  Real zero_;
};

/// Descriptor-driven L(z, f) on Re z = 1/2.
class GenericEquation final : public ZeroEquation {
 public:
  GenericEquation(LFunctionDescriptor f, std::string label, const PrecisionContext& ctx)
      : f_(std::move(f)), label_(std::move(label)) {
    const Real beta = generic_beta(f_, ctx.with_digits(ctx.digits + 10));
    WorkingPrecision wp(ctx.bits(10));
    beta_ = beta;
    half_beta_ = beta / 2L;
  }

  FamilyKind kind() const override { return FamilyKind::generic; }
  std::string id() const override { return "generic:" + label_; }
  Real center() const override { return Real(1) / 2L; }
  mpq_class target_constant() const override { return lzero::target_constant(FamilyKind::generic, 0); }
  Real theta(const Real& y, const PrecisionContext& ctx) const override { return generic_theta_sum(y, f_, ctx); }
  /// sgn(y) sum_j [(|y|/2) log(k^{1/d} |y| / 2 pi e) + (2 Re a_j - 1) pi / 8]
  Real theta_asymptotic(const Real& y, const PrecisionContext& ctx) const override {
    WorkingPrecision wp(ctx.bits());
    const Real t = abs(at_working(y));
    const long d = f_.degree();
    const Real scale = pow(Real(f_.conductor()), Real(1) / d);
    Real value = t * d / 2L * log(scale * t / (pi() * 2L * exp(Real(1))));
    for (const auto& p : f_.local_params()) value += pi() * (Real(p.re) * 2L - 1L) / 8L;
    return y < 0L ? -value : value;
  }
  const Real& phase_constant() const override { return half_beta_; }
  Complex l_value(const Complex& z, const PrecisionContext& ctx) const override {
    return f_.series().evaluate(z, ctx);
  }
  Real lambert_guess(long n, long shifted, const PrecisionContext& ctx) const override {
    if (n <= 0) return -detail::generic_lambert_upper(1 - shifted, f_.dual(), ctx, -beta_);
    return detail::generic_lambert_upper(shifted, f_, ctx, beta_);
  }

  const LFunctionDescriptor& descriptor() const { return f_; }
  const Real& beta() const { return beta_; }

 private:
  LFunctionDescriptor f_;
  std::string label_;
  Real beta_;
  Real half_beta_;
};

struct DirichletFamily {
  DirichletCharacter character;
};

struct ModularFamily {
  ModularForm form;
};

struct GenericFamily {
  LFunctionDescriptor descriptor;
  std::string label = "descriptor";
  /// Serialized input the descriptor was read from, if any.
  std::string source;
};

using Family = std::variant<DirichletFamily, ModularFamily, GenericFamily>;

/// Fixes the family constants (arg G, beta) at ctx precision.
inline std::unique_ptr<ZeroEquation> make_equation(const Family& family, const PrecisionContext& ctx) {
  struct Builder {
    const PrecisionContext& ctx;
    std::unique_ptr<ZeroEquation> operator()(const DirichletFamily& f) const {
      return std::make_unique<DirichletEquation>(f.character, ctx);
    }
    std::unique_ptr<ZeroEquation> operator()(const ModularFamily& f) const {
      return std::make_unique<ModularEquation>(f.form);
    }
    std::unique_ptr<ZeroEquation> operator()(const GenericFamily& f) const {
      return std::make_unique<GenericEquation>(f.descriptor, f.label, ctx);
    }
  };
  return std::visit(Builder{ctx}, family);
}

inline Real equation_lhs(const Real& y, const Real& delta, const Family& family, const PrecisionContext& ctx) {
  return make_equation(family, ctx)->lhs(y, delta, ctx);
}

/// Dirichlet Lambert seed for label n (n0 = 0).
inline Real lambert_guess(long n, const DirichletCharacter& chi, const PrecisionContext& ctx) {
  return DirichletEquation(chi, ctx).lambert_guess(n, n, ctx);
}

/// Modular Lambert seed. Throws LambertDomainError where A_n / 2e < -1/e (n = 1 for Delta).
inline Real lambert_guess_modular(long n, int weight, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.bits());
  const int sign = (weight / 2) % 2 == 0 ? 1 : -1;
  const Real a_n = Real(n) - Real(weight + sign) / 4L;
  const Real w = lambert_w0(a_n / (exp(Real(1)) * 2L), ctx);
  if (w.is_zero()) throw LambertDomainError("lambert_guess_modular: W argument is zero");
  return a_n * pi() / w;
}

struct SolverConfig {
  /// Strictly decreasing positive deltas; empty selects default_delta_schedule.
  std::vector<double> delta_schedule;
  /// Last delta of the default schedule; empty selects 10^-ceil((digits + guard) / 2).
  std::optional<double> delta_floor;
  /// Half-width of the first bracket around the seed, doubled up to `max_doublings` times.
  double bracket_radius = 0.5;
  int max_doublings = 3;
  LabelOffset n0;

  void validate() const {
    for (std::size_t i = 0; i < delta_schedule.size(); ++i) {
      if (!(delta_schedule[i] > 0.0)) throw DomainError("delta schedule entries must be positive");
      if (i > 0 && !(delta_schedule[i] < delta_schedule[i - 1]))
        throw DomainError("delta schedule must be strictly decreasing");
    }
    if (delta_floor && !(*delta_floor > 0.0)) throw DomainError("delta floor must be positive");
    if (!(bracket_radius > 0.0)) throw DomainError("bracket radius must be positive");
  }
};

/// 10^-5, 10^-8, ... then the floor.
inline std::vector<double> default_delta_schedule(const PrecisionContext& ctx, std::optional<double> floor = {}) {
  const double last = floor ? *floor : std::pow(10.0, -std::ceil((ctx.digits + ctx.guard) / 2.0));
  std::vector<double> out;
  for (double delta = 1e-5; delta > last * 1.5; delta *= 1e-3) out.push_back(delta);
  out.push_back(last);
  return out;
}

struct ZeroRecord {
  std::string family;
  long n = 0;
  Real y;
  /// Lambert seed, absent when the solver had to scan.
  std::optional<double> guess;
  Real residual;
  int digits_achieved = 0;
};

namespace detail {

/// g(y) = F_delta(y) - target at a fixed stage.
struct StageFunction {
  const ZeroEquation& eq;
  Real delta;
  Real target;
  PrecisionContext ctx;

  Real operator()(const Real& y) const {
    const Real f = eq.lhs(y, delta, ctx);
    WorkingPrecision wp(ctx.bits());
    return f - target;
  }
};

struct Bracket {
  Real lo;
  Real hi;
};

/// Walks outward from `center` in steps of radius/8 for the nearest upward crossing
/// f(lo) < 0 < f(hi) with both values inside (-pi, pi); downward steps are wraps of
/// the principal arg, as are upward ones that land outside that window.
inline std::optional<Bracket> find_upward_crossing(const StageFunction& f, const Real& center, const Real& radius,
                                                   std::vector<double>& seen) {
  WorkingPrecision wp(f.ctx.bits());
  const Real step = radius / 8L;
  const Real limit = pi();
  std::optional<Bracket> best;
  Real best_distance;
  auto consider = [&](const Real& a, const Real& fa, const Real& b, const Real& fb) {
    if (!(fa < 0L && fb >= 0L)) return;
    seen.push_back(((a + b) / 2L).to_double());
    if (fa <= -limit || fb >= limit) return;
    const Real distance = abs((a + b) / 2L - center);
    if (!best || distance < best_distance) {
      best = Bracket{a, b};
      best_distance = distance;
    }
  };
  Real left = at_working(center);
  Real f_left = f(left);
  Real right = left;
  Real f_right = f_left;
  for (int i = 0; i < 8; ++i) {
    const Real next_right = right + step;
    const Real f_next_right = f(next_right);
    consider(right, f_right, next_right, f_next_right);
    right = next_right;
    f_right = f_next_right;
    const Real next_left = left - step;
    const Real f_next_left = f(next_left);
    consider(next_left, f_next_left, left, f_left);
    left = next_left;
    f_left = f_next_left;
    if (best) return best;
  }
  return best;
}

/// Bisection on sign(f) down to `width`, then Illinois regula falsi on tan(f), which is
/// nearly linear within a few deltas of the root. Returns empty when the bracket holds
/// a discontinuity of the principal arg instead of a root.
inline std::optional<Real> refine_root(const StageFunction& f, Bracket b, const Real& width, const Real& tolerance) {
  WorkingPrecision wp(f.ctx.bits());
  Real lo = at_working(b.lo);
  Real hi = at_working(b.hi);
  Real f_lo = f(lo);
  Real f_hi = f(hi);
  if (!(f_lo < 0L && f_hi >= 0L)) return std::nullopt;
  while (hi - lo > width) {
    const Real mid = (lo + hi) / 2L;
    const Real f_mid = f(mid);
    if (f_mid < 0L) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const Real half_pi = pi() / 2L;
  if (f_lo <= -half_pi || f_hi >= half_pi) return std::nullopt;
  Real g_lo = tan(f_lo);
  Real g_hi = tan(f_hi);
  if (g_hi.is_zero()) return hi;
  int side = 0;
  Real y = hi;
  for (int iter = 0; iter < 200; ++iter) {
    Real next = hi - g_hi * (hi - lo) / (g_hi - g_lo);
    if (!(next > lo && next < hi)) next = (lo + hi) / 2L;
    const Real step = abs(next - y);
    y = next;
    const Real f_y = f(y);
    if (abs(f_y) >= half_pi) return std::nullopt;
    const Real g_y = tan(f_y);
    if (g_y.is_zero()) return y;
    if (g_y < 0L) {
      lo = y;
      g_lo = g_y;
      if (side == -1) g_hi /= 2L;
      side = -1;
    } else {
      hi = y;
      g_hi = g_y;
      if (side == 1) g_lo /= 2L;
      side = 1;
    }
    if (hi - lo < tolerance || step < tolerance) return y;
  }
  return y;
}

/// Precision for a stage with delta = 10^-e: |L| ~ delta must be resolved with room to spare.
inline PrecisionContext stage_context(const PrecisionContext& ctx, double delta, bool last) {
  if (last) return ctx;
  const int e = static_cast<int>(std::ceil(-std::log10(delta)));
  return ctx.with_digits(std::clamp(2 * e + 5, 15, ctx.digits));
}

/// Seed by counting sign changes of the Z-function from the real axis outward: the
/// |m|-th change above the axis (m >= 1) or the (1 - m)-th below it (m <= 0).
inline Real scan_seed(long n, const ZeroEquation& eq, const PrecisionContext& ctx, double ceiling) {
  const PrecisionContext scan = ctx.with_digits(15);
  WorkingPrecision wp(scan.bits());
  const long wanted = n >= 1 ? n : 1 - n;
  const long direction = n >= 1 ? 1 : -1;
  const Real h = Real(1) / 10L;
  long seen = 0;
  Real previous_y(0);
  Real previous = eq.z_function(previous_y, scan);
  for (long i = 1; static_cast<double>(i) * 0.1 <= ceiling; ++i) {
    const Real y = h * (i * direction);
    const Real value = eq.z_function(y, scan);
    if (value.sign() != previous.sign() && previous.sign() != 0) {
      if (++seen == wanted) return (y + previous_y) / 2L;
    }
    previous = value;
    previous_y = y;
  }
  throw ScanExhausted("no zero with label " + std::to_string(n) + " below height " + std::to_string(ceiling));
}

/// Runs the annealing schedule for one right-hand side. Returns empty on bracket failure.
inline std::optional<Real> anneal(const ZeroEquation& eq, const Real& target, const Real& seed,
                                  const std::vector<double>& schedule, const SolverConfig& cfg,
                                  const PrecisionContext& ctx, std::vector<double>& seen) {
  std::optional<Real> y;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const bool last = i + 1 == schedule.size();
    const PrecisionContext stage = stage_context(ctx, schedule[i], last);
    WorkingPrecision wp(stage.bits());
    const Real delta(schedule[i]);
    const StageFunction f{eq, delta, at_working(target), stage};
    const Real tolerance = last ? pow10(-(ctx.digits + 5)) : delta * pow10(-6);
    const Real width = delta * 16L;

    std::optional<Bracket> bracket;
    if (y) {
      Real radius = delta * 8L;
      for (int widen = 0; widen < 4 && !bracket; ++widen, radius *= 8L) {
        const Bracket b{*y - radius, *y + radius};
        if (f(b.lo) < 0L && f(b.hi) >= 0L) bracket = b;
      }
    }
    const Real center = y ? *y : at_working(seed);
    Real radius(y ? std::max(cfg.bracket_radius / 64.0, schedule[i] * 4096.0) : cfg.bracket_radius);
    for (int doubling = 0; !bracket && doubling <= cfg.max_doublings; ++doubling, radius *= 2L)
      bracket = find_upward_crossing(f, center, radius, seen);
    if (!bracket) return std::nullopt;
    const std::optional<Real> root = refine_root(f, *bracket, width, tolerance);
    if (!root) return std::nullopt;
    y = *root;
  }
  return y;
}

inline int digits_from_residual(const Real& residual, int digits) {
  if (residual.is_zero()) return digits;
  const double lr = log10(residual).to_double();
  return std::clamp(static_cast<int>(std::floor(-lr)), 0, digits);
}

}  // namespace detail

/// Solves for the ordinate with label n. The residual gate is |L| < 10^-(digits/2);
/// a failing solution is retried against the 2 pi-shifted right-hand sides, which is
/// what a principal-arg wrap at the zero looks like.
inline ZeroRecord solve_nth_zero(long n, const ZeroEquation& eq, const SolverConfig& cfg, const PrecisionContext& ctx,
                                 std::optional<double> seed_override = {}) {
  if (ctx.digits < 15) throw DomainError("solve_nth_zero: digits must be at least 15");
  cfg.validate();
  const std::vector<double> schedule =
      cfg.delta_schedule.empty() ? default_delta_schedule(ctx, cfg.delta_floor) : cfg.delta_schedule;

  WorkingPrecision wp(ctx.bits());
  const long shifted = n - cfg.n0.for_label(n);
  ZeroRecord record;
  record.family = eq.id();
  record.n = n;
  Real seed;
  if (seed_override) {
    seed = Real(*seed_override);
  } else {
    try {
      seed = eq.lambert_guess(n, shifted, ctx.with_digits(20));
      record.guess = seed.to_double();
    } catch (const DomainError&) {
      seed = detail::scan_seed(n, eq, ctx, 50.0 + 8.0 * static_cast<double>(std::labs(n)));
    }
  }

  const Real base = equation_target(n, cfg.n0, eq.target_constant());
  const Real gate = pow10(-(ctx.digits / 2));
  std::vector<double> seen;
  std::optional<Real> best;
  Real best_residual;
  for (long shift : {0L, 1L, -1L}) {
    const Real target = base + pi() * (2 * shift);
    const std::optional<Real> y = detail::anneal(eq, target, seed, schedule, cfg, ctx, seen);
    if (!y) continue;
    const Real residual = eq.residual(*y, ctx);
    if (!best || residual < best_residual) {
      best = *y;
      best_residual = residual;
    }
    if (residual < gate) break;
  }
  if (!best) {
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    throw BracketFailure("no bracket for label " + std::to_string(n) + " near " + seed.to_fixed(4), seen);
  }
  if (best_residual >= gate)
    throw ResidualTooLarge("label " + std::to_string(n) + ": |L| not small at the solution (possible branch slip)",
                           best->to_double(), log10(best_residual).to_double());
  if ((n >= 1) != (*best > 0L))
    throw ResidualTooLarge("label " + std::to_string(n) + ": solution on the wrong side of the real axis",
                           best->to_double(), log10(best_residual).to_double());
  record.y = *best;
  record.residual = best_residual;
  record.digits_achieved = detail::digits_from_residual(best_residual, ctx.digits);
  return record;
}

inline ZeroRecord solve_nth_zero(long n, const Family& family, const SolverConfig& cfg, const PrecisionContext& ctx) {
  return solve_nth_zero(n, *make_equation(family, ctx), cfg, ctx);
}

struct RangeResult {
  std::vector<ZeroRecord> records;
  /// (n, message) for labels that could not be solved.
  std::vector<std::pair<long, std::string>> failures;
};

/// Solves labels first..last on `threads` workers pulling from a shared counter;
/// results are sorted by n.
inline RangeResult solve_range(long first, long last, const ZeroEquation& eq, const SolverConfig& cfg,
                               const PrecisionContext& ctx, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const long count = last >= first ? last - first + 1 : 0;
  threads = static_cast<unsigned>(std::min<long>(threads, std::max(count, 1L)));
  RangeResult out;
  std::mutex mutex;
  std::atomic<long> next{first};
  auto worker = [&] {
    for (long n = next++; n <= last; n = next++) {
      try {
        ZeroRecord r = solve_nth_zero(n, eq, cfg, ctx);
        std::lock_guard lock(mutex);
        out.records.push_back(std::move(r));
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        out.failures.emplace_back(n, e.what());
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  std::sort(out.failures.begin(), out.failures.end());
  return out;
}

/// N_0^+(T) for sign > 0 (zeros in (0, T)), N_0^-(T) for sign < 0 (zeros in (-T, 0)):
///   N^+ = F_0(T)/pi + c - 1/2 + n0^+,   N^- = 1/2 - c - F_0(-T)/pi - n0^-.
inline Real count_zeros_line(const Real& height, int sign, const ZeroEquation& eq, const LabelOffset& n0,
                             const PrecisionContext& ctx) {
  if (height <= 0L) throw DomainError("count_zeros_line: height must be positive");
  WorkingPrecision wp(ctx.bits());
  const Real c(eq.target_constant());
  const Real half = Real(1) / 2L;
  if (sign > 0) return eq.lhs_on_line(height, ctx) / pi() + c - half + n0.positive;
  return half - c - eq.lhs_on_line(-at_working(height), ctx) / pi() - n0.negative;
}

/// count_zeros_line with the smooth phase replaced by its Stirling form.
inline Real count_asymptotic(const Real& height, int sign, const ZeroEquation& eq, const LabelOffset& n0,
                             const PrecisionContext& ctx) {
  if (height <= 0L) throw DomainError("count_asymptotic: height must be positive");
  WorkingPrecision wp(ctx.bits());
  const Real y = sign > 0 ? at_working(height) : -at_working(height);
  const Real l_arg = arg(eq.l_value(Complex(eq.center(), y), ctx));
  const Real phase = eq.theta_asymptotic(y, ctx) + l_arg - eq.phase_constant();
  const Real c(eq.target_constant());
  const Real half = Real(1) / 2L;
  if (sign > 0) return phase / pi() + c - half + n0.positive;
  return half - c - phase / pi() - n0.negative;
}

/// Zeros in the strip counted from the argument principle on the line:
///   N^+ = [theta(T) - theta(0) + arg L(c + iT) - arg L(c from above)] / pi,
///   N^- = [theta(T) - theta(0) - arg L(c - iT) + arg L(c from below)] / pi.
inline Real count_zeros_strip(const Real& height, int sign, const ZeroEquation& eq, const PrecisionContext& ctx) {
  if (height <= 0L) throw DomainError("count_zeros_strip: height must be positive");
  const Real at_center = eq.arg_center(sign > 0 ? 1 : -1, ctx);
  WorkingPrecision wp(ctx.bits());
  const Real t = at_working(height);
  const Real smooth = eq.theta(t, ctx) - eq.theta(Real(0), ctx);
  if (sign > 0) return (smooth + arg(eq.l_value(Complex(eq.center(), t), ctx)) - at_center) / pi();
  return (smooth - arg(eq.l_value(Complex(eq.center(), -t), ctx)) + at_center) / pi();
}

namespace detail {

/// First zero of the Z-function on one side, by grid scan and bisection.
inline Real first_zero(const ZeroEquation& eq, int direction, double ceiling, const PrecisionContext& ctx) {
  const PrecisionContext scan = ctx.with_digits(std::max(ctx.digits, 30));
  WorkingPrecision wp(scan.bits());
  const Real h = Real(1) / 10L;
  Real a(0);
  Real za = eq.z_function(a, scan);
  for (long i = 1; static_cast<double>(i) * 0.1 <= ceiling; ++i) {
    Real b = h * (i * direction);
    Real zb = eq.z_function(b, scan);
    if (za.sign() != 0 && zb.sign() != za.sign()) {
      for (int j = 0; j < 70; ++j) {
        const Real mid = (a + b) / 2L;
        const Real zm = eq.z_function(mid, scan);
        if (zm.sign() == za.sign()) {
          a = mid;
          za = zm;
        } else {
          b = mid;
        }
      }
      return (a + b) / 2L;
    }
    a = b;
    za = zb;
  }
  throw ScanExhausted("no zero found below height " + std::to_string(ceiling));
}

}  // namespace detail

/// Label offsets that give the first zero above the axis label 1 and the first one
/// below label 0: solve the phase at each first zero and read off the integer.
inline LabelOffset detect_n0(const ZeroEquation& eq, const PrecisionContext& ctx, double ceiling = 100.0) {
  const PrecisionContext work = ctx.with_digits(30);
  WorkingPrecision wp(work.bits());
  const Real delta = pow10(-8);
  const Real c(eq.target_constant());
  auto label_at = [&](int direction) {
    const Real y = detail::first_zero(eq, direction, ceiling, work);
    return (eq.lhs(y, delta, work) / pi() + c).to_double();
  };
  LabelOffset out;
  out.positive = 1 - std::lround(label_at(1));
  out.negative = 0 - std::lround(label_at(-1));
  return out;
}

inline LabelOffset detect_n0(const Family& family, const PrecisionContext& ctx, double ceiling = 100.0) {
  return detect_n0(*make_equation(family, ctx), ctx, ceiling);
}

struct StaircaseInterval {
  long n_low = 0;
  long n_high = 0;
  double midpoint = 0.0;
  double count = 0.0;
  long expected = 0;
};

struct StaircaseReport {
  std::vector<StaircaseInterval> intervals;
  double max_deviation = 0.0;
  /// max |strip count - line count| over the midpoints.
  double max_strip_deviation = 0.0;
  std::vector<std::pair<long, long>> violations;

  bool passed() const { return violations.empty(); }
};

/// Evaluates the line count at every midpoint between adjacent records (and halfway
/// to the axis for labels 1 and 0) and compares it with the number of labels passed.
/// Gaps in n and non-integer counts are violations. Throws StaircaseViolation when any
/// occur; the report is also written to `report_out` when given.
inline StaircaseReport verify_staircase(std::vector<ZeroRecord> records, const ZeroEquation& eq,
                                        const LabelOffset& n0, const PrecisionContext& ctx,
                                        double tolerance = 1e-3, StaircaseReport* report_out = nullptr) {
  const PrecisionContext low = ctx.with_digits(std::min(ctx.digits, 30));
  WorkingPrecision wp(low.bits());
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  StaircaseReport report;

  auto check = [&](long n_low, long n_high, const Real& mid, bool contiguous) {
    const int sign = mid > 0L ? 1 : -1;
    const Real height = abs(mid);
    const Real count = count_zeros_line(height, sign, eq, n0, low);
    const Real strip = count_zeros_strip(height, sign, eq, low);
    // Above the axis the zeros in (0, mid) carry labels 1..n_low; below, n_high..0.
    const long expected = sign > 0 ? n_low : 1 - n_high;
    const double c = count.to_double();
    const double deviation = std::fabs(c - static_cast<double>(expected));
    report.intervals.push_back({n_low, n_high, mid.to_double(), c, expected});
    report.max_deviation = std::max(report.max_deviation, deviation);
    report.max_strip_deviation = std::max(report.max_strip_deviation, std::fabs((strip - count).to_double()));
    if (!contiguous || deviation > tolerance) report.violations.emplace_back(n_low, n_high);
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    const ZeroRecord& r = records[i];
    if (r.n == 1) check(0, 1, at_working(r.y) / 2L, true);
    if (r.n == 0) check(0, 1, at_working(r.y) / 2L, true);
    if (i + 1 == records.size()) break;
    const ZeroRecord& s = records[i + 1];
    if (r.n <= 0 && s.n >= 1) continue;  // the pair straddles the axis
    check(r.n, s.n, (at_working(r.y) + at_working(s.y)) / 2L, s.n == r.n + 1);
  }
  if (report_out) *report_out = report;
  if (!report.passed()) {
    std::ostringstream what;
    what << "staircase violated on";
    for (const auto& [a, b] : report.violations) what << " (" << a << ", " << b << ")";
    throw StaircaseViolation(what.str(), report.violations);
  }
  return report;
}

}  // namespace lzero
