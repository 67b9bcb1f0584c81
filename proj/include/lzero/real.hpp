#pragma once

/// \file real.hpp
/// \brief RAII multiprecision real built on MPFR, with a per-thread working precision.
///
/// Every freshly constructed Real takes the calling thread's working precision.
/// Arithmetic results take the larger precision of their operands, so a value
/// computed under a high-precision scope keeps its bits when it escapes.

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace lzero {

namespace detail {
inline thread_local mpfr_prec_t working_bits = 128;
}  // namespace detail

inline constexpr double kBitsPerDigit = 3.321928094887362;

inline mpfr_prec_t digits_to_bits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * kBitsPerDigit)) + 8;
}

inline mpfr_prec_t working_bits() { return detail::working_bits; }

/// Sets the working precision of the current thread for the lifetime of the object.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(mpfr_prec_t bits) : saved_(detail::working_bits) {
    detail::working_bits = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
  }
  ~WorkingPrecision() { detail::working_bits = saved_; }
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() { init(detail::working_bits); mpfr_set_zero(v_, 1); }
  Real(int x) { init(detail::working_bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long x) { init(detail::working_bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long long x) { init(detail::working_bits); mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN); }
  Real(unsigned long x) { init(detail::working_bits); mpfr_set_ui(v_, x, MPFR_RNDN); }
  explicit Real(double x) { init(detail::working_bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const mpz_class& x) { init(detail::working_bits); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  explicit Real(const mpq_class& x) { init(detail::working_bits); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

  /// Parses a decimal literal ("1.25e3") or an exact fraction ("11/2").
  explicit Real(std::string_view text) {
    init(detail::working_bits);
    const std::string s(text);
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpq_class q;
      if (q.set_str(s, 10) != 0) throw std::invalid_argument("invalid rational literal: " + s);
      q.canonicalize();
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
      mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
      return;
    }
    char* end = nullptr;
    if (mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN), end == s.c_str() || *end != '\0')
      throw std::invalid_argument("invalid real literal: " + s);
  }

  Real(const Real& o) { init(mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    init(mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Value of `x` rounded to `bits`.
  static Real with_bits(const Real& x, mpfr_prec_t bits) {
    Real r(Uninit{}, bits);
    mpfr_set(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent2() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  /// Fixed-point rendering with `places` digits after the decimal point ("C" locale independent).
  std::string to_fixed(int places) const;
  /// Scientific rendering with `sig` significant digits.
  std::string to_sci(int sig) const;

  Real operator-() const {
    Real r(Uninit{}, bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  friend Real operator+(const Real& a, long b) { Real r(Uninit{}, a.bits()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, long b) { Real r(Uninit{}, a.bits()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, long b) { Real r(Uninit{}, a.bits()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, long b) { Real r(Uninit{}, a.bits()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b) { Real r(Uninit{}, b.bits()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b) { Real r(Uninit{}, b.bits()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend int compare(const Real& a, long b) { return mpfr_cmp_si(a.v_, b); }
  friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, long b) { return compare(a, b) < 0; }
  friend bool operator>(const Real& a, long b) { return compare(a, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return compare(a, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return compare(a, b) == 0; }

 private:
  struct Uninit {};
  Real(Uninit, mpfr_prec_t bits) { init(bits); }
  void init(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }
  template <class Op>
  static Real binary(const Real& a, const Real& b, Op op) {
    Real r(Uninit{}, std::max(a.bits(), b.bits()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  template <class Op>
  friend Real unary(const Real& x, Op op);
  friend Real atan2(const Real& y, const Real& x);
  friend Real hypot(const Real& a, const Real& b);
  friend Real pow(const Real& a, const Real& b);
  friend void sin_cos(const Real& x, Real& s, Real& c);
  friend Real pi();
  friend Real euler_gamma();

  mpfr_t v_;
};

template <class Op>
Real unary(const Real& x, Op op) {
  Real r(Real::Uninit{}, x.bits());
  op(r.v_, x.v_, MPFR_RNDN);
  return r;
}

inline Real abs(const Real& x) { return unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return unary(x, mpfr_exp); }
inline Real log(const Real& x) { return unary(x, mpfr_log); }
inline Real log10(const Real& x) { return unary(x, mpfr_log10); }
inline Real sin(const Real& x) { return unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return unary(x, mpfr_cos); }
inline Real tan(const Real& x) { return unary(x, mpfr_tan); }
inline Real atan(const Real& x) { return unary(x, mpfr_atan); }
inline Real floor(const Real& x) { return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t) { return mpfr_floor(r, a); }); }
inline Real round(const Real& x) { return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t) { return mpfr_round(r, a); }); }

inline Real atan2(const Real& y, const Real& x) {
  Real r(Real::Uninit{}, std::max(y.bits(), x.bits()));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, std::max(a.bits(), b.bits()));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, std::max(a.bits(), b.bits()));
  mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
inline void sin_cos(const Real& x, Real& s, Real& c) {
  mpfr_set_prec(s.v_, x.bits());
  mpfr_set_prec(c.v_, x.bits());
  mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
}
/// pi at the working precision.
inline Real pi() {
  Real r(Real::Uninit{}, detail::working_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}
/// Euler-Mascheroni constant at the working precision.
inline Real euler_gamma() {
  Real r(Real::Uninit{}, detail::working_bits);
  mpfr_const_euler(r.v_, MPFR_RNDN);
  return r;
}
/// 2^-bits at the working precision: one unit of relative rounding.
inline Real epsilon() {
  Real r(1);
  mpfr_mul_2si(r.get(), r.get(), -static_cast<long>(detail::working_bits), MPFR_RNDN);
  return r;
}
/// x * 2^e, exact.
inline Real ldexp(const Real& x, long e) {
  Real r = x;
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

/// `x` rounded to the working precision.
inline Real at_working(const Real& x) { return Real::with_bits(x, detail::working_bits); }

/// 10^e at the working precision.
inline Real pow10(long e) {
  Real r(10);
  mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

inline std::string Real::to_fixed(int places) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNf", places, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  // mpfr honours LC_NUMERIC; normalise to '.' regardless of locale.
  for (char& ch : s)
    if (ch == ',') ch = '.';
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string Real::to_sci(int sig) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNe", sig > 0 ? sig - 1 : 0, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  for (char& ch : s)
    if (ch == ',') ch = '.';
  return s;
}

}  // namespace lzero
