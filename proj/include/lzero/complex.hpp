#pragma once

/// \file complex.hpp
/// \brief Complex numbers over lzero::Real.

#include <lzero/real.hpp>

#include <complex>

namespace lzero {

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}
  Complex(long r) : re(r), im(0) {}

  std::complex<double> to_double() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
  Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
      Real r = b.im / b.re;
      Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    Real r = b.re / b.im;
    Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
  friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
  friend Complex operator-(long b, const Complex& a) { return {b - a.re, -a.im}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
};

/// `z` rounded to the working precision.
inline Complex at_working(const Complex& z) { return {at_working(z.re), at_working(z.im)}; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
/// Principal argument in (-pi, pi].
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex times_i(const Complex& z) { return {-z.im, z.re}; }

/// e^{i t}
inline Complex expi(const Real& t) {
  Complex r;
  sin_cos(t, r.im, r.re);
  return r;
}

inline Complex exp(const Complex& z) {
  Complex r = expi(z.im);
  Real m = exp(z.re);
  r.re *= m;
  r.im *= m;
  return r;
}

/// Principal logarithm, imaginary part in (-pi, pi].
inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

/// Principal square root.
inline Complex sqrt(const Complex& z) { return exp(log(z) / 2L); }

/// b^s for real b > 0, computed as exp(s log b).
inline Complex pow(const Real& base, const Complex& s) {
  Real lb = log(base);
  Complex r = expi(s.im * lb);
  Real m = exp(s.re * lb);
  r.re *= m;
  r.im *= m;
  return r;
}

namespace detail {
/// w^{-s} for real w > 0, as exp(-sigma log w) * e^{-i t log w}.
inline Complex real_pow_neg(const Real& w, const Complex& s) {
  const Real lw = log(w);
  Complex r = expi(-(s.im * lw));
  const Real m = exp(-(s.re * lw));
  r.re *= m;
  r.im *= m;
  return r;
}

}  // namespace detail

/// Principal power z^s = exp(s log z).
inline Complex pow(const Complex& z, const Complex& s) { return exp(s * log(z)); }

}  // namespace lzero
