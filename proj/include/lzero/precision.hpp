#pragma once

#include <lzero/real.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lzero {

/// Target accuracy of a computation: absolute error below 10^-digits, carried out
/// with `guard` extra working digits.
struct PrecisionContext {
  int digits = 30;
  int guard = 15;

  PrecisionContext() = default;
  PrecisionContext(int digits_, int guard_ = 15) : digits(digits_), guard(guard_) {
    if (digits < 10) throw std::invalid_argument("PrecisionContext: digits must be >= 10, got " + std::to_string(digits));
    if (guard < 5) throw std::invalid_argument("PrecisionContext: guard must be >= 5, got " + std::to_string(guard));
  }

  int working_digits(int extra = 0) const { return digits + guard + std::max(extra, 0); }
  mpfr_prec_t bits(int extra = 0) const { return digits_to_bits(working_digits(extra)); }
  /// Same guard, different target.
  PrecisionContext with_digits(int d) const { return PrecisionContext(std::max(d, 10), guard); }
};

/// Decimal digits needed to the left of the point for a value of size `magnitude`.
inline int magnitude_digits(double magnitude) {
  magnitude = std::fabs(magnitude);
  return magnitude > 1.0 ? static_cast<int>(std::ceil(std::log10(magnitude))) : 0;
}

}  // namespace lzero
