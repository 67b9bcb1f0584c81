#pragma once

// Slow, simple reference computations that share no code path with the library's
// production routines. Each takes its own working precision from the caller.

#include <lzero/characters.hpp>
#include <lzero/complex.hpp>
#include <lzero/real.hpp>

#include <gmpxx.h>

#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace lzero {

// Lets test assertions print Real values.
inline void PrintTo(const Real& x, std::ostream* os) { *os << x.to_sci(25); }

}  // namespace lzero

namespace lzero::reference {

/// B_2, B_4, ..., B_12 as used by the Euler-Maclaurin tails below.
inline constexpr long kBernoulliEven[][2] = {{1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}, {-691, 2730}};

/// log Gamma(z) from the Weierstrass product
///   -gamma z - log z + sum_{n>=1} [z/n - log(1 + z/n)],
/// summed directly below `terms` and by Euler-Maclaurin from there on.
inline Complex log_gamma_series(const Complex& z, long terms) {
  Complex sum = -(z * euler_gamma()) - log(z);
  for (long n = 1; n < terms; ++n) {
    const Complex w = z / Real(n);
    sum += w - log(Complex(1) + w);
  }
  // f(x) = z/x - log(x + z) + log x, integrated from N to infinity in closed form.
  const Real N(terms);
  const Complex Nz = z + N;
  const Complex integral = Nz * log(Nz) - Complex(N * log(N)) - z * log(N) - z;
  const Complex fN = z / N - log(Nz) + log(N);
  sum += integral + fN / 2L;
  // f^{(m)}(x) = (-1)^m m! z / x^{m+1} + (-1)^m (m-1)! [1/(x+z)^m - 1/x^m].
  Real factorial(1);  // (m - 1)!
  for (int k = 1; k <= 6; ++k) {
    const long m = 2 * k - 1;
    if (m > 1) factorial *= (m - 1) * (m - 2);
    const Complex derivative =
        -(z * factorial * m / pow(N, Real(m + 1))) - Complex(factorial) / exp(log(Nz) * Real(m)) + Complex(factorial / pow(N, Real(m)));
    Real weight = Real(kBernoulliEven[k - 1][0]) / kBernoulliEven[k - 1][1];
    for (long j = 1; j <= 2 * k; ++j) weight /= j;
    sum -= derivative * weight;
  }
  return sum;
}

/// zeta(s, q) = sum_{m < M} (m + q)^{-s} plus an Euler-Maclaurin tail from M.
inline Complex hurwitz_brute_force(const Complex& s, const Real& q, long terms) {
  Complex sum(0);
  for (long m = 0; m < terms; ++m) sum += exp(-(s * log(Complex(q + m))));
  const Real w = q + terms;
  const Complex log_w(log(w));
  const Complex w_neg_s = exp(-(s * log_w));
  sum += w_neg_s * w / (s - Complex(1)) + w_neg_s / 2L;
  // f^{(m)}(x) = (-s)(-s-1)...(-s-m+1) (x)^{-s-m}.
  Complex falling(1);
  long order = 0;
  for (int k = 1; k <= 6; ++k) {
    const long m = 2 * k - 1;
    while (order < m) {
      falling *= -(s + Complex(order));
      ++order;
    }
    const Complex derivative = falling * w_neg_s / pow(w, Real(m));
    Real weight = Real(kBernoulliEven[k - 1][0]) / kBernoulliEven[k - 1][1];
    for (long j = 1; j <= 2 * k; ++j) weight /= j;
    sum -= derivative * weight;
  }
  return sum;
}

/// chi(n) as a complex number, computed from the rotation number directly.
inline Complex character_value(const DirichletCharacter& chi, long n) {
  const Rotation r = chi.rotation(n);
  if (!r) return Complex(0);
  const Real angle = pi() * 2L * Real(*r);
  return {cos(angle), sin(angle)};
}

/// sum_{n<=N} chi(n) n^{-s} with N = blocks k, plus the tails
/// sum_{j>=0} (m + N + jk)^{-s} = k^{-s} sum_{j>=0} ((m + N)/k + j)^{-s} by Euler-Maclaurin.
inline Complex dirichlet_series(const DirichletCharacter& chi, const Complex& s, long blocks) {
  const long k = chi.modulus();
  Complex sum(0);
  for (long n = 1; n <= blocks * k; ++n) {
    if (!chi.rotation(n)) continue;
    sum += character_value(chi, n) * exp(-(s * log(Complex(Real(n)))));
  }
  const Complex k_neg_s = exp(-(s * log(Complex(Real(k)))));
  for (long m = 1; m <= k; ++m) {
    if (!chi.rotation(m)) continue;
    const Real start(mpq_class(m + blocks * k, k));
    sum += character_value(chi, m) * k_neg_s * hurwitz_brute_force(s, start, 0);
  }
  return sum;
}

/// Exact B_0..B_n from sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<mpq_class> bernoulli_recurrence(std::size_t n) {
  std::vector<mpq_class> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      acc += mpq_class(binom) * b[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[m] = -acc / mpq_class(static_cast<long>(m + 1));
  }
  return b;
}

/// sigma_11(n).
inline mpz_class sigma11(long n) {
  mpz_class total = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), 11);
    total += p;
  }
  return total;
}

/// Agreement in decimal places: floor(-log10 |a - b|), capped at `cap`.
inline int agreeing_places(const Real& a, const Real& b, int cap) {
  const Real diff = abs(a - b);
  if (diff.is_zero()) return cap;
  const double places = -log10(diff).to_double();
  return places >= cap ? cap : static_cast<int>(places);
}

}  // namespace lzero::reference
