#pragma once

/// \file characters.hpp
/// \brief Dirichlet characters stored as exact rotation numbers.
///
/// A character mod k is the row r(1), ..., r(k) with chi(n) = exp(2 pi i r(n)),
/// or r(n) empty when chi(n) = 0. Rotations are kept reduced to [0, 1).
///
/// Canonical order: (Z/kZ)* is generated by one generator per odd prime power
/// (its least primitive root, lifted by CRT), -1 for 4 | k and additionally 5 for
/// 8 | k, taken in increasing prime order. A character is identified by its exponent
/// vector (c_1, ..., c_r) with chi(g_i) = exp(2 pi i c_i / ord g_i), and characters
/// are listed lexicographically in that vector, so index 1 is the principal character.
/// For k = 7 the generator is 3; index 2 has row (0, 1/3, 1/6, 2/3, 5/6, 1/2, -) and
/// index 3 has row (0, 2/3, 1/3, 1/3, 2/3, 0, -).

#include <lzero/complex.hpp>
#include <lzero/errors.hpp>
#include <lzero/precision.hpp>

#include <gmpxx.h>

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lzero {

using Rotation = std::optional<mpq_class>;

namespace detail {

inline long mod_floor(long n, long k) {
  const long r = n % k;
  return r < 0 ? r + k : r;
}

/// Reduce a rational to [0, 1).
inline mpq_class wrap_unit(mpq_class q) {
  q.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  q -= fl;
  q.canonicalize();
  return q;
}

inline std::vector<std::pair<long, int>> factorize(long k) {
  std::vector<std::pair<long, int>> factors;
  for (long p = 2; p * p <= k; ++p) {
    if (k % p != 0) continue;
    int e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (k > 1) factors.emplace_back(k, 1);
  return factors;
}

inline long ipow(long base, int e) {
  long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline long mul_mod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

inline long multiplicative_order(long g, long m) {
  if (m == 1) return 1;
  long x = g % m;
  long order = 1;
  while (x != 1) {
    x = mul_mod(x, g, m);
    ++order;
  }
  return order;
}

/// Solution of x = r mod m, x = 1 mod (k / m), for coprime m and k / m.
inline long crt_lift(long r, long m, long k) {
  const long other = k / m;
  for (long x = r; x < k; x += m)
    if (x % other == 1 % other) return x;
  throw Error("crt_lift: no solution");
}

}  // namespace detail

inline long euler_phi(long k) {
  long phi = k;
  for (const auto& [p, e] : detail::factorize(k)) phi = phi / p * (p - 1);
  return phi;
}

/// Generators of (Z/kZ)* in canonical order, with their orders.
struct UnitGroup {
  long modulus = 1;
  std::vector<long> generators;
  std::vector<long> orders;
  /// exponents[u] gives u = prod g_i^{e_i} mod k for units u; empty for non-units.
  std::vector<std::vector<long>> exponents;
};

inline UnitGroup unit_group(long k) {
  if (k < 1) throw InvalidCharacter("unit_group: modulus must be positive");
  UnitGroup group;
  group.modulus = k;
  for (const auto& [p, e] : detail::factorize(k)) {
    const long pe = detail::ipow(p, e);
    if (p == 2) {
      if (e >= 2) {
        group.generators.push_back(detail::crt_lift(pe - 1, pe, k));
        group.orders.push_back(2);
      }
      if (e >= 3) {
        group.generators.push_back(detail::crt_lift(5, pe, k));
        group.orders.push_back(pe / 4);
      }
      continue;
    }
    const long phi = pe / p * (p - 1);
    long root = 2;
    while (detail::multiplicative_order(root, pe) != phi || root % p == 0) ++root;
    group.generators.push_back(detail::crt_lift(root, pe, k));
    group.orders.push_back(phi);
  }

  group.exponents.assign(static_cast<std::size_t>(k), {});
  std::vector<long> e(group.generators.size(), 0);
  const long total = euler_phi(k);
  for (long count = 0; count < total; ++count) {
    long u = 1 % k;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (long j = 0; j < e[i]; ++j) u = detail::mul_mod(u, group.generators[i], k);
    group.exponents[static_cast<std::size_t>(u)] = e;
    for (std::size_t i = e.size(); i-- > 0;) {
      if (++e[i] < group.orders[i]) break;
      e[i] = 0;
    }
  }
  if (k == 1) group.exponents[0] = {};
  return group;
}

class DirichletCharacter {
 public:
  /// `row` holds r(1), ..., r(k). Throws InvalidCharacter unless every axiom holds.
  DirichletCharacter(long modulus, std::vector<Rotation> row) : k_(modulus) {
    if (k_ < 1) throw InvalidCharacter("character modulus must be positive");
    if (static_cast<long>(row.size()) != k_)
      throw InvalidCharacter("character row must have " + std::to_string(k_) + " entries, got " +
                             std::to_string(row.size()));
    r_.resize(row.size());
    for (long n = 1; n <= k_; ++n) {
      Rotation& entry = row[static_cast<std::size_t>(n - 1)];
      if (entry) entry = detail::wrap_unit(*entry);
      r_[static_cast<std::size_t>(n % k_)] = std::move(entry);
    }
    validate();
  }

  long modulus() const { return k_; }
  const Rotation& rotation(long n) const { return r_[static_cast<std::size_t>(detail::mod_floor(n, k_))]; }
  bool vanishes_at(long n) const { return !rotation(n).has_value(); }

  /// r(1), ..., r(k).
  std::vector<Rotation> row() const {
    std::vector<Rotation> out;
    out.reserve(r_.size());
    for (long n = 1; n <= k_; ++n) out.push_back(rotation(n));
    return out;
  }

  /// chi(n) at the working precision; quarter turns are exact.
  Complex value(long n) const {
    const Rotation& r = rotation(n);
    if (!r) return Complex(0);
    if (*r == 0) return Complex(1);
    if (*r == mpq_class(1, 2)) return Complex(-1);
    if (*r == mpq_class(1, 4)) return Complex(Real(0), Real(1));
    if (*r == mpq_class(3, 4)) return Complex(Real(0), Real(-1));
    return expi(pi() * 2L * Real(*r));
  }

  /// a = 0 when chi(-1) = 1, a = 1 when chi(-1) = -1.
  int parity() const {
    const Rotation& r = rotation(k_ - 1);
    if (r && *r == 0) return 0;
    if (r && *r == mpq_class(1, 2)) return 1;
    throw InvalidCharacter("chi(-1) is not +-1");
  }

  bool is_principal() const {
    for (const Rotation& r : r_)
      if (r && *r != 0) return false;
    return true;
  }

  bool is_real() const {
    for (const Rotation& r : r_)
      if (r && *r != 0 && *r != mpq_class(1, 2)) return false;
    return true;
  }

  DirichletCharacter conjugate() const {
    std::vector<Rotation> out = row();
    for (Rotation& r : out)
      if (r) r = detail::wrap_unit(-*r);
    return DirichletCharacter(k_, std::move(out));
  }

  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.k_ != b.k_) throw InvalidCharacter("product of characters with different moduli");
    std::vector<Rotation> out;
    for (long n = 1; n <= a.k_; ++n) {
      const Rotation& ra = a.rotation(n);
      const Rotation& rb = b.rotation(n);
      out.push_back(ra && rb ? Rotation(*ra + *rb) : std::nullopt);
    }
    return DirichletCharacter(a.k_, std::move(out));
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.k_ == b.k_ && a.r_ == b.r_;
  }

 private:
  void validate() const {
    const long phi = euler_phi(k_);
    for (long n = 0; n < k_; ++n) {
      const bool unit = std::gcd(n, k_) == 1;
      const Rotation& r = rotation(n);
      if (unit != r.has_value())
        throw InvalidCharacter("chi(" + std::to_string(n == 0 ? k_ : n) + ") must be " +
                               (unit ? "nonzero" : "zero"));
      if (r) {
        const mpq_class scaled = *r * phi;
        if (scaled.get_den() != 1)
          throw InvalidCharacter("chi(" + std::to_string(n == 0 ? k_ : n) + ") is not a phi(k)-th root of unity");
      }
    }
    if (!rotation(1) || *rotation(1) != 0) throw InvalidCharacter("chi(1) must be 1");
    for (long m = 1; m < k_; ++m) {
      if (!rotation(m)) continue;
      for (long n = m; n < k_; ++n) {
        if (!rotation(n)) continue;
        const Rotation& product = rotation(detail::mul_mod(m, n, k_));
        if (detail::wrap_unit(*rotation(m) + *rotation(n)) != *product)
          throw InvalidCharacter("chi is not multiplicative at (" + std::to_string(m) + ", " +
                                 std::to_string(n) + ")");
      }
    }
  }

  long k_;
  std::vector<Rotation> r_;  // indexed by n mod k
};

/// The phi(k) characters mod k in canonical order (see file comment).
inline std::vector<DirichletCharacter> enumerate_characters(long k) {
  const UnitGroup group = unit_group(k);
  const std::size_t rank = group.generators.size();
  std::vector<DirichletCharacter> out;
  std::vector<long> c(rank, 0);
  const long total = euler_phi(k);
  out.reserve(static_cast<std::size_t>(total));
  for (long count = 0; count < total; ++count) {
    std::vector<Rotation> row;
    row.reserve(static_cast<std::size_t>(k));
    for (long n = 1; n <= k; ++n) {
      const auto& e = group.exponents[static_cast<std::size_t>(n % k)];
      if (std::gcd(n, k) != 1) {
        row.emplace_back(std::nullopt);
        continue;
      }
      mpq_class r = 0;
      for (std::size_t i = 0; i < rank; ++i) r += mpq_class(c[i] * e[i], group.orders[i]);
      row.emplace_back(detail::wrap_unit(r));
    }
    out.emplace_back(k, std::move(row));
    for (std::size_t i = rank; i-- > 0;) {
      if (++c[i] < group.orders[i]) break;
      c[i] = 0;
    }
  }
  return out;
}

/// 1-based position of `chi` in enumerate_characters(chi.modulus()).
inline long canonical_index(const DirichletCharacter& chi) {
  const auto all = enumerate_characters(chi.modulus());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == chi) return static_cast<long>(i) + 1;
  throw InvalidCharacter("character not found in canonical enumeration");
}

/// Character mod `modulus` (a multiple of the primitive modulus) induced by `primitive`.
inline DirichletCharacter induce(const DirichletCharacter& primitive, long modulus) {
  if (modulus % primitive.modulus() != 0) throw InvalidCharacter("induce: modulus is not a multiple");
  std::vector<Rotation> row;
  for (long n = 1; n <= modulus; ++n)
    row.push_back(std::gcd(n, modulus) == 1 ? primitive.rotation(n) : std::nullopt);
  return DirichletCharacter(modulus, std::move(row));
}

struct InducingCharacter {
  long conductor;
  DirichletCharacter character;
};

/// Conductor f and the primitive character mod f inducing `chi`.
inline InducingCharacter conductor(const DirichletCharacter& chi) {
  const long k = chi.modulus();
  for (long f = 1; f <= k; ++f) {
    if (k % f != 0) continue;
    bool trivial_on_kernel = true;
    for (long u = 1; u <= k && trivial_on_kernel; ++u)
      if (std::gcd(u, k) == 1 && u % f == 1 % f && *chi.rotation(u) != 0) trivial_on_kernel = false;
    if (!trivial_on_kernel) continue;
    std::vector<Rotation> row;
    for (long r = 1; r <= f; ++r) {
      if (std::gcd(r, f) != 1) {
        row.emplace_back(std::nullopt);
        continue;
      }
      long u = r;
      while (std::gcd(u, k) != 1) u += f;
      row.push_back(chi.rotation(u));
    }
    return {f, DirichletCharacter(f, std::move(row))};
  }
  throw Error("conductor: unreachable");
}

inline bool is_primitive(const DirichletCharacter& chi) { return conductor(chi).conductor == chi.modulus(); }

struct GaussSum {
  Complex value;
  Real modulus_squared;
  /// Principal argument in (-pi, pi].
  Real argument;
};

/// G(chi) = sum_{m=1}^{k} chi(m) exp(2 pi i m / k).
inline GaussSum gauss_sum(const DirichletCharacter& chi, const PrecisionContext& ctx) {
  const long k = chi.modulus();
  WorkingPrecision wp(ctx.bits(magnitude_digits(static_cast<double>(k)) + 1));
  Complex sum(0);
  for (long m = 1; m <= k; ++m) {
    const Rotation& r = chi.rotation(m);
    if (!r) continue;
    const mpq_class turn = detail::wrap_unit(*r + mpq_class(m, k));
    sum += expi(pi() * 2L * Real(turn));
  }
  GaussSum g{sum, norm(sum), arg(sum)};
  return g;
}

}  // namespace lzero
