#pragma once

/// \file bernoulli.hpp
/// \brief Exact Bernoulli numbers (B_1 = -1/2 convention), memoised process-wide.

#include <gmpxx.h>

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace lzero {

namespace detail {

class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable table;
    return table;
  }

  mpq_class get(std::size_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    extend(n);
    return values_[n];
  }

  /// B_{2m} / (2m)!, the Euler-Maclaurin and Stirling weight.
  mpq_class scaled_even(std::size_t m) {
    {
      std::shared_lock lock(mutex_);
      if (m < scaled_.size()) return scaled_[m];
    }
    std::unique_lock lock(mutex_);
    extend(2 * m);
    while (scaled_.size() <= m) {
      const std::size_t k = scaled_.size();
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), 2 * k);
      mpq_class q = values_[2 * k] / mpq_class(fact);
      q.canonicalize();
      scaled_.push_back(q);
    }
    return scaled_[m];
  }

 private:
  BernoulliTable() { values_.emplace_back(1); }

  // Caller holds the unique lock. Uses sum_{j=0}^{n} C(n+1, j) B_j = 0.
  void extend(std::size_t n) {
    while (values_.size() <= n) {
      const std::size_t m = values_.size();
      if (m >= 3 && m % 2 == 1) {
        values_.emplace_back(0);
        continue;
      }
      mpq_class sum = 0;
      mpz_class binom = 1;  // C(m+1, 0)
      for (std::size_t j = 0; j < m; ++j) {
        if (!(j >= 3 && j % 2 == 1)) sum += mpq_class(binom) * values_[j];
        binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
      }
      mpq_class b = -sum / mpq_class(static_cast<unsigned long>(m + 1));
      b.canonicalize();
      values_.push_back(b);
    }
  }

  std::shared_mutex mutex_;
  std::vector<mpq_class> values_;
  std::vector<mpq_class> scaled_;
};

}  // namespace detail

/// Exact Bernoulli number B_n. Odd n >= 3 give 0; B_1 = -1/2.
inline mpq_class bernoulli(std::size_t n) { return detail::BernoulliTable::instance().get(n); }

/// B_{2m} / (2m)!.
inline mpq_class bernoulli_scaled_even(std::size_t m) {
  return detail::BernoulliTable::instance().scaled_even(m);
}

}  // namespace lzero
