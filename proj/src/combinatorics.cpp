#include "hypersum/combinatorics.hpp"

#include <mutex>
#include <vector>

namespace hypersum {

Rational pochhammer(const Rational& a, unsigned n) {
  Rational result = 1;
  Rational factor = a;
  for (unsigned i = 0; i < n; ++i) {
    result *= factor;
    factor += 1;
  }
  return result;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

std::mutex stirling_mutex;
std::vector<std::vector<Integer>> stirling_rows{{Integer(1)}};

std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_table{Rational(1)};

}  // namespace

Integer stirling2(unsigned j, unsigned k) {
  if (k > j) return 0;
  std::lock_guard lock(stirling_mutex);
  while (stirling_rows.size() <= j) {
    const auto& prev = stirling_rows.back();
    const std::size_t n = stirling_rows.size();
    std::vector<Integer> row(n + 1);
    for (std::size_t c = 1; c <= n; ++c) {
      const Integer same = c < prev.size() ? prev[c] : Integer(0);
      row[c] = Integer(static_cast<unsigned long>(c)) * same + prev[c - 1];
    }
    stirling_rows.push_back(std::move(row));
  }
  return stirling_rows[j][k];
}

Rational bernoulli(unsigned n) {
  std::lock_guard lock(bernoulli_mutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  while (bernoulli_table.size() <= n) {
    const unsigned m = static_cast<unsigned>(bernoulli_table.size());
    Rational acc;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * bernoulli_table[j];
    bernoulli_table.push_back(-acc / Rational(m + 1));
  }
  return bernoulli_table[n];
}

namespace {

template <class T>
T hermite_recurrence(unsigned k, const T& x, const T& one) {
  if (k == 0) return one;
  T prev = one;
  T curr = x * Rational(2);
  for (unsigned n = 1; n < k; ++n) {
    T next = x * curr * Rational(2) - prev * Rational(2 * n);
    prev = std::move(curr);
    curr = std::move(next);
  }
  return curr;
}

}  // namespace

Rational hermite(unsigned k, const Rational& at) { return hermite_recurrence(k, at, Rational(1)); }

TruncatedSeries hermite(unsigned k, const TruncatedSeries& at) {
  return hermite_recurrence(k, at, TruncatedSeries::constant(1, at.order()));
}

}  // namespace hypersum
