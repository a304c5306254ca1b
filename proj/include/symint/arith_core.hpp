#pragma once

// Sieves, Dirichlet convolution against 1, Ramanujan coefficients,
// restricted divisor counts and the few analytic constants used elsewhere.

#include "symint/checked.hpp"
#include "symint/function_table.hpp"
#include "symint/rational.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace symint {

namespace detail {

inline void require_limit(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("limit must be >= 1");
}

}  // namespace detail

/// Smallest prime factor of every n <= limit (spf[1] = 1), plus the primes.
struct LinearSieve {
  std::vector<std::int32_t> spf;
  std::vector<std::int32_t> primes;

  explicit LinearSieve(std::int64_t limit) : spf(static_cast<std::size_t>(limit) + 1, 0) {
    detail::require_limit(limit);
    if (limit > INT32_MAX) throw std::invalid_argument("LinearSieve: limit too large");
    spf[1] = 1;
    for (std::int64_t i = 2; i <= limit; ++i) {
      if (spf[static_cast<std::size_t>(i)] == 0) {
        spf[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
        primes.push_back(static_cast<std::int32_t>(i));
      }
      for (std::int32_t p : primes) {
        if (p > spf[static_cast<std::size_t>(i)] || i * p > limit) break;
        spf[static_cast<std::size_t>(i * p)] = p;
      }
    }
  }
};

inline IntTable sieve_mobius(std::int64_t limit) {
  detail::require_limit(limit);
  LinearSieve sieve(limit);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(limit) + 1, 0);
  mu[1] = 1;
  for (std::int64_t n = 2; n <= limit; ++n) {
    const std::int64_t p = sieve.spf[static_cast<std::size_t>(n)];
    const std::int64_t m = n / p;
    mu[static_cast<std::size_t>(n)] = (m % p == 0) ? 0 : -mu[static_cast<std::size_t>(m)];
  }
  return IntTable::from_indexed(std::move(mu), "mu");
}

/// C(a + k - 1, k - 1) = d_k(p^a), with overflow checks.
inline std::int64_t prime_power_divisor_count(int k, std::int64_t a) {
  // Multiplicative build: C(a+k-1, a) = prod_{i=1..a} (k-1+i)/i, exact at each step.
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= a; ++i) {
    __int128 next = static_cast<__int128>(c) * (k - 1 + i);
    next /= i;
    if (next > INT64_MAX) throw OverflowError("d_k value exceeds int64");
    c = static_cast<std::int64_t>(next);
  }
  return c;
}

/// d_k(n) on [1, limit] via the linear sieve and multiplicativity.
inline IntTable sieve_divisor_k(int k, std::int64_t limit) {
  if (k < 1) throw std::invalid_argument("sieve_divisor_k: k must be >= 1");
  detail::require_limit(limit);
  LinearSieve sieve(limit);
  std::vector<std::int64_t> dk(static_cast<std::size_t>(limit) + 1, 0);
  // exponent of the smallest prime, and n with that prime power removed
  std::vector<std::int32_t> expo(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<std::int64_t> rest(static_cast<std::size_t>(limit) + 1, 1);
  dk[1] = 1;
  for (std::int64_t n = 2; n <= limit; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const std::int64_t p = sieve.spf[un];
    const std::int64_t m = n / p;
    const auto um = static_cast<std::size_t>(m);
    if (m % p == 0) {
      expo[un] = expo[um] + 1;
      rest[un] = rest[um];
    } else {
      expo[un] = 1;
      rest[un] = m;
    }
    dk[un] = checked_mul(dk[static_cast<std::size_t>(rest[un])],
                         prime_power_divisor_count(k, expo[un]));
  }
  return IntTable::from_indexed(std::move(dk), "d" + std::to_string(k));
}

/// f(n) = sum_{d | n, d <= Q} g(d), exactly.
inline RationalTable convolve_with_unit(const SieveWeights& g, std::int64_t limit) {
  detail::require_limit(limit);
  std::vector<Rational> f(static_cast<std::size_t>(limit) + 1, Rational(0));
  const std::int64_t top = std::min(g.support(), limit);
  for (std::int64_t d = 1; d <= top; ++d) {
    const Rational c = g(d);
    if (c == 0) continue;
    for (std::int64_t n = d; n <= limit; n += d) f[static_cast<std::size_t>(n)] += c;
  }
  return RationalTable::from_indexed(std::move(f), g.label() + "*1");
}

/// Integer-valued g * 1 scaled by `scale` (so that scale*g is integral).
inline IntTable convolve_with_unit_scaled(const SieveWeights& g, const BigInt& scale,
                                          std::int64_t limit) {
  detail::require_limit(limit);
  std::vector<std::int64_t> f(static_cast<std::size_t>(limit) + 1, 0);
  const std::int64_t top = std::min(g.support(), limit);
  for (std::int64_t d = 1; d <= top; ++d) {
    Rational scaled = g(d) * Rational(scale);
    if (!is_integer(scaled)) throw std::invalid_argument("scale does not clear denominators");
    BigInt z = numerator_of(scaled);
    if (z > BigInt(INT64_MAX) || z < BigInt(INT64_MIN)) throw OverflowError("scaled weight exceeds int64");
    const auto c = z.convert_to<std::int64_t>();
    if (c == 0) continue;
    for (std::int64_t n = d; n <= limit; n += d) {
      f[static_cast<std::size_t>(n)] = checked_add(f[static_cast<std::size_t>(n)], c);
    }
  }
  return IntTable::from_indexed(std::move(f), g.label() + "*1");
}

/// l * R_l(g * 1) = sum_{n <= Q/l} g(l n) / n.
inline Rational scaled_ramanujan_coefficient(const SieveWeights& g, std::int64_t ell) {
  if (ell < 1) throw std::invalid_argument("ramanujan_coefficient: ell must be >= 1");
  std::vector<Rational> terms;
  for (std::int64_t n = 1; n * ell <= g.support(); ++n) {
    terms.push_back(g(n * ell) / Rational(n));
  }
  return exact_sum(std::move(terms));
}

/// R_l(f) for f = g * 1: (1/l) sum_n g(l n)/n. Zero once l exceeds the support.
inline Rational ramanujan_coefficient(const SieveWeights& g, std::int64_t ell) {
  return scaled_ramanujan_coefficient(g, ell) / Rational(ell);
}

inline double inverse_zeta2() { return 6.0 / (std::numbers::pi * std::numbers::pi); }

struct MobiusSquareSum {
  Rational value;   ///< sum_{t <= T} mu(t)/t^2, exact
  double deviation; ///< |value - 6/pi^2|
};

inline MobiusSquareSum mobius_square_partial_sum(std::int64_t T) {
  if (T < 1) throw std::invalid_argument("mobius_square_partial_sum: T must be >= 1");
  auto mu = sieve_mobius(T);
  std::vector<Rational> terms;
  for (std::int64_t t = 1; t <= T; ++t) {
    if (mu[t] != 0) terms.push_back(Rational(BigInt(mu[t]), BigInt(t) * t));
  }
  Rational value = exact_sum(std::move(terms));
  return {value, std::abs(to_double(value) - inverse_zeta2())};
}

/// Ordered (k-1)-tuples with product q whose first j entries are < threshold.
inline std::int64_t restricted_divisor_count(int k_minus_1, int j, std::int64_t q,
                                             std::int64_t threshold) {
  if (k_minus_1 < 1) throw std::invalid_argument("restricted_divisor_count: k-1 must be >= 1");
  if (j < 0 || j > k_minus_1) throw std::invalid_argument("restricted_divisor_count: j outside [0, k-1]");
  if (q < 1 || threshold < 1) throw std::invalid_argument("restricted_divisor_count: q, threshold must be >= 1");
  // count(pos, m): tuples (d_pos, ..., d_{k-1}) with product m
  auto count = [&](auto&& self, int pos, std::int64_t m) -> std::int64_t {
    if (pos == k_minus_1) return m == 1 ? 1 : 0;
    std::int64_t total = 0;
    const std::int64_t cap = pos < j ? std::min(m, threshold - 1) : m;
    for (std::int64_t d = 1; d <= cap; ++d) {
      if (m % d == 0) total = checked_add(total, self(self, pos + 1, m / d));
    }
    return total;
  };
  return count(count, 0, q);
}

/// Batch form of restricted_divisor_count over [1, limit]:
/// (1_{<threshold})^{*j} * 1^{*(k-1-j)}.
inline IntTable restricted_divisor_table(int k_minus_1, int j, std::int64_t limit,
                                         std::int64_t threshold) {
  if (k_minus_1 < 1) throw std::invalid_argument("restricted_divisor_table: k-1 must be >= 1");
  if (j < 0 || j > k_minus_1) throw std::invalid_argument("restricted_divisor_table: j outside [0, k-1]");
  detail::require_limit(limit);
  std::vector<std::int64_t> cur(static_cast<std::size_t>(limit) + 1, 0);
  cur[1] = 1;
  for (int step = 0; step < k_minus_1; ++step) {
    const std::int64_t cap = step < j ? std::min(threshold - 1, limit) : limit;
    std::vector<std::int64_t> next(cur.size(), 0);
    for (std::int64_t a = 1; a <= limit; ++a) {
      const std::int64_t ca = cur[static_cast<std::size_t>(a)];
      if (ca == 0) continue;
      for (std::int64_t d = 1; d <= cap && a * d <= limit; ++d) {
        auto& slot = next[static_cast<std::size_t>(a * d)];
        slot = checked_add(slot, ca);
      }
    }
    cur = std::move(next);
  }
  return IntTable::from_indexed(std::move(cur),
                                "d" + std::to_string(k_minus_1) + "^(" + std::to_string(j) + ")");
}

/// sum_{j=0}^{k-1} d_{k-1}^{(j)}(q).
inline std::int64_t corollary_weight(int k, std::int64_t q, std::int64_t threshold) {
  if (k < 3) throw std::invalid_argument("corollary_weight: k must be >= 3");
  std::int64_t total = 0;
  for (int j = 0; j <= k - 1; ++j) {
    total = checked_add(total, restricted_divisor_count(k - 1, j, q, threshold));
  }
  return total;
}

/// Divisors of n in increasing order (trial division; n is small here).
inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace symint
