#pragma once

// d_k symmetry sums split by the first factor above (N-h)^{1/k}, and the
// growth audit of I_{d_k}, J_k against N h (log N)^{k+1}.

#include "symint/arith_core.hpp"
#include "symint/integrals.hpp"
#include "symint/rational.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace symint {

struct DecompositionParams {
  int k = 3;
  std::int64_t N = 0;
  std::int64_t h = 0;
  std::int64_t threshold = 0;  ///< floor((N-h)^{1/k})

  static DecompositionParams make(int k, std::int64_t N, std::int64_t h) {
    if (k < 3) throw std::invalid_argument("decomposition: k must be >= 3");
    if (h < 1 || N <= h) throw std::invalid_argument("decomposition: need 1 <= h < N");
    DecompositionParams p{k, N, h, integer_root(N - h, k)};
    if (p.threshold < 2) {
      throw std::invalid_argument("decomposition: threshold floor((N-h)^{1/k}) = " +
                                  std::to_string(p.threshold) + " < 2");
    }
    return p;
  }

  /// Largest q with q * threshold <= x + h.
  std::int64_t q_max(std::int64_t x) const { return (x + h) / threshold; }
};

struct DecomposedSum {
  std::int64_t direct = 0;
  std::int64_t decomposed = 0;
};

/// Evaluates S_k(x) both directly and through
/// sum_j sum_q d_{k-1}^{(j)}(q) sum_{m >= threshold, |mq - x| <= h} sgn(mq - x).
class DkDecomposer {
 public:
  explicit DkDecomposer(const DecompositionParams& params)
      : params_(params),
        dk_(sieve_divisor_k(params.k, 2 * params.N + params.h)),
        prefix_(dk_) {
    const std::int64_t top = params.q_max(2 * params.N - 1);
    for (int j = 0; j <= params.k - 1; ++j) {
      restricted_.push_back(restricted_divisor_table(params.k - 1, j, std::max<std::int64_t>(top, 1),
                                                     params.threshold));
    }
  }

  const DecompositionParams& params() const { return params_; }

  DecomposedSum operator()(std::int64_t x) const {
    const auto& p = params_;
    if (x < p.N || x >= 2 * p.N) throw std::invalid_argument("decomposition: need N <= x < 2N");
    DecomposedSum out;
    out.direct = static_cast<std::int64_t>(symmetry_sum(prefix_, x, p.h, false));
    __int128 total = 0;
    for (std::int64_t q = 1; q <= p.q_max(x); ++q) {
      // m with |m q - x| <= h and m >= threshold
      const std::int64_t lo = std::max(p.threshold, (x - p.h + q - 1) / q);
      const std::int64_t hi = (x + p.h) / q;
      std::int64_t signed_count = 0;
      for (std::int64_t m = lo; m <= hi; ++m) {
        const std::int64_t n = m * q;
        signed_count += (n > x) - (n < x);
      }
      if (signed_count == 0) continue;
      for (const auto& table : restricted_) total += static_cast<__int128>(table[q]) * signed_count;
    }
    out.decomposed = static_cast<std::int64_t>(total);
    return out;
  }

 private:
  DecompositionParams params_;
  IntTable dk_;
  PrefixSums<std::int64_t> prefix_;
  std::vector<IntTable> restricted_;
};

inline DecomposedSum decompose_dk_symmetry_sum(const DecompositionParams& params, std::int64_t x) {
  return DkDecomposer(params)(x);
}

/// h = floor(N^theta) for rational theta >= 0, by exact integer comparisons.
inline std::int64_t floor_power(std::int64_t N, const Rational& theta) {
  if (N < 1) throw std::invalid_argument("floor_power: N must be >= 1");
  if (theta < 0) throw std::invalid_argument("floor_power: theta must be >= 0");
  const BigInt a = numerator_of(theta);
  const BigInt b = denominator_of(theta);
  if (a > 64 || b > 64) throw std::invalid_argument("floor_power: exponent parts too large");
  const auto ai = a.convert_to<unsigned>();
  const auto bi = b.convert_to<unsigned>();
  const BigInt target = boost::multiprecision::pow(BigInt(N), ai);  // t^b <= N^a
  auto guess = static_cast<std::int64_t>(std::pow(static_cast<long double>(N), static_cast<long double>(ai) / bi));
  auto le = [&](std::int64_t t) { return boost::multiprecision::pow(BigInt(t), bi) <= target; };
  while (guess > 0 && !le(guess)) --guess;
  while (le(guess + 1)) ++guess;
  return guess;
}

struct GrowthPoint {
  int k = 3;
  Rational theta;
  std::int64_t N = 0;
  std::int64_t h = 0;
  Rational I_dk;      ///< continuous symmetry integral, exact
  double J_k = 0.0;   ///< Selberg integral with the fitted log-polynomial mean
  double rho_I = 0.0; ///< I_dk / (N h L^{k+1})
  double rho_J = 0.0;
  double runtime_ms = 0.0;
};

/// Growth ratios at one N using an existing d_k table (limit >= 2N + h).
inline GrowthPoint corollary_growth_ratio(const IntTable& dk, int k, const Rational& theta, std::int64_t N) {
  if (k < 3) throw std::invalid_argument("growth: k must be >= 3");
  if (theta <= 0 || theta >= Rational(BigInt(1), BigInt(k))) {
    throw std::invalid_argument("growth: need 0 < theta < 1/k");
  }
  const auto start = std::chrono::steady_clock::now();
  GrowthPoint pt;
  pt.k = k;
  pt.theta = theta;
  pt.N = N;
  pt.h = floor_power(N, theta);
  if (pt.h < 2) throw std::invalid_argument("growth: h = floor(N^theta) must be >= 2");
  pt.I_dk = symmetry_integral(dk, N, pt.h, IntegralMode::continuous).exact_value();
  const auto model = fit_log_polynomial(dk, N, pt.h, k);
  pt.J_k = to_double(selberg_integral(dk, N, pt.h, model).value);
  const double L = std::log(static_cast<double>(N));
  const double scale = static_cast<double>(N) * static_cast<double>(pt.h) * std::pow(L, k + 1);
  pt.rho_I = to_double(pt.I_dk) / scale;
  pt.rho_J = pt.J_k / scale;
  pt.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return pt;
}

inline GrowthPoint corollary_growth_ratio(int k, const Rational& theta, std::int64_t N) {
  if (k < 3) throw std::invalid_argument("growth: k must be >= 3");
  if (theta <= 0 || theta >= Rational(BigInt(1), BigInt(k))) {
    throw std::invalid_argument("growth: need 0 < theta < 1/k");
  }
  const std::int64_t h = floor_power(N, theta);
  return corollary_growth_ratio(sieve_divisor_k(k, 2 * N + h), k, theta, N);
}

struct HarmonicCheck {
  double sum = 0.0;          ///< sum_{n <= x} d_{k-1}(n)/n
  double floor_bound = 0.0;  ///< (log x / (k-1))^{k-1}
  bool holds() const { return sum >= floor_bound; }
};

inline HarmonicCheck divisor_harmonic_lower_check(int k, std::int64_t x) {
  if (k < 2) throw std::invalid_argument("harmonic check: k must be >= 2");
  if (x < 2) throw std::invalid_argument("harmonic check: x must be >= 2");
  const auto d = sieve_divisor_k(k - 1, x);
  long double s = 0.0L;
  for (std::int64_t n = 1; n <= x; ++n) s += static_cast<long double>(d[n]) / n;
  HarmonicCheck c;
  c.sum = static_cast<double>(s);
  c.floor_bound = std::pow(std::log(static_cast<double>(x)) / (k - 1), k - 1);
  return c;
}

}  // namespace symint
