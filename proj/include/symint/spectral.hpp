#pragma once

// The window character chi_q, its finite Fourier expansion, and exact
// power sums of the expansion coefficients.
//
// Two sign conventions are supported throughout. Plain: weight sgn(r) on
// |r| <= h. Dashed: the same, except r = 0 carries -1 and r = -h carries 0
// (so the window is x-h < n <= x+h with n = x counted negatively).

#include "symint/arith_core.hpp"
#include "symint/rational.hpp"

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace symint {

using Complex = std::complex<double>;

/// Sign weight of offset r = n - x inside a window of half-length h.
inline int window_weight(std::int64_t r, std::int64_t h, bool dashed) {
  if (r > h || r < -h) return 0;
  if (dashed) {
    if (r == 0) return -1;
    if (r == -h) return 0;
  }
  return (r > 0) - (r < 0);
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

/// chi_q(x): signed count of multiples of q in the window around x.
inline std::int64_t chi_window(std::int64_t q, std::int64_t h, std::int64_t x, bool dashed) {
  if (q < 1 || h < 1) throw std::invalid_argument("chi_window: q, h must be >= 1");
  if (x <= h) throw std::invalid_argument("chi_window: need x > h");
  std::int64_t first = x - h;
  first += floor_mod(-first, q);  // smallest multiple of q >= x - h
  std::int64_t total = 0;
  for (std::int64_t n = first; n <= x + h; n += q) total += window_weight(n - x, h, dashed);
  return total;
}

/// A(a) = sum_{|r| <= h, r = a mod q} w(r), for a in [0, q).
inline std::vector<std::int64_t> residue_counts(std::int64_t q, std::int64_t h, bool dashed) {
  if (q < 1 || h < 1) throw std::invalid_argument("residue_counts: q, h must be >= 1");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
  for (std::int64_t r = -h; r <= h; ++r) {
    counts[static_cast<std::size_t>(floor_mod(r, q))] += window_weight(r, h, dashed);
  }
  return counts;
}

/// e_q(m) = exp(2 pi i m / q) with m reduced mod q first.
inline Complex additive_character(std::int64_t m, std::int64_t q) {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(floor_mod(m, q)) /
                       static_cast<double>(q);
  return {std::cos(phase), std::sin(phase)};
}

/// c_{j,q} = (1/q) sum_{|r| <= h} w(r) e_q(r j).
inline Complex window_fourier_coefficient(std::int64_t q, std::int64_t h, std::int64_t j,
                                          bool dashed) {
  if (q < 1 || h < 1) throw std::invalid_argument("window_fourier_coefficient: q, h must be >= 1");
  if (j < 0 || j >= q) throw std::invalid_argument("window_fourier_coefficient: need 0 <= j < q");
  Complex sum{0.0, 0.0};
  for (std::int64_t r = -h; r <= h; ++r) {
    const int w = window_weight(r, h, dashed);
    if (w != 0) sum += static_cast<double>(w) * additive_character(floor_mod(r, q) * j, q);
  }
  return sum / static_cast<double>(q);
}

struct PowerSumComparison {
  Rational exact;        ///< sum_{j<q} |c_{j,q}|^2 from residue-class counts
  Rational closed_form;  ///< 2 ||h/q||
  bool matches() const { return exact == closed_form; }
};

/// sum_{j<q} |c_{j,q}|^2 = (1/q) sum_a A(a)^2, next to the closed form 2||h/q||.
inline PowerSumComparison coefficient_power_sum(std::int64_t q, std::int64_t h, bool dashed) {
  const auto counts = residue_counts(q, h, dashed);
  std::int64_t squares = 0;
  for (std::int64_t a : counts) squares += a * a;
  return {Rational(BigInt(squares), BigInt(q)),
          Rational(2) * nearest_integer_distance(Rational(BigInt(h), BigInt(q)))};
}

/// Coefficients of one window character plus its exact power sum.
struct WindowSpectrum {
  std::int64_t q = 1;
  std::int64_t h = 1;
  bool dashed = false;
  std::vector<Complex> coefficients;  ///< c_{j,q}, j in [0, q)
  Rational power_sum;

  static WindowSpectrum build(std::int64_t q, std::int64_t h, bool dashed) {
    WindowSpectrum s;
    s.q = q;
    s.h = h;
    s.dashed = dashed;
    const auto counts = residue_counts(q, h, dashed);
    s.coefficients.assign(static_cast<std::size_t>(q), Complex{0.0, 0.0});
    for (std::int64_t j = 0; j < q; ++j) {
      Complex sum{0.0, 0.0};
      for (std::int64_t a = 0; a < q; ++a) {
        const auto c = counts[static_cast<std::size_t>(a)];
        if (c != 0) sum += static_cast<double>(c) * additive_character(a * j, q);
      }
      s.coefficients[static_cast<std::size_t>(j)] = sum / static_cast<double>(q);
    }
    s.power_sum = coefficient_power_sum(q, h, dashed).exact;
    return s;
  }
};

// ---------------------------------------------------------------------------
// Primitive (starred) power sums.

struct SmallFactorization {
  std::int64_t mobius = 1;
  std::int64_t totient = 1;
};

inline SmallFactorization factor_small(std::int64_t n) {
  SmallFactorization f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::int64_t pk = 1;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      pk *= p;
      ++e;
    }
    f.mobius = e > 1 ? 0 : -f.mobius;
    f.totient *= pk - pk / p;
  }
  if (n > 1) {
    f.mobius = -f.mobius;
    f.totient *= n - 1;
  }
  return f;
}

/// Ramanujan sum c_l(m) = sum_{1<=j<=l, (j,l)=1} e_l(jm), via von Sterneck's
/// formula mu(l/g) phi(l) / phi(l/g) with g = gcd(m, l).
class RamanujanSums {
 public:
  explicit RamanujanSums(std::int64_t ell) : ell_(ell), by_gcd_(static_cast<std::size_t>(ell) + 1, 0) {
    if (ell < 1) throw std::invalid_argument("RamanujanSums: ell must be >= 1");
    const auto phi_ell = factor_small(ell).totient;
    for (std::int64_t g : divisors(ell)) {
      const auto f = factor_small(ell / g);
      by_gcd_[static_cast<std::size_t>(g)] = f.mobius * (phi_ell / f.totient);
    }
  }
  std::int64_t operator()(std::int64_t m) const {
    return by_gcd_[static_cast<std::size_t>(std::gcd(m, ell_))];
  }

 private:
  std::int64_t ell_;
  std::vector<std::int64_t> by_gcd_;
};

struct PrimitivePowerSum {
  Rational exact;         ///< sum over j coprime to l of |c_{j,l}|^2
  Rational moebius_form;  ///< sum_{t | l} mu(t)/t^2 * (power sum at modulus l/t)
  bool matches() const { return exact == moebius_form; }
};

/// Starred power sums for a fixed window (h, convention), any modulus l >= 2.
///
/// The exact value uses the autocorrelation of the weights against Ramanujan
/// sums: sum* |c_{j,l}|^2 = l^{-2} sum_d W(d) c_l(d), W(d) = sum_r w(r) w(r+d).
/// The Moebius form goes through residue-class power sums at each l/t, so the
/// two sides share no intermediate quantity.
class PrimitivePowerSums {
 public:
  PrimitivePowerSums(std::int64_t h, bool dashed)
      : h_(h), dashed_(dashed), autocorr_(static_cast<std::size_t>(4 * h + 1), 0) {
    if (h < 1) throw std::invalid_argument("PrimitivePowerSums: h must be >= 1");
    for (std::int64_t d = -2 * h; d <= 2 * h; ++d) {
      std::int64_t acc = 0;
      for (std::int64_t r = std::max(-h, -h - d); r <= std::min(h, h - d); ++r) {
        acc += window_weight(r, h, dashed) * window_weight(r + d, h, dashed);
      }
      autocorr_[static_cast<std::size_t>(d + 2 * h)] = acc;
    }
  }

  Rational exact(std::int64_t ell) const {
    check(ell);
    RamanujanSums c(ell);
    std::int64_t acc = 0;
    for (std::int64_t d = -2 * h_; d <= 2 * h_; ++d) {
      const auto w = autocorr_[static_cast<std::size_t>(d + 2 * h_)];
      if (w != 0) acc += w * c(d);
    }
    return Rational(BigInt(acc), BigInt(ell) * ell);
  }

  Rational moebius_form(std::int64_t ell) const {
    check(ell);
    Rational total(0);
    for (std::int64_t t : divisors(ell)) {
      const auto mu = factor_small(t).mobius;
      if (mu == 0) continue;
      total += Rational(BigInt(mu), BigInt(t) * t) * coefficient_power_sum(ell / t, h_, dashed_).exact;
    }
    return total;
  }

  PrimitivePowerSum operator()(std::int64_t ell) const { return {exact(ell), moebius_form(ell)}; }

  std::int64_t h() const { return h_; }
  bool dashed() const { return dashed_; }

 private:
  static void check(std::int64_t ell) {
    if (ell < 2) throw std::invalid_argument("primitive_power_sum: ell must be >= 2");
  }
  std::int64_t h_;
  bool dashed_;
  std::vector<std::int64_t> autocorr_;
};

inline PrimitivePowerSum primitive_power_sum(std::int64_t ell, std::int64_t h, bool dashed) {
  return PrimitivePowerSums(h, dashed)(ell);
}

/// 2 sum_{t | l} mu(t)/t^2 ||h t / l||, the closed form of the starred sum.
inline Rational primitive_distance_form(std::int64_t ell, std::int64_t h) {
  Rational total(0);
  for (std::int64_t t : divisors(ell)) {
    const auto mu = factor_small(t).mobius;
    if (mu == 0) continue;
    total += Rational(BigInt(mu), BigInt(t) * t) *
             nearest_integer_distance(Rational(BigInt(h) * t, BigInt(ell)));
  }
  return Rational(2) * total;
}

// ---------------------------------------------------------------------------
// Reconstruction through primitive fractions.

/// chi_q(x) = sum_{l | q, l > 1} (l/q) sum*_{j < l} c_{j,l} e_l(j x).
class ChiExpansion {
 public:
  ChiExpansion(std::int64_t q, std::int64_t h, bool dashed) : q_(q) {
    if (q < 1 || h < 1) throw std::invalid_argument("ChiExpansion: q, h must be >= 1");
    for (std::int64_t ell : divisors(q)) {
      if (ell == 1) continue;
      Block b{ell, {}, {}};
      for (std::int64_t j = 1; j < ell; ++j) {
        if (std::gcd(j, ell) != 1) continue;
        b.frequencies.push_back(j);
        b.coefficients.push_back(window_fourier_coefficient(ell, h, j, dashed));
      }
      blocks_.push_back(std::move(b));
    }
  }

  Complex operator()(std::int64_t x) const {
    Complex total{0.0, 0.0};
    for (const auto& b : blocks_) {
      Complex inner{0.0, 0.0};
      for (std::size_t i = 0; i < b.frequencies.size(); ++i) {
        inner += b.coefficients[i] * additive_character(floor_mod(x, b.ell) * b.frequencies[i], b.ell);
      }
      total += inner * (static_cast<double>(b.ell) / static_cast<double>(q_));
    }
    return total;
  }

 private:
  struct Block {
    std::int64_t ell;
    std::vector<std::int64_t> frequencies;
    std::vector<Complex> coefficients;
  };
  std::int64_t q_;
  std::vector<Block> blocks_;
};

inline Complex reconstruct_chi(std::int64_t q, std::int64_t h, std::int64_t x, bool dashed) {
  if (x <= h) throw std::invalid_argument("reconstruct_chi: need x > h");
  return ChiExpansion(q, h, dashed)(x);
}

// ---------------------------------------------------------------------------
// Geometric sums and Farey spacing.

/// sum_{x=N+1}^{2N} e(alpha x) in closed form
/// e(alpha/2) (e(2N alpha) - e(N alpha)) / (2 i sin(pi alpha)); N when alpha is an integer.
inline Complex bounded_geometric_sum(const Rational& alpha, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("bounded_geometric_sum: N must be >= 1");
  const Rational a = alpha - Rational(floor_of(alpha));  // in [0, 1)
  if (a == 0) return {static_cast<double>(N), 0.0};
  const BigInt p = numerator_of(a);
  const BigInt s = denominator_of(a);
  auto phase = [&](const BigInt& m) {  // e(m / s), m reduced first
    BigInt r = m % s;
    if (r < 0) r += s;
    const double theta = 2.0 * std::numbers::pi * to_double(Rational(r, s));
    return Complex{std::cos(theta), std::sin(theta)};
  };
  const double af = to_double(a);
  const Complex half{std::cos(std::numbers::pi * af), std::sin(std::numbers::pi * af)};
  const Complex numer = phase(p * (2 * N)) - phase(p * N);
  const Complex denom{0.0, 2.0 * std::sin(std::numbers::pi * af)};
  return half * numer / denom;
}

struct FareyPair {
  std::int64_t j, ell, r, t;
  Rational alpha;  ///< j/ell - r/t

  static FareyPair make(std::int64_t j, std::int64_t ell, std::int64_t r, std::int64_t t) {
    if (ell < 1 || t < 1) throw std::invalid_argument("FareyPair: denominators must be >= 1");
    if (std::gcd(j, ell) != 1 || std::gcd(r, t) != 1) {
      throw std::invalid_argument("FareyPair: fractions must be in lowest terms");
    }
    return {j, ell, r, t, Rational(BigInt(j), BigInt(ell)) - Rational(BigInt(r), BigInt(t))};
  }

  /// ||alpha|| >= 1/(ell t) whenever alpha is not an integer.
  bool well_spaced() const {
    const Rational dist = nearest_integer_distance(alpha);
    return dist == 0 || dist >= Rational(BigInt(1), BigInt(ell) * t);
  }
};

struct FareyAudit {
  std::int64_t pairs = 0;
  std::int64_t violations = 0;  ///< distinct pairs with ||alpha|| < 1/(ell t)
  std::int64_t below_dq = 0;    ///< distinct pairs with ||alpha|| < 1/(D Q)
};

/// All reduced j/ell (ell <= Q) against all reduced r/t (t <= D), as residues mod 1.
inline FareyAudit farey_spacing_audit(std::int64_t Q, std::int64_t D) {
  if (D < 1 || Q < D) throw std::invalid_argument("farey_spacing_audit: need 1 <= D <= Q");
  struct Frac { std::int64_t num, den; };
  auto reduced = [](std::int64_t top) {
    std::vector<Frac> out;
    for (std::int64_t den = 1; den <= top; ++den) {
      for (std::int64_t num = 0; num < den; ++num) {
        if (std::gcd(num, den) == 1) out.push_back({num, den});
      }
    }
    return out;
  };
  const auto left = reduced(Q);
  const auto right = reduced(D);
  FareyAudit audit;
  for (const auto& a : left) {
    for (const auto& b : right) {
      ++audit.pairs;
      // ||alpha|| * ell * t = distance of (j t - r ell) to the nearest multiple of ell t
      const std::int64_t scale = a.den * b.den;
      const std::int64_t m = floor_mod(a.num * b.den - b.num * a.den, scale);
      const std::int64_t dist = std::min(m, scale - m);
      if (dist == 0) continue;
      if (dist < 1) ++audit.violations;
      // dist/scale < 1/(DQ)  <=>  dist * D * Q < scale
      if (dist * D * Q < scale) ++audit.below_dq;
    }
  }
  return audit;
}

}  // namespace symint
