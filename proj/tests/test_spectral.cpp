#include "symint/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace symint;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

}  // namespace

TEST(ChiWindow, Examples) {
  for (std::int64_t q : {1, 2, 3, 5}) {
    for (std::int64_t x = 5 * q + 1; x <= 5 * q + 20; ++x) EXPECT_EQ(chi_window(q, 5 * q, x, false), 0);
  }
  EXPECT_EQ(chi_window(3, 1, 7, false), -1);
  EXPECT_EQ(chi_window(3, 1, 10, false), -1);
  EXPECT_EQ(chi_window(2, 2, 4, true), 0);
  EXPECT_THROW(chi_window(3, 4, 4, false), std::invalid_argument);
}

TEST(ChiWindow, MatchesDefinition) {
  for (bool dashed : {false, true}) {
    for (std::int64_t q = 1; q <= 12; ++q) {
      for (std::int64_t h = 1; h <= 9; ++h) {
        for (std::int64_t x = h + 1; x <= h + 30; ++x) {
          ASSERT_EQ(chi_window(q, h, x, dashed), oracle::chi(q, h, x, dashed)) << q << " " << h << " " << x;
        }
      }
    }
  }
}

TEST(FourierCoefficient, Examples) {
  for (std::int64_t q = 1; q <= 20; ++q) {
    EXPECT_NEAR(std::abs(window_fourier_coefficient(q, 3, 0, false)), 0.0, 1e-15);
  }
  const auto c = window_fourier_coefficient(3, 1, 1, false);
  EXPECT_NEAR(c.real(), 0.0, 1e-15);
  EXPECT_NEAR(c.imag(), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(FourierCoefficient, Scaling) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> qd(2, 40), dd(1, 12), hd(1, 60);
  int checked = 0;
  while (checked < 300) {
    const std::int64_t qp = qd(rng), d = dd(rng), h = hd(rng);
    const std::int64_t jp = std::uniform_int_distribution<std::int64_t>(1, qp - 1)(rng);
    if (std::gcd(jp, qp) != 1) continue;
    for (bool dashed : {false, true}) {
      const auto big = window_fourier_coefficient(d * qp, h, d * jp, dashed);
      const auto small = window_fourier_coefficient(qp, h, jp, dashed) / static_cast<double>(d);
      EXPECT_NEAR(std::abs(big - small), 0.0, 1e-12) << d << " " << jp << " " << qp << " " << h;
    }
    ++checked;
  }
}

TEST(PowerSum, Examples) {
  auto a = coefficient_power_sum(3, 1, false);
  EXPECT_EQ(a.exact, R(2, 3));
  EXPECT_EQ(a.closed_form, R(2, 3));
  auto b = coefficient_power_sum(2, 1, false);
  EXPECT_EQ(b.exact, R(0));
  EXPECT_EQ(b.closed_form, R(1));
  EXPECT_FALSE(b.matches());
  auto c = coefficient_power_sum(2, 1, true);
  EXPECT_EQ(c.exact, R(1));
  EXPECT_EQ(c.closed_form, R(1));
}

TEST(PowerSum, AgreesWithFloatingCoefficients) {
  for (bool dashed : {false, true}) {
    for (std::int64_t q = 1; q <= 25; ++q) {
      for (std::int64_t h = 1; h <= 25; ++h) {
        const double brute = oracle::power_sum_double(q, h, dashed, false);
        EXPECT_NEAR(to_double(coefficient_power_sum(q, h, dashed).exact), brute, 1e-10) << q << " " << h;
      }
    }
  }
}

TEST(PowerSum, SpectrumIsConsistent) {
  for (bool dashed : {false, true}) {
    const auto s = WindowSpectrum::build(12, 5, dashed);
    ASSERT_EQ(s.coefficients.size(), 12u);
    double total = 0.0;
    for (std::size_t j = 0; j < 12; ++j) {
      EXPECT_NEAR(std::abs(s.coefficients[j] - window_fourier_coefficient(12, 5, static_cast<std::int64_t>(j), dashed)),
                  0.0, 1e-13);
      total += std::norm(s.coefficients[j]);
    }
    EXPECT_NEAR(total, to_double(s.power_sum), 1e-12);
    if (!dashed) {
      EXPECT_NEAR(std::abs(s.coefficients[0]), 0.0, 1e-15);
    }
  }
}

TEST(PowerSum, ParsevalModerateGrid) {
  for (bool dashed : {false, true}) {
    for (std::int64_t q = 1; q <= 40; ++q) {
      for (std::int64_t h = 1; h <= 40; ++h) {
        std::int64_t squares = 0;
        for (std::int64_t x = h + 1; x <= h + q; ++x) {
          const auto v = oracle::chi(q, h, x, dashed);
          squares += v * v;
        }
        EXPECT_EQ(R(squares), R(q) * coefficient_power_sum(q, h, dashed).exact) << q << " " << h;
      }
    }
  }
}

TEST(PowerSum, ClosedFormPattern) {
  for (std::int64_t q = 2; q <= 60; ++q) {
    for (std::int64_t h = 1; h <= 60; ++h) {
      const Rational rhs = Rational(2) * oracle::dist(R(h, q));
      EXPECT_EQ(coefficient_power_sum(q, h, true).exact, rhs) << q << " " << h;
      const std::int64_t rem = h % q;
      const bool gap = rem != 0 && 2 * rem >= q;
      EXPECT_EQ(coefficient_power_sum(q, h, false).exact, gap ? rhs - R(2, q) : rhs) << q << " " << h;
    }
  }
}

TEST(Primitive, Examples) {
  auto a = primitive_power_sum(3, 1, false);
  EXPECT_EQ(a.exact, R(2, 3));
  EXPECT_EQ(a.moebius_form, R(2, 3));
  auto b = primitive_power_sum(2, 1, false);
  EXPECT_EQ(b.exact, R(0));
  EXPECT_EQ(b.moebius_form, R(0));
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    for (std::int64_t h = 1; h <= 15; ++h) {
      for (bool dashed : {false, true}) {
        const auto full = coefficient_power_sum(p, h, dashed).exact;
        const double c0 = std::norm(window_fourier_coefficient(p, h, 0, dashed));
        EXPECT_NEAR(to_double(primitive_power_sum(p, h, dashed).exact), to_double(full) - c0, 1e-13);
      }
    }
  }
  EXPECT_THROW(primitive_power_sum(1, 1, false), std::invalid_argument);
}

TEST(Primitive, AgreesWithFloatingCoprimeSum) {
  for (bool dashed : {false, true}) {
    for (std::int64_t h = 1; h <= 12; ++h) {
      PrimitivePowerSums sums(h, dashed);
      for (std::int64_t ell = 2; ell <= 40; ++ell) {
        EXPECT_NEAR(to_double(sums.exact(ell)), oracle::power_sum_double(ell, h, dashed, true), 1e-10);
      }
    }
  }
}

TEST(Primitive, DashedEqualsDistanceForm) {
  for (std::int64_t h = 1; h <= 30; ++h) {
    PrimitivePowerSums sums(h, true);
    for (std::int64_t ell = 2; ell <= 120; ++ell) {
      Rational direct(0);
      for (std::int64_t t = 1; t <= ell; ++t) {
        if (ell % t) continue;
        direct += R(oracle::mobius(t), t * t) * oracle::dist(R(h * t, ell));
      }
      EXPECT_EQ(sums.exact(ell), Rational(2) * direct);
      EXPECT_EQ(primitive_distance_form(ell, h), Rational(2) * direct);
    }
  }
}

TEST(Primitive, NonNegativity) {
  // The starred dashed sum is a sum of squares, and equals twice the distance sum.
  std::int64_t negatives = 0;
  for (std::int64_t h = 1; h <= 1000; h += (h < 50 ? 1 : 37)) {
    PrimitivePowerSums sums(h, true);
    for (std::int64_t ell = 2; ell <= 10000; ell += (ell < 300 ? 1 : 97)) {
      if (sums.exact(ell) < 0) ++negatives;
    }
  }
  EXPECT_EQ(negatives, 0);
}

TEST(Reconstruction, Examples) {
  for (std::int64_t q : {2, 3, 5, 7, 13}) {
    for (std::int64_t h : {1, 4}) {
      for (std::int64_t x = h + 1; x <= h + q; ++x) {
        EXPECT_NEAR(std::abs(reconstruct_chi(q, h, x, false) - static_cast<double>(chi_window(q, h, x, false))), 0.0,
                    1e-12);
      }
    }
  }
  for (bool dashed : {false, true}) {
    for (std::int64_t x = 3; x <= 8; ++x) {
      EXPECT_NEAR(std::abs(reconstruct_chi(6, 2, x, dashed) - static_cast<double>(chi_window(6, 2, x, dashed))), 0.0,
                  1e-12);
    }
  }
  for (std::int64_t x = 7; x <= 12; ++x) EXPECT_NEAR(std::abs(reconstruct_chi(6, 6, x, false)), 0.0, 1e-12);
}

TEST(GeometricSum, Examples) {
  EXPECT_NEAR(std::abs(bounded_geometric_sum(R(3), 17) - Complex(17.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(bounded_geometric_sum(R(1, 2), 10)), 0.0, 1e-12);
}

TEST(GeometricSum, MatchesDirectSumAndBound) {
  for (std::int64_t s = 2; s <= 30; ++s) {
    for (std::int64_t p = 1; p < s; ++p) {
      const Rational a = R(p, s);
      for (std::int64_t N : {1, 2, 7, 50, 101}) {
        Complex direct{0.0, 0.0};
        for (std::int64_t x = N + 1; x <= 2 * N; ++x) {
          const double ph = 2.0 * std::numbers::pi * static_cast<double>((p * x) % s) / static_cast<double>(s);
          direct += Complex(std::cos(ph), std::sin(ph));
        }
        const Complex closed = bounded_geometric_sum(a, N);
        EXPECT_NEAR(std::abs(closed - direct), 0.0, 1e-9);
        EXPECT_LE(std::abs(closed), 1.0 / (2.0 * to_double(nearest_integer_distance(a))) + 1e-9);
      }
    }
  }
}

TEST(Farey, PairSpacing) {
  EXPECT_TRUE(FareyPair::make(1, 3, 1, 2).well_spaced());
  EXPECT_EQ(FareyPair::make(1, 3, 1, 2).alpha, R(-1, 6));
  EXPECT_THROW(FareyPair::make(2, 4, 1, 2), std::invalid_argument);
}

TEST(Farey, AuditUpTo200) {
  for (auto [Q, D] : std::vector<std::pair<std::int64_t, std::int64_t>>{{10, 3}, {60, 60}, {200, 17}, {200, 200}}) {
    const auto audit = farey_spacing_audit(Q, D);
    EXPECT_GT(audit.pairs, 0);
    EXPECT_EQ(audit.violations, 0);
    EXPECT_EQ(audit.below_dq, 0);
  }
}

TEST(Farey, AuditMatchesRationalCheckOnSmallCase) {
  std::int64_t bad = 0;
  for (std::int64_t ell = 1; ell <= 12; ++ell) {
    for (std::int64_t j = 0; j < ell; ++j) {
      if (std::gcd(j, ell) != 1) continue;
      for (std::int64_t t = 1; t <= 5; ++t) {
        for (std::int64_t r = 0; r < t; ++r) {
          if (std::gcd(r, t) != 1) continue;
          const auto pair = FareyPair::make(j, ell, r, t);
          if (!pair.well_spaced()) ++bad;
          const Rational d = oracle::dist(pair.alpha);
          if (d != 0 && d < R(1, 60)) ++bad;
        }
      }
    }
  }
  EXPECT_EQ(bad, 0);
}
