#include "symint/integrals.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace symint;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

IntTable divisor_table(std::int64_t limit) { return sieve_divisor_k(2, limit); }

IntTable random_table(std::mt19937_64& rng, std::int64_t limit, std::int64_t lo, std::int64_t hi, std::string label) {
  std::uniform_int_distribution<std::int64_t> v(lo, hi);
  std::vector<std::int64_t> values;
  for (std::int64_t n = 1; n <= limit; ++n) values.push_back(v(rng));
  return IntTable(std::move(values), std::move(label));
}

IntTable difference(const IntTable& a, const IntTable& b) {
  std::vector<std::int64_t> values;
  for (std::int64_t n = 1; n <= a.limit(); ++n) values.push_back(a[n] - b[n]);
  return IntTable(std::move(values), "diff");
}

Rational brute_integral(const IntTable& f, const IntTable& f1, std::int64_t N, std::int64_t h, bool continuous) {
  // continuous: value on (m, m+1) taken at the midpoint m + 1/2 via doubled coordinates
  Rational total(0);
  for (std::int64_t x = N; x < 2 * N; ++x) {
    std::int64_t a = 0, b = 0;
    for (std::int64_t n = x - h; n <= x + h + 1; ++n) {
      int s;
      if (continuous) {
        const std::int64_t twice = 2 * n - (2 * x + 1);
        if (twice < -2 * h || twice > 2 * h) continue;
        s = oracle::sgn(twice);
      } else {
        if (n > x + h) continue;
        s = oracle::sgn(n - x);
      }
      a += s * f[n];
      b += s * f1[n];
    }
    total += R(a) * R(b);
  }
  return total;
}

}  // namespace

TEST(SymmetrySum, Examples) {
  const IntTable one(std::vector<std::int64_t>(50, 7), "seven");
  for (std::int64_t x = 5; x < 40; ++x) EXPECT_EQ(static_cast<std::int64_t>(symmetry_sum(one, x, 4, false)), 0);
  const auto d = divisor_table(40);
  EXPECT_EQ(static_cast<std::int64_t>(symmetry_sum(d, 10, 2, false)), 1);
  EXPECT_EQ(static_cast<std::int64_t>(symmetry_sum(d, 5, 1, true)), 2);
  PrefixSums<std::int64_t> p(d);
  for (std::int64_t x = 3; x < 35; ++x) {
    for (bool dashed : {false, true}) {
      EXPECT_EQ(symmetry_sum(p, x, 2, dashed), symmetry_sum(d, x, 2, dashed));
    }
  }
  EXPECT_THROW(symmetry_sum(d, 2, 2, false), std::invalid_argument);
}

TEST(SymmetryIntegral, Examples) {
  const IntTable c(std::vector<std::int64_t>(60, 3), "c");
  EXPECT_EQ(symmetry_integral(c, 10, 3, IntegralMode::discrete).exact_value(), R(0));
  EXPECT_EQ(symmetry_integral(c, 10, 3, IntegralMode::continuous).exact_value(), R(0));
  const auto d = divisor_table(20);
  EXPECT_EQ(symmetry_integral(d, 4, 1, IntegralMode::discrete).exact_value(), R(1));
  EXPECT_EQ(symmetry_integral(d, 4, 1, IntegralMode::continuous).exact_value(), R(13));
  const auto prof = symmetry_profile(d, 4, 1, IntegralMode::continuous);
  ASSERT_EQ(prof.size(), 4u);
  EXPECT_EQ(static_cast<std::int64_t>(prof[0]), -1);
  EXPECT_EQ(static_cast<std::int64_t>(prof[1]), 2);
  EXPECT_EQ(static_cast<std::int64_t>(prof[2]), -2);
  EXPECT_EQ(static_cast<std::int64_t>(prof[3]), 2);
}

TEST(SymmetryIntegral, WindowChecks) {
  const auto d = divisor_table(20);
  EXPECT_THROW(symmetry_integral(d, 8, 5, IntegralMode::discrete), std::out_of_range);
  EXPECT_THROW(symmetry_integral(d, 3, 3, IntegralMode::discrete), std::invalid_argument);
}

TEST(SymmetryIntegral, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_table(rng, 200, -20, 20, "f");
    const auto f1 = random_table(rng, 200, 0, 9, "f1");
    const std::int64_t h = 1 + trial % 7;
    const std::int64_t N = 20 + 3 * trial;
    for (bool cont : {false, true}) {
      const auto mode = cont ? IntegralMode::continuous : IntegralMode::discrete;
      EXPECT_EQ(symmetry_integral(f, N, h, mode).exact_value(), brute_integral(f, f, N, h, cont));
      EXPECT_EQ(mixed_symmetry_integral(f, f1, N, h, mode).exact_value(), brute_integral(f, f1, N, h, cont));
    }
  }
}

TEST(SymmetryIntegral, RationalTablesAgreeWithIntegerTables) {
  const auto d = divisor_table(120);
  const auto g = convolve_with_unit(SieveWeights::constant(120), 120);
  for (auto mode : {IntegralMode::discrete, IntegralMode::continuous}) {
    EXPECT_EQ(symmetry_integral(g, 40, 6, mode).exact_value(), symmetry_integral(d, 40, 6, mode).exact_value());
    EXPECT_EQ(mixed_symmetry_integral(g, d, 40, 6, mode).exact_value(),
              symmetry_integral(d, 40, 6, mode).exact_value());
  }
}

TEST(SymmetryIntegral, ContinuousAgreesWithQuadrature) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 8; ++trial) {
    const std::int64_t N = 30 + 20 * trial;
    const std::int64_t h = 1 + trial;
    const auto f = random_table(rng, 2 * N + h + 2, 0, 12, "f");
    auto fn = [&](std::int64_t n) { return f[n]; };
    const double exact = to_double(symmetry_integral(f, N, h, IntegralMode::continuous).exact_value());
    // panels of width 0.37 never line up with the integer jumps
    double quad = 0.0;
    const double step = 0.37;
    for (double a = static_cast<double>(N); a < static_cast<double>(2 * N); a += step) {
      const double b = std::min(a + step, static_cast<double>(2 * N));
      quad += oracle::adaptive_simpson([&](double x) { return oracle::symmetry_integrand(fn, x, h); }, a, b, 1e-10);
    }
    EXPECT_NEAR(quad / exact, 1.0, 1e-6) << N << " " << h;
  }
}

TEST(MixedIntegral, SymmetricAndDiagonal) {
  std::mt19937_64 rng(5);
  const auto f = random_table(rng, 100, -5, 5, "f");
  const auto f1 = random_table(rng, 100, -5, 5, "f1");
  for (auto mode : {IntegralMode::discrete, IntegralMode::continuous}) {
    EXPECT_EQ(mixed_symmetry_integral(f, f, 30, 4, mode).exact_value(), symmetry_integral(f, 30, 4, mode).exact_value());
    EXPECT_EQ(mixed_symmetry_integral(f, f1, 30, 4, mode).exact_value(),
              mixed_symmetry_integral(f1, f, 30, 4, mode).exact_value());
  }
}

TEST(MixedIntegral, PolarizationCauchySchwarzAndInequalityOne) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_table(rng, 500, -30, 30, "f");
    const auto f1 = random_table(rng, 500, -30, 30, "f1");
    const auto fd = difference(f, f1);
    const std::int64_t h = 1 + trial % 10;
    const std::int64_t N = 50 + trial * 5;
    for (auto mode : {IntegralMode::discrete, IntegralMode::continuous}) {
      const Rational If = symmetry_integral(f, N, h, mode).exact_value();
      const Rational If1 = symmetry_integral(f1, N, h, mode).exact_value();
      const Rational Iff1 = mixed_symmetry_integral(f, f1, N, h, mode).exact_value();
      EXPECT_EQ(symmetry_integral(fd, N, h, mode).exact_value(), If - 2 * Iff1 + If1);
      EXPECT_LE(Iff1 * Iff1, If * If1);
      EXPECT_GE(If, 2 * Iff1 - If1);
      EXPECT_GE(If, 0);
    }
  }
}

TEST(Selberg, Examples) {
  const IntTable one(std::vector<std::int64_t>(60, 1), "one");
  EXPECT_EQ(selberg_integral(one, 20, 5, MeanValueModel::sieve_main_term(SieveWeights::unit())).exact_value(), R(0));
  EXPECT_EQ(selberg_integral(one, 20, 5, MeanValueModel::window_exact()).exact_value(), R(0));
  const auto d = divisor_table(20);
  const auto zero = MeanValueModel::fitted(1, {0.0});
  EXPECT_DOUBLE_EQ(to_double(selberg_integral(d, 4, 1, zero).value), 40.0);
}

TEST(Selberg, NonNegativeAndMatchesDefinition) {
  std::mt19937_64 rng(8);
  const auto g = SieveWeights({R(1), R(2, 3), R(-1, 2), R(5)});
  const auto f = convolve_with_unit(g, 200);
  for (std::int64_t h : {1, 3, 9}) {
    const auto rep = selberg_integral(f, 60, h, MeanValueModel::sieve_main_term(g));
    ASSERT_TRUE(rep.exact());
    Rational brute(0);
    for (std::int64_t m = 60; m < 120; ++m) {
      Rational w(0);
      for (std::int64_t n = m + 1; n <= m + h; ++n) w += f[n];
      Rational M(0);
      for (std::int64_t dd = 1; dd <= std::min<std::int64_t>(m, 4); ++dd) M += g(dd) / R(dd);
      M *= R(h);
      brute += (w - M) * (w - M);
    }
    EXPECT_EQ(rep.exact_value(), brute);
    EXPECT_GE(rep.exact_value(), 0);
  }
}

TEST(Selberg, ShiftInvarianceUnderWindowExactModel) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_table(rng, 300, 0, 40, "f");
    const std::int64_t c = 1 + trial * 3;
    std::vector<std::int64_t> shifted;
    for (std::int64_t n = 1; n <= 300; ++n) shifted.push_back(f[n] + c);
    const IntTable fc(std::move(shifted), "f+c");
    const auto a = selberg_integral(f, 70, 1 + trial, MeanValueModel::window_exact());
    const auto b = selberg_integral(fc, 70, 1 + trial, MeanValueModel::window_exact());
    EXPECT_EQ(a.exact_value(), b.exact_value());
  }
}

TEST(Selberg, FitNeverLosesToZeroModel) {
  const auto d3 = sieve_divisor_k(3, 3000);
  for (int k : {1, 2, 3}) {
    const auto model = fit_log_polynomial(d3, 1000, 12, k);
    EXPECT_EQ(model.coefficients.size(), static_cast<std::size_t>(k));
    std::vector<double> zeros(static_cast<std::size_t>(k), 0.0);
    const double fit = to_double(selberg_integral(d3, 1000, 12, model).value);
    const double none = to_double(selberg_integral(d3, 1000, 12, MeanValueModel::fitted(k, zeros)).value);
    EXPECT_LE(fit, none);
  }
  EXPECT_THROW(MeanValueModel::fitted(3, {1.0, 2.0}), std::invalid_argument);
}

TEST(MeanValue, Examples) {
  EXPECT_EQ(std::get<Rational>(mean_value_eval(MeanValueModel::sieve_main_term(SieveWeights::unit()), 50, 7)), R(7));
  EXPECT_EQ(std::get<Rational>(mean_value_eval(MeanValueModel::sieve_main_term(SieveWeights::constant(4)), 9, 6)),
            R(6) * R(25, 12));
  EXPECT_EQ(std::get<double>(mean_value_eval(MeanValueModel::fitted(2, {0.0, 0.0}), 100, 3)), 0.0);
  const auto d = divisor_table(10);
  EXPECT_EQ(std::get<Rational>(mean_value_eval(MeanValueModel::window_exact(), d, 4, 2)), R(2 * (1 + 2 + 2 + 3), 4));
  EXPECT_THROW(mean_value_eval(MeanValueModel::window_exact(), 4, 2), std::invalid_argument);
  MeanValueModel broken;
  broken.variant = MeanValueModel::Variant::sieve_main_term;
  EXPECT_THROW(broken.validate(), std::invalid_argument);
}

TEST(Lemma, UnitWeightsGiveZero) {
  const auto rep = lemma_decomposition(SieveWeights::unit(), SieveWeights::unit(), 40, 3, 2, 2, false);
  EXPECT_EQ(std::get<Rational>(*rep.term("lhs")), R(0));
  EXPECT_EQ(std::get<Rational>(*rep.term("diagonal")), R(0));
}

TEST(Lemma, LhsMatchesDoubleSumOfCharacters) {
  for (bool dashed : {false, true}) {
    for (auto [N, h, D, Q] : std::vector<std::array<std::int64_t, 4>>{{6, 1, 3, 3}, {20, 3, 4, 9}, {50, 7, 5, 12}}) {
      const auto g = SieveWeights::constant(Q);
      const auto g1 = SieveWeights::constant(D);
      Rational brute(0);
      for (std::int64_t x = N; x < 2 * N; ++x) {
        std::int64_t a = 0, b = 0;
        for (std::int64_t q = 1; q <= Q; ++q) a += oracle::chi(q, h, x, dashed);
        for (std::int64_t d = 1; d <= D; ++d) b += oracle::chi(d, h, x, dashed);
        brute += R(a * b);
      }
      const auto rep = lemma_decomposition(g, g1, N, h, D, Q, dashed);
      EXPECT_EQ(std::get<Rational>(*rep.term("lhs")), brute);
      EXPECT_EQ(rep.exact_value(), brute);
      EXPECT_EQ(std::get<Rational>(*rep.term("off_diagonal")),
                brute - std::get<Rational>(*rep.term("diagonal")));
    }
  }
}

TEST(Lemma, OffDiagonalVanishesOverFullPeriods) {
  // When N is a multiple of lcm(1..Q) every cross frequency sums to zero.
  const SieveWeights g({R(1), R(-2, 3), R(4), R(1, 5), R(0), R(3, 2)});
  const SieveWeights g1({R(2), R(1, 7), R(-1), R(5, 3)});
  for (bool dashed : {false, true}) {
    for (std::int64_t h : {1, 2, 5, 11}) {
      const auto rep = lemma_decomposition(g, g1, 120, h, 4, 6, dashed);
      EXPECT_EQ(std::get<Rational>(*rep.term("off_diagonal")), R(0)) << h << " " << dashed;
    }
  }
}

TEST(Lemma, DashedPrimitiveSumVanishesWhenEllDividesH) {
  for (std::int64_t h : {6, 12, 30}) {
    PrimitivePowerSums sums(h, true);
    for (std::int64_t ell = 2; ell <= h; ++ell) {
      if (h % ell != 0) continue;
      EXPECT_EQ(sums.exact(ell), R(0));
    }
  }
}

TEST(Lemma, ShapeChecks) {
  const auto g = SieveWeights::constant(10);
  EXPECT_THROW(lemma_decomposition(g, SieveWeights::constant(4), 40, 3, 1, 10, false), std::invalid_argument);
  EXPECT_THROW(lemma_decomposition(g, SieveWeights::constant(6), 40, 3, 5, 10, false), std::invalid_argument);
  EXPECT_THROW(lemma_decomposition(g, SieveWeights::constant(4), 3, 3, 4, 10, false), std::invalid_argument);
}

TEST(TheoremBound, EmptyRangeIsZero) {
  EXPECT_EQ(theorem_lower_bound(SieveWeights::constant(10), SieveWeights::constant(2), 100, 3, 2, 10), R(0));
}

TEST(TheoremBound, HandExpansion) {
  const auto g = SieveWeights::constant(64);
  const auto g1 = SieveWeights::constant(8);
  const Rational value = theorem_lower_bound(g, g1, 1, 1, 8, 64);
  // head: sum_{q<=8} 1/q ; body: sum_{l=2..4} (sum_{d<=8/l} 1/d) sum_{t|l} mu(t)/t^2 ||t/l||
  Rational head(0);
  for (std::int64_t q = 1; q <= 8; ++q) head += R(1, q);
  Rational body(0);
  for (std::int64_t ell = 2; ell <= 4; ++ell) {
    Rational harmonic(0);
    for (std::int64_t d = 1; d <= 8 / ell; ++d) harmonic += R(1, d);
    Rational s(0);
    for (std::int64_t t = 1; t <= ell; ++t) {
      if (ell % t == 0) s += R(oracle::mobius(t), t * t) * oracle::dist(R(t, ell));
    }
    body += harmonic * s;
  }
  EXPECT_EQ(value, head * body);
  EXPECT_EQ(value, R(63163, 13440));
  EXPECT_GT(value, 0);
}

TEST(TheoremBound, GeneralWeightsAgainstOracle) {
  const SieveWeights g({R(1), R(2), R(3), R(2), R(5), R(4), R(7), R(3), R(9), R(6), R(11), R(5)});
  const SieveWeights g1({R(1), R(3, 2), R(2), R(5, 2)});
  const std::int64_t N = 1000, h = 7, D = 4, Q = 12;
  Rational head(0);
  for (std::int64_t q = 1; q <= Q / D; ++q) head += g(q) / R(q);
  Rational body(0);
  for (std::int64_t ell = 2; ell <= D / 2; ++ell) {
    Rational inner(0);
    for (std::int64_t d = 1; d * ell <= D; ++d) inner += g1(ell * d) / R(d);
    Rational s(0);
    for (std::int64_t t = 1; t <= ell; ++t) {
      if (ell % t == 0) s += R(oracle::mobius(t), t * t) * oracle::dist(R(h * t, ell));
    }
    body += inner * s;
  }
  EXPECT_EQ(theorem_lower_bound(g, g1, N, h, D, Q), R(N) * head * body);
}

TEST(TheoremBound, Hypotheses) {
  const auto g1 = SieveWeights::constant(4);
  EXPECT_THROW(theorem_lower_bound(SieveWeights({R(2), R(1), R(2), R(2)}), g1, 10, 1, 4, 4), HypothesisViolation);
  EXPECT_THROW(theorem_lower_bound(SieveWeights({R(1), R(1, 2)}), SieveWeights::constant(2), 10, 1, 2, 2),
               HypothesisViolation);
  EXPECT_THROW(theorem_lower_bound(SieveWeights::constant(8), g1, 10, 1, 4, 6), HypothesisViolation);
  EXPECT_THROW(theorem_lower_bound(SieveWeights::constant(8), g1, 10, 1, 1, 8), HypothesisViolation);
}

TEST(Connection, ConstantFunctionLeavesOnlyTail) {
  const IntTable one(std::vector<std::int64_t>(200, 1), "one");
  const auto a = connection_audit(one, 50, 4, MeanValueModel::sieve_main_term(SieveWeights::unit()));
  EXPECT_EQ(a.symmetry, R(0));
  EXPECT_EQ(std::get<Rational>(a.selberg), R(0));
  EXPECT_EQ(std::get<Rational>(a.mean_difference), R(0));
  EXPECT_EQ(a.tail, R(50 + 64));
  EXPECT_EQ(a.ratio, 0.0);
}

TEST(Connection, DivisorFunctionRegression) {
  const auto d = divisor_table(2 * 10000 + 20);
  const auto a = connection_audit(d, 10000, 20, MeanValueModel::window_exact());
  EXPECT_LE(a.ratio, 10.0);
  EXPECT_GT(a.ratio, 0.0);
  EXPECT_EQ(a.tail, R(10000 + 8000));
  // frozen after the first run
  EXPECT_EQ(a.symmetry, R(6335916));
  EXPECT_NEAR(a.ratio, 1.039177651147871, 1e-12);
}
