#pragma once

// Symmetry, mixed and Selberg integrals evaluated exactly, the discrete mixed
// sum with its diagonal/off-diagonal split, and the lower-bound functional.
//
// Averages over "x ~ N" run over N <= x < 2N. A continuous integral over
// [N, 2N] is the sum of its integrand on the unit intervals (m, m+1), where
// the integrand is constant.

#include "symint/arith_core.hpp"
#include "symint/function_table.hpp"
#include "symint/rational.hpp"
#include "symint/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace symint {

enum class IntegralMode { discrete, continuous };

inline const char* to_string(IntegralMode m) {
  return m == IntegralMode::discrete ? "discrete" : "continuous";
}

inline IntegralMode parse_mode(const std::string& s) {
  if (s == "discrete") return IntegralMode::discrete;
  if (s == "continuous") return IntegralMode::continuous;
  throw std::invalid_argument("unknown integral mode '" + s + "'");
}

/// Either an exact rational or a double (model-dependent quantities).
using Value = std::variant<Rational, double>;

inline double to_double(const Value& v) {
  return std::holds_alternative<Rational>(v) ? to_double(std::get<Rational>(v)) : std::get<double>(v);
}

inline std::string to_string(const Value& v) {
  return std::holds_alternative<Rational>(v) ? to_string(std::get<Rational>(v))
                                             : format_double(std::get<double>(v));
}

struct IntegralReport {
  Value value{Rational(0)};
  IntegralMode mode = IntegralMode::discrete;
  std::int64_t N = 0;
  std::int64_t h = 0;
  std::string f_label;
  std::string f1_label;
  std::vector<std::pair<std::string, Value>> terms;  ///< insertion order is output order

  bool exact() const { return std::holds_alternative<Rational>(value); }
  const Rational& exact_value() const { return std::get<Rational>(value); }

  const Value* term(const std::string& name) const {
    for (const auto& [k, v] : terms) {
      if (k == name) return &v;
    }
    return nullptr;
  }
};

class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

template <typename T>
struct exact_acc {
  using type = Rational;
};
template <>
struct exact_acc<std::int64_t> {
  using type = __int128;
};
template <typename T>
using exact_acc_t = typename exact_acc<T>::type;

template <typename T1, typename T2>
using common_acc_t = std::conditional_t<std::is_same_v<exact_acc_t<T1>, __int128> &&
                                            std::is_same_v<exact_acc_t<T2>, __int128>,
                                        __int128, Rational>;

inline Rational as_rational(__int128 v) { return to_rational(v); }
inline const Rational& as_rational(const Rational& v) { return v; }

template <typename Acc>
Acc lift(std::int64_t v) {
  if constexpr (std::is_same_v<Acc, __int128>) {
    return v;
  } else {
    return Rational(BigInt(v));
  }
}
template <typename Acc>
Acc lift(__int128 v) {
  if constexpr (std::is_same_v<Acc, __int128>) {
    return v;
  } else {
    return to_rational(v);
  }
}
template <typename Acc>
Acc lift(const Rational& v) {
  static_assert(std::is_same_v<Acc, Rational>);
  return v;
}

template <typename T>
void require_window(const FunctionTable<T>& f, std::int64_t N, std::int64_t h) {
  if (h < 1) throw std::invalid_argument("integral: h must be >= 1");
  if (N <= h) throw std::invalid_argument("integral: need N > h");
  if (2 * N + h > f.limit()) {
    throw std::out_of_range("integral: table '" + f.label() + "' too short (limit " +
                            std::to_string(f.limit()) + ", need " + std::to_string(2 * N + h) + ")");
  }
}

}  // namespace detail

/// Exact partial sums of a table, for O(1) window sums.
template <typename T>
class PrefixSums {
 public:
  using Acc = detail::exact_acc_t<T>;

  explicit PrefixSums(const FunctionTable<T>& f) : sums_(static_cast<std::size_t>(f.limit()) + 1) {
    sums_[0] = Acc(0);
    for (std::int64_t n = 1; n <= f.limit(); ++n) {
      sums_[static_cast<std::size_t>(n)] = sums_[static_cast<std::size_t>(n - 1)] + detail::lift<Acc>(f[n]);
    }
  }

  /// sum_{a <= n <= b} f(n); zero when b < a.
  Acc range(std::int64_t a, std::int64_t b) const {
    if (b < a) return Acc(0);
    return sums_[static_cast<std::size_t>(b)] - sums_[static_cast<std::size_t>(a - 1)];
  }

  const Acc& upto(std::int64_t n) const { return sums_[static_cast<std::size_t>(n)]; }

 private:
  std::vector<Acc> sums_;
};

/// S_f(x) = sum_{|n-x| <= h} sgn(n-x) f(n); the dashed form subtracts f(x) and adds f(x-h).
template <typename T>
detail::exact_acc_t<T> symmetry_sum(const PrefixSums<T>& p, std::int64_t x, std::int64_t h, bool dashed) {
  if (dashed) return p.range(x + 1, x + h) - p.range(x - h + 1, x);
  return p.range(x + 1, x + h) - p.range(x - h, x - 1);
}

template <typename T>
detail::exact_acc_t<T> symmetry_sum(const FunctionTable<T>& f, std::int64_t x, std::int64_t h, bool dashed) {
  if (h < 1) throw std::invalid_argument("symmetry_sum: h must be >= 1");
  if (x <= h) throw std::invalid_argument("symmetry_sum: need h < x");
  if (x + h > f.limit()) throw std::out_of_range("symmetry_sum: window outside table");
  using Acc = detail::exact_acc_t<T>;
  Acc total(0);
  for (std::int64_t r = -h; r <= h; ++r) {
    const int w = window_weight(r, h, dashed);
    if (w > 0) total += detail::lift<Acc>(f[x + r]);
    if (w < 0) total -= detail::lift<Acc>(f[x + r]);
  }
  return total;
}

/// Integrand values on the averaging range: S_f(x) for x in [N, 2N) in discrete
/// mode, the constant value on (m, m+1) in continuous mode.
template <typename T>
std::vector<detail::exact_acc_t<T>> symmetry_profile(const FunctionTable<T>& f, std::int64_t N,
                                                    std::int64_t h, IntegralMode mode) {
  detail::require_window(f, N, h);
  PrefixSums<T> p(f);
  std::vector<detail::exact_acc_t<T>> out;
  out.reserve(static_cast<std::size_t>(N));
  // On (m, m+1) the window is m-h < n <= m+h with n <= m counted negatively.
  const bool dashed = mode == IntegralMode::continuous;
  for (std::int64_t x = N; x < 2 * N; ++x) out.push_back(symmetry_sum(p, x, h, dashed));
  return out;
}

template <typename T>
IntegralReport symmetry_integral(const FunctionTable<T>& f, std::int64_t N, std::int64_t h, IntegralMode mode) {
  using Acc = detail::exact_acc_t<T>;
  const auto profile = symmetry_profile(f, N, h, mode);
  Acc total(0);
  for (const auto& s : profile) total += s * s;
  IntegralReport r;
  r.value = detail::as_rational(total);
  r.mode = mode;
  r.N = N;
  r.h = h;
  r.f_label = f.label();
  r.f1_label = f.label();
  return r;
}

template <typename T1, typename T2>
IntegralReport mixed_symmetry_integral(const FunctionTable<T1>& f, const FunctionTable<T2>& f1,
                                       std::int64_t N, std::int64_t h, IntegralMode mode) {
  using Acc = detail::common_acc_t<T1, T2>;
  const auto a = symmetry_profile(f, N, h, mode);
  const auto b = symmetry_profile(f1, N, h, mode);
  Acc total(0);
  for (std::size_t i = 0; i < a.size(); ++i) total += detail::lift<Acc>(a[i]) * detail::lift<Acc>(b[i]);
  IntegralReport r;
  r.value = detail::as_rational(total);
  r.mode = mode;
  r.N = N;
  r.h = h;
  r.f_label = f.label();
  r.f1_label = f1.label();
  return r;
}

// ---------------------------------------------------------------------------
// Mean-value models and the Selberg integral.

struct MeanValueModel {
  enum class Variant { sieve_main_term, window_exact, fitted_log_polynomial };

  Variant variant = Variant::window_exact;
  std::optional<SieveWeights> weights;  ///< sieve_main_term
  int k = 0;                            ///< fitted: P has degree k - 1
  /// fitted: P(u) = sum_i coefficients[i] * ((u - center) / scale)^i, u = log x
  std::vector<double> coefficients;
  double center = 0.0;
  double scale = 1.0;

  static MeanValueModel sieve_main_term(SieveWeights g) {
    MeanValueModel m;
    m.variant = Variant::sieve_main_term;
    m.weights = std::move(g);
    return m;
  }
  static MeanValueModel window_exact() { return {}; }
  static MeanValueModel fitted(int k, std::vector<double> coefficients, double center = 0.0,
                               double scale = 1.0) {
    MeanValueModel m;
    m.variant = Variant::fitted_log_polynomial;
    m.k = k;
    m.coefficients = std::move(coefficients);
    m.center = center;
    m.scale = scale;
    m.validate();
    return m;
  }

  void validate() const {
    switch (variant) {
      case Variant::sieve_main_term:
        if (!weights) throw std::invalid_argument("sieve_main_term model needs sieve weights");
        break;
      case Variant::window_exact:
        break;
      case Variant::fitted_log_polynomial:
        if (k < 1) throw std::invalid_argument("fitted model: k must be >= 1");
        if (coefficients.size() != static_cast<std::size_t>(k)) {
          throw std::invalid_argument("fitted model: polynomial degree " +
                                      std::to_string(static_cast<int>(coefficients.size()) - 1) +
                                      " differs from k-1 = " + std::to_string(k - 1));
        }
        if (!(scale > 0.0)) throw std::invalid_argument("fitted model: scale must be positive");
        break;
    }
  }

  double polynomial(double log_x) const {
    const double u = (log_x - center) / scale;
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  const char* name() const {
    switch (variant) {
      case Variant::sieve_main_term: return "sieve";
      case Variant::window_exact: return "window";
      case Variant::fitted_log_polynomial: return "fit";
    }
    return "?";
  }
};

/// Evaluates M(x, h) for models that need no table.
inline Value mean_value_eval(const MeanValueModel& model, std::int64_t x, std::int64_t h) {
  model.validate();
  switch (model.variant) {
    case MeanValueModel::Variant::sieve_main_term: {
      const auto& g = *model.weights;
      std::vector<Rational> terms;
      for (std::int64_t d = 1; d <= std::min(x, g.support()); ++d) terms.push_back(g(d) / Rational(d));
      return Rational(BigInt(h)) * exact_sum(std::move(terms));
    }
    case MeanValueModel::Variant::window_exact:
      throw std::invalid_argument("window_exact model needs the function table");
    case MeanValueModel::Variant::fitted_log_polynomial:
      return static_cast<double>(h) * model.polynomial(std::log(static_cast<double>(x)));
  }
  throw std::logic_error("unreachable");
}

/// M(x, h) with window_exact = (h/x) sum_{n <= x} f(n) available.
template <typename T>
Value mean_value_eval(const MeanValueModel& model, const FunctionTable<T>& f, std::int64_t x, std::int64_t h) {
  if (model.variant != MeanValueModel::Variant::window_exact) return mean_value_eval(model, x, h);
  if (x < 1 || x > f.limit()) throw std::out_of_range("mean_value_eval: x outside table");
  Rational total(0);
  for (std::int64_t n = 1; n <= x; ++n) total += detail::as_rational(detail::lift<detail::exact_acc_t<T>>(f[n]));
  return Rational(BigInt(h), BigInt(x)) * total;
}

namespace detail {

/// M(m, h) for every integer m in [lo, hi], sharing work across m.
template <typename T>
std::vector<Value> mean_value_profile(const MeanValueModel& model, const FunctionTable<T>& f,
                                      const PrefixSums<T>& p, std::int64_t lo, std::int64_t hi,
                                      std::int64_t h) {
  model.validate();
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  switch (model.variant) {
    case MeanValueModel::Variant::sieve_main_term: {
      const auto& g = *model.weights;
      std::vector<Rational> harmonic(static_cast<std::size_t>(g.support()) + 1, Rational(0));
      for (std::int64_t d = 1; d <= g.support(); ++d) {
        harmonic[static_cast<std::size_t>(d)] = harmonic[static_cast<std::size_t>(d - 1)] + g(d) / Rational(d);
      }
      for (std::int64_t m = lo; m <= hi; ++m) {
        out.emplace_back(Rational(BigInt(h)) * harmonic[static_cast<std::size_t>(std::min(m, g.support()))]);
      }
      break;
    }
    case MeanValueModel::Variant::window_exact:
      if (hi > f.limit()) throw std::out_of_range("mean value beyond table");
      for (std::int64_t m = lo; m <= hi; ++m) {
        out.emplace_back(Rational(BigInt(h), BigInt(m)) * as_rational(p.upto(m)));
      }
      break;
    case MeanValueModel::Variant::fitted_log_polynomial:
      for (std::int64_t m = lo; m <= hi; ++m) {
        out.emplace_back(static_cast<double>(h) * model.polynomial(std::log(static_cast<double>(m))));
      }
      break;
  }
  return out;
}

/// Sum of squares of (a_i - b_i); exact when every b_i is rational.
template <typename Acc>
Value sum_squared_deviation(const std::vector<Acc>& a, const std::vector<Value>& b) {
  bool exact = true;
  for (const auto& v : b) exact = exact && std::holds_alternative<Rational>(v);
  if (exact) {
    std::vector<Rational> terms;
    terms.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational d = as_rational(a[i]) - std::get<Rational>(b[i]);
      terms.push_back(d * d);
    }
    return exact_sum(std::move(terms));
  }
  long double total = 0.0L, comp = 0.0L;  // Kahan
  for (std::size_t i = 0; i < a.size(); ++i) {
    long double d = static_cast<long double>(to_double(as_rational(a[i]))) -
                    static_cast<long double>(to_double(b[i]));
    long double y = d * d - comp;
    long double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return static_cast<double>(total);
}

}  // namespace detail

/// Window sums W(m) = sum_{m < n <= m+h} f(n) for m in [N, 2N).
template <typename T>
std::vector<detail::exact_acc_t<T>> forward_window_sums(const PrefixSums<T>& p, std::int64_t N, std::int64_t h) {
  std::vector<detail::exact_acc_t<T>> w;
  w.reserve(static_cast<std::size_t>(N));
  for (std::int64_t m = N; m < 2 * N; ++m) w.push_back(p.range(m + 1, m + h));
  return w;
}

/// J_f(N, h) = int_N^{2N} |sum_{x < n <= x+h} f(n) - M(x, h)|^2 dx, with the
/// window sum constant on each (m, m+1) and M taken at the integer point m.
template <typename T>
IntegralReport selberg_integral(const FunctionTable<T>& f, std::int64_t N, std::int64_t h,
                                const MeanValueModel& model) {
  detail::require_window(f, N, h);
  PrefixSums<T> p(f);
  const auto windows = forward_window_sums(p, N, h);
  const auto means = detail::mean_value_profile(model, f, p, N, 2 * N - 1, h);
  IntegralReport r;
  r.value = detail::sum_squared_deviation(windows, means);
  r.mode = IntegralMode::continuous;
  r.N = N;
  r.h = h;
  r.f_label = f.label();
  r.f1_label = std::string("M:") + model.name();
  return r;
}

/// Least-squares P of degree k-1 in log x fitted to W(x)/h over x in [N, 2N).
template <typename T>
MeanValueModel fit_log_polynomial(const FunctionTable<T>& f, std::int64_t N, std::int64_t h, int k) {
  if (k < 1) throw std::invalid_argument("fit_log_polynomial: k must be >= 1");
  detail::require_window(f, N, h);
  PrefixSums<T> p(f);
  const auto windows = forward_window_sums(p, N, h);
  const auto rows = static_cast<Eigen::Index>(windows.size());
  const double lo = std::log(static_cast<double>(N));
  const double hi = std::log(static_cast<double>(2 * N - 1));
  const double center = 0.5 * (lo + hi);
  const double scale = hi > lo ? 0.5 * (hi - lo) : 1.0;
  Eigen::MatrixXd A(rows, k);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = (std::log(static_cast<double>(N + i)) - center) / scale;
    double pw = 1.0;
    for (int c = 0; c < k; ++c) {
      A(i, c) = pw;
      pw *= u;
    }
    y(i) = to_double(detail::as_rational(windows[static_cast<std::size_t>(i)])) / static_cast<double>(h);
  }
  Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);
  return MeanValueModel::fitted(k, std::vector<double>(beta.data(), beta.data() + beta.size()), center, scale);
}

// ---------------------------------------------------------------------------
// Discrete mixed sum of window characters: diagonal and off-diagonal parts.

namespace detail {

inline void require_lemma_shape(const SieveWeights& g, const SieveWeights& g1, std::int64_t N,
                                std::int64_t h, std::int64_t D, std::int64_t Q) {
  if (!(1 < D && D <= Q)) throw std::invalid_argument("lemma: need 1 < D <= Q");
  if (g1.support() > D) throw std::invalid_argument("lemma: g1 must be supported in [1, D]");
  if (g.support() > Q) throw std::invalid_argument("lemma: g must be supported in [1, Q]");
  if (h < 1) throw std::invalid_argument("lemma: h must be >= 1");
  if (N <= h) throw std::invalid_argument("lemma: need N > h");
}

/// sum_{1<t<=min(2h,top)} a_t^2 + h sum_{2h<t<=top} a_t^2 / t, a_t = t R_t.
inline Rational envelope_bracket(const SieveWeights& w, std::int64_t top, std::int64_t h) {
  std::vector<Rational> terms;
  for (std::int64_t t = 2; t <= top; ++t) {
    Rational a = scaled_ramanujan_coefficient(w, t);
    if (a == 0) continue;
    Rational sq = a * a;
    terms.push_back(t <= 2 * h ? sq : Rational(BigInt(h), BigInt(t)) * sq);
  }
  return exact_sum(std::move(terms));
}

}  // namespace detail

/// sum_{N <= x < 2N} (sum_q g(q) chi_q(x)) (sum_d g1(d) chi_d(x)), exactly.
inline Rational lemma_lhs(const SieveWeights& g, const SieveWeights& g1, std::int64_t N, std::int64_t h,
                          bool dashed) {
  // sum_q g(q) chi_q(x) is the symmetry sum of g * 1; scale g to integers.
  const BigInt sg = g.common_denominator();
  const BigInt sg1 = g1.common_denominator();
  const std::int64_t limit = 2 * N + h;
  const IntTable F = convolve_with_unit_scaled(g, sg, limit);
  const IntTable F1 = convolve_with_unit_scaled(g1, sg1, limit);
  PrefixSums<std::int64_t> p(F), p1(F1);
  __int128 total = 0;
  for (std::int64_t x = N; x < 2 * N; ++x) total += symmetry_sum(p, x, h, dashed) * symmetry_sum(p1, x, h, dashed);
  return to_rational(total) / Rational(sg * sg1);
}

inline IntegralReport lemma_decomposition(const SieveWeights& g, const SieveWeights& g1, std::int64_t N,
                                          std::int64_t h, std::int64_t D, std::int64_t Q, bool dashed) {
  detail::require_lemma_shape(g, g1, N, h, D, Q);
  const Rational lhs = lemma_lhs(g, g1, N, h, dashed);

  PrimitivePowerSums starred(h, dashed);
  std::vector<Rational> diag_terms;
  for (std::int64_t ell = 2; ell <= D; ++ell) {
    Rational a = scaled_ramanujan_coefficient(g1, ell);
    if (a == 0) continue;
    Rational b = scaled_ramanujan_coefficient(g, ell);
    if (b == 0) continue;
    diag_terms.push_back(a * b * starred.exact(ell));
  }
  const Rational diagonal = Rational(BigInt(N)) * exact_sum(std::move(diag_terms));
  const Rational off = lhs - diagonal;

  const Rational bracket1 = detail::envelope_bracket(g1, D, h);
  const Rational bracket = detail::envelope_bracket(g, Q, h);
  const double envelope = static_cast<double>(D) * static_cast<double>(Q) *
                          std::log(static_cast<double>(N)) * std::sqrt(to_double(bracket1)) *
                          std::sqrt(to_double(bracket));
  const double off_abs = std::abs(to_double(off));
  const double measured = off_abs == 0.0 ? 0.0 : off_abs / envelope;

  IntegralReport r;
  r.value = lhs;
  r.mode = IntegralMode::discrete;
  r.N = N;
  r.h = h;
  r.f_label = g.label();
  r.f1_label = g1.label();
  r.terms = {{"lhs", lhs},
             {"diagonal", diagonal},
             {"off_diagonal", off},
             {"envelope", envelope},
             {"measured_constant", measured}};
  return r;
}

/// sum_{t | l} mu(t)/t^2 ||h t / l||, via the dashed starred power sum (half of it).
inline Rational distance_moebius_sum(const PrimitivePowerSums& dashed_sums, std::int64_t ell) {
  return dashed_sums.exact(ell) / Rational(2);
}

/// Checks the hypotheses of the lower-bound functional; throws HypothesisViolation.
inline void check_theorem_hypotheses(const SieveWeights& g, const SieveWeights& g1, std::int64_t N,
                                     std::int64_t h, std::int64_t D, std::int64_t Q) {
  if (N < 1 || h < 1) throw HypothesisViolation("N, h must be >= 1");
  if (!(1 < D && D <= Q)) throw HypothesisViolation("need 1 < D <= Q");
  if (g.support() > Q) throw HypothesisViolation("g must be supported in [1, Q]");
  if (g1.support() > D) throw HypothesisViolation("g1 must be supported in [1, D]");
  if (!g.theorem_mode()) throw HypothesisViolation("need 1 <= g on [1, Q]");
  if (!g1.theorem_mode()) throw HypothesisViolation("need 1 <= g1 on [1, D]");
  for (std::int64_t ell = 2; ell <= Q; ++ell) {
    for (std::int64_t q = 1; q * ell <= Q; ++q) {
      if (g(ell * q) < g(q)) {
        throw HypothesisViolation("need g(l q) >= g(q); fails at l = " + std::to_string(ell) +
                                  ", q = " + std::to_string(q));
      }
    }
  }
}

/// N (sum_{q <= Q/D} g(q)/q) sum_{1 < l <= D/2} (sum_{d <= D/l} g1(l d)/d) sum_{t|l} mu(t)/t^2 ||h t/l||.
inline Rational theorem_lower_bound(const SieveWeights& g, const SieveWeights& g1, std::int64_t N,
                                    std::int64_t h, std::int64_t D, std::int64_t Q) {
  check_theorem_hypotheses(g, g1, N, h, D, Q);
  std::vector<Rational> head;
  for (std::int64_t q = 1; q <= Q / D; ++q) head.push_back(g(q) / Rational(q));
  PrimitivePowerSums dashed_sums(h, true);
  std::vector<Rational> body;
  for (std::int64_t ell = 2; ell <= D / 2; ++ell) {
    body.push_back(scaled_ramanujan_coefficient(g1, ell) * distance_moebius_sum(dashed_sums, ell));
  }
  return Rational(BigInt(N)) * exact_sum(std::move(head)) * exact_sum(std::move(body));
}

// ---------------------------------------------------------------------------
// Symmetry vs. Selberg integral connection.

struct ConnectionAudit {
  Rational symmetry;         ///< I_f (continuous)
  Value selberg;             ///< J_f
  Value mean_difference;     ///< int |M(x,h) - M(x-h,h)|^2, per unit interval
  Rational tail;             ///< N + h^3
  double ratio = 0.0;        ///< I_f / (J_f + mean_difference + tail)
};

template <typename T>
ConnectionAudit connection_audit(const FunctionTable<T>& f, std::int64_t N, std::int64_t h,
                                 const MeanValueModel& model) {
  detail::require_window(f, N, h);
  PrefixSums<T> p(f);
  ConnectionAudit a;
  a.symmetry = symmetry_integral(f, N, h, IntegralMode::continuous).exact_value();
  a.selberg = selberg_integral(f, N, h, model).value;

  const auto now = detail::mean_value_profile(model, f, p, N, 2 * N - 1, h);
  const auto before = detail::mean_value_profile(model, f, p, N - h, 2 * N - 1 - h, h);
  bool exact = true;
  for (std::size_t i = 0; i < now.size(); ++i) {
    exact = exact && std::holds_alternative<Rational>(now[i]) && std::holds_alternative<Rational>(before[i]);
  }
  if (exact) {
    std::vector<Rational> terms;
    for (std::size_t i = 0; i < now.size(); ++i) {
      Rational d = std::get<Rational>(now[i]) - std::get<Rational>(before[i]);
      terms.push_back(d * d);
    }
    a.mean_difference = exact_sum(std::move(terms));
  } else {
    long double total = 0.0L;
    for (std::size_t i = 0; i < now.size(); ++i) {
      long double d = static_cast<long double>(to_double(now[i])) - static_cast<long double>(to_double(before[i]));
      total += d * d;
    }
    a.mean_difference = static_cast<double>(total);
  }
  a.tail = Rational(BigInt(N) + BigInt(h) * h * h);
  const double denom = to_double(a.selberg) + to_double(a.mean_difference) + to_double(a.tail);
  a.ratio = to_double(a.symmetry) / denom;
  return a;
}

}  // namespace symint
