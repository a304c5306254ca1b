#pragma once

// Scan configuration, identity census and batch report production.

#include "symint/arith_core.hpp"
#include "symint/dk_corollary.hpp"
#include "symint/integrals.hpp"
#include "symint/rational.hpp"
#include "symint/report.hpp"
#include "symint/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace symint {

/// Invalid configuration; the message names the violated constraint.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ScanKind { growth, identity_survey, lemma_audit, connection_audit };

inline const char* to_string(ScanKind k) {
  switch (k) {
    case ScanKind::growth: return "growth";
    case ScanKind::identity_survey: return "identity_survey";
    case ScanKind::lemma_audit: return "lemma_audit";
    case ScanKind::connection_audit: return "connection_audit";
  }
  return "?";
}

struct ScanConfig {
  ScanKind kind = ScanKind::growth;
  int k = 3;
  std::optional<Rational> theta, delta, lambda;
  std::vector<std::int64_t> N_grid;
  std::string output_path;
  std::uint64_t seed = 0;
  std::int64_t q_max = 300;
  std::int64_t h_max = 300;
  bool dashed = false;         ///< lemma_audit: window convention
  bool record_timing = false;  ///< growth: fill runtime_ms (breaks byte-identical reruns)
};

namespace detail {

inline std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

inline std::int64_t parse_grid_point(const std::string& token) {
  const auto caret = token.find('^');
  try {
    if (caret == std::string::npos) return std::stoll(token);
    const auto base = std::stoll(token.substr(0, caret));
    const auto exp = std::stoll(token.substr(caret + 1));
    if (exp < 0 || exp > 62) throw ConfigError("N_grid: exponent out of range in '" + token + "'");
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < exp; ++i) v = checked_mul(v, base);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("N_grid: cannot parse '" + token + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

}  // namespace detail

/// Flat "key = value" text; '#' starts a comment; rationals as "num/den".
inline ScanConfig parse_scan_config(std::istream& in) {
  ScanConfig c;
  bool have_kind = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto rational = [&]() {
      try {
        return parse_rational(value);
      } catch (const std::exception&) {
        throw ConfigError(key + ": expected a rational num/den, got '" + value + "'");
      }
    };
    if (key == "kind") {
      if (value == "growth") c.kind = ScanKind::growth;
      else if (value == "identity_survey") c.kind = ScanKind::identity_survey;
      else if (value == "lemma_audit") c.kind = ScanKind::lemma_audit;
      else if (value == "connection_audit") c.kind = ScanKind::connection_audit;
      else throw ConfigError("kind: unknown scan kind '" + value + "'");
      have_kind = true;
    } else if (key == "k") {
      c.k = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "theta") {
      c.theta = rational();
    } else if (key == "delta") {
      c.delta = rational();
    } else if (key == "lambda") {
      c.lambda = rational();
    } else if (key == "N_grid") {
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = detail::trim(tok);
        if (!tok.empty()) c.N_grid.push_back(detail::parse_grid_point(tok));
      }
    } else if (key == "output_path") {
      c.output_path = value;
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
    } else if (key == "q_max") {
      c.q_max = detail::parse_int(key, value);
    } else if (key == "h_max") {
      c.h_max = detail::parse_int(key, value);
    } else if (key == "dashed") {
      c.dashed = detail::parse_bool(key, value);
    } else if (key == "record_timing") {
      c.record_timing = detail::parse_bool(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ConfigError("config: missing 'kind'");
  return c;
}

inline ScanConfig parse_scan_config(const std::string& text) {
  std::istringstream in(text);
  return parse_scan_config(in);
}

/// Width, level and auxiliary level: 0 < theta < 1/2, theta < delta < lambda,
/// and delta + lambda < 1 when `need_sum` is set.
inline void check_exponents(const std::optional<Rational>& theta, const std::optional<Rational>& delta,
                            const std::optional<Rational>& lambda, bool need_sum) {
  if (theta && !(*theta > 0 && *theta < Rational(BigInt(1), BigInt(2)))) throw ConfigError("violated 0<θ<1/2");
  if (delta || lambda) {
    if (!theta || !delta || !lambda) throw ConfigError("θ<δ<λ needs theta, delta and lambda");
    if (!(*theta < *delta && *delta < *lambda)) throw ConfigError("violated θ<δ<λ");
    if (!(*lambda < 1)) throw ConfigError("violated 0<λ<1");
  }
  if (need_sum) {
    if (!delta || !lambda) throw ConfigError("δ+λ<1 needs delta and lambda");
    if (!(*delta + *lambda < 1)) throw ConfigError("violated δ+λ<1");
  }
}

/// Every constraint is checked here, before any computation starts.
inline void validate(const ScanConfig& c) {
  if (c.output_path.empty()) throw ConfigError("output_path is required");
  check_exponents(c.theta, c.delta, c.lambda, c.kind == ScanKind::lemma_audit);
  if (c.kind != ScanKind::identity_survey) {
    if (c.N_grid.empty()) throw ConfigError("N_grid must not be empty");
    if (!c.theta) throw ConfigError("theta is required for kind " + std::string(to_string(c.kind)));
    for (auto N : c.N_grid) {
      if (N < 2) throw ConfigError("N_grid entries must be >= 2");
    }
  }
  switch (c.kind) {
    case ScanKind::identity_survey:
      if (c.q_max < 2 || c.h_max < 2) throw ConfigError("identity_survey: need q_max, h_max >= 2");
      break;
    case ScanKind::growth:
      if (c.k < 3) throw ConfigError("growth: need k>=3");
      if (!(*c.theta < Rational(BigInt(1), BigInt(c.k)))) throw ConfigError("growth: violated θ<1/k");
      for (auto N : c.N_grid) {
        if (floor_power(N, *c.theta) < 2) {
          throw ConfigError("growth: h = floor(N^θ) < 2 at N = " + std::to_string(N));
        }
      }
      break;
    case ScanKind::lemma_audit:
      for (auto N : c.N_grid) {
        const auto h = floor_power(N, *c.theta);
        const auto D = floor_power(N, *c.delta);
        const auto Q = floor_power(N, *c.lambda);
        if (h < 1) throw ConfigError("lemma_audit: h = floor(N^θ) < 1 at N = " + std::to_string(N));
        if (!(1 < D && D <= Q)) throw ConfigError("lemma_audit: violated 1<D<=Q at N = " + std::to_string(N));
        if (N <= h) throw ConfigError("lemma_audit: violated h<N at N = " + std::to_string(N));
      }
      break;
    case ScanKind::connection_audit:
      if (c.k < 1) throw ConfigError("connection_audit: need k>=1");
      for (auto N : c.N_grid) {
        const auto h = floor_power(N, *c.theta);
        if (h < 1 || N <= h) throw ConfigError("connection_audit: violated 1<=h<N at N = " + std::to_string(N));
      }
      break;
  }
}

/// Maps `fn` over indices [0, n) on a small thread pool; results keep index order.
template <typename R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity census.

struct CensusSummary {
  std::int64_t q_max = 0, h_max = 0;
  std::int64_t total = 0;              ///< rows (both conventions)
  std::int64_t dashed_mismatches = 0;
  std::int64_t undashed_mismatches = 0;
  std::int64_t pattern_violations = 0; ///< undashed rows where mismatch != predicted
  std::int64_t gap_violations = 0;     ///< undashed mismatches whose gap is not 2/q
  std::string note;

  bool conjecture_confirmed() const { return pattern_violations == 0 && gap_violations == 0; }
};

struct CensusReport {
  Report table;  ///< q, h, dashed, exact_num, exact_den, rhs_num, rhs_den, mismatch
  CensusSummary summary;
};

/// Compares sum_{j<q} |c_{j,q}|^2 against 2||h/q|| for 2 <= q <= q_max, 1 <= h <= h_max.
/// Undashed rows are predicted to mismatch iff 2 (h mod q) >= q (and h mod q != 0),
/// with exact - rhs = -2/q.
inline CensusReport run_identity_survey(std::int64_t q_max, std::int64_t h_max) {
  if (q_max < 2 || h_max < 2) throw std::invalid_argument("identity survey: need q_max, h_max >= 2");
  CensusReport out;
  out.table.columns = {"q", "h", "dashed", "exact_num", "exact_den", "rhs_num", "rhs_den", "mismatch"};
  auto& s = out.summary;
  s.q_max = q_max;
  s.h_max = h_max;
  for (std::int64_t q = 2; q <= q_max; ++q) {
    for (std::int64_t h = 1; h <= h_max; ++h) {
      for (bool dashed : {false, true}) {
        const auto cmp = coefficient_power_sum(q, h, dashed);
        const bool mismatch = !cmp.matches();
        out.table.rows.push_back({std::to_string(q), std::to_string(h), dashed ? "1" : "0",
                                  numerator_of(cmp.exact).str(), denominator_of(cmp.exact).str(),
                                  numerator_of(cmp.closed_form).str(), denominator_of(cmp.closed_form).str(),
                                  mismatch ? "1" : "0"});
        ++s.total;
        if (dashed) {
          s.dashed_mismatches += mismatch;
          continue;
        }
        s.undashed_mismatches += mismatch;
        const std::int64_t rem = h % q;
        const bool predicted = rem != 0 && 2 * rem >= q;
        if (predicted != mismatch) ++s.pattern_violations;
        if (mismatch && cmp.closed_form - cmp.exact != Rational(BigInt(2), BigInt(q))) ++s.gap_violations;
      }
    }
  }
  std::ostringstream note;
  note << "dashed: " << s.dashed_mismatches << " mismatches of " << s.total / 2 << "; undashed: "
       << s.undashed_mismatches << " mismatches, "
       << (s.conjecture_confirmed() ? "every one at 2(h mod q) >= q with gap exactly 2/q"
                                    : "pattern NOT confirmed")
       << " (" << s.pattern_violations << " pattern violations, " << s.gap_violations << " gap violations)";
  s.note = note.str();
  return out;
}

inline std::string to_json(const CensusSummary& s) {
  nlohmann::ordered_json j;
  j["q_max"] = s.q_max;
  j["h_max"] = s.h_max;
  j["total"] = s.total;
  j["dashed_mismatches"] = s.dashed_mismatches;
  j["undashed_mismatches"] = s.undashed_mismatches;
  j["pattern_violations"] = s.pattern_violations;
  j["gap_violations"] = s.gap_violations;
  j["conjecture_confirmed"] = s.conjecture_confirmed();
  j["note"] = s.note;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Scans.

inline Report growth_report(const std::vector<GrowthPoint>& points, bool record_timing) {
  Report r;
  r.columns = {"k", "theta_num", "theta_den", "N", "h", "I_dk", "J_k", "rho_I", "rho_J", "runtime_ms"};
  for (const auto& p : points) {
    r.add_row({std::to_string(p.k), numerator_of(p.theta).str(), denominator_of(p.theta).str(),
               std::to_string(p.N), std::to_string(p.h), numerator_of(p.I_dk).str(), format_double(p.J_k),
               format_double(p.rho_I), format_double(p.rho_J),
               record_timing ? format_double(p.runtime_ms) : "NA"});
  }
  return r;
}

inline std::vector<GrowthPoint> run_growth(const ScanConfig& c) {
  std::int64_t limit = 1;
  for (auto N : c.N_grid) limit = std::max(limit, 2 * N + floor_power(N, *c.theta));
  const IntTable dk = sieve_divisor_k(c.k, limit);
  return parallel_map<GrowthPoint>(c.N_grid.size(), [&](std::size_t i) {
    return corollary_growth_ratio(dk, c.k, *c.theta, c.N_grid[i]);
  });
}

inline Report lemma_audit_report(const ScanConfig& c) {
  Report r;
  r.columns = {"N", "h", "D", "Q", "dashed", "lhs", "diagonal", "off_diagonal", "envelope",
               "measured_constant", "lower_bound"};
  auto rows = parallel_map<std::vector<std::string>>(c.N_grid.size(), [&](std::size_t i) {
    const auto N = c.N_grid[i];
    const auto h = floor_power(N, *c.theta);
    const auto D = floor_power(N, *c.delta);
    const auto Q = floor_power(N, *c.lambda);
    const auto g = SieveWeights::constant(Q);
    const auto g1 = SieveWeights::constant(D);
    const auto rep = lemma_decomposition(g, g1, N, h, D, Q, c.dashed);
    const auto bound = theorem_lower_bound(g, g1, N, h, D, Q);
    return std::vector<std::string>{std::to_string(N), std::to_string(h), std::to_string(D), std::to_string(Q),
                                    c.dashed ? "1" : "0", to_string(*rep.term("lhs")),
                                    to_string(*rep.term("diagonal")), to_string(*rep.term("off_diagonal")),
                                    to_string(*rep.term("envelope")), to_string(*rep.term("measured_constant")),
                                    to_string(bound)};
  });
  for (auto& row : rows) r.add_row(std::move(row));
  return r;
}

inline Report connection_audit_report(const ScanConfig& c) {
  Report r;
  r.columns = {"k", "N", "h", "I_f", "J_f", "mean_difference", "tail", "ratio"};
  std::int64_t limit = 1;
  for (auto N : c.N_grid) limit = std::max(limit, 2 * N + floor_power(N, *c.theta));
  const IntTable dk = sieve_divisor_k(c.k, limit);
  auto rows = parallel_map<std::vector<std::string>>(c.N_grid.size(), [&](std::size_t i) {
    const auto N = c.N_grid[i];
    const auto h = floor_power(N, *c.theta);
    const auto a = connection_audit(dk, N, h, MeanValueModel::window_exact());
    return std::vector<std::string>{std::to_string(c.k), std::to_string(N), std::to_string(h),
                                    to_string(a.symmetry), to_string(a.selberg), to_string(a.mean_difference),
                                    to_string(a.tail), format_double(a.ratio)};
  });
  for (auto& row : rows) r.add_row(std::move(row));
  return r;
}

inline ReportFormat format_for_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? ReportFormat::json
                                                                            : ReportFormat::csv;
}

/// Validates, runs and writes the report(s) for one config. Returns the main table.
inline Report run_scan(const ScanConfig& c) {
  validate(c);
  Report table;
  switch (c.kind) {
    case ScanKind::growth:
      table = growth_report(run_growth(c), c.record_timing);
      break;
    case ScanKind::identity_survey: {
      auto census = run_identity_survey(c.q_max, c.h_max);
      write_file(c.output_path + ".summary.json", to_json(census.summary));
      table = std::move(census.table);
      break;
    }
    case ScanKind::lemma_audit:
      table = lemma_audit_report(c);
      break;
    case ScanKind::connection_audit:
      table = connection_audit_report(c);
      break;
  }
  write_file(c.output_path, render(table, format_for_path(c.output_path)));
  return table;
}

}  // namespace symint
