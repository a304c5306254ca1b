#pragma once

// Exact integers and rationals used by every identity-level computation.

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symint {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt to_bigint(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<std::uint64_t>(mag >> 64);
  BigInt lo = static_cast<std::uint64_t>(mag);
  BigInt r = (hi << 64) + lo;
  return negative ? BigInt(-r) : r;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline Rational to_rational(__int128 v) { return Rational(to_bigint(v)); }

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

/// Largest integer <= r.
inline BigInt floor_of(const Rational& r) {
  BigInt n = numerator_of(r);
  BigInt d = denominator_of(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

/// Distance to the nearest integer, exactly; result lies in [0, 1/2].
inline Rational nearest_integer_distance(const Rational& a) {
  Rational frac = a - Rational(floor_of(a));
  Rational other = Rational(1) - frac;
  return frac < other ? frac : other;
}

/// "num/den" with den > 0; integers still carry "/1".
inline std::string to_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(trim(text.substr(0, slash))));
    BigInt den(std::string(trim(text.substr(slash + 1))));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

/// Pairwise (balanced-tree) summation. Keeps intermediate denominators small
/// when many terms with distinct denominators are added.
inline Rational exact_sum(std::vector<Rational> terms) {
  if (terms.empty()) return Rational(0);
  while (terms.size() > 1) {
    std::vector<Rational> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      next.push_back(terms[i] + terms[i + 1]);
    }
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

/// Shortest "%.15g"-style rendering used in every report.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace symint
