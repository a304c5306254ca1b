#pragma once

#include "symint/checked.hpp"
#include "symint/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symint {

/// Values of an arithmetic function on [1, limit]. Index 0 is unused.
template <typename T>
class FunctionTable {
 public:
  using value_type = T;

  FunctionTable() = default;

  FunctionTable(std::vector<T> values_from_one, std::string label)
      : values_(values_from_one.size() + 1, T(0)), label_(std::move(label)) {
    if (values_from_one.empty()) throw std::invalid_argument("FunctionTable: limit must be >= 1");
    std::move(values_from_one.begin(), values_from_one.end(), values_.begin() + 1);
  }

  /// Builds from a vector already indexed 0..limit (entry 0 ignored).
  static FunctionTable from_indexed(std::vector<T> indexed, std::string label) {
    if (indexed.size() < 2) throw std::invalid_argument("FunctionTable: limit must be >= 1");
    FunctionTable t;
    t.values_ = std::move(indexed);
    t.values_[0] = T(0);
    t.label_ = std::move(label);
    return t;
  }

  std::int64_t limit() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const T& operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }

  const T& at(std::int64_t n) const {
    if (n < 1 || n > limit()) {
      throw std::out_of_range("FunctionTable '" + label_ + "': index " + std::to_string(n) +
                              " outside [1, " + std::to_string(limit()) + "]");
    }
    return values_[static_cast<std::size_t>(n)];
  }

  /// Raw storage, index 0..limit.
  const std::vector<T>& indexed() const { return values_; }

 private:
  std::vector<T> values_;
  std::string label_;
};

using IntTable = FunctionTable<std::int64_t>;
using RationalTable = FunctionTable<Rational>;

/// Finitely supported coefficients g(1..Q) of a sieve function f = g * 1.
class SieveWeights {
 public:
  SieveWeights(std::vector<Rational> coeffs_from_one, std::string label = "g")
      : coeffs_(std::move(coeffs_from_one)), label_(std::move(label)) {
    if (coeffs_.empty()) throw std::invalid_argument("SieveWeights: support must be >= 1");
    for (const auto& c : coeffs_) {
      Rational a = c < 0 ? Rational(-c) : c;
      if (a > bound_) bound_ = a;
    }
  }

  SieveWeights(std::vector<Rational> coeffs_from_one, Rational essential_bound, std::string label)
      : SieveWeights(std::move(coeffs_from_one), std::move(label)) {
    if (essential_bound < bound_) {
      throw std::invalid_argument("SieveWeights: essential bound below max |g(q)|");
    }
    bound_ = std::move(essential_bound);
  }

  /// g = delta_1, so g * 1 == 1.
  static SieveWeights unit() { return SieveWeights({Rational(1)}, "delta1"); }

  static SieveWeights constant(std::int64_t support, const Rational& value = Rational(1)) {
    if (support < 1) throw std::invalid_argument("SieveWeights: support must be >= 1");
    return SieveWeights(std::vector<Rational>(static_cast<std::size_t>(support), value),
                        "const" + std::to_string(support));
  }

  std::int64_t support() const { return static_cast<std::int64_t>(coeffs_.size()); }
  const Rational& essential_bound() const { return bound_; }
  const std::string& label() const { return label_; }

  /// g(q); zero outside [1, support].
  Rational operator()(std::int64_t q) const {
    if (q < 1 || q > support()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(q - 1)];
  }

  /// Lower-bound hypothesis: g(q) >= 1 on the whole support.
  bool theorem_mode() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c >= 1; });
  }

  bool all_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
  }

  /// L with L*g(q) integral for every q.
  BigInt common_denominator() const {
    BigInt l = 1;
    for (const auto& c : coeffs_) l = boost::multiprecision::lcm(l, denominator_of(c));
    return l;
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

 private:
  std::vector<Rational> coeffs_;
  Rational bound_{0};
  std::string label_;
};

// CSV: "n,value" for tables, "q,numerator,denominator" for weights.

inline std::string value_to_csv(std::int64_t v) { return std::to_string(v); }
inline std::string value_to_csv(const Rational& v) {
  return is_integer(v) ? numerator_of(v).str() : to_string(v);
}

template <typename T>
void write_csv(std::ostream& out, const FunctionTable<T>& table) {
  out << "n,value\n";
  for (std::int64_t n = 1; n <= table.limit(); ++n) {
    out << n << ',' << value_to_csv(table[n]) << '\n';
  }
}

inline void write_csv(std::ostream& out, const SieveWeights& g) {
  out << "q,numerator,denominator\n";
  for (std::int64_t q = 1; q <= g.support(); ++q) {
    Rational c = g(q);
    out << q << ',' << numerator_of(c).str() << ',' << denominator_of(c).str() << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace detail

inline RationalTable read_table_csv(std::istream& in, std::string label) {
  std::string line;
  if (!std::getline(in, line) || detail::split_csv_line(line) != std::vector<std::string>{"n", "value"}) {
    throw std::runtime_error("table CSV: expected header 'n,value'");
  }
  std::vector<Rational> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != 2) throw std::runtime_error("table CSV: malformed row '" + line + "'");
    if (std::stoll(cells[0]) != static_cast<long long>(values.size()) + 1) {
      throw std::runtime_error("table CSV: rows must be n = 1, 2, ... in order");
    }
    values.push_back(parse_rational(cells[1]));
  }
  return RationalTable(std::move(values), std::move(label));
}

inline SieveWeights read_weights_csv(std::istream& in, std::string label) {
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv_line(line) != std::vector<std::string>{"q", "numerator", "denominator"}) {
    throw std::runtime_error("weights CSV: expected header 'q,numerator,denominator'");
  }
  std::vector<Rational> coeffs;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != 3) throw std::runtime_error("weights CSV: malformed row '" + line + "'");
    auto q = std::stoll(cells[0]);
    if (q < 1) throw std::runtime_error("weights CSV: q must be >= 1");
    if (static_cast<std::size_t>(q) > coeffs.size()) coeffs.resize(static_cast<std::size_t>(q), Rational(0));
    coeffs[static_cast<std::size_t>(q - 1)] = parse_rational(cells[1] + "/" + cells[2]);
  }
  return SieveWeights(std::move(coeffs), std::move(label));
}

/// Narrows a rational table to int64 when every value is integral.
inline bool try_narrow(const RationalTable& t, IntTable& out) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(t.limit()) + 1, 0);
  for (std::int64_t n = 1; n <= t.limit(); ++n) {
    const Rational& x = t[n];
    if (!is_integer(x)) return false;
    BigInt z = numerator_of(x);
    if (z > BigInt(INT64_MAX) || z < BigInt(INT64_MIN)) return false;
    v[static_cast<std::size_t>(n)] = z.convert_to<std::int64_t>();
  }
  out = IntTable::from_indexed(std::move(v), t.label());
  return true;
}

}  // namespace symint
