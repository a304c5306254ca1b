#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symint {

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in addition");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in multiplication");
  }
  return r;
}

inline std::string to_string(__int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

/// floor(n^(1/k)) for n >= 0, k >= 1, with t^k <= n < (t+1)^k verified.
inline std::int64_t integer_root(std::int64_t n, int k) {
  if (n < 0 || k < 1) throw std::domain_error("integer_root: need n >= 0, k >= 1");
  if (k == 1 || n < 2) return n;
  // true iff t^k > n; stops multiplying as soon as the product exceeds n.
  auto exceeds = [&](std::int64_t t) {
    __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
      acc *= t;
      if (acc > n) return true;
    }
    return false;
  };
  auto t = static_cast<std::int64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (t > 0 && exceeds(t)) --t;
  while (!exceeds(t + 1)) ++t;
  return t;
}

}  // namespace symint
