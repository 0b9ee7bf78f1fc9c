#pragma once

// Test-only reference computations. Nothing here calls the library's
// evaluation paths; they work from the raw series definitions.

#include "salem/rational.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using salem::Rational;

inline std::vector<Rational> cumulative(const std::vector<Rational> &p) {
  std::vector<Rational> b{0};
  for (const auto &v : p)
    b.push_back(b.back() + v);
  return b;
}

/// Bracket of beta(i_1) + sum beta(i_k) prod p(i_j) from the first n digits;
/// the unseen remainder lies in [0, prod_{j<=n} p].
struct Bracket {
  Rational lo, hi;
};

inline Bracket partial_sum(const std::vector<Rational> &p, const std::function<int(std::size_t)> &digit,
                           std::size_t n) {
  const auto beta = cumulative(p);
  Rational s = 0, w = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const int d = digit(k);
    s += beta[static_cast<std::size_t>(d)] * w;
    w *= p[static_cast<std::size_t>(d)];
  }
  return {s, s + w};
}

/// Same series with per-position complemented weights where flipped(k).
inline Bracket barred_partial_sum(const std::vector<Rational> &p, const std::function<int(std::size_t)> &digit,
                                  const std::function<bool(std::size_t)> &flipped, std::size_t n) {
  const int q = static_cast<int>(p.size());
  return partial_sum(
      p, [&](std::size_t k) { return flipped(k) ? q - 1 - digit(k) : digit(k); }, n);
}

/// Standard base-q digits of x in [0, 1): d_k = floor(q * r).
inline std::vector<int> base_q_digits(Rational x, int q, std::size_t n) {
  std::vector<int> out;
  for (std::size_t k = 0; k < n && x != 0; ++k) {
    x *= q;
    int d = 0;
    while (x >= d + 1)
      ++d;
    out.push_back(d);
    x -= d;
  }
  return out;
}

/// Positive root of y^3 + y^2 = 1 by Newton's method.
inline long double cubic_root_y() {
  long double y = 0.75L;
  for (int i = 0; i < 100; ++i)
    y -= (y * y * y + y * y - 1) / (3 * y * y + 2 * y);
  return y;
}

/// Plain double bisection of sum_i w_i^alpha = 1 on [0, 1].
inline double bisect_moran(const std::vector<double> &w) {
  auto f = [&](double a) {
    double s = 0;
    for (double v : w)
      s += std::pow(v, a);
    return s - 1;
  };
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline Rational random_rational(std::mt19937_64 &rng, std::int64_t max_den = 1000) {
  std::uniform_int_distribution<std::int64_t> den(1, max_den);
  const std::int64_t d = den(rng);
  std::uniform_int_distribution<std::int64_t> num(0, d);
  return Rational(num(rng), d);
}

inline std::vector<int> random_digits(std::mt19937_64 &rng, int q, std::size_t n) {
  std::uniform_int_distribution<int> dist(0, q - 1);
  std::vector<int> out(n);
  for (auto &d : out)
    d = dist(rng);
  return out;
}

} // namespace oracle
