#pragma once

// The graph of g as an IFS attractor, entropy sums over covering rectangles,
// and the Moran equation for the self-similar set S_(P,u).

#include "salem/analysis.hpp"
#include "salem/numeral.hpp"
#include "salem/transforms.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace salem {

struct Point2 {
  Rational x;
  Rational y;
};

/// x' = x_scale x + x_offset,  y' = y_scale y + y_offset.
struct AffineMap2D {
  Rational x_scale, x_offset, y_scale, y_offset;

  Point2 operator()(const Point2 &p) const { return {x_scale * p.x + x_offset, y_scale * p.y + y_offset}; }
};

namespace detail {

inline void require_shift_invariant(const BarredSystem &sys) {
  if (!sys.flips.is_shift_invariant())
    throw error(errc::not_shift_invariant,
                "the affine maps are position independent only for flips = none or all, got " +
                    sys.flips.str());
}

} // namespace detail

inline std::vector<AffineMap2D> ifs_maps(const BarredSystem &sys) {
  detail::require_shift_invariant(sys);
  std::vector<AffineMap2D> maps;
  for (int i = 0; i < sys.q(); ++i)
    maps.push_back({sys.pv.p(i), sys.pv.beta(i), sys.bar_p(1, i), sys.bar_beta(1, i)});
  return maps;
}

/// psi_{c_1} o ... o psi_{c_d} applied to (0, g(0)) for every digit string of
/// length d, in lexicographic order of (c_1, ..., c_d).
inline std::vector<Point2> ifs_graph_points(const BarredSystem &sys, std::size_t depth,
                                            std::size_t budget = default_budget) {
  const auto maps = ifs_maps(sys);
  detail::require_budget(sys.q(), depth, budget, errc::budget_exceeded);
  const Point2 seed{0, eval_g(DigitSeq(sys.q(), {}, Tail::zero), sys)};
  std::vector<Point2> out;
  // Composition accumulated outermost-first as a single affine map.
  auto walk = [&](auto &&self, std::size_t level, const AffineMap2D &acc) -> void {
    if (level == depth) {
      out.push_back(acc(seed));
      return;
    }
    for (const auto &m : maps)
      self(self, level + 1,
           AffineMap2D{acc.x_scale * m.x_scale, acc.x_scale * m.x_offset + acc.x_offset,
                       acc.y_scale * m.y_scale, acc.y_scale * m.y_offset + acc.y_offset});
  };
  walk(walk, 0, AffineMap2D{1, 0, 1, 0});
  return out;
}

/// Squared diagonals (prod p)^2 + (prod bar_p)^2 of the q^r rank-r rectangles
/// covering the graph.
inline std::vector<Rational> diagonal_squares(const BarredSystem &sys, std::size_t rank,
                                              std::size_t budget = default_budget) {
  detail::require_budget(sys.q(), rank, budget, errc::budget_exceeded);
  std::vector<Rational> out;
  auto walk = [&](auto &&self, std::size_t level, const Rational &a, const Rational &b) -> void {
    if (level == rank) {
      out.push_back(a * a + b * b);
      return;
    }
    const std::size_t k = level + 1;
    for (int c = 0; c < sys.q(); ++c)
      self(self, k, a * sys.pv.p(c), b * sys.bar_p(k, c));
  };
  walk(walk, 0, Rational(1), Rational(1));
  return out;
}

/// sum over rank-r rectangles of diagonal^alpha.
inline long double entropy_sum(const BarredSystem &sys, long double alpha, std::size_t rank,
                               std::size_t budget = default_budget) {
  if (alpha < 0)
    throw error(errc::invalid_argument, "alpha must be non-negative");
  long double sum = 0;
  for (const auto &d2 : diagonal_squares(sys, rank, budget))
    sum += std::exp(0.5L * alpha * log_of(d2));
  return sum;
}

struct RankEstimate {
  std::size_t rank;
  long double alpha;
  long double lower_bound; ///< ln q / ln(1/min p)
  long double upper_bound; ///< ln q / ln(1/max p)
};

struct DimensionEstimate {
  std::vector<RankEstimate> per_rank;
  long double trend; ///< a from the least-squares fit alpha_r = a + c / r
};

/// For each rank, the alpha at which the normalized entropy sum
/// sum (diagonal / sqrt 2)^alpha crosses 1. Every rectangle side lies in
/// [min p^r, max p^r], which pins the crossing inside the reported bounds.
inline DimensionEstimate graph_dimension_estimate(const BarredSystem &sys, const std::vector<std::size_t> &ranks,
                                                  std::size_t budget = default_budget) {
  const long double lnq = std::log(static_cast<long double>(sys.q()));
  const long double lo_bound = lnq / -log_of(sys.pv.min_p());
  const long double hi_bound = lnq / -log_of(sys.pv.max_p());
  DimensionEstimate est{};
  for (std::size_t r : ranks) {
    if (r < 1)
      throw error(errc::invalid_argument, "ranks must be positive");
    std::vector<long double> logs;
    for (const auto &d2 : diagonal_squares(sys, r, budget))
      logs.push_back(0.5L * (log_of(d2) - std::log(2.0L)));
    auto excess = [&](long double alpha) {
      long double s = 0;
      for (long double l : logs)
        s += std::exp(alpha * l);
      return s - 1;
    };
    long double lo = lo_bound, hi = hi_bound;
    for (int it = 0; it < 200 && hi - lo > 1e-15L * std::max(1.0L, hi); ++it) {
      const long double mid = 0.5L * (lo + hi);
      (excess(mid) > 0 ? lo : hi) = mid;
    }
    est.per_rank.push_back({r, 0.5L * (lo + hi), lo_bound, hi_bound});
  }
  if (est.per_rank.size() == 1) {
    est.trend = est.per_rank.front().alpha;
  } else if (!est.per_rank.empty()) {
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<long double>(est.per_rank.size());
    for (const auto &e : est.per_rank) {
      const long double x = 1.0L / static_cast<long double>(e.rank);
      sx += x;
      sy += e.alpha;
      sxx += x * x;
      sxy += x * e.alpha;
    }
    const long double denom = n * sxx - sx * sx;
    const long double slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
    est.trend = (sy - slope * sx) / n;
  }
  return est;
}

/// S_(P,u): digit strings built from blocks u^{i-1} i with i in {1..q-1} \ {u}.
struct MoranSpec {
  ProbVector pv;
  int u;

  MoranSpec(ProbVector p, int digit) : pv(std::move(p)), u(digit) {
    if (!pv.valid_digit(u))
      throw error(errc::digit_out_of_range, "u = " + std::to_string(u));
  }

  std::vector<int> alphabet() const {
    std::vector<int> a;
    for (int i = 1; i < pv.q(); ++i)
      if (i != u)
        a.push_back(i);
    return a;
  }

  /// Block contraction ratio p_i p_u^{i-1}.
  Rational ratio(int i) const {
    Rational r = pv.p(i);
    for (int k = 1; k < i; ++k)
      r *= pv.p(u);
    return r;
  }

  std::vector<int> block(int i) const {
    std::vector<int> b(static_cast<std::size_t>(i - 1), u);
    b.push_back(i);
    return b;
  }
};

/// F(alpha) = sum_i (p_i p_u^{i-1})^alpha.
inline long double moran_function(const MoranSpec &spec, long double alpha) {
  long double s = 0;
  for (int i : spec.alphabet())
    s += std::exp(alpha * log_of(spec.ratio(i)));
  return s;
}

/// Root of F(alpha) = 1 in [0, 1]; 0 when F(0) <= 1 (a single block).
inline long double moran_dimension(const MoranSpec &spec, long double tol = 1e-12L) {
  const auto alpha_set = spec.alphabet();
  if (alpha_set.empty())
    throw error(errc::empty_alphabet, "no digit in {1..q-1} besides u = " + std::to_string(spec.u));
  if (tol <= 0)
    throw error(errc::invalid_argument, "tolerance must be positive");
  if (alpha_set.size() <= 1)
    return 0;
  long double lo = 0, hi = 1, mid = 0.5L;
  for (int it = 0; it < 256; ++it) {
    mid = 0.5L * (lo + hi);
    const long double f = moran_function(spec, mid);
    if (std::fabs(f - 1) <= tol)
      break;
    (f > 1 ? lo : hi) = mid;
  }
  return mid;
}

/// Bases of the level-n covering of S_(P,u): every concatenation of n blocks.
inline std::vector<std::vector<int>> s_set_cylinders(const MoranSpec &spec, std::size_t blocks,
                                                     std::size_t budget = default_budget) {
  const auto alpha_set = spec.alphabet();
  if (alpha_set.empty())
    return {};
  detail::require_budget(static_cast<int>(alpha_set.size()), blocks, budget, errc::budget_exceeded);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto walk = [&](auto &&self, std::size_t level) -> void {
    if (level == blocks) {
      out.push_back(cur);
      return;
    }
    for (int i : alpha_set) {
      const auto b = spec.block(i);
      cur.insert(cur.end(), b.begin(), b.end());
      self(self, level + 1);
      cur.resize(cur.size() - b.size());
    }
  };
  walk(walk, 0);
  return out;
}

/// Total length of the level-n covering cylinders.
inline Rational s_set_covering_measure(const MoranSpec &spec, std::size_t blocks,
                                       std::size_t budget = default_budget) {
  Rational total = 0;
  for (const auto &base : s_set_cylinders(spec, blocks, budget))
    total += cylinder_bounds(base, spec.pv).width();
  return total;
}

} // namespace salem
