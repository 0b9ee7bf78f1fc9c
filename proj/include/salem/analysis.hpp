#pragma once

// Pointwise behaviour of g (jumps, monotonicity, cylinder derivative ratios)
// and its Lebesgue integral computed three independent ways.

#include "salem/digit_seq.hpp"
#include "salem/flip_set.hpp"
#include "salem/numeral.hpp"
#include "salem/transforms.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace salem {

/// One-sided limits of g at a P-rational point. Endpoints 0 and 1 carry only
/// the limit from inside [0, 1].
struct JumpReport {
  Rational point;
  std::size_t rank = 0; ///< position of the last nonzero digit of the Zero-tail form
  std::optional<Rational> left_limit;
  std::optional<Rational> right_limit;

  bool one_sided() const { return !left_limit || !right_limit; }
  std::optional<Rational> jump() const {
    if (one_sided())
      return std::nullopt;
    return *right_limit - *left_limit;
  }
};

/// The left limit is g of the (q-1)-tail representation, the right limit is
/// g of the Zero-tail one (g is right-continuous there).
inline JumpReport jump_at(const Rational &x0, const BarredSystem &sys, std::size_t max_depth = 4096) {
  auto reps = dual_representations(x0, sys.pv, max_depth);
  if (!reps)
    throw error(errc::not_p_rational, to_string(x0) + " has no terminating expansion within " +
                                          std::to_string(max_depth) + " digits");
  JumpReport r;
  r.point = x0;
  if (reps->upper) {
    r.rank = reps->upper->prefix_size();
    r.right_limit = eval_g(*reps->upper, sys);
  }
  if (reps->lower)
    r.left_limit = eval_g(*reps->lower, sys);
  return r;
}

enum class Continuity { everywhere, jumps_finite, jumps_countable };

inline const char *continuity_name(Continuity c) {
  switch (c) {
  case Continuity::everywhere: return "ContinuousEverywhere";
  case Continuity::jumps_finite: return "JumpsAtPRationals(finite)";
  case Continuity::jumps_countable: return "JumpsAtPRationals(countable)";
  }
  return "?";
}

inline Continuity continuity_class(const FlipSet &fs) {
  switch (fs.kind()) {
  case FlipSet::Kind::none:
  case FlipSet::Kind::all: return Continuity::everywhere;
  case FlipSet::Kind::finite: return Continuity::jumps_finite;
  case FlipSet::Kind::mask: return Continuity::jumps_countable;
  }
  return Continuity::jumps_countable;
}

struct MonotoneWitness {
  std::size_t position; ///< first digit position at which x1 and x2 differ (a flipped one)
  DigitSeq x1_digits;
  DigitSeq x2_digits;
  Rational x1, x2;
  Enclosure g1, g2;
};

/// A pair x1 < x2 whose images are reversed, g(x1) > g(x2), found at the first
/// flipped position m <= rank. Empty when no position up to rank is flipped.
inline std::optional<MonotoneWitness> monotone_witness(const BarredSystem &sys, std::size_t rank) {
  const int q = sys.q();
  const std::vector<Tail> tails{Tail::zero, Tail::max};
  for (std::size_t m = 1; m <= rank; ++m) {
    if (!sys.flips.contains(m))
      continue;
    for (int a = 0; a < q; ++a)
      for (int b = a + 1; b < q; ++b)
        for (Tail ta : tails)
          for (Tail tb : tails) {
            std::vector<int> pa(m - 1, 0), pb(m - 1, 0);
            pa.push_back(a);
            pb.push_back(b);
            DigitSeq d1(q, pa, ta), d2(q, pb, tb);
            const Rational x1 = eval_p(d1, sys.pv), x2 = eval_p(d2, sys.pv);
            if (!(x1 < x2))
              continue;
            const Rational g1 = eval_g(d1, sys), g2 = eval_g(d2, sys);
            if (g1 > g2)
              return MonotoneWitness{m, d1, d2, x1, x2, Enclosure::exact(g1), Enclosure::exact(g2)};
          }
  }
  return std::nullopt;
}

/// mu_g(cylinder) / |cylinder| along a digit path, with
/// mu_g(L) = |g(sup L) - g(inf L)| evaluated on the two constant tails.
struct DerivativeTrace {
  std::vector<int> digits;
  std::vector<Rational> ratios;        ///< ratio at rank m = 1..M
  std::vector<Rational> product_bound; ///< prod_{t<=m} bar_p / p; ratios never exceed it
};

inline DerivativeTrace derivative_estimate(const std::vector<int> &digits, const BarredSystem &sys,
                                           std::size_t max_rank) {
  if (digits.size() < max_rank)
    throw error(errc::prefix_too_short, "need " + std::to_string(max_rank) + " digits, got " +
                                            std::to_string(digits.size()));
  detail::require_digits(digits, sys.pv);
  const int q = sys.q();
  const DigitSeq zeros(q, {}, Tail::zero), tops(q, {}, Tail::max);
  DerivativeTrace out;
  out.digits.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(max_rank));
  Rational bar_prod = 1, prod = 1;
  for (std::size_t m = 1; m <= max_rank; ++m) {
    const int c = digits[m - 1];
    bar_prod *= sys.bar_p(m, c);
    prod *= sys.pv.p(c);
    const Rational spread = abs(tail_eval(tops, sys, m) - tail_eval(zeros, sys, m));
    out.ratios.push_back(bar_prod * spread / prod);
    out.product_bound.push_back(bar_prod / prod);
  }
  return out;
}

/// sum_t bar_beta_t p_t / (1 - sum_t bar_p_t p_t); needs position-independent bars.
inline Rational integral_closed_form(const BarredSystem &sys) {
  if (!sys.flips.is_shift_invariant())
    throw error(errc::not_shift_invariant, "closed form needs flips = none or all, got " + sys.flips.str());
  Rational u = 0, w = 0;
  for (int t = 0; t < sys.q(); ++t) {
    u += sys.bar_beta(1, t) * sys.pv.p(t);
    w += sys.bar_p(1, t) * sys.pv.p(t);
  }
  return u / (1 - w);
}

/// Under Lebesgue measure the digits are independent with law p, so
///   I = sum_k v_k prod_{j<k} w_j,  v_k = E[bar_beta(k, i)],  w_j = E[bar_p(j, i)].
/// The remainder after K terms is at most v_max prod_{j<=K} w_j / (1 - w_max).
inline Enclosure integral_series(const BarredSystem &sys, const Rational &tol) {
  if (tol <= 0)
    throw error(errc::invalid_argument, "tolerance must be positive");
  const int q = sys.q();
  auto moments = [&](bool flipped) {
    Rational v = 0, w = 0;
    for (int c = 0; c < q; ++c) {
      const int b = flipped ? q - 1 - c : c;
      v += sys.pv.beta(b) * sys.pv.p(c);
      w += sys.pv.p(b) * sys.pv.p(c);
    }
    return std::pair{v, w};
  };
  const auto [v_plain, w_plain] = moments(false);
  const auto [v_flip, w_flip] = moments(true);
  const Rational v_max = std::max(v_plain, v_flip), w_max = std::max(w_plain, w_flip);

  Rational sum = 0, prod = 1;
  for (std::size_t k = 1;; ++k) {
    const bool f = sys.flips.contains(k);
    sum += (f ? v_flip : v_plain) * prod;
    prod *= f ? w_flip : w_plain;
    const Rational rest = v_max * prod / (1 - w_max);
    if (rest <= tol)
      return {sum, sum + rest};
  }
}

inline constexpr std::size_t default_budget = std::size_t{1} << 20;

namespace detail {

inline void require_budget(int q, std::size_t rank, std::size_t budget, errc code) {
  std::size_t count = 1;
  for (std::size_t r = 0; r < rank; ++r) {
    if (count > budget / static_cast<std::size_t>(q))
      throw error(code, std::to_string(q) + "^" + std::to_string(rank) + " cylinders exceed budget " +
                            std::to_string(budget));
    count *= static_cast<std::size_t>(q);
  }
}

} // namespace detail

/// Darboux-style enclosure over the rank-r cylinder partition. On a cylinder
/// with base b, g lies in [A_b, A_b + prod bar_p] where A_b is the barred
/// prefix sum, so the two sums bracket the integral.
inline Enclosure integral_riemann(const BarredSystem &sys, std::size_t rank,
                                  std::size_t budget = default_budget) {
  if (rank < 1)
    throw error(errc::invalid_argument, "rank must be at least 1");
  detail::require_budget(sys.q(), rank, budget, errc::rank_too_large);
  Rational lower = 0, upper = 0;
  // Fixed depth-first order keeps the summation deterministic.
  auto walk = [&](auto &&self, std::size_t depth, const Rational &g_prefix, const Rational &bar_prod,
                  const Rational &width) -> void {
    if (depth == rank) {
      lower += width * g_prefix;
      upper += width * (g_prefix + bar_prod);
      return;
    }
    const std::size_t k = depth + 1;
    for (int c = 0; c < sys.q(); ++c)
      self(self, k, g_prefix + sys.bar_beta(k, c) * bar_prod, bar_prod * sys.bar_p(k, c),
           width * sys.pv.p(c));
  };
  walk(walk, 0, Rational(0), Rational(1), Rational(1));
  return {lower, upper};
}

} // namespace salem
