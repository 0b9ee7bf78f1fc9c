#pragma once

// The digit-flip map g between P- and +-P-representations, and the
// alternating nega-P expansion as a special case of it.

#include "salem/digit_seq.hpp"
#include "salem/flip_set.hpp"
#include "salem/numeral.hpp"
#include "salem/prob_vector.hpp"

#include <cstddef>
#include <numeric>
#include <vector>

namespace salem {

/// A numeral system together with the positions at which g flips digits.
struct BarredSystem {
  ProbVector pv;
  FlipSet flips;

  int q() const { return pv.q(); }

  int bar_digit(std::size_t k, int i) const { return flips.contains(k) ? q() - 1 - i : i; }
  const Rational &bar_p(std::size_t k, int i) const { return pv.p(bar_digit(k, i)); }
  const Rational &bar_beta(std::size_t k, int i) const { return pv.beta(bar_digit(k, i)); }
};

namespace detail {

// Positions 1..head followed by a cycle of `cycle` positions cover both the
// digit pattern of d and the flip pattern of fs.
struct JointPeriod {
  std::size_t head;
  std::size_t cycle;
};

inline JointPeriod joint_period(const DigitSeq &d, const FlipSet &fs) {
  return {std::max(d.prefix_size(), fs.preperiod_length()),
          std::lcm(d.period().size(), fs.period_length())};
}

} // namespace detail

/// Complements the digit at every position in fs.
inline DigitSeq flip_digits(const DigitSeq &d, const FlipSet &fs) {
  const auto [head, cycle] = detail::joint_period(d, fs);
  const int q = d.base();
  auto flipped = [&](std::size_t k) { return fs.contains(k) ? q - 1 - d.digit(k) : d.digit(k); };
  std::vector<int> pre, per;
  pre.reserve(head);
  per.reserve(cycle);
  for (std::size_t k = 1; k <= head; ++k)
    pre.push_back(flipped(k));
  for (std::size_t k = head + 1; k <= head + cycle; ++k)
    per.push_back(flipped(k));
  return DigitSeq(q, std::move(pre), std::move(per));
}

/// The barred series with input position k read as absolute position
/// k + offset:  bar_beta(1+offset, i_1) + sum_k bar_beta(k+offset, i_k) prod_{j<k} bar_p(j+offset, i_j).
/// Exact; the flip and digit patterns are eventually periodic.
inline Rational tail_eval(const DigitSeq &d, const BarredSystem &sys, std::size_t offset) {
  detail::require_alphabet(d, sys.pv);
  const FlipSet local = sys.flips.shifted(offset);
  const auto [head, cycle] = detail::joint_period(d, local);
  std::vector<SeriesTerm> pre, per;
  pre.reserve(head);
  per.reserve(cycle);
  for (std::size_t k = 1; k <= head; ++k)
    pre.push_back({sys.bar_beta(k + offset, d.digit(k)), sys.bar_p(k + offset, d.digit(k))});
  for (std::size_t k = head + 1; k <= head + cycle; ++k)
    per.push_back({sys.bar_beta(k + offset, d.digit(k)), sys.bar_p(k + offset, d.digit(k))});
  return eventually_periodic_sum(pre, per);
}

/// Truncated form of tail_eval: the first `depth` terms plus the certified
/// remainder bound prod_{j<=depth} bar_p.
inline Enclosure tail_eval(const DigitSeq &d, const BarredSystem &sys, std::size_t offset,
                           std::size_t depth) {
  detail::require_alphabet(d, sys.pv);
  Rational sum = 0, prod = 1;
  for (std::size_t k = 1; k <= depth; ++k) {
    const int i = d.digit(k);
    sum += sys.bar_beta(k + offset, i) * prod;
    prod *= sys.bar_p(k + offset, i);
  }
  return {sum, sum + prod};
}

/// g(x) for x given by its digits.
inline Rational eval_g(const DigitSeq &d, const BarredSystem &sys) { return tail_eval(d, sys, 0); }

inline Enclosure eval_g(const DigitSeq &d, const BarredSystem &sys, std::size_t depth) {
  return tail_eval(d, sys, 0, depth);
}

/// Flips exactly the even positions.
inline DigitSeq nega_to_p_digits(const DigitSeq &d) { return flip_digits(d, FlipSet::even_positions()); }

/// Literal evaluation of the alternating nega-P series
///
///   sum_{i<i_1} p_i + sum_{k>=2} (-1)^{k-1} dt(k, i_k) prod_{j<k} pt(j, i_j)
///                   + sum_{k>=1} prod_{j=1}^{2k-1} pt(j, i_j)
///
/// where pt takes p[q-1-i] at even positions and dt is the four-case offset
/// (odd k: sum_{i<i_k} p_i; even k: sum_{i>=q-1-i_k} p_i). Terms touching
/// digits beyond `depth` are bounded by B = prod_{j<=depth} pt / (1 - max p);
/// the alternating remainder lies in [-B, B] and the positive one in [0, B].
inline Enclosure nega_eval_direct(const DigitSeq &d, const ProbVector &pv, std::size_t depth) {
  detail::require_alphabet(d, pv);
  const int q = pv.q();
  auto p_tilde = [&](std::size_t j) {
    const int i = d.digit(j);
    return j % 2 == 0 ? pv.p(q - 1 - i) : pv.p(i);
  };
  auto delta_tilde = [&](std::size_t k) -> Rational {
    const int i = d.digit(k);
    if (k % 2 == 0) {
      if (i == q - 1)
        return 1;
      Rational s = 0;
      for (int t = q - 1 - i; t <= q - 1; ++t)
        s += pv.p(t);
      return s;
    }
    Rational s = 0;
    for (int t = 0; t < i; ++t)
      s += pv.p(t);
    return s;
  };

  Rational sum = 0;
  const int i1 = depth >= 1 ? d.digit(1) : 0;
  for (int t = 0; t < i1; ++t)
    sum += pv.p(t);

  Rational prod = depth >= 1 ? p_tilde(1) : Rational(1); // prod_{j<k} for k = 2
  if (depth >= 1)
    sum += prod; // trailing sum, k = 1: prod_{j=1}^{1}
  for (std::size_t k = 2; k <= depth; ++k) {
    const Rational term = delta_tilde(k) * prod;
    sum += (k % 2 == 0) ? Rational(-term) : term;
    prod *= p_tilde(k);
    if (k % 2 == 1)
      sum += prod; // trailing sum term with 2m - 1 = k
  }
  if (depth == 0)
    return {0, 1};
  const Rational bound = prod / (1 - pv.max_p());
  return {sum - bound, sum + 2 * bound};
}

} // namespace salem
