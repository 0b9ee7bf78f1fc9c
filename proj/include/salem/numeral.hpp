#pragma once

// P-representations: evaluation, encoding, cylinders and the shift operator.

#include "salem/digit_seq.hpp"
#include "salem/prob_vector.hpp"
#include "salem/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace salem {

/// One term of a series  sum_k offset_k * prod_{j<k} scale_j.
struct SeriesTerm {
  Rational offset;
  Rational scale;
};

/// Exact value of the series whose terms are `head` followed by `cycle`
/// repeated forever. Every cycle scale must be in (0, 1).
inline Rational eventually_periodic_sum(const std::vector<SeriesTerm> &head,
                                        const std::vector<SeriesTerm> &cycle) {
  Rational sum = 0, prod = 1;
  for (const auto &t : head) {
    sum += t.offset * prod;
    prod *= t.scale;
  }
  Rational block_sum = 0, block_prod = 1;
  for (const auto &t : cycle) {
    block_sum += t.offset * block_prod;
    block_prod *= t.scale;
  }
  return sum + prod * block_sum / (1 - block_prod);
}

namespace detail {

inline void require_alphabet(const DigitSeq &d, const ProbVector &pv) {
  if (d.base() != pv.q())
    throw error(errc::digit_out_of_range, "digit base " + std::to_string(d.base()) +
                                              " does not match q = " + std::to_string(pv.q()));
}

inline void require_digits(const std::vector<int> &digits, const ProbVector &pv) {
  for (int c : digits)
    if (!pv.valid_digit(c))
      throw error(errc::digit_out_of_range,
                  "digit " + std::to_string(c) + " not in [0, " + std::to_string(pv.q() - 1) + "]");
}

inline void require_unit(const Rational &x) {
  if (x < 0 || x > 1)
    throw error(errc::out_of_unit_interval, to_string(x) + " is outside [0, 1]");
}

// Digit chosen for a shift state s in [0, 1]: the unique c with
// beta[c] <= s < beta[c+1]; s = 1 takes the top digit.
inline int state_digit(const Rational &s, const ProbVector &pv) {
  if (s >= 1)
    return pv.q() - 1;
  const auto &b = pv.betas();
  const auto it = std::upper_bound(b.begin(), b.end(), s);
  return static_cast<int>(it - b.begin()) - 1;
}

} // namespace detail

/// x = beta[i_1] + sum_{k>=2} beta[i_k] prod_{j<k} p[i_j], exactly.
inline Rational eval_p(const DigitSeq &d, const ProbVector &pv) {
  detail::require_alphabet(d, pv);
  std::vector<SeriesTerm> head, cycle;
  head.reserve(d.prefix_size());
  for (int c : d.prefix())
    head.push_back({pv.beta(c), pv.p(c)});
  for (int c : d.period())
    cycle.push_back({pv.beta(c), pv.p(c)});
  return eventually_periodic_sum(head, cycle);
}

/// The closed interval of numbers whose first digits are `base`.
struct Cylinder {
  std::vector<int> base;
  Rational lo;
  Rational hi;

  std::size_t rank() const { return base.size(); }
  Rational width() const { return hi - lo; }
  bool contains(const Rational &x) const { return lo <= x && x <= hi; }
};

inline Cylinder cylinder_bounds(const std::vector<int> &base, const ProbVector &pv) {
  detail::require_digits(base, pv);
  Rational lo = 0, width = 1;
  for (int c : base) {
    lo += pv.beta(c) * width;
    width *= pv.p(c);
  }
  return {base, lo, lo + width};
}

/// One application of the shift operator to a value: (x - beta[i_1]) / p[i_1].
inline Rational shift_value(const Rational &x, const ProbVector &pv) {
  detail::require_unit(x);
  const int c = detail::state_digit(x, pv);
  return (x - pv.beta(c)) / pv.p(c);
}

/// Drops the first n digits.
inline DigitSeq shift(const DigitSeq &d, std::size_t n) { return d.shifted(n); }

/// Greedy cylinder refinement of x to `depth` digits. Boundary points take
/// the Zero-tail representation; an orbit reaching 0 (or starting at 1) ends
/// the prefix early with a Zero (Max) tail.
inline DigitSeq encode(const Rational &x, const ProbVector &pv, std::size_t depth) {
  detail::require_unit(x);
  if (x == 1)
    return DigitSeq(pv.q(), {}, Tail::max);
  std::vector<int> digits;
  digits.reserve(depth);
  Rational s = x;
  for (std::size_t n = 0; n < depth && s != 0; ++n) {
    const int c = detail::state_digit(s, pv);
    digits.push_back(c);
    s = (s - pv.beta(c)) / pv.p(c);
  }
  return DigitSeq(pv.q(), std::move(digits), Tail::zero);
}

/// The complete expansion of x when its shift orbit terminates or cycles
/// within max_depth steps; nullopt otherwise.
inline std::optional<DigitSeq> expand(const Rational &x, const ProbVector &pv,
                                      std::size_t max_depth) {
  detail::require_unit(x);
  if (x == 1)
    return DigitSeq(pv.q(), {}, Tail::max);
  std::map<Rational, std::size_t> seen;
  std::vector<int> digits;
  Rational s = x;
  for (std::size_t n = 0; n <= max_depth; ++n) {
    if (s == 0)
      return DigitSeq(pv.q(), std::move(digits), Tail::zero);
    if (auto it = seen.find(s); it != seen.end()) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      std::vector<int> cycle(digits.begin() + start, digits.end());
      digits.resize(it->second);
      return DigitSeq(pv.q(), std::move(digits), std::move(cycle));
    }
    if (n == max_depth)
      break;
    seen.emplace(s, n);
    const int c = detail::state_digit(s, pv);
    digits.push_back(c);
    s = (s - pv.beta(c)) / pv.p(c);
  }
  return std::nullopt;
}

enum class PointKind { p_rational, p_irrational, undetermined };

struct PointClass {
  PointKind kind;
  std::size_t depth = 0; ///< search depth reached when undetermined

  bool operator==(const PointClass &) const = default;
};

inline const char *point_kind_name(PointKind k) {
  switch (k) {
  case PointKind::p_rational: return "PRational";
  case PointKind::p_irrational: return "PIrrational";
  case PointKind::undetermined: return "Undetermined";
  }
  return "?";
}

inline PointClass classify(const Rational &x, const ProbVector &pv, std::size_t max_depth) {
  auto e = expand(x, pv, max_depth);
  if (!e)
    return {PointKind::undetermined, max_depth};
  if (e->is_zero_tail() || e->is_max_tail())
    return {PointKind::p_rational, 0};
  return {PointKind::p_irrational, 0};
}

/// Both expansions of a P-rational point: the Zero-tail one and its dual
/// ending in (q-1)s. The dual is absent for 0 and the Zero-tail form is
/// absent for 1.
struct DualRepresentation {
  std::optional<DigitSeq> upper; ///< ...i_m 000...
  std::optional<DigitSeq> lower; ///< ...[i_m - 1] [q-1][q-1]...
};

inline std::optional<DualRepresentation> dual_representations(const Rational &x, const ProbVector &pv,
                                                               std::size_t max_depth) {
  detail::require_unit(x);
  const int q = pv.q();
  if (x == 1)
    return DualRepresentation{std::nullopt, DigitSeq(q, {}, Tail::max)};
  auto e = expand(x, pv, max_depth);
  if (!e || !e->is_zero_tail())
    return std::nullopt;
  DualRepresentation out;
  out.upper = *e;
  if (!e->prefix().empty()) {
    std::vector<int> low = e->prefix();
    low.back() -= 1;
    out.lower = DigitSeq(q, std::move(low), Tail::max);
  }
  return out;
}

/// Distribution function of eta = sum xi_k q^{-k} with i.i.d. digits of law
/// P, i.e. the Salem function applied to the base-q digits of x.
inline Rational cdf_eta(const Rational &x, const ProbVector &pv) {
  if (x < 0)
    return 0;
  if (x >= 1)
    return 1;
  const ProbVector uniform = ProbVector::uniform(pv.q());
  // Base-q orbits of a rational keep its denominator, so they cycle within
  // that many steps.
  const std::size_t bound = denominator(x) > (1u << 24) ? std::size_t{1} << 24
                                                        : denominator(x).convert_to<std::size_t>() + 1;
  auto digits = expand(x, uniform, bound);
  if (!digits)
    throw error(errc::budget_exceeded, "base-q expansion did not close");
  return eval_p(*digits, pv);
}

} // namespace salem
