#pragma once

#include "salem/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace salem {

enum class Tail { zero, max };

/// An infinite digit sequence in base q, stored as a finite prefix followed
/// by a repeating block. Zero and Max tails are the blocks [0] and [q-1].
///
/// The prefix is kept exactly as given (its length is the cylinder rank the
/// caller asked for); equality compares the infinite sequences.
class DigitSeq {
public:
  DigitSeq(int base, std::vector<int> prefix, Tail tail = Tail::zero)
      : DigitSeq(base, std::move(prefix),
                 std::vector<int>{tail == Tail::zero ? 0 : base - 1}) {}

  DigitSeq(int base, std::vector<int> prefix, std::vector<int> period)
      : q_(base), prefix_(std::move(prefix)), period_(std::move(period)) {
    if (q_ < 2)
      throw error(errc::base_too_small, "digit base must be at least 2");
    if (period_.empty())
      throw error(errc::invalid_argument, "repeating block must be nonempty");
    check(prefix_);
    check(period_);
    shrink_period();
    // The number 1 is written with a nonempty prefix: [q-1] followed by Max.
    if (prefix_.empty() && is_max_tail())
      prefix_.push_back(q_ - 1);
  }

  int base() const { return q_; }
  const std::vector<int> &prefix() const { return prefix_; }
  const std::vector<int> &period() const { return period_; }
  std::size_t prefix_size() const { return prefix_.size(); }

  bool is_zero_tail() const { return period_.size() == 1 && period_[0] == 0; }
  bool is_max_tail() const { return period_.size() == 1 && period_[0] == q_ - 1; }
  bool has_constant_tail() const { return period_.size() == 1; }

  /// Digit at 1-based position k.
  int digit(std::size_t k) const {
    if (k <= prefix_.size())
      return prefix_[k - 1];
    return period_[(k - prefix_.size() - 1) % period_.size()];
  }

  /// Drops the first n digits. Shifting past the prefix rotates the block.
  DigitSeq shifted(std::size_t n) const {
    if (n <= prefix_.size())
      return DigitSeq(q_, std::vector<int>(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end()),
                      period_);
    const std::size_t r = (n - prefix_.size()) % period_.size();
    std::vector<int> rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
    return DigitSeq(q_, {}, std::move(rotated));
  }

  /// First n digits as an explicit list.
  std::vector<int> first(std::size_t n) const {
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
      out.push_back(digit(k));
    return out;
  }

  bool operator==(const DigitSeq &o) const {
    if (q_ != o.q_)
      return false;
    // Two eventually periodic sequences agree iff they agree on
    // max(prefix) + lcm(period) positions.
    const std::size_t n = std::max(prefix_.size(), o.prefix_.size()) +
                          std::lcm(period_.size(), o.period_.size());
    for (std::size_t k = 1; k <= n; ++k)
      if (digit(k) != o.digit(k))
        return false;
    return true;
  }

  std::string str() const {
    std::string s;
    auto put = [&](int d) {
      if (q_ <= 10)
        s += static_cast<char>('0' + d);
      else
        s += "[" + std::to_string(d) + "]";
    };
    for (int d : prefix_)
      put(d);
    s += "(";
    for (int d : period_)
      put(d);
    s += ")";
    return s;
  }

private:
  void check(const std::vector<int> &ds) const {
    for (int d : ds)
      if (d < 0 || d >= q_)
        throw error(errc::digit_out_of_range,
                    "digit " + std::to_string(d) + " not in [0, " + std::to_string(q_ - 1) + "]");
  }

  void shrink_period() {
    const std::size_t n = period_.size();
    for (std::size_t len = 1; len < n; ++len) {
      if (n % len != 0)
        continue;
      bool ok = true;
      for (std::size_t i = len; i < n && ok; ++i)
        ok = period_[i] == period_[i % len];
      if (ok) {
        period_.resize(len);
        return;
      }
    }
  }

  int q_;
  std::vector<int> prefix_;
  std::vector<int> period_;
};

} // namespace salem
