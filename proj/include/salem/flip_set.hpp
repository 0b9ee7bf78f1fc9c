#pragma once

#include "salem/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace salem {

/// The set N_B of digit positions (1-based) at which digits are complemented.
///
/// Every variant is eventually periodic as a bit pattern over positions, so
/// each one can be described by a (preperiod, period) pair of bits.
class FlipSet {
public:
  enum class Kind { none, all, finite, mask };

  static FlipSet none() { return FlipSet(Kind::none); }
  static FlipSet all() { return FlipSet(Kind::all); }

  static FlipSet finite(std::vector<int> positions) {
    for (int k : positions)
      if (k < 1)
        throw error(errc::invalid_flip_set, "flip positions are 1-based, got " + std::to_string(k));
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    if (positions.empty())
      return none();
    FlipSet fs(Kind::finite);
    fs.positions_ = std::move(positions);
    return fs;
  }

  /// Positions 1..pre.size() follow `pre`; afterwards `period` repeats.
  static FlipSet mask(std::vector<bool> pre, std::vector<bool> period) {
    if (period.empty())
      throw error(errc::invalid_flip_set, "mask period must be nonempty");
    // Minimal period.
    const std::size_t n = period.size();
    for (std::size_t len = 1; len < n; ++len) {
      if (n % len != 0)
        continue;
      bool ok = true;
      for (std::size_t i = len; i < n && ok; ++i)
        ok = period[i] == period[i % len];
      if (ok) {
        period.resize(len);
        break;
      }
    }
    // Absorb preperiod bits that already continue the cycle.
    while (!pre.empty() && pre.back() == period.back()) {
      pre.pop_back();
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    if (period.size() == 1) {
      if (period[0] && pre.empty())
        return all();
      if (!period[0]) {
        std::vector<int> pos;
        for (std::size_t i = 0; i < pre.size(); ++i)
          if (pre[i])
            pos.push_back(static_cast<int>(i + 1));
        return finite(std::move(pos));
      }
    }
    FlipSet fs(Kind::mask);
    fs.pre_ = std::move(pre);
    fs.period_ = std::move(period);
    return fs;
  }

  /// Even positions 2, 4, 6, ...; the nega-P pattern.
  static FlipSet even_positions() { return mask({}, {false, true}); }

  Kind kind() const { return kind_; }
  const std::vector<int> &positions() const { return positions_; }

  bool contains(std::size_t k) const {
    switch (kind_) {
    case Kind::none: return false;
    case Kind::all: return k >= 1;
    case Kind::finite: return std::binary_search(positions_.begin(), positions_.end(), static_cast<int>(k));
    case Kind::mask:
      if (k < 1)
        return false;
      if (k <= pre_.size())
        return pre_[k - 1];
      return period_[(k - pre_.size() - 1) % period_.size()];
    }
    return false;
  }

  /// Length of the non-repeating part of the position pattern.
  std::size_t preperiod_length() const {
    switch (kind_) {
    case Kind::finite: return static_cast<std::size_t>(positions_.back());
    case Kind::mask: return pre_.size();
    default: return 0;
    }
  }

  std::size_t period_length() const { return kind_ == Kind::mask ? period_.size() : 1; }

  const std::vector<bool> &mask_preperiod() const { return pre_; }
  const std::vector<bool> &mask_period() const { return period_; }

  bool is_shift_invariant() const { return kind_ == Kind::none || kind_ == Kind::all; }
  bool is_empty() const { return kind_ == Kind::none; }

  std::optional<int> max_position() const {
    if (kind_ == Kind::finite)
      return positions_.back();
    return std::nullopt;
  }

  /// The flip set seen from position n + 1 onwards: k is in the result iff
  /// k + n is in this set.
  FlipSet shifted(std::size_t n) const {
    switch (kind_) {
    case Kind::none:
    case Kind::all: return *this;
    case Kind::finite: {
      std::vector<int> pos;
      for (int k : positions_)
        if (static_cast<std::size_t>(k) > n)
          pos.push_back(k - static_cast<int>(n));
      return finite(std::move(pos));
    }
    case Kind::mask: {
      std::vector<bool> pre, period;
      for (std::size_t k = n + 1; k <= pre_.size(); ++k)
        pre.push_back(pre_[k - 1]);
      const std::size_t start = std::max(n, pre_.size());
      for (std::size_t i = 0; i < period_.size(); ++i)
        period.push_back(contains(start + 1 + i));
      return mask(std::move(pre), std::move(period));
    }
    }
    return *this;
  }

  bool operator==(const FlipSet &o) const {
    return kind_ == o.kind_ && positions_ == o.positions_ && pre_ == o.pre_ && period_ == o.period_;
  }

  std::string str() const {
    switch (kind_) {
    case Kind::none: return "none";
    case Kind::all: return "all";
    case Kind::finite: {
      std::string s = "finite:";
      for (std::size_t i = 0; i < positions_.size(); ++i)
        s += (i ? "," : "") + std::to_string(positions_[i]);
      return s;
    }
    case Kind::mask: {
      std::string s = "mask:";
      for (bool b : pre_)
        s += b ? '1' : '0';
      s += ';';
      for (bool b : period_)
        s += b ? '1' : '0';
      return s;
    }
    }
    return "?";
  }

private:
  explicit FlipSet(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<int> positions_;
  std::vector<bool> pre_;
  std::vector<bool> period_;
};

} // namespace salem
