#pragma once

#include "salem/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace salem {

/// The digit weights P = (p_0, ..., p_{q-1}) of a P-representation together
/// with their cumulative offsets beta[t] = p_0 + ... + p_{t-1}.
class ProbVector {
public:
  explicit ProbVector(std::vector<Rational> p) : p_(std::move(p)) {
    if (p_.size() < 2)
      throw error(errc::base_too_small, "need at least two digit weights");
    Rational sum = 0;
    beta_.reserve(p_.size() + 1);
    beta_.push_back(0);
    for (std::size_t j = 0; j < p_.size(); ++j) {
      if (p_[j] <= 0)
        throw error(errc::non_positive_weight,
                    "p[" + std::to_string(j) + "] = " + to_string(p_[j]));
      sum += p_[j];
      beta_.push_back(sum);
    }
    if (sum != 1)
      throw error(errc::sum_not_one, "weights sum to " + to_string(sum));
  }

  static ProbVector uniform(int q) {
    if (q < 2)
      throw error(errc::base_too_small, "need at least two digit weights");
    return ProbVector(std::vector<Rational>(static_cast<std::size_t>(q), Rational(1, q)));
  }

  int q() const { return static_cast<int>(p_.size()); }
  const Rational &p(int digit) const { return p_[static_cast<std::size_t>(digit)]; }
  const Rational &beta(int digit) const { return beta_[static_cast<std::size_t>(digit)]; }
  const std::vector<Rational> &weights() const { return p_; }
  const std::vector<Rational> &betas() const { return beta_; }

  Rational max_p() const { return *std::max_element(p_.begin(), p_.end()); }
  Rational min_p() const { return *std::min_element(p_.begin(), p_.end()); }

  bool valid_digit(int d) const { return d >= 0 && d < q(); }

  bool operator==(const ProbVector &o) const { return p_ == o.p_; }

private:
  std::vector<Rational> p_;
  std::vector<Rational> beta_;
};

inline ProbVector make_prob_vector(std::vector<Rational> p) { return ProbVector(std::move(p)); }

} // namespace salem
