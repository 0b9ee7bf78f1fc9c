#pragma once

// Exact rational scalar, certified enclosures and the library error type.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace salem {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

enum class errc {
  base_too_small,
  non_positive_weight,
  sum_not_one,
  digit_out_of_range,
  out_of_unit_interval,
  invalid_flip_set,
  not_shift_invariant,
  not_p_rational,
  prefix_too_short,
  budget_exceeded,
  rank_too_large,
  empty_alphabet,
  invalid_argument,
  parse_error,
};

inline const char *errc_name(errc e) {
  switch (e) {
  case errc::base_too_small: return "BaseTooSmall";
  case errc::non_positive_weight: return "NonPositiveWeight";
  case errc::sum_not_one: return "SumNotOne";
  case errc::digit_out_of_range: return "DigitOutOfRange";
  case errc::out_of_unit_interval: return "OutOfUnitInterval";
  case errc::invalid_flip_set: return "InvalidFlipSet";
  case errc::not_shift_invariant: return "NotShiftInvariant";
  case errc::not_p_rational: return "NotPRational";
  case errc::prefix_too_short: return "PrefixTooShort";
  case errc::budget_exceeded: return "BudgetExceeded";
  case errc::rank_too_large: return "RankTooLarge";
  case errc::empty_alphabet: return "EmptyAlphabet";
  case errc::invalid_argument: return "InvalidArgument";
  case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::domain_error {
public:
  error(errc code, const std::string &what)
      : std::domain_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

inline std::string to_string(const Rational &r) { return r.str(); }

/// Natural logarithm of a positive rational, without overflow for huge
/// numerators or denominators.
inline long double log_of(const Rational &r) {
  if (r <= 0)
    throw error(errc::invalid_argument, "log of non-positive rational");
  auto log_mpz = [](const Integer &z) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.backend().data());
    return std::log(static_cast<long double>(mant)) +
           static_cast<long double>(exp) * std::log(2.0L);
  };
  return log_mpz(numerator(r)) - log_mpz(denominator(r));
}

inline long double to_long_double(const Rational &r) {
  if (r == 0)
    return 0.0L;
  const long double mag = std::exp(log_of(r < 0 ? Rational(-r) : r));
  return r < 0 ? -mag : mag;
}

inline double to_double(const Rational &r) { return r.convert_to<double>(); }

/// Parses "a", "a/b" or a plain decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const std::string &why) -> Rational {
    throw error(errc::parse_error, "'" + std::string(text) + "': " + why);
  };
  auto is_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size())
      return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+')
      s.remove_prefix(1);
    return Integer(std::string(s));
  };
  if (text.empty())
    return fail("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
      return fail("expected integer/integer");
    Integer d = to_int(den);
    if (d == 0)
      return fail("zero denominator");
    return Rational(to_int(num), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty())
      whole = "0";
    if (!is_int(whole) || (!frac.empty() && !is_int(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      return fail("malformed decimal");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    Rational r(to_int(whole));
    Rational f = frac.empty() ? Rational(0) : Rational(to_int(frac), scale);
    return neg || (r < 0) ? Rational(r - f) : Rational(r + f);
  }
  if (!is_int(text))
    return fail("not a number");
  return Rational(to_int(text));
}

/// A closed rational interval certified to contain some exact value.
struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational &v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool is_exact() const { return lo == hi; }
  bool contains(const Rational &v) const { return lo <= v && v <= hi; }
  bool intersects(const Enclosure &o) const { return lo <= o.hi && o.lo <= hi; }
  bool disjoint_below(const Enclosure &o) const { return hi < o.lo; }
};

} // namespace salem
