#pragma once

// Command bodies behind the `salem` executable. Each command returns an
// ordered JSON value; render() turns it into JSON text or CSV.

#include "salem/analysis.hpp"
#include "salem/fractal.hpp"
#include "salem/numeral.hpp"
#include "salem/transforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace salem::cli {

using Json = nlohmann::ordered_json;

inline error diagnostic(std::string_view flag, std::size_t column, const std::string &msg) {
  return error(errc::parse_error,
               std::string(flag) + ": line 1, column " + std::to_string(column) + ": " + msg);
}

/// "1/5,3/10,1/2" -> ProbVector.
inline ProbVector parse_prob_vector(std::string_view text) {
  std::vector<Rational> p;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const auto field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    try {
      p.push_back(parse_rational(field));
    } catch (const error &e) {
      throw diagnostic("--p", start + 1, e.what());
    }
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return ProbVector(std::move(p));
}

/// "none" | "all" | "finite:2,5" | "mask:<pre bits>;<period bits>".
inline FlipSet parse_flip_set(std::string_view text) {
  if (text == "none")
    return FlipSet::none();
  if (text == "all")
    return FlipSet::all();
  if (text.rfind("finite:", 0) == 0) {
    std::vector<int> pos;
    std::size_t start = 7;
    if (start == text.size())
      return FlipSet::none();
    while (true) {
      const std::size_t comma = text.find(',', start);
      const auto field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
      if (field.empty() || !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw diagnostic("--flips", start + 1, "expected a positive integer, got '" + std::string(field) + "'");
      if (field.size() > 9)
        throw diagnostic("--flips", start + 1, "position too large");
      const int k = std::stoi(std::string(field));
      if (k < 1)
        throw diagnostic("--flips", start + 1, "positions are 1-based");
      pos.push_back(k);
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    return FlipSet::finite(std::move(pos));
  }
  if (text.rfind("mask:", 0) == 0) {
    const std::size_t semi = text.find(';', 5);
    if (semi == std::string_view::npos)
      throw diagnostic("--flips", text.size() + 1, "mask needs '<preperiod>;<period>'");
    auto bits = [&](std::size_t from, std::size_t to) {
      std::vector<bool> out;
      for (std::size_t i = from; i < to; ++i) {
        if (text[i] != '0' && text[i] != '1')
          throw diagnostic("--flips", i + 1, "mask bits must be 0 or 1");
        out.push_back(text[i] == '1');
      }
      return out;
    };
    auto pre = bits(5, semi);
    auto per = bits(semi + 1, text.size());
    if (per.empty())
      throw diagnostic("--flips", text.size() + 1, "mask period must be nonempty");
    return FlipSet::mask(std::move(pre), std::move(per));
  }
  throw diagnostic("--flips", 1, "expected none, all, finite:<list> or mask:<pre>;<period>");
}

inline Json rational_json(const Rational &r) { return Json{{"exact", to_string(r)}, {"float", to_double(r)}}; }

inline Json enclosure_json(const Enclosure &e) {
  return Json{{"lo", to_string(e.lo)},
              {"hi", to_string(e.hi)},
              {"lo_float", to_double(e.lo)},
              {"hi_float", to_double(e.hi)},
              {"exact", e.is_exact()}};
}

inline std::string digits_string(const std::vector<int> &ds, int q) {
  std::string s;
  for (int d : ds)
    s += q <= 10 ? std::string(1, static_cast<char>('0' + d)) : "[" + std::to_string(d) + "]";
  return s;
}

inline std::string tail_name(const DigitSeq &d) {
  if (d.is_zero_tail())
    return "zero";
  if (d.is_max_tail())
    return "max";
  return "periodic";
}

inline constexpr std::size_t default_classify_depth = 1024;

inline Json cmd_convert(const Rational &x, const ProbVector &pv, std::size_t depth) {
  const DigitSeq d = encode(x, pv, depth);
  const bool terminated = d.prefix_size() < depth || !d.is_zero_tail() || x == 0;
  const auto cls = classify(x, pv, std::max(depth, default_classify_depth));
  const Cylinder cyl = cylinder_bounds(d.prefix(), pv);
  Json out;
  out["x"] = to_string(x);
  out["digits"] = digits_string(d.prefix(), pv.q());
  out["digit_list"] = d.prefix();
  out["tail"] = terminated ? tail_name(d) : "truncated";
  out["classification"] = point_kind_name(cls.kind);
  if (cls.kind == PointKind::undetermined)
    out["search_depth"] = cls.depth;
  if (auto e = expand(x, pv, std::max(depth, default_classify_depth))) {
    out["expansion"] = Json{{"prefix", digits_string(e->prefix(), pv.q())},
                            {"period", digits_string(e->period(), pv.q())}};
  }
  out["cylinder"] = enclosure_json({cyl.lo, cyl.hi});
  return out;
}

/// g at x: exact when the expansion of x closes, otherwise the enclosure
/// over the rank-`depth` cylinder containing x.
inline Json cmd_eval_g(const Rational &x, const BarredSystem &sys, std::size_t depth) {
  Json out;
  out["x"] = to_string(x);
  out["flips"] = sys.flips.str();
  Enclosure e;
  if (auto d = expand(x, sys.pv, std::max(depth, default_classify_depth))) {
    e = Enclosure::exact(eval_g(*d, sys));
    out["expansion"] = d->str();
  } else {
    const DigitSeq d2 = encode(x, sys.pv, depth);
    e = eval_g(d2, sys, depth);
    out["expansion"] = d2.str();
  }
  out["eval_g"] = enclosure_json(e);
  return out;
}

inline Json cmd_integral(const BarredSystem &sys, const Rational &tol, std::size_t rank) {
  Json out;
  out["flips"] = sys.flips.str();
  if (sys.flips.is_shift_invariant())
    out["closed_form"] = rational_json(integral_closed_form(sys));
  out["series"] = enclosure_json(integral_series(sys, tol));
  out["riemann"] = enclosure_json(integral_riemann(sys, rank));
  out["riemann"]["rank"] = rank;
  return out;
}

/// Interior P-rationals ordered by rank, then by value.
inline std::vector<Rational> p_rationals_by_rank(const ProbVector &pv, std::size_t count,
                                                 std::size_t max_rank = 24) {
  std::vector<Rational> out;
  for (std::size_t m = 1; m <= max_rank && out.size() < count; ++m) {
    std::vector<Rational> level;
    std::vector<int> base(m, 0);
    auto walk = [&](auto &&self, std::size_t k, const Rational &lo, const Rational &w) -> void {
      if (k == m) {
        level.push_back(lo);
        return;
      }
      for (int c = (k + 1 == m ? 1 : 0); c < pv.q(); ++c)
        self(self, k + 1, lo + pv.beta(c) * w, w * pv.p(c));
    };
    walk(walk, 0, Rational(0), Rational(1));
    std::sort(level.begin(), level.end());
    for (auto &v : level) {
      if (out.size() == count)
        break;
      out.push_back(std::move(v));
    }
  }
  return out;
}

inline Json cmd_jumps(const BarredSystem &sys, std::size_t count) {
  Json rows = Json::array();
  for (const auto &x : p_rationals_by_rank(sys.pv, count)) {
    const auto r = jump_at(x, sys);
    rows.push_back(Json{{"rank", r.rank},
                        {"point", to_string(x)},
                        {"left_limit", to_string(*r.left_limit)},
                        {"right_limit", to_string(*r.right_limit)},
                        {"jump", to_string(*r.jump())},
                        {"jump_float", to_double(*r.jump())}});
  }
  return rows;
}

/// Graph samples at the rank-`depth` cylinder left endpoints: through the
/// IFS when the flips are shift invariant, by direct evaluation otherwise.
inline Json cmd_graph(const BarredSystem &sys, std::size_t depth, bool exact) {
  Json rows = Json::array();
  auto emit = [&](const Rational &x, const Rational &y) {
    if (exact)
      rows.push_back(Json{{"x", to_string(x)}, {"y", to_string(y)}});
    else
      rows.push_back(Json{{"x", to_double(x)}, {"y", to_double(y)}});
  };
  if (sys.flips.is_shift_invariant()) {
    for (const auto &pt : ifs_graph_points(sys, depth))
      emit(pt.x, pt.y);
    return rows;
  }
  detail::require_budget(sys.q(), depth, default_budget, errc::budget_exceeded);
  std::vector<int> base;
  auto walk = [&](auto &&self, std::size_t k) -> void {
    if (k == depth) {
      const DigitSeq d(sys.q(), base, Tail::zero);
      emit(eval_p(d, sys.pv), eval_g(d, sys));
      return;
    }
    for (int c = 0; c < sys.q(); ++c) {
      base.push_back(c);
      self(self, k + 1);
      base.pop_back();
    }
  };
  walk(walk, 0);
  return rows;
}

inline Json cmd_dimension(const BarredSystem &sys, const std::vector<std::size_t> &ranks, std::optional<int> u,
                          long double tol) {
  Json out;
  out["flips"] = sys.flips.str();
  const auto est = graph_dimension_estimate(sys, ranks);
  Json per = Json::array();
  for (const auto &e : est.per_rank)
    per.push_back(Json{{"rank", e.rank},
                       {"alpha", static_cast<double>(e.alpha)},
                       {"lower_bound", static_cast<double>(e.lower_bound)},
                       {"upper_bound", static_cast<double>(e.upper_bound)}});
  out["entropy_estimates"] = per;
  out["trend"] = static_cast<double>(est.trend);
  if (u) {
    const MoranSpec spec(sys.pv, *u);
    out["moran_alpha"] = static_cast<double>(moran_dimension(spec, tol));
  }
  return out;
}

/// Digit drawn with law p from a 53-bit uniform; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline int sample_digit(std::mt19937_64 &rng, const std::vector<double> &cumulative) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<int>(it - cumulative.begin()) - 1;
  return std::clamp(idx, 0, static_cast<int>(cumulative.size()) - 2);
}

inline std::vector<std::vector<int>> sample_prefixes(const ProbVector &pv, std::size_t count, std::size_t length,
                                                     std::uint64_t seed) {
  std::vector<double> cumulative;
  for (const auto &b : pv.betas())
    cumulative.push_back(to_double(b));
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> out(count);
  for (auto &digits : out)
    for (std::size_t k = 0; k < length; ++k)
      digits.push_back(sample_digit(rng, cumulative));
  return out;
}

inline Json cmd_scan_derivative(const BarredSystem &sys, std::size_t points, std::size_t rank, std::uint64_t seed) {
  Json rows = Json::array();
  const auto prefixes = sample_prefixes(sys.pv, points, rank, seed);
  for (std::size_t s = 0; s < prefixes.size(); ++s) {
    const auto trace = derivative_estimate(prefixes[s], sys, rank);
    rows.push_back(Json{{"sample", s},
                        {"digits", digits_string(trace.digits, sys.q())},
                        {"rank", rank},
                        {"ratio", to_string(trace.ratios.back())},
                        {"ratio_float", to_double(trace.ratios.back())},
                        {"product_bound_float", to_double(trace.product_bound.back())}});
  }
  return rows;
}

namespace detail {

inline std::string csv_cell(const Json &v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s)
      q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

inline void flatten(const Json &v, const std::string &prefix, std::vector<std::pair<std::string, Json>> &out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.emplace_back(prefix, v);
  }
}

} // namespace detail

/// JSON text, or CSV with one row per array element (one row for an object);
/// nested objects become dotted column names.
inline std::string render(const Json &doc, std::string_view format) {
  if (format == "json")
    return doc.dump(2) + "\n";
  if (format != "csv")
    throw error(errc::invalid_argument, "unknown format '" + std::string(format) + "'");
  std::vector<std::vector<std::pair<std::string, Json>>> rows;
  if (doc.is_array()) {
    for (const auto &row : doc) {
      rows.emplace_back();
      detail::flatten(row, "", rows.back());
    }
  } else {
    rows.emplace_back();
    detail::flatten(doc, "", rows.back());
  }
  std::ostringstream os;
  if (!rows.empty()) {
    for (std::size_t i = 0; i < rows[0].size(); ++i)
      os << (i ? "," : "") << rows[0][i].first;
    os << "\n";
  }
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << detail::csv_cell(row[i].second);
    os << "\n";
  }
  return os.str();
}

} // namespace salem::cli
