#include "oracles.hpp"

#include "salem/analysis.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace salem;
using R = Rational;

namespace {

ProbVector half() { return ProbVector::uniform(2); }
ProbVector skew() { return ProbVector({R(1, 4), R(3, 4)}); }
ProbVector p3() { return ProbVector({R(1, 5), R(3, 10), R(1, 2)}); }

R power(R base, std::size_t n) {
  R out = 1;
  for (std::size_t i = 0; i < n; ++i)
    out *= base;
  return out;
}

// A random interior P-rational: the left endpoint of a cylinder whose base
// ends in a nonzero digit.
R random_p_rational(std::mt19937_64 &rng, const ProbVector &pv, std::size_t max_rank = 8) {
  auto base = oracle::random_digits(rng, pv.q(), 1 + rng() % max_rank);
  if (base.back() == 0)
    base.back() = 1;
  return cylinder_bounds(base, pv).lo;
}

} // namespace

TEST_CASE("jump_at examples", "[analysis]") {
  const auto j = jump_at(R(1, 2), BarredSystem{half(), FlipSet::finite({1})});
  REQUIRE(j.left_limit);
  REQUIRE(j.right_limit);
  CHECK(*j.left_limit == 1);
  CHECK(*j.right_limit == 0);
  CHECK(*j.jump() == -1);
  CHECK(j.rank == 1);

  for (const auto &fs : {FlipSet::none(), FlipSet::all()}) {
    const auto r = jump_at(R(1, 2), BarredSystem{half(), fs});
    CHECK(*r.left_limit == R(1, 2));
    CHECK(*r.right_limit == R(1, 2));
    CHECK(*r.jump() == 0);
  }
}

TEST_CASE("jump_at error and endpoint cases", "[analysis]") {
  const BarredSystem sys{half(), FlipSet::finite({1})};
  CHECK_THROWS_MATCHES(jump_at(R(1, 3), sys), error,
                       Catch::Matchers::Predicate<error>([](const error &e) { return e.code() == errc::not_p_rational; }));
  const auto z = jump_at(R(0), sys);
  CHECK(z.one_sided());
  CHECK(!z.left_limit);
  CHECK(*z.right_limit == eval_g(DigitSeq(2, {}), sys));
  const auto o = jump_at(R(1), sys);
  CHECK(o.one_sided());
  CHECK(!o.right_limit);
  CHECK(*o.left_limit == eval_g(DigitSeq(2, {}, Tail::max), sys));
}

TEST_CASE("one-sided limits are approached by nearby points", "[analysis]") {
  std::mt19937_64 rng(21);
  const auto pv = p3();
  for (const auto &fs : {FlipSet::finite({1, 3}), FlipSet::even_positions(), FlipSet::all()}) {
    const BarredSystem sys{pv, fs};
    for (int i = 0; i < 10; ++i) {
      const R x0 = random_p_rational(rng, pv, 5);
      const auto rep = dual_representations(x0, pv, 256);
      REQUIRE(rep);
      const auto r = jump_at(x0, sys);
      for (std::size_t n : {4u, 8u, 16u}) {
        // Left: lower prefix, n more top digits, then zeros.
        auto lp = rep->lower->prefix();
        lp.insert(lp.end(), n, pv.q() - 1);
        const DigitSeq left(pv.q(), lp, Tail::zero);
        // Right: upper prefix, n zeros, a one, then zeros.
        auto rp = rep->upper->prefix();
        rp.insert(rp.end(), n, 0);
        rp.push_back(1);
        const DigitSeq right(pv.q(), rp, Tail::zero);
        CHECK(eval_p(left, pv) < x0);
        CHECK(eval_p(right, pv) > x0);
        CHECK(abs(eval_g(left, sys) - *r.left_limit) <= power(pv.max_p(), lp.size()));
        CHECK(abs(eval_g(right, sys) - *r.right_limit) <= power(pv.max_p(), rp.size() - 1));
      }
    }
  }
}

TEST_CASE("jumps only at P-rationals of rank at most the flip position", "[analysis]") {
  std::mt19937_64 rng(22);
  for (const auto &pv : {half(), skew(), p3()}) {
    for (const auto &fs : {FlipSet::none(), FlipSet::all()})
      for (int i = 0; i < 50; ++i)
        CHECK(*jump_at(random_p_rational(rng, pv), BarredSystem{pv, fs}).jump() == 0);
    for (int m : {1, 2, 4}) {
      const BarredSystem sys{pv, FlipSet::finite({m})};
      for (int i = 0; i < 50; ++i) {
        const auto r = jump_at(random_p_rational(rng, pv, 7), sys);
        if (r.rank > static_cast<std::size_t>(m))
          CHECK(*r.jump() == 0);
        if (*r.jump() != 0)
          CHECK(r.rank <= static_cast<std::size_t>(m));
      }
    }
  }
}

TEST_CASE("continuity_class", "[analysis]") {
  CHECK(continuity_class(FlipSet::none()) == Continuity::everywhere);
  CHECK(continuity_class(FlipSet::all()) == Continuity::everywhere);
  CHECK(continuity_class(FlipSet::finite({3})) == Continuity::jumps_finite);
  CHECK(continuity_class(FlipSet::mask({}, {false, true})) == Continuity::jumps_countable);
}

TEST_CASE("monotone_witness", "[analysis]") {
  CHECK(!monotone_witness(BarredSystem{p3(), FlipSet::none()}, 6));
  CHECK(!monotone_witness(BarredSystem{half(), FlipSet::finite({4})}, 3));

  const BarredSystem f2{half(), FlipSet::finite({2})};
  const auto w = monotone_witness(f2, 3);
  REQUIRE(w);
  CHECK(w->position == 2);
  CHECK(w->x1 < w->x2);
  CHECK(w->g2.disjoint_below(w->g1));

  // Enumeration oracle: among rank-3 left endpoints, every reversed pair
  // first differs at position 2.
  std::vector<std::vector<int>> bases;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        bases.push_back({a, b, c});
  bool found = false;
  for (const auto &s : bases)
    for (const auto &t : bases) {
      const DigitSeq ds(2, s), dt(2, t);
      if (eval_p(ds, f2.pv) < eval_p(dt, f2.pv) && eval_g(ds, f2) > eval_g(dt, f2)) {
        found = true;
        CHECK(s[0] == t[0]);
        CHECK(s[1] != t[1]);
      }
    }
  CHECK(found);

  const auto wa = monotone_witness(BarredSystem{half(), FlipSet::all()}, 2);
  REQUIRE(wa);
  CHECK(wa->position == 1);
  CHECK(wa->g1.lo > wa->g2.hi);
}

TEST_CASE("g preserves order inside deep cylinders for finite flips", "[analysis]") {
  std::mt19937_64 rng(24);
  const auto pv = p3();
  const BarredSystem sys{pv, FlipSet::finite({1, 3})};
  for (int i = 0; i < 40; ++i) {
    const auto base = oracle::random_digits(rng, 3, 4);
    std::vector<R> xs, gs;
    for (int t = 0; t < 6; ++t) {
      auto tail = oracle::random_digits(rng, 3, 5);
      auto full = base;
      full.insert(full.end(), tail.begin(), tail.end());
      const DigitSeq d(3, full);
      xs.push_back(eval_p(d, pv));
      gs.push_back(eval_g(d, sys));
    }
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b)
        if (xs[a] < xs[b])
          CHECK(gs[a] <= gs[b]);
  }
}

TEST_CASE("derivative_estimate", "[analysis]") {
  const BarredSystem sys{skew(), FlipSet::all()};
  const auto t = derivative_estimate(std::vector<int>(8, 1), sys, 8);
  REQUIRE(t.ratios.size() == 8);
  for (std::size_t m = 1; m <= 8; ++m)
    CHECK(t.ratios[m - 1] == power(R(1, 3), m));
  CHECK(t.ratios.back() == R(1, 6561));

  std::mt19937_64 rng(25);
  const auto digits = oracle::random_digits(rng, 2, 20);
  for (const auto &ident : {BarredSystem{skew(), FlipSet::none()}, BarredSystem{half(), FlipSet::all()}}) {
    const auto tr = derivative_estimate(digits, ident, 20);
    for (const auto &r : tr.ratios)
      CHECK(r == 1);
  }

  const BarredSystem mixed{p3(), FlipSet::finite({2, 3})};
  const auto tm = derivative_estimate(oracle::random_digits(rng, 3, 12), mixed, 12);
  for (std::size_t m = 0; m < tm.ratios.size(); ++m) {
    CHECK(tm.ratios[m] >= 0);
    CHECK(tm.ratios[m] <= tm.product_bound[m]);
  }

  CHECK_THROWS_AS(derivative_estimate({1, 1}, sys, 3), error);
}

TEST_CASE("integral_closed_form", "[analysis]") {
  CHECK(integral_closed_form(BarredSystem{half(), FlipSet::none()}) == R(1, 2));
  CHECK(integral_closed_form(BarredSystem{half(), FlipSet::all()}) == R(1, 2));
  // Geometric-series oracle: U = beta_1 p_0 = 1/16, W = 2 p_0 p_1 = 3/8.
  const R u(1, 16), w(3, 8);
  R geometric = 0, wk = 1;
  for (int k = 0; k < 80; ++k) {
    geometric += u * wk;
    wk *= w;
  }
  const R closed = integral_closed_form(BarredSystem{skew(), FlipSet::all()});
  CHECK(closed == R(1, 10));
  CHECK(geometric <= closed);
  CHECK(closed - geometric <= wk);
  CHECK_THROWS_AS(integral_closed_form(BarredSystem{half(), FlipSet::finite({1})}), error);
}

TEST_CASE("integral_series", "[analysis]") {
  const R tol(1, 1000000000000LL);
  const auto e = integral_series(BarredSystem{skew(), FlipSet::all()}, tol);
  CHECK(e.contains(R(1, 10)));
  CHECK(e.width() <= tol);
  for (const auto &pv : {half(), skew(), p3()})
    CHECK(integral_series(BarredSystem{pv, FlipSet::none()}, tol).contains(R(1, 2)));
  CHECK(integral_series(BarredSystem{half(), FlipSet::finite({1})}, tol).contains(R(1, 2)));
  CHECK_THROWS_AS(integral_series(BarredSystem{half(), FlipSet::none()}, R(0)), error);
}

TEST_CASE("integral_riemann", "[analysis]") {
  const auto e = integral_riemann(BarredSystem{half(), FlipSet::none()}, 10);
  CHECK(e.contains(R(1, 2)));
  CHECK(e.width() <= R(1, 1024));

  CHECK(integral_riemann(BarredSystem{skew(), FlipSet::all()}, 12).contains(R(1, 10)));

  const BarredSystem m{p3(), FlipSet::mask({}, {false, true})};
  const auto riemann = integral_riemann(m, 8);
  const auto series = integral_series(m, R(1, 1000000000000LL));
  CHECK(riemann.intersects(series));
  CHECK(riemann.lo <= series.lo);
  CHECK(series.hi <= riemann.hi);

  CHECK_THROWS_MATCHES(integral_riemann(BarredSystem{half(), FlipSet::none()}, 21), error,
                       Catch::Matchers::Predicate<error>([](const error &x) { return x.code() == errc::rank_too_large; }));
}
