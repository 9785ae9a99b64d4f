#include <doctest.h>

#include <random>
#include <set>

#include "gitkit/error.hpp"
#include "gitkit/lie_kernel.hpp"
#include "gitkit/polytopes.hpp"
#include "oracles.hpp"

using namespace gitkit;
using oracle::ints;

TEST_CASE("rationals parse in every accepted form") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("8/4")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("x"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK(parse_rational_list("1,1/2,-3") == std::vector<Rational>{1, Rational(1, 2), -3});
  CHECK_THROWS_AS(to_int64(Rational(1, 2)), DomainError);
}

TEST_CASE("large rationals do not overflow") {
  Rational x = 1;
  for (int i = 0; i < 100; ++i) x *= Rational(3, 2);
  Rational y = x;
  for (int i = 0; i < 100; ++i) y /= Rational(3, 2);
  CHECK(y == 1);
}

TEST_CASE("weyl_orbit examples") {
  CHECK(weyl_orbit(ints({1, 0}), 2) == std::vector<Weight>{ints({0, 1}), ints({1, 0})});
  CHECK(weyl_orbit(ints({1, 1}), 2) == std::vector<Weight>{ints({1, 1})});
  auto orbit = weyl_orbit(ints({2, 1, 0}), 3);
  CHECK(orbit.size() == 6);
  std::set<Weight> distinct(orbit.begin(), orbit.end());
  CHECK(distinct.size() == 6);
  CHECK_THROWS_AS(weyl_orbit(ints({1, 0}), 3), DomainError);
}

TEST_CASE("rho convention") {
  CHECK(rho(2) == ints({1, 0}));
  CHECK(rho(3) == ints({2, 1, 0}));
  CHECK(rho(1) == ints({0}));
}

TEST_CASE("dominantize examples") {
  auto a = dominantize(ints({3, 1}));
  REQUIRE(a);
  CHECK(a->w.length() == 0);
  CHECK(a->dominant == DominantWeight{3, 1});
  auto b = dominantize(ints({1, 3}));
  REQUIRE(b);
  CHECK(b->w.length() == 1);
  CHECK(b->dominant == DominantWeight{3, 1});
  CHECK(b->w.act(ints({1, 3})) == ints({3, 1}));
  CHECK_FALSE(dominantize(ints({2, 2})));
}

TEST_CASE("Weyl group: length is the inversion count and composition is associative") {
  auto group = weyl_group(4);
  CHECK(group.size() == 24);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  const Weight mu = ints({5, -2, 7, 1});
  for (int trial = 0; trial < 200; ++trial) {
    const auto& u = group[pick(rng)];
    const auto& v = group[pick(rng)];
    const auto& w = group[pick(rng)];
    CHECK(u.compose(v).compose(w) == u.compose(v.compose(w)));
    CHECK(u.compose(v).length() <= u.length() + v.length());
    CHECK(u.compose(v).act(mu) == u.act(v.act(mu)));
    CHECK(u.compose(u.inverse()) == WeylElement::identity(4));
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) inversions += u.perm()[i] > u.perm()[j];
    CHECK(u.length() == inversions);
  }
  CHECK(WeylElement::identity(3).length() == 0);
}

TEST_CASE("dominantize is constant on regular orbits") {
  const Weight mu = ints({4, -1, 2, 0});
  auto base = dominantize(mu);
  REQUIRE(base);
  for (const auto& w : weyl_group(4)) {
    auto d = dominantize(w.act(mu));
    REQUIRE(d);
    CHECK(d->dominant == base->dominant);
    CHECK(d->w.act(w.act(mu)) == d->dominant.weight());
  }
}

TEST_CASE("orbit hull contains lambda and is W-invariant") {
  for (const auto& lam : oracle::dominant_tuples(3, 0, 3)) {
    auto orbit = weyl_orbit(ints(lam), 3);
    auto p = Polytope::hull(orbit);
    CHECK(p.contains(ints(lam)));
    std::set<Weight> verts(p.vertices().begin(), p.vertices().end());
    for (const auto& w : weyl_group(3)) {
      std::set<Weight> moved;
      for (const auto& v : p.vertices()) moved.insert(w.act(v));
      CHECK(moved == verts);
    }
  }
}

TEST_CASE("DominantWeight rejects increasing parts and SU(2) labels double") {
  CHECK_THROWS_AS(DominantWeight({1, 2}), DomainError);
  CHECK(sl2_highest(Rational(3, 2)) == DominantWeight{3, 0});
  CHECK(sl2_top_weight(DominantWeight{5, 2}) == 3);
}
