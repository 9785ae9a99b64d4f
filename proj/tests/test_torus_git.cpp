#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "gitkit/error.hpp"
#include "gitkit/torus_git.hpp"
#include "oracles.hpp"

using namespace gitkit;
using namespace gitkit::torus;
using oracle::ints;

namespace {

ProjPoint pt(const std::vector<Weight>& ws, std::vector<Rational> cs = {}) {
  if (cs.empty()) cs.assign(ws.size(), Rational(1));
  return ProjPoint(ws, cs);
}

ProjPoint r1(const std::vector<long>& ws) {
  std::vector<Weight> w;
  for (long a : ws) w.push_back(ints({a}));
  return pt(w);
}

const Rational Q(1, 4), T(3, 4);
const std::vector<Weight> kirwan{Weight{-Q, -Q}, Weight{T, -Q}, Weight{-Q, T}};

ProjPoint random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> rank(1, 3), count(1, 6), coord(-2, 2), mass(1, 4);
  const auto r = static_cast<std::size_t>(rank(rng));
  const long n = count(rng);
  std::vector<Weight> ws;
  std::vector<Rational> cs;
  for (long j = 0; j < n; ++j) {
    std::vector<long> v(r);
    for (auto& x : v) x = coord(rng);
    ws.push_back(ints(v));
    cs.emplace_back(mass(rng));
  }
  return ProjPoint(ws, cs);
}

std::vector<double> random_xi(std::mt19937_64& rng, std::size_t r, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> xi(r);
  for (auto& x : xi) x = u(rng);
  return xi;
}

}  // namespace

TEST_CASE("ProjPoint merges weights and normalizes masses") {
  auto x = pt({ints({1}), ints({1}), ints({0})}, {1, 1, 2});
  CHECK(x.size() == 2);
  CHECK(x.masses() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(pt({}), DomainError);
  CHECK_THROWS_AS(pt({ints({1})}, {0}), DomainError);
  CHECK_THROWS_AS(pt({ints({1}), ints({1, 0})}), DomainError);
}

TEST_CASE("moment map examples") {
  CHECK(moment_map(r1({3}), ints({1})) == ints({2}));
  CHECK(moment_map(r1({1, -1})).is_zero());
  CHECK(moment_map(pt(kirwan)) == Weight{Rational(1, 12), Rational(1, 12)});
}

TEST_CASE("orbit moment polytope examples") {
  CHECK(orbit_moment_polytope(r1({1, 0, -1})).vertices() == std::vector<Weight>{ints({-1}), ints({1})});
  CHECK(orbit_moment_polytope(r1({2})).vertices().size() == 1);
  auto p = orbit_moment_polytope(pt({ints({0, 0}), ints({4, 0}), ints({0, 4}), ints({1, 1})}));
  CHECK(p.vertices().size() == 3);
}

TEST_CASE("stability on the C* model of P2") {
  CHECK(std::holds_alternative<Stable>(classify_stability(r1({1, 0, -1}))));
  CHECK(std::holds_alternative<Stable>(classify_stability(r1({1, -1}))));
  CHECK(std::holds_alternative<Unstable>(classify_stability(r1({1}))));
  CHECK(std::holds_alternative<Unstable>(classify_stability(r1({-1}))));
  auto zero = classify_stability(r1({0}));
  REQUIRE(std::holds_alternative<Polystable>(zero));
  CHECK(std::get<Polystable>(zero).stabilizer_dim == 1);
  auto semi = classify_stability(r1({0, -1}));
  REQUIRE(std::holds_alternative<SemistableNotPolystable>(semi));
  CHECK(std::get<SemistableNotPolystable>(semi).face_weights == std::vector<Weight>{ints({0})});
  CHECK(std::string(verdict_name(semi)) == "semistable");
}

TEST_CASE("Hilbert-Mumford slope examples") {
  auto s = hm_slope(r1({1, 0, -1}), ints({1}));
  CHECK(s.value() == doctest::Approx(1));
  CHECK(s == Slope{1, 1});
  auto w = hm_slope(pt({ints({1, 2})}), ints({3, 4}));
  CHECK(w == Slope{11, 25});
  CHECK_THROWS_AS(hm_slope(r1({1}), ints({0})), DomainError);
  Metric g{{{4}}};
  CHECK(hm_slope(r1({1}), ints({1}), g) == Slope{1, 4});
}

TEST_CASE("maximal destabilizing direction") {
  auto d = max_destabilizing(r1({1}));
  REQUIRE(d);
  CHECK(d->lambda == ints({-1}));
  CHECK(d->slope == Slope{-1, 1});
  auto k = max_destabilizing(pt({Weight{T, -Q}}));
  REQUIRE(k);
  CHECK(k->lambda == Weight{-T, Q});
  CHECK(k->slope.norm_sq == Rational(5, 8));
  CHECK_FALSE(max_destabilizing(r1({1, -1})));
  CHECK_FALSE(max_destabilizing(r1({0, 2})));
}

TEST_CASE("slope law: lambda* attains the minimal slope") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> c(-3, 3);
  int unstable = 0;
  for (int t = 0; t < 60; ++t) {
    auto x = random_point(rng);
    auto d = max_destabilizing(x);
    CHECK(d.has_value() == std::holds_alternative<Unstable>(classify_stability(x)));
    if (!d) continue;
    ++unstable;
    CHECK(hm_slope(x, d->lambda) == d->slope);
    for (int k = 0; k < 100; ++k) {
      std::vector<long> v(x.rank());
      for (auto& e : v) e = c(rng);
      Weight nu = ints(v);
      if (nu.is_zero()) continue;
      CHECK(hm_slope(x, nu) >= d->slope);
    }
  }
  CHECK(unstable > 0);
}

TEST_CASE("metric changes the destabilizing direction") {
  auto x = pt({ints({1, 0}), ints({0, 1})});
  Metric g{{{1, 0}, {0, 4}}};
  auto d = max_destabilizing(x, g);
  REQUIRE(d);
  // Nearest point of the edge in the dual metric diag(1, 1/4) is (1/5, 4/5).
  CHECK(d->nearest == Weight{Rational(1, 5), Rational(4, 5)});
  CHECK(hm_slope(x, d->lambda, g) == d->slope);
  CHECK_THROWS_AS(classify_stability(x, Metric{{{1, 2}, {2, 1}}}), DomainError);
}

TEST_CASE("Kempf-Ness function: value, gradient and convexity") {
  auto x = pt(kirwan, {1, 2, 3});
  auto kn = kempf_ness(x, {0, 0});
  CHECK(kn.value == doctest::Approx(0));
  auto m = moment_map(x);
  CHECK(kn.gradient[0] == doctest::Approx(-m[0].get_d()));
  CHECK(kn.gradient[1] == doctest::Approx(-m[1].get_d()));
  // Unstable {1}: ψ(ξ) = −ξ exactly.
  for (double xi : {-3.0, 0.5, 10.0}) CHECK(kempf_ness(r1({1}), {xi}).value == doctest::Approx(-xi));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    auto p = random_point(rng);
    auto xi = random_xi(rng, p.rank(), 2);
    auto g = kempf_ness(p, xi).gradient;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const double h = 1e-5;
      auto a = xi, b = xi;
      a[i] += h;
      b[i] -= h;
      double fd = (kempf_ness(p, a).value - kempf_ness(p, b).value) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
    }
    auto xi2 = random_xi(rng, p.rank(), 5);
    double s = std::uniform_real_distribution<double>(0, 1)(rng);
    std::vector<double> mid(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) mid[i] = s * xi[i] + (1 - s) * xi2[i];
    CHECK(kempf_ness(p, mid).value <= s * kempf_ness(p, xi).value + (1 - s) * kempf_ness(p, xi2).value + 1e-12);
  }
}

TEST_CASE("descent examples") {
  auto stable = minimize_kempf_ness(r1({1, 0, -1}));
  REQUIRE(std::holds_alternative<Converged>(stable));
  CHECK(std::get<Converged>(stable).residual < 1e-8);
  auto unstable = minimize_kempf_ness(r1({1}));
  REQUIRE(std::holds_alternative<Escaped>(unstable));
  CHECK(std::get<Escaped>(unstable).direction[0] == doctest::Approx(-1));
  CHECK(std::get<Escaped>(unstable).slope == doctest::Approx(-1));
  auto poly = minimize_kempf_ness(r1({0}));
  REQUIRE(std::holds_alternative<Converged>(poly));
  CHECK(std::get<Converged>(poly).iterations == 0);
  CHECK(std::get<Converged>(poly).xi[0] == 0);
  DescentOptions tight;
  tight.max_iter = 1;
  CHECK_THROWS_AS(minimize_kempf_ness(r1({5, -1}), tight), DomainError);
}

TEST_CASE("descent agrees with the exact verdict") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 25; ++t) {
    auto x = random_point(rng);
    auto verdict = classify_stability(x);
    auto res = minimize_kempf_ness(x);
    CHECK(std::holds_alternative<Escaped>(res) == std::holds_alternative<Unstable>(verdict));
    if (const auto* c = std::get_if<Converged>(&res)) {
      auto g = kempf_ness(x, c->xi).gradient;
      double n = 0;
      for (double v : g) n += v * v;
      CHECK(std::sqrt(n) < 1e-6);
    }
  }
}

TEST_CASE("associated graded") {
  auto g = associated_graded(r1({0, -1}), ints({1}));
  CHECK(g == r1({0}));
  CHECK(std::holds_alternative<Polystable>(classify_stability(g)));
  auto fixed = r1({2, 2});
  CHECK(associated_graded(fixed, ints({1})) == fixed);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto x = random_point(rng);
    std::vector<long> v(x.rank());
    for (auto& e : v) e = std::uniform_int_distribution<long>(-2, 2)(rng);
    Weight lam = ints(v);
    if (lam.is_zero()) continue;
    auto once = associated_graded(x, lam);
    CHECK(associated_graded(once, lam) == once);
    if (!lam.is_zero() && std::holds_alternative<Stable>(classify_stability(x)) && !(once == x)) {
      CHECK_FALSE(std::holds_alternative<Stable>(classify_stability(once)));
    }
  }
}

TEST_CASE("Jordan-Holder cone") {
  auto c = jordan_holder_cone(r1({0, -1}));
  CHECK_FALSE(c.empty);
  CHECK(c.generators == std::vector<Weight>{ints({1})});
  CHECK(jordan_holder_cone(r1({0})).empty);
  CHECK(jordan_holder_cone(r1({1, 0, -1})).empty);
  auto e = jordan_holder_cone(pt({ints({1, 0}), ints({-1, 0}), ints({0, -1})}));
  CHECK(e.generators == std::vector<Weight>{ints({0, 1})});
  CHECK_THROWS_AS(jordan_holder_cone(r1({1})), DomainError);
}

TEST_CASE("critical types") {
  auto types = critical_types(kirwan);
  std::set<Weight> want{Weight{0, 0}, Weight{-Q, 0}, Weight{0, -Q}, Weight{Q, Q}, Weight{-Q, -Q}, Weight{-Q, T}, Weight{T, -Q}};
  CHECK(std::set<Weight>(types.begin(), types.end()) == want);
  CHECK(types.size() == 7);
  CHECK(critical_types({ints({3, 1})}) == std::vector<Weight>{ints({3, 1})});
  CHECK(critical_types({ints({1}), ints({-1})}) == std::vector<Weight>{ints({-1}), ints({0}), ints({1})});
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    auto x = random_point(rng);
    auto ts = critical_types(x.weights());
    std::set<Weight> s(ts.begin(), ts.end());
    CHECK(s.count(nearest_point(Polytope::hull(x.weights()))) == 1);
  }
}

TEST_CASE("product of points") {
  auto x = pt(kirwan, {1, 2, 3});
  CHECK(product(x, pt({Weight{0, 0}})) == x);
  CHECK(product(r1({1}), r1({-1})) == r1({0}));
  auto half = pt({Weight{Rational(1, 2)}, Weight{Rational(-1, 2)}});
  auto sq = product(half, half);
  CHECK(sq.weights() == std::vector<Weight>{ints({-1}), ints({0}), ints({1})});
  CHECK(sq.masses() == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
}

TEST_CASE("moment image lies in the polytope along the orbit") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    auto x = random_point(rng);
    auto p = orbit_moment_polytope(x);
    CHECK(p.contains(moment_map(x)));
    // Translating by an integral ξ rescales masses by e^{−2⟨w,ξ⟩}; use 2^{−⟨w,ξ⟩} to stay rational.
    std::vector<long> v(x.rank());
    for (auto& e : v) e = std::uniform_int_distribution<long>(-2, 2)(rng);
    std::vector<Rational> cs;
    for (std::size_t j = 0; j < x.size(); ++j)
      cs.push_back(x.masses()[j] * oracle::power(Rational(2), -to_int64(dot(x.weights()[j], ints(v)))));
    CHECK(p.contains(moment_map(ProjPoint(x.weights(), cs))));
  }
}
