#include <doctest.h>

#include <limits>

#include "gitkit/characters.hpp"
#include "gitkit/error.hpp"
#include "gitkit/polytopes.hpp"
#include "oracles.hpp"

using namespace gitkit;
using oracle::ints;

namespace {

DominantWeight dom(const std::vector<long>& v) {
  std::vector<Rational> c(v.begin(), v.end());
  return DominantWeight(c);
}

}  // namespace

TEST_CASE("LaurentPoly arithmetic never stores zeros") {
  auto a = LaurentPoly::monomial(ints({1, 0}), 2) + LaurentPoly::monomial(ints({0, 1}), 1);
  auto b = a - LaurentPoly::monomial(ints({1, 0}), 2);
  CHECK(b.size() == 1);
  CHECK((a - a).empty());
  auto prod = a * a;
  CHECK(prod.size() <= a.size() * a.size());
  CHECK(prod.coefficient(ints({1, 1})) == 4);
  CHECK_THROWS_AS(checked_add(std::numeric_limits<std::int64_t>::max(), 1), InvariantError);
  CHECK_THROWS_AS(checked_mul(std::numeric_limits<std::int64_t>::max(), 2), InvariantError);
}

TEST_CASE("weyl_character examples") {
  for (long d = 0; d <= 6; ++d) {
    LaurentPoly want;
    for (long k = -d; k <= d; k += 2) want.add_term(ints({k}), 1);
    CHECK(sl2_character(d) == want);
  }
  CHECK(weyl_character(DominantWeight{1, 0}) == LaurentPoly::monomial(ints({1, 0})) + LaurentPoly::monomial(ints({0, 1})));
  auto ext2 = weyl_character(DominantWeight{1, 1, 0});
  CHECK(ext2.size() == 3);
  CHECK(ext2.coefficient_sum() == 3);
  CHECK(ext2.coefficient(ints({1, 0, 1})) == 1);
}

TEST_CASE("weyl_character agrees with the tableau oracle") {
  for (std::size_t r = 1; r <= 3; ++r)
    for (const auto& lam : oracle::dominant_tuples(r, -1, 3)) CHECK(weyl_character(dom(lam)) == oracle::ssyt_character(lam));
}

TEST_CASE("dimension equals the Weyl product formula, r <= 4, entries <= 5") {
  for (std::size_t r = 1; r <= 4; ++r)
    for (const auto& lam : oracle::dominant_tuples(r, 0, 5))
      CHECK(Integer(weyl_character(dom(lam)).coefficient_sum()) == oracle::weyl_dimension(lam));
}

TEST_CASE("characters are W-symmetric and supported in the Kostant polytope") {
  for (const auto& lam : oracle::dominant_tuples(3, 0, 4)) {
    auto chi = weyl_character(dom(lam));
    auto p = kostant_polytope(dom(lam));
    for (const auto& w : weyl_group(3))
      for (const auto& [mu, c] : chi.terms()) CHECK(chi.coefficient(w.act(mu)) == c);
    for (const auto& mu : chi.support()) CHECK(p.contains(mu));
  }
}

TEST_CASE("tensor_decompose examples") {
  auto m = tensor_decompose(DominantWeight{1, 0}, DominantWeight{1, 0});
  CHECK(m == Multiplicities{{DominantWeight{2, 0}, 1}, {DominantWeight{1, 1}, 1}});
  auto triv = tensor_decompose(DominantWeight{2, 1, 0}, DominantWeight{0, 0, 0});
  CHECK(triv == Multiplicities{{DominantWeight{2, 1, 0}, 1}});
  auto e = tensor_decompose(DominantWeight{1, 1, 0}, DominantWeight{1, 1, 0});
  CHECK(e == Multiplicities{{DominantWeight{2, 2, 0}, 1}, {DominantWeight{2, 1, 1}, 1}});
}

TEST_CASE("tensor dimensions multiply and match the brute-force product") {
  CharacterCache cache;
  auto tuples = oracle::dominant_tuples(3, 0, 2);
  for (const auto& a : tuples)
    for (const auto& b : tuples) {
      auto m = tensor_decompose(dom(a), dom(b), &cache);
      Integer total = 0;
      LaurentPoly rebuilt;
      for (const auto& [nu, c] : m) {
        CHECK(c > 0);
        std::vector<long> parts;
        for (const auto& q : nu.weight().coords()) parts.push_back(to_int64(q));
        total += c * oracle::weyl_dimension(parts);
        rebuilt += oracle::ssyt_character(parts).scaled(c);
      }
      CHECK(total == oracle::weyl_dimension(a) * oracle::weyl_dimension(b));
      CHECK(rebuilt == oracle::ssyt_character(a) * oracle::ssyt_character(b));
    }
}

TEST_CASE("invariant_dim examples") {
  auto half = sl2_highest(Rational(1, 2));
  CHECK(invariant_dim({half, half}, Group::SL) == 1);
  CHECK(invariant_dim({half, half, half}, Group::SL) == 0);
  CHECK(invariant_dim({DominantWeight{1, 0, 0}, DominantWeight{1, 0, 0}, DominantWeight{1, 0, 0}}, Group::SL) == 1);
  CHECK(invariant_dim({DominantWeight{1, 0, 0}, DominantWeight{1, 0, 0}, DominantWeight{1, 0, 0}}, Group::GL) == 0);
  // Clebsch-Gordan: V_a ⊗ V_b ⊗ V_c has an invariant iff triangle + parity.
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b)
      for (long c = 0; c <= 4; ++c) {
        bool expect = c <= a + b && a <= b + c && b <= a + c && (a + b + c) % 2 == 0;
        CHECK((invariant_dim({DominantWeight{a, 0}, DominantWeight{b, 0}, DominantWeight{c, 0}}, Group::SL) == 1) == expect);
      }
}

TEST_CASE("bwb_cohomology examples") {
  for (long d = 0; d <= 6; ++d) {
    auto h = bwb_cohomology(ints({d, 0}));
    REQUIRE(h);
    CHECK(h->degree == 0);
    CHECK(h->highest == DominantWeight{d, 0});
    auto h1 = bwb_cohomology(ints({-d - 2, 0}));
    REQUIRE(h1);
    CHECK(h1->degree == 1);
    CHECK(sl2_top_weight(h1->highest) == d);
  }
  CHECK_FALSE(bwb_cohomology(ints({-1, 0})));
  // GL(3): λ = (0, 2, 0) → w(λ+ρ)−ρ with one swap.
  auto h = bwb_cohomology(ints({0, 2, 0}));
  REQUIRE(h);
  CHECK(h->degree == 1);
  CHECK(h->highest == DominantWeight{1, 1, 0});
  CHECK_FALSE(bwb_cohomology(ints({0, 1, 0})));
}

TEST_CASE("decompose_character inverts the sum of characters") {
  auto chi = weyl_character(DominantWeight{2, 1, 0}).scaled(2) + weyl_character(DominantWeight{3, 0, 0});
  auto m = decompose_character(chi);
  CHECK(m == Multiplicities{{DominantWeight{3, 0, 0}, 1}, {DominantWeight{2, 1, 0}, 2}});
}
