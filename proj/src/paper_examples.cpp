#include "gitkit/paper_examples.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "gitkit/characters.hpp"
#include "gitkit/error.hpp"
#include "gitkit/horn.hpp"
#include "gitkit/localization.hpp"
#include "gitkit/polytopes.hpp"
#include "gitkit/puzzles.hpp"
#include "gitkit/torus_git.hpp"

namespace gitkit {

namespace {

using Check = std::function<std::string()>;  // returns "" on pass

Weight w1(long a) { return Weight{Rational(a)}; }
Weight w2(const Rational& a, const Rational& b) { return Weight{a, b}; }

Rational pow_q(const Rational& x, long e) {
  Rational r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= x;
  return e < 0 ? Rational(1 / r) : r;
}

bool has_triple(const horn::HornSystem& sys, std::vector<int> I, std::vector<int> J, std::vector<int> K) {
  return std::any_of(sys.inequalities.begin(), sys.inequalities.end(),
                     [&](const horn::HornInequality& q) { return q.I == I && q.J == J && q.K == K; });
}

torus::ProjPoint rank1_point(const std::vector<long>& ws) {
  std::vector<Weight> weights;
  for (long a : ws) weights.push_back(w1(a));
  return torus::ProjPoint(weights, std::vector<Rational>(weights.size(), Rational(1)));
}

std::string su2_weights() {
  for (long d = 0; d <= 8; ++d) {
    LaurentPoly expect;
    for (long k = -d; k <= d; k += 2) expect.add_term(w1(k), 1);
    if (sl2_character(d) != expect) return "sl2_character wrong at d=" + std::to_string(d);
    if (weyl_character(DominantWeight{d, 0}).mapped({w2(1, -1)}) != expect)
      return "GL(2) character does not project to SU(2) string at d=" + std::to_string(d);
  }
  return {};
}

std::string su2_no_invariant() {
  auto half = sl2_highest(Rational(1, 2));
  if (invariant_dim({half, half, half}, Group::SL) != 0) return "(1/2,1/2,1/2) has an invariant";
  return {};
}

std::string borel_weil() {
  for (long d = 0; d <= 8; ++d) {
    auto c = bwb_cohomology(Weight{Rational(d), Rational(0)});
    if (!c || c->degree != 0 || !(c->highest == DominantWeight{d, 0})) return "H0 != V_d at d=" + std::to_string(d);
  }
  return {};
}

std::string puzzle_example() {
  puzzles::BoundaryTriple b{{2, 4}, {2, 4}, {2, 3}};
  auto n = puzzles::count_puzzles(4, b);
  if (n < 1) return "no puzzle found";
  auto list = puzzles::list_puzzles(4, b);
  if (static_cast<std::int64_t>(list.size()) != n) return "listing size differs from count";
  for (const auto& p : list) {
    if (!p.is_legal()) return "listed filling is not legal";
    auto bd = p.boundary();
    if (bd.I != b.I || bd.J != b.J || bd.K != b.K) return "listed filling has the wrong boundary";
  }
  return {};
}

std::string horn_top() {
  auto sys = horn::generate_horn_system(2, horn::HornMode::AllPositive);
  if (!has_triple(sys, {1}, {2}, {1})) return "missing ({1},{2},{1}) at r=2";
  // λ₁(H₁+H₂) ≤ λ₁(H₁)+λ₁(H₂): apply to A = H₁+H₂, B = −H₂, C = H₁.
  // H₁ = diag(3,−1), H₂ = diag(2,0).
  horn::Spectrum h1({Rational(3), Rational(-1)});
  horn::Spectrum a({Rational(5), Rational(-1)}), b({Rational(0), Rational(-2)});
  if (!horn::check_triple(a, b, h1, sys).feasible) return "triple rejected";
  return {};
}

std::string horn_bottom() {
  for (int r = 2; r <= 5; ++r) {
    auto sys = horn::generate_horn_system(r, horn::HornMode::AllPositive);
    if (!has_triple(sys, {r}, {r}, {r})) return "missing lambda_r inequality at r=" + std::to_string(r);
  }
  return {};
}

std::string polygons() {
  auto q = [](std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  if (!horn::polygon_nonempty(q({1, 1, 1}))) return "(1,1,1) rejected";
  if (horn::polygon_nonempty(q({3, 1, 1}))) return "(3,1,1) accepted";
  if (!horn::polygon_nonempty(q({2, 1, 1}))) return "(2,1,1) rejected";
  return {};
}

std::string sl2_configs() {
  if (!horn::sl2_config_semistable({2, 1, 1}, 4)) return "(2,1,1) unstable";
  if (horn::sl2_config_semistable({3, 1}, 4)) return "(3,1) semistable";
  return {};
}

std::string atiyah_segment() {
  auto p = torus::orbit_moment_polytope(rank1_point({1, 0, -1}));
  if (p.vertices() != std::vector<Weight>{w1(-1), w1(1)}) return "hull is not [-1,1]";
  return {};
}

std::string p2_lists() {
  // Every support class of the C* action on P² with weights {1, 0, −1}.
  const std::vector<std::vector<long>> classes = {{1}, {0}, {-1}, {1, 0}, {0, -1}, {1, -1}, {1, 0, -1}};
  for (const auto& s : classes) {
    auto v = torus::classify_stability(rank1_point(s));
    bool has_pos = std::count(s.begin(), s.end(), 1) > 0, has_neg = std::count(s.begin(), s.end(), -1) > 0;
    bool zero_only = s == std::vector<long>{0};
    bool semistable = !(s.size() == 1 && s[0] != 0);
    bool stable = has_pos && has_neg;
    bool polystable = stable || zero_only;
    bool got_stable = std::holds_alternative<torus::Stable>(v);
    bool got_poly = got_stable || std::holds_alternative<torus::Polystable>(v);
    if (torus::is_semistable(v) != semistable || got_poly != polystable || got_stable != stable)
      return std::string("wrong verdict ") + torus::verdict_name(v) + " for a support class of size " +
             std::to_string(s.size());
  }
  auto zero = torus::classify_stability(rank1_point({0}));
  if (std::get<torus::Polystable>(zero).stabilizer_dim != 1) return "stabilizer of [0,1,0] should be 1-dim";
  return {};
}

std::string kirwan_types() {
  const Rational q(1, 4), t(3, 4);
  auto types = torus::critical_types({w2(-q, -q), w2(t, -q), w2(-q, t)});
  std::set<Weight> got(types.begin(), types.end());
  std::set<Weight> want{w2(0, 0), w2(-q, 0), w2(0, -q), w2(q, q), w2(-q, -q), w2(-q, t), w2(t, -q)};
  if (got != want || types.size() != 7) return "critical types differ";
  return {};
}

std::string kostant_su2() {
  for (long d = 0; d <= 6; ++d) {
    auto p = kostant_polytope(DominantWeight{d, 0});
    std::set<Weight> projected;
    for (const auto& v : p.vertices()) projected.insert(Weight{v[0] - v[1]});
    if (projected != std::set<Weight>{w1(-d), w1(d)}) return "image is not [-d,d] at d=" + std::to_string(d);
  }
  return {};
}

std::string weight_lattice() {
  for (long d = 0; d <= 8; ++d) {
    auto seg = Polytope::hull({w1(-d), w1(d)});
    auto pts = lattice_points(seg, w1(d), Integer(2));
    if (static_cast<long>(pts.size()) != d + 1) return "wrong count at d=" + std::to_string(d);
  }
  return {};
}

std::string cut_example() {
  auto p = Polytope::hull({w2(0, 0), w2(2, 0), w2(0, 2)});
  auto cut = symplectic_cut(p, w2(-1, 0), Rational(-1));
  auto want = Polytope::hull({w2(0, 0), w2(0, 2), w2(1, 0), w2(1, 1)});
  if (cut.outcome != CutOutcome::Cut || !(cut.polytope == want)) return "cut polytope differs";
  return {};
}

std::string p2_fan() {
  auto p = Polytope::hull({w2(0, 0), w2(1, 0), w2(0, 1)});
  std::set<std::set<Weight>> cones;
  for (const auto& c : normal_fan(p))
    if (c.face.dim == 0) cones.insert(std::set<Weight>(c.generators.begin(), c.generators.end()));
  std::set<std::set<Weight>> want{{w2(1, 1), w2(-1, 0)}, {w2(1, 1), w2(0, -1)}, {w2(-1, 0), w2(0, -1)}};
  if (cones != want) return "vertex cones differ";
  return {};
}

localization::ConeSeries p2_formula(long d) {
  using localization::ConeTerm;
  localization::ConeSeries s(2);
  auto add = [&](Weight num, long c, std::vector<Weight> den) {
    auto dir = localization::term_direction(den, 2);
    s.add(ConeTerm{LaurentPoly::monomial(num, c), std::move(den), std::move(dir)});
  };
  const Weight g1 = w2(1, 0), g2 = w2(0, 1), u = w2(-1, 1);
  add(w2(0, 0), 1, {g1, g2});
  add(w2(d + 1, 0), -1, {g1, u});
  add(w2(-1, d + 2), 1, {u, g2});
  return s;
}

std::string p2_localization() {
  for (long d = 0; d <= 5; ++d) {
    auto simplex = Polytope::hull({w2(0, 0), w2(d, 0), w2(0, d)});
    if (d == 0) simplex = Polytope::hull({w2(0, 0)});
    auto series = localization::vertex_sum(simplex);
    if (d > 0 && series.terms().size() != 3) return "expected three vertex terms";
    if (d > 0 && !localization::equal_as_rational_functions(series, p2_formula(d)))
      return "vertex sum differs from the three-term formula at d=" + std::to_string(d);
  }
  return {};
}

std::string p1_stratum_term() {
  for (long d = 0; d <= 6; ++d) {
    localization::ConeSeries s(1);
    s.add({LaurentPoly::monomial(w1(d + 2)), {w1(2)}, w1(-1)});
    auto got = localization::expand_in_box(s, {{-30}, {30}});
    LaurentPoly want;
    for (long k = d + 2; k <= 30; k += 2) want.add_term(w1(k), 1);
    if (got != want) return "expansion differs at d=" + std::to_string(d);
  }
  return {};
}

Rational blowup_display(long d, long e, const Rational& g1, const Rational& g2) {
  const Rational one = 1;
  const Rational a = one - g1, b = one - g2, u = one - g2 / g1, ui = one - g1 / g2;
  return pow_q(g1, e) / (a * u) - pow_q(g2, e + 1) / g1 / (ui * b) - pow_q(g1, d) / (a * u) + pow_q(g2, d) / (u * b);
}

std::string blowup_display_check() {
  const std::vector<std::pair<Rational, Rational>> points = {
      {2, 3}, {Rational(1, 2), Rational(5, 3)}, {-3, Rational(2, 7)}, {Rational(7, 5), -2}, {5, Rational(-1, 3)}};
  for (long d = 2; d <= 5; ++d) {
    for (long e = 1; e < d; ++e) {
      auto rep = localization::blowup_chi(d, e);
      for (const auto& [x, y] : points)
        if (localization::evaluate(rep.literal, {x, y}) != blowup_display(d, e, x, y))
          return "literal series differs from display at d=" + std::to_string(d) + ", e=" + std::to_string(e);
      for (const auto& h : rep.h0)
        if (std::find(rep.h1.begin(), rep.h1.end(), h) != rep.h1.end()) return "H0 and H1 supports overlap";
    }
  }
  return {};
}

std::string p1_identity() {
  for (long d = 0; d <= 10; ++d) {
    auto rep = localization::p1_kn_identity(d);
    if (!rep.rational_identity || !rep.box_identity) return "identity fails at d=" + std::to_string(d);
  }
  return {};
}

}  // namespace

std::vector<ExampleResult> paper_examples() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"characters: SU(2) weights d, d-2, ..., -d", su2_weights},
      {"characters: no invariant in V(1/2)^3", su2_no_invariant},
      {"characters: Borel-Weil H0 = V_d", borel_weil},
      {"puzzles: I={2,4} J={2,4} K={2,3} on r=4", puzzle_example},
      {"horn: top eigenvalue subadditivity", horn_top},
      {"horn: bottom eigenvalue inequality", horn_bottom},
      {"horn: polygon triangle inequalities", polygons},
      {"horn: weighted points on P1", sl2_configs},
      {"stability: orbit polytope of P1 weights", atiyah_segment},
      {"stability: C* on P2 stability lists", p2_lists},
      {"stability: Kirwan types on P2", kirwan_types},
      {"polytopes: SU(2) coadjoint image [-d,d]", kostant_su2},
      {"polytopes: weights = [-d,d] cap (d+2Z)", weight_lattice},
      {"polytopes: symplectic cut of 2-simplex", cut_example},
      {"polytopes: normal fan of P2", p2_fan},
      {"localization: P2 vertex formula", p2_localization},
      {"localization: P1 stratum term expansion", p1_stratum_term},
      {"localization: blow-up display formula", blowup_display_check},
      {"localization: P1 non-abelian identity", p1_identity},
  };
  std::vector<ExampleResult> out;
  for (const auto& [name, check] : checks) {
    ExampleResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
      r.detail = check();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.pass = r.detail.empty();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gitkit
