#include "gitkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "gitkit/error.hpp"
#include "gitkit/json_io.hpp"
#include "gitkit/paper_examples.hpp"

namespace gitkit::cli {

namespace {

using json_io::Json;
using json_io::to_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Scalar text for a value supplied through --in.
std::string flag_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    bool nested = !v.empty() && v.front().is_array();
    for (const auto& e : v) {
      if (!s.empty()) s += nested ? ";" : ",";
      s += flag_text(e);
    }
    return s;
  }
  return v.dump();
}

class Args {
 public:
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::optional<Json> in_doc;
  std::string primary;
  std::uint64_t seed = 0;
  int jobs = 1;

  bool given(const std::string& name) const { return values.count(name) && !values.at(name).empty(); }

  bool has(const std::string& name) const {
    if (given(name)) return true;
    if (in_doc && in_doc->is_object() && in_doc->contains(name)) return true;
    return name == primary && in_doc.has_value();
  }

  bool flag(const std::string& name) const {
    if (flags.count(name) && flags.at(name)) return true;
    return in_doc && in_doc->is_object() && in_doc->contains(name) && in_doc->at(name).is_boolean() &&
           in_doc->at(name).get<bool>();
  }

  std::string str(const std::string& name) const {
    if (values.count(name) && !values.at(name).empty()) return values.at(name);
    if (in_doc && in_doc->is_object() && in_doc->contains(name)) return flag_text(in_doc->at(name));
    throw UsageError("missing required option --" + name);
  }

  template <class F>
  auto parsed(const std::string& name, F&& f) const {
    std::string text = str(name);
    try {
      return f(text);
    } catch (const DomainError& e) {
      throw UsageError("bad value for --" + name + ": " + e.what());
    } catch (const std::logic_error&) {
      throw UsageError("bad value for --" + name + ": '" + text + "'");
    }
  }

  std::int64_t integer(const std::string& name) const {
    return parsed(name, [](const std::string& t) { return to_int64(parse_rational(t)); });
  }
  std::int64_t integer(const std::string& name, std::int64_t fallback) const {
    return has(name) ? integer(name) : fallback;
  }
  double real(const std::string& name, double fallback) const {
    return has(name) ? parsed(name, [](const std::string& t) { return std::stod(t); }) : fallback;
  }
  Rational rational(const std::string& name) const { return parsed(name, [](const std::string& t) { return parse_rational(t); }); }
  std::vector<Rational> rationals(const std::string& name) const {
    return parsed(name, [](const std::string& t) { return parse_rational_list(t); });
  }
  Weight weight(const std::string& name) const { return Weight(rationals(name)); }
  std::vector<int> ints(const std::string& name) const {
    std::vector<int> out;
    for (const auto& q : rationals(name)) out.push_back(static_cast<int>(to_int64(q)));
    return out;
  }
  /// "a,b;c,d" or a JSON array of arrays.
  std::vector<Weight> weight_list(const std::string& name) const {
    if (in_doc && in_doc->is_object() && in_doc->contains(name) && !given(name))
      return json_io::weights_from(in_doc->at(name));
    if (!given(name) && name == primary && in_doc) return json_io::weights_from(*in_doc);
    std::string text = str(name);
    if (!text.empty() && text.front() == '[') return json_io::weights_from(json_io::parse(text, "--" + name));
    std::vector<Weight> out;
    for (const auto& part : split(text, ';'))
      out.push_back(parsed(name, [&](const std::string&) { return Weight(parse_rational_list(part)); }));
    return out;
  }

  /// Inline JSON, a path to a JSON file, a key of the --in document, or the
  /// whole --in document for the primary input.
  Json structured(const std::string& name) const {
    if (values.count(name) && !values.at(name).empty()) {
      const std::string& v = values.at(name);
      if (v.front() == '{' || v.front() == '[') return json_io::parse(v, "--" + name);
      return read_file(v);
    }
    if (in_doc && in_doc->is_object() && in_doc->contains(name)) return in_doc->at(name);
    if (name == primary && in_doc) return *in_doc;
    throw UsageError("missing required input --" + name);
  }

  static Json read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("io_error", "cannot read file", path);
    std::stringstream ss;
    ss << f.rdbuf();
    return json_io::parse(ss.str(), path);
  }
};

struct Leaf {
  std::string module, op, summary;
  std::vector<std::string> operations;
  std::vector<std::pair<std::string, std::string>> options;  // name, help
  std::vector<std::pair<std::string, std::string>> flags;
  std::string primary;
  bool table_default = false;
  std::function<Json(const Args&, int& exit_code)> handler;
};

// ---- shared converters -----------------------------------------------------

DominantWeight dominant(const Args& a, const std::string& name) {
  if (a.flag("su2")) return sl2_highest(a.rational(name));
  return a.parsed(name, [](const std::string& t) { return DominantWeight(parse_rational_list(t)); });
}

Json spin_json(const DominantWeight& lambda) {
  return to_json(Rational(Rational(sl2_top_weight(lambda)) / 2));
}

torus::ProjPoint point(const Args& a, const std::string& name = "point") {
  if (a.has(name)) return json_io::proj_point_from(a.structured(name));
  auto ws = a.weight_list("weights");
  std::vector<Rational> masses(ws.size(), Rational(1));
  if (a.has("masses")) {
    masses = a.rationals("masses");
    if (masses.size() != ws.size()) throw UsageError("--masses must have one entry per weight");
  }
  return torus::ProjPoint(std::move(ws), std::move(masses));
}

torus::Metric metric(const Args& a) {
  torus::Metric m;
  if (!a.has("metric")) return m;
  Json j = a.structured("metric");
  if (!j.is_array()) throw DomainError("malformed_json", "metric must be a matrix", j.dump());
  for (const auto& row : j) {
    linalg::Vector r;
    for (const auto& e : row) r.push_back(json_io::rational_from(e));
    m.gram.push_back(std::move(r));
  }
  return m;
}

Polytope polytope(const Args& a) { return json_io::polytope_from(a.structured("polytope")); }

Json destabilizer_json(const std::optional<torus::Destabilizer>& d) {
  if (!d) return Json{{"unstable", false}};
  return Json{{"unstable", true}, {"lambda", to_json(d->lambda)}, {"nearest", to_json(d->nearest)}, {"slope", to_json(d->slope)}};
}

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

const char* outcome_name(CutOutcome o) {
  switch (o) {
    case CutOutcome::Cut: return "cut";
    case CutOutcome::Unchanged: return "unchanged";
    case CutOutcome::Empty: return "empty";
  }
  return "";
}

// ---- the registry ------------------------------------------------------------

std::vector<Leaf> make_leaves() {
  std::vector<Leaf> L;
  auto add = [&](Leaf leaf) { L.push_back(std::move(leaf)); };

  // lie
  add({"lie", "orbit", "Weyl orbit of a weight", {"weyl_orbit"}, {{"lambda", "weight"}, {"r", "rank (default: length of lambda)"}}, {}, "",
       false, [](const Args& a, int&) {
         Weight lambda = a.weight("lambda");
         auto orbit = weyl_orbit(lambda, static_cast<std::size_t>(a.integer("r", static_cast<std::int64_t>(lambda.rank()))));
         return Json{{"size", orbit.size()}, {"orbit", to_json(orbit)}};
       }});
  add({"lie", "rho", "rho = (r-1, ..., 0)", {"rho"}, {{"r", "rank"}}, {}, "", false, [](const Args& a, int&) {
         auto r = a.integer("r");
         if (r < 0) throw UsageError("--r must be non-negative");
         return Json{{"rho", to_json(rho(static_cast<std::size_t>(r)))}};
       }});
  add({"lie", "dominantize", "Weyl element moving a weight to the dominant chamber", {"dominantize"}, {{"mu", "weight"}}, {}, "",
       false, [](const Args& a, int&) {
         auto d = dominantize(a.weight("mu"));
         if (!d) return Json{{"singular", true}};
         return Json{{"singular", false}, {"perm", d->w.perm()}, {"length", d->w.length()}, {"dominant", to_json(d->dominant)}};
       }});

  // characters
  add({"char", "weyl", "character of an irreducible module", {"weyl_character"},
       {{"lambda", "highest weight (spin with --su2)"}, {"r", "rank, checked against lambda"}}, {{"su2", "lambda is an SU(2) spin"}}, "",
       false, [](const Args& a, int&) {
         auto lambda = dominant(a, "lambda");
         if (a.has("r") && a.integer("r") != static_cast<std::int64_t>(lambda.rank()))
           throw DomainError("rank_mismatch", "--r does not match the length of --lambda", a.str("r"));
         if (a.flag("su2")) {
           auto d = sl2_top_weight(lambda).get_si();
           return Json{{"top_weight", d}, {"dimension", d + 1}, {"character", to_json(sl2_character(d))}};
         }
         auto chi = weyl_character(lambda);
         return Json{{"dimension", chi.coefficient_sum()}, {"character", to_json(chi)}};
       }});
  add({"char", "tensor", "decompose a tensor product", {"tensor_decompose"}, {{"lambda", "highest weight"}, {"mu", "highest weight"}},
       {{"su2", "weights are SU(2) spins"}}, "", false, [](const Args& a, int&) {
         auto m = tensor_decompose(dominant(a, "lambda"), dominant(a, "mu"));
         if (!a.flag("su2")) return Json{{"decomposition", to_json(m)}};
         Json out = Json::array();
         for (const auto& [nu, c] : m) out.push_back(Json{{"spin", spin_json(nu)}, {"multiplicity", c}});
         return Json{{"decomposition", out}};
       }});
  add({"char", "invariants", "dimension of invariants in a tensor product", {"invariant_dim"},
       {{"weights", "highest weights separated by ';' (spins separated by ',' with --su2)"}, {"group", "sl or gl (default sl)"}},
       {{"su2", "weights are SU(2) spins"}}, "", false, [](const Args& a, int&) {
         std::vector<DominantWeight> ws;
         if (a.flag("su2")) {
           for (const auto& j : a.rationals("weights")) ws.push_back(sl2_highest(j));
         } else {
           for (const auto& w : a.weight_list("weights")) ws.emplace_back(std::vector<Rational>(w.coords().begin(), w.coords().end()));
         }
         std::string g = a.has("group") ? a.str("group") : "sl";
         if (g != "sl" && g != "gl") throw UsageError("--group must be sl or gl");
         return Json{{"dimension", invariant_dim(ws, g == "sl" ? Group::SL : Group::GL)}};
       }});
  add({"char", "bwb", "Borel-Weil-Bott cohomology of a line bundle", {"bwb_cohomology"},
       {{"lambda", "weight (an integer SU(2) weight with --su2)"}}, {{"su2", "lambda is an SU(2) weight"}}, "", false,
       [](const Args& a, int&) {
         Weight lambda = a.flag("su2") ? Weight{a.rational("lambda"), Rational(0)} : a.weight("lambda");
         auto c = bwb_cohomology(lambda);
         if (!c) return Json{{"zero", true}};
         Json out{{"zero", false}, {"degree", c->degree}, {"highest", to_json(c->highest)}};
         if (a.flag("su2")) out["top_weight"] = sl2_top_weight(c->highest).get_si();
         return out;
       }});

  // puzzles
  add({"puzzles", "count", "count (and optionally list) puzzles with a boundary", {"count_puzzles"},
       {{"r", "board size"}, {"I", "NW 1-positions"}, {"J", "NE 1-positions"}, {"K", "S 1-positions"}}, {{"list", "also list the fillings"}}, "",
       false, [](const Args& a, int&) {
         int r = static_cast<int>(a.integer("r"));
         puzzles::BoundaryTriple b{a.ints("I"), a.ints("J"), a.ints("K")};
         Json out{{"count", puzzles::count_puzzles(r, b, a.jobs)}};
         if (a.flag("list")) {
           Json list = Json::array();
           for (const auto& p : puzzles::list_puzzles(r, b)) list.push_back(to_json(p));
           out["puzzles"] = list;
         }
         return out;
       }});
  add({"puzzles", "lr", "Littlewood-Richardson coefficient via puzzles", {"lr_coefficient"},
       {{"r", "n"}, {"s", "subspace dimension"}, {"lambda", "partition"}, {"mu", "partition"}, {"nu", "partition"}}, {}, "", false,
       [](const Args& a, int&) {
         return Json{{"coefficient", puzzles::lr_coefficient(static_cast<int>(a.integer("r")), static_cast<int>(a.integer("s")),
                                                             a.ints("lambda"), a.ints("mu"), a.ints("nu"))}};
       }});
  add({"puzzles", "assoc", "associativity of puzzle structure constants", {"associativity_check"},
       {{"r", "n"}, {"s", "subspace dimension"}, {"trials", "sampled tuples (0 = all)"}}, {}, "", false, [](const Args& a, int&) {
         auto rep = puzzles::associativity_check(static_cast<int>(a.integer("r")), static_cast<int>(a.integer("s")), a.integer("trials", 0),
                                                 a.seed);
         Json out{{"pass", rep.pass}, {"tuples_checked", rep.tuples_checked}};
         if (rep.counterexample) out["counterexample"] = *rep.counterexample;
         return out;
       }});

  // horn
  add({"horn", "generate", "Horn inequalities from puzzle-positive triples", {"generate_horn_system"}, {{"r", "rank"}},
       {{"irredundant", "keep only multiplicity-one triples"}}, "", false, [](const Args& a, int&) {
         auto mode = a.flag("irredundant") ? horn::HornMode::Irredundant : horn::HornMode::AllPositive;
         return to_json(horn::generate_horn_system(static_cast<int>(a.integer("r")), mode, a.jobs));
       }});
  add({"horn", "check", "is (a, b, c) the spectra of A, B, A+B?", {"check_triple"},
       {{"a", "spectrum"}, {"b", "spectrum"}, {"c", "spectrum"}}, {}, "", false, [](const Args& a, int&) {
         horn::Spectrum sa(a.rationals("a")), sb(a.rationals("b")), sc(a.rationals("c"));
         if (sb.rank() != sa.rank() || sc.rank() != sa.rank()) throw DomainError("rank_mismatch", "spectra must have equal length");
         auto sys = horn::generate_horn_system(static_cast<int>(sa.rank()), horn::HornMode::AllPositive, a.jobs);
         auto res = horn::check_triple(sa, sb, sc, sys);
         Json out{{"feasible", res.feasible}, {"trace_ok", res.trace_ok}};
         if (res.violated) out["violated"] = to_json(*res.violated);
         return out;
       }});
  add({"horn", "sample", "random Hermitian matrices against the inequalities", {"sample_hermitian_validate"},
       {{"r", "rank"}, {"trials", "number of samples (default 1000)"}}, {}, "", false, [](const Args& a, int&) {
         auto rep = horn::sample_hermitian_validate(static_cast<int>(a.integer("r")), a.integer("trials", 1000), a.seed);
         return Json{{"trials", rep.trials}, {"violations", rep.violations}, {"max_slack_error", rep.max_slack_error}};
       }});
  add({"horn", "polygon", "does a closed polygon with these side lengths exist?", {"polygon_nonempty"}, {{"lengths", "side lengths"}},
       {}, "", false, [](const Args& a, int&) { return Json{{"nonempty", horn::polygon_nonempty(a.rationals("lengths"))}}; }});
  add({"horn", "sl2-config", "semistability of weighted points on P1", {"sl2_config_semistable"},
       {{"masses", "mass at each distinct point"}, {"total", "total mass (default: sum)"}}, {}, "", false, [](const Args& a, int&) {
         auto masses = a.rationals("masses");
         Rational total = 0;
         for (const auto& m : masses) total += m;
         if (a.has("total")) total = a.rational("total");
         return Json{{"semistable", horn::sl2_config_semistable(masses, total)}};
       }});

  // stability
  const std::pair<std::string, std::string> point_opt{"point", "point JSON {weights, masses} or file"},
      weights_opt{"weights", "support weights separated by ';'"}, masses_opt{"masses", "masses (default 1)"},
      metric_opt{"metric", "Gram matrix JSON (default identity)"};
  add({"stability", "moment", "moment map of a point", {"moment_map"}, {point_opt, weights_opt, masses_opt, {"shift", "weight added"}}, {},
       "point", false, [](const Args& a, int&) {
         auto x = point(a);
         Weight m = a.has("shift") ? torus::moment_map(x, a.weight("shift")) : torus::moment_map(x);
         return Json{{"moment", to_json(m)}};
       }});
  add({"stability", "moment-polytope", "moment image of the orbit closure", {"orbit_moment_polytope"}, {point_opt, weights_opt, masses_opt},
       {}, "point", false, [](const Args& a, int&) { return to_json(torus::orbit_moment_polytope(point(a))); }});
  add({"stability", "classify", "stability verdict", {"classify_stability"}, {point_opt, weights_opt, masses_opt, metric_opt}, {}, "point",
       false, [](const Args& a, int&) { return to_json(torus::classify_stability(point(a), metric(a))); }});
  add({"stability", "slope", "Hilbert-Mumford slope along lambda", {"hm_slope"}, {point_opt, weights_opt, masses_opt, metric_opt, {"lambda", "direction"}},
       {}, "point", false, [](const Args& a, int&) { return to_json(torus::hm_slope(point(a), a.weight("lambda"), metric(a))); }});
  add({"stability", "destabilize", "maximally destabilizing direction", {"max_destabilizing"}, {point_opt, weights_opt, masses_opt, metric_opt},
       {}, "point", false, [](const Args& a, int&) { return destabilizer_json(torus::max_destabilizing(point(a), metric(a))); }});
  add({"stability", "kempf-ness", "Kempf-Ness function and gradient at xi", {"kempf_ness"}, {point_opt, weights_opt, masses_opt, {"xi", "vector"}},
       {}, "point", false, [](const Args& a, int&) {
         auto kn = torus::kempf_ness(point(a), to_doubles(a.weight("xi")));
         return Json{{"value", kn.value}, {"gradient", doubles(kn.gradient)}};
       }});
  add({"stability", "flow", "gradient descent on the Kempf-Ness function", {"minimize_kempf_ness"},
       {point_opt, weights_opt, masses_opt, metric_opt, {"tol", "gradient tolerance (default 1e-8)"}, {"max-iter", "iteration cap (default 100000)"}},
       {}, "point", false, [](const Args& a, int&) {
         torus::DescentOptions opts;
         opts.tol = a.real("tol", opts.tol);
         opts.max_iter = a.integer("max-iter", opts.max_iter);
         opts.metric = metric(a);
         auto res = torus::minimize_kempf_ness(point(a), opts);
         if (const auto* c = std::get_if<torus::Converged>(&res))
           return Json{{"result", "converged"}, {"xi", doubles(c->xi)}, {"residual", c->residual}, {"iterations", c->iterations}};
         const auto& e = std::get<torus::Escaped>(res);
         return Json{{"result", "escaped"}, {"direction", doubles(e.direction)}, {"slope", e.slope}, {"iterations", e.iterations}};
       }});
  add({"stability", "graded", "associated graded point along lambda", {"associated_graded"},
       {point_opt, weights_opt, masses_opt, {"lambda", "direction"}}, {}, "point", false,
       [](const Args& a, int&) { return to_json(torus::associated_graded(point(a), a.weight("lambda"))); }});
  add({"stability", "jh-cone", "Jordan-Holder cone of a semistable point", {"jordan_holder_cone"}, {point_opt, weights_opt, masses_opt}, {},
       "point", false, [](const Args& a, int&) {
         auto c = torus::jordan_holder_cone(point(a));
         return Json{{"empty", c.empty}, {"generators", to_json(c.generators)}};
       }});
  add({"stability", "types", "Kirwan-Ness critical types of a weight set", {"critical_types"}, {weights_opt}, {}, "weights", false,
       [](const Args& a, int&) { return Json{{"types", to_json(torus::critical_types(a.weight_list("weights")))}}; }});
  add({"stability", "product", "Segre product of two points", {"product"}, {point_opt, {"other", "second point JSON or file"}}, {}, "point",
       false, [](const Args& a, int&) {
         return to_json(torus::product(json_io::proj_point_from(a.structured("point")), json_io::proj_point_from(a.structured("other"))));
       }});

  // polytopes
  const std::pair<std::string, std::string> poly_opt{"polytope", "polytope JSON or file"};
  add({"polytope", "hull", "convex hull of points", {"hull"}, {{"points", "points separated by ';'"}}, {}, "points", false,
       [](const Args& a, int&) { return to_json(Polytope::hull(a.weight_list("points"))); }});
  add({"polytope", "kostant", "hull of the Weyl orbit", {"kostant_polytope"}, {{"lambda", "dominant weight"}}, {{"su2", "lambda is a spin"}}, "",
       false, [](const Args& a, int&) { return to_json(kostant_polytope(dominant(a, "lambda"))); }});
  add({"polytope", "lattice", "lattice points (or points of base + step Z^r)", {"lattice_points"},
       {poly_opt, {"base", "coset base"}, {"step", "coset step"}}, {}, "polytope", false, [](const Args& a, int&) {
         auto p = polytope(a);
         auto pts = a.has("step") ? lattice_points(p, a.has("base") ? a.weight("base") : Weight::zero(p.rank()), a.rational("step").get_num())
                                  : lattice_points(p);
         return Json{{"count", pts.size()}, {"points", to_json(pts)}};
       }});
  add({"polytope", "delzant", "Delzant test", {"is_delzant"}, {poly_opt}, {}, "polytope", false, [](const Args& a, int&) {
         auto r = is_delzant(polytope(a));
         Json out{{"delzant", r.delzant}};
         if (r.failing_vertex) out["failing_vertex"] = to_json(*r.failing_vertex);
         return out;
       }});
  add({"polytope", "cut", "symplectic cut P ∩ {<x, normal> >= level}", {"symplectic_cut"},
       {poly_opt, {"normal", "cut vector"}, {"level", "level"}}, {}, "polytope", false, [](const Args& a, int&) {
         auto r = symplectic_cut(polytope(a), a.weight("normal"), a.rational("level"));
         return Json{{"outcome", outcome_name(r.outcome)}, {"polytope", to_json(r.polytope)}};
       }});
  add({"polytope", "fan", "normal fan", {"normal_fan"}, {poly_opt}, {}, "polytope", false, [](const Args& a, int&) {
         auto p = polytope(a);
         Json cones = Json::array();
         for (const auto& c : normal_fan(p)) cones.push_back(Json{{"face", to_json(c.face, p)}, {"generators", to_json(c.generators)}});
         return Json{{"cones", cones}};
       }});
  add({"polytope", "brianchon-gram", "Brianchon-Gram identity at sample points", {"brianchon_gram_check"},
       {poly_opt, {"samples", "points separated by ';' (default: integer points near P)"}}, {}, "polytope", false, [](const Args& a, int&) {
         auto p = polytope(a);
         std::vector<Weight> samples;
         if (a.has("samples")) {
           samples = a.weight_list("samples");
         } else {
           auto box = localization::bounding_box(p, 2);
           std::vector<std::int64_t> cur = box.lo;
           while (true) {
             std::vector<Rational> c;
             for (auto v : cur) c.emplace_back(static_cast<long>(v));
             samples.emplace_back(std::move(c));
             std::size_t i = 0;
             while (i < cur.size() && cur[i] == box.hi[i]) cur[i] = box.lo[i], ++i;
             if (i == cur.size()) break;
             ++cur[i];
           }
         }
         return Json{{"pass", brianchon_gram_check(p, samples)}, {"samples", samples.size()}};
       }});

  // localization
  add({"localize", "toric", "vertex localization series of a Delzant polytope", {"vertex_sum", "evaluate"},
       {poly_opt, {"series", "cone series JSON instead of a polytope"}, {"eval", "evaluate at this point"}}, {}, "polytope", false,
       [](const Args& a, int&) {
         auto s = a.has("series") && !a.given("polytope") ? json_io::cone_series_from(a.structured("series"))
                                                                  : localization::vertex_sum(polytope(a));
         Json out{{"series", to_json(s)}};
         if (a.has("eval")) out["value"] = to_json(localization::evaluate(s, a.rationals("eval")));
         return out;
       }});
  add({"localize", "expand", "expand a cone series inside a box", {"expand_in_box"},
       {{"series", "cone series JSON"}, poly_opt, {"box", "lo;hi corners"}, {"margin", "box margin around the polytope"}}, {}, "series", false,
       [](const Args& a, int&) {
         localization::ConeSeries s;
         localization::Box box;
         if (a.given("polytope") || (!a.has("series") && a.has("polytope"))) {
           auto p = polytope(a);
           s = localization::vertex_sum(p);
           box = localization::bounding_box(p, a.integer("margin", 0));
         } else {
           s = json_io::cone_series_from(a.structured("series"));
         }
         if (a.has("box")) {
           auto corners = a.weight_list("box");
           if (corners.size() != 2) throw UsageError("--box needs two corners lo;hi");
           box = {};
           for (std::size_t i = 0; i < corners[0].rank(); ++i) {
             box.lo.push_back(to_int64(corners[0][i]));
             box.hi.push_back(to_int64(corners[1][i]));
           }
         } else if (box.lo.empty()) {
           throw UsageError("--box is required for a series");
         }
         auto p = localization::expand_in_box(s, box);
         return Json{{"terms", p.size()}, {"expansion", to_json(p)}};
       }});
  add({"localize", "p1", "non-abelian localization identity on P1", {"p1_kn_identity"}, {{"d", "degree"}, {"radius", "box radius"}}, {}, "", false,
       [](const Args& a, int&) {
         auto rep = localization::p1_kn_identity(a.integer("d"), a.integer("radius", -1));
         return Json{{"pass", rep.rational_identity && rep.box_identity},
                     {"rational_identity", rep.rational_identity},
                     {"box_identity", rep.box_identity},
                     {"lhs", to_json(rep.lhs)},
                     {"rhs", to_json(rep.rhs)}};
       }});
  add({"localize", "blowup", "fixed-point series of the blow-up of P2", {"blowup_chi"}, {{"d", "degree"}, {"e", "exceptional twist"}}, {}, "",
       false, [](const Args& a, int&) {
         auto rep = localization::blowup_chi(a.integer("d"), a.integer("e"));
         return Json{{"literal", to_json(rep.literal)},
                     {"corrected", to_json(rep.corrected)},
                     {"literal_equals_corrected", rep.literal_equals_corrected},
                     {"chi", to_json(rep.chi)},
                     {"h0", to_json(rep.h0)},
                     {"h1", to_json(rep.h1)},
                     {"h0_dim", rep.h0_dim},
                     {"h1_dim", rep.h1_dim}};
       }});
  add({"localize", "weyl", "Weyl character from the Bruhat-cell series", {"weyl_via_localization"}, {{"lambda", "dominant weight"}},
       {{"su2", "lambda is a spin"}}, "", false, [](const Args& a, int&) {
         auto lambda = dominant(a, "lambda");
         auto chi = localization::weyl_via_localization(lambda);
         return Json{{"character", to_json(chi)}, {"matches_weyl_character", chi == weyl_character(lambda)}};
       }});

  add({"paper-examples", "", "replay the pinned worked examples", {"paper_examples"}, {}, {{"no-timing", "omit runtimes"}}, "", true,
       [](const Args& a, int& code) {
         Json rows = Json::array();
         int failed = 0;
         for (const auto& r : paper_examples()) {
           Json row{{"name", r.name}, {"pass", r.pass}};
           if (!a.flag("no-timing")) row["millis"] = std::round(r.millis * 10) / 10;
           if (!r.pass) row["detail"] = r.detail;
           failed += r.pass ? 0 : 1;
           rows.push_back(row);
         }
         code = failed == 0 ? 0 : 1;
         return Json{{"examples", rows}, {"passed", rows.size() - failed}, {"failed", failed}};
       }});
  return L;
}

const std::vector<Leaf>& leaves() {
  static const std::vector<Leaf> all = make_leaves();
  return all;
}

std::string paper_table(const Json& j) {
  std::size_t width = 4;
  for (const auto& r : j.at("examples")) width = std::max(width, r.at("name").get<std::string>().size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "example" << "  result";
  bool timing = !j.at("examples").empty() && j.at("examples").front().contains("millis");
  if (timing) out << "        ms";
  out << "\n";
  for (const auto& r : j.at("examples")) {
    out << std::left << std::setw(static_cast<int>(width)) << r.at("name").get<std::string>() << "  "
        << std::setw(6) << (r.at("pass").get<bool>() ? "PASS" : "FAIL");
    if (timing) out << std::right << std::setw(10) << std::fixed << std::setprecision(1) << r.at("millis").get<double>();
    if (r.contains("detail")) out << "  " << r.at("detail").get<std::string>();
    out << "\n";
  }
  out << j.at("passed") << " passed, " << j.at("failed") << " failed\n";
  return out.str();
}

void error_json(std::ostream& err, const std::string& code, const std::string& message, const std::string& context) {
  err << Json{{"code", code}, {"message", message}, {"context", context}}.dump() << "\n";
}

}  // namespace

std::vector<Subcommand> registry() {
  std::vector<Subcommand> out;
  for (const auto& l : leaves()) out.push_back({l.module, l.op, l.summary, l.operations});
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gitkit: invariant theory, puzzles, moment polytopes and localization"};
  app.name("gitkit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format, in_path;
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", seed, "random seed (GITKIT_SEED overrides)");
  app.add_option("--jobs", jobs, "worker threads for parallel enumeration")->check(CLI::Range(1, 256));
  app.add_option("--in", in_path, "JSON file with the structured input");

  struct Slot {
    const Leaf* leaf;
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
  };
  std::vector<std::unique_ptr<Slot>> slots;
  std::map<std::string, CLI::App*> modules;
  for (const auto& leaf : leaves()) {
    auto slot = std::make_unique<Slot>();
    slot->leaf = &leaf;
    CLI::App* parent = &app;
    if (!leaf.op.empty()) {
      auto& m = modules[leaf.module];
      if (!m) {
        m = app.add_subcommand(leaf.module, leaf.module + " operations");
        m->require_subcommand(1);
        m->fallthrough();
      }
      parent = m;
    }
    slot->app = parent->add_subcommand(leaf.op.empty() ? leaf.module : leaf.op, leaf.summary);
    slot->app->fallthrough();
    for (const auto& [name, help] : leaf.options) slot->app->add_option("--" + name, slot->values[name], help);
    for (const auto& [name, help] : leaf.flags) slot->app->add_flag("--" + name, slot->flags[name], help);
    slots.push_back(std::move(slot));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    error_json(err, "usage", e.what(), "");
    return 2;
  }

  const Slot* chosen = nullptr;
  for (const auto& s : slots)
    if (s->app->parsed()) chosen = s.get();
  if (!chosen) {
    error_json(err, "usage", "no subcommand selected", "");
    return 2;
  }

  if (const char* env = std::getenv("GITKIT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      error_json(err, "usage", "GITKIT_SEED must be an unsigned integer", env);
      return 2;
    }
  }

  const Leaf& leaf = *chosen->leaf;
  try {
    Args a;
    a.values = chosen->values;
    a.flags = chosen->flags;
    a.primary = leaf.primary;
    a.seed = seed;
    a.jobs = jobs;
    if (!in_path.empty()) a.in_doc = Args::read_file(in_path);
    int code = 0;
    Json result = leaf.handler(a, code);
    bool table = format.empty() ? leaf.table_default : format == "table";
    if (!table) {
      out << result.dump(2) << "\n";
    } else if (leaf.module == "paper-examples") {
      out << paper_table(result);
    } else {
      out << json_io::render_table(result);
    }
    return code;
  } catch (const UsageError& e) {
    error_json(err, "usage", e.what(), leaf.module + " " + leaf.op);
    return 2;
  } catch (const DomainError& e) {
    error_json(err, e.code(), e.what(), e.context());
    return 1;
  } catch (const std::exception& e) {
    error_json(err, "internal", e.what(), leaf.module + " " + leaf.op);
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace gitkit::cli
