#include "gitkit/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "gitkit/error.hpp"

namespace gitkit::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what, const Json& j) {
  throw DomainError("malformed_json", what, j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'", j);
  return j.at(key);
}

std::int64_t int_from(const Json& j) {
  return to_int64(rational_from(j));
}

}  // namespace

Json parse(std::string_view text, const std::string& context) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("malformed_json", e.what(), context);
  }
}

Json to_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return Json(static_cast<std::int64_t>(q.get_num().get_si()));
  return Json(to_string(q));
}

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) return parse_rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  malformed("expected a rational", j);
}

Json to_json(const Weight& w) {
  Json out = Json::array();
  for (const auto& c : w.coords()) out.push_back(to_json(c));
  return out;
}

Weight weight_from(const Json& j) {
  if (j.is_string()) return Weight(parse_rational_list(j.get<std::string>()));
  if (!j.is_array()) malformed("expected a weight array", j);
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rational_from(c));
  return Weight(std::move(coords));
}

Json to_json(const std::vector<Weight>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_json(w));
  return out;
}

std::vector<Weight> weights_from(const Json& j) {
  if (!j.is_array()) malformed("expected an array of weights", j);
  std::vector<Weight> out;
  for (const auto& w : j) out.push_back(weight_from(w));
  return out;
}

Json to_json(const DominantWeight& lambda) { return to_json(lambda.weight()); }

Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [w, c] : p.terms()) out.push_back(Json{{"exp", to_json(w)}, {"coeff", c}});
  return out;
}

LaurentPoly laurent_from(const Json& j) {
  if (!j.is_array()) malformed("expected an array of terms", j);
  LaurentPoly p;
  for (const auto& t : j) p.add_term(weight_from(field(t, "exp")), int_from(field(t, "coeff")));
  return p;
}

Json to_json(const Multiplicities& m) {
  Json out = Json::array();
  for (const auto& [nu, c] : m) out.push_back(Json{{"highest", to_json(nu)}, {"multiplicity", c}});
  return out;
}

namespace {

Json facets_json(const std::vector<Facet>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(Json{{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
  return out;
}

std::vector<Facet> facets_from(const Json& j) {
  if (!j.is_array()) malformed("expected an array of facets", j);
  std::vector<Facet> out;
  for (const auto& f : j) out.push_back(Facet{weight_from(field(f, "normal")), rational_from(field(f, "offset"))});
  return out;
}

}  // namespace

Json to_json(const Polytope& p) {
  return Json{{"rank", p.rank()},
              {"dim", p.dim()},
              {"vertices", to_json(p.vertices())},
              {"facets", facets_json(p.facets())},
              {"equations", facets_json(p.equations())}};
}

Polytope polytope_from(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) malformed("empty point list", j);
    return Polytope::hull(weights_from(j));
  }
  if (!j.is_object()) malformed("expected a polytope object", j);
  if (j.contains("vertices") && !j.at("vertices").empty()) return Polytope::hull(weights_from(j.at("vertices")));
  if (j.contains("facets")) {
    auto facets = facets_from(j.at("facets"));
    std::vector<Facet> equations;
    if (j.contains("equations")) equations = facets_from(j.at("equations"));
    std::size_t rank = 0;
    if (j.contains("rank")) {
      rank = static_cast<std::size_t>(int_from(j.at("rank")));
    } else if (!facets.empty()) {
      rank = facets.front().normal.rank();
    } else if (!equations.empty()) {
      rank = equations.front().normal.rank();
    } else {
      malformed("cannot infer polytope rank", j);
    }
    return Polytope::from_halfspaces(rank, facets, equations);
  }
  if (j.contains("rank")) return Polytope::empty_of_rank(static_cast<std::size_t>(int_from(j.at("rank"))));
  malformed("polytope needs 'vertices' or 'facets'", j);
}

Json to_json(const Face& f, const Polytope& p) {
  Json verts = Json::array();
  for (auto v : f.vertices) verts.push_back(to_json(p.vertices().at(v)));
  return Json{{"dim", f.dim}, {"vertices", verts}, {"vertex_ids", f.vertices}, {"facet_ids", f.facets}};
}

Json to_json(const torus::ProjPoint& x) {
  Json masses = Json::array();
  for (const auto& m : x.masses()) masses.push_back(to_json(m));
  return Json{{"weights", to_json(x.weights())}, {"masses", masses}};
}

torus::ProjPoint proj_point_from(const Json& j) {
  if (j.is_array()) {
    auto ws = weights_from(j);
    return torus::ProjPoint(ws, std::vector<Rational>(ws.size(), Rational(1)));
  }
  auto ws = weights_from(field(j, "weights"));
  std::vector<Rational> masses(ws.size(), Rational(1));
  if (j.contains("masses")) {
    const auto& m = j.at("masses");
    if (!m.is_array() || m.size() != ws.size()) malformed("masses must match weights", j);
    for (std::size_t i = 0; i < ws.size(); ++i) masses[i] = rational_from(m[i]);
  }
  return torus::ProjPoint(std::move(ws), std::move(masses));
}

Json to_json(const torus::Slope& s) {
  return Json{{"numerator", to_json(s.numerator)}, {"norm_sq", to_json(s.norm_sq)}, {"value", s.value()}};
}

Json to_json(const torus::StabilityVerdict& v) {
  Json out{{"verdict", torus::verdict_name(v)}};
  if (const auto* u = std::get_if<torus::Unstable>(&v)) {
    out["lambda"] = to_json(u->lambda);
    out["slope"] = to_json(u->slope);
  } else if (const auto* s = std::get_if<torus::SemistableNotPolystable>(&v)) {
    out["jh_face_dim"] = s->jh_face.dim;
    out["jh_face_weights"] = to_json(s->face_weights);
  } else if (const auto* p = std::get_if<torus::Polystable>(&v)) {
    out["stabilizer_dim"] = p->stabilizer_dim;
  }
  return out;
}

Json to_json(const localization::ConeSeries& s) {
  Json out = Json::array();
  for (const auto& t : s.terms())
    out.push_back(Json{{"num", to_json(t.numerator)}, {"den", to_json(t.denominators)}, {"dir", to_json(t.direction)}});
  return out;
}

localization::ConeSeries cone_series_from(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty array of cone terms", j);
  std::size_t rank = weight_from(field(j.front(), "dir")).rank();
  localization::ConeSeries s(rank);
  for (const auto& t : j) {
    localization::ConeTerm term{laurent_from(field(t, "num")), weights_from(field(t, "den")), weight_from(field(t, "dir"))};
    if (term.direction.rank() != rank) malformed("cone terms of mixed rank", j);
    s.add(std::move(term));
  }
  return s;
}

Json to_json(const puzzles::PuzzleBoard& b) {
  Json rows = Json::array();
  for (int i = 0; i < b.size(); ++i) {
    Json bottom = Json::array(), left = Json::array(), right = Json::array();
    for (int j = 0; j <= i; ++j) {
      bottom.push_back(b.bottom(i, j));
      left.push_back(b.left(i, j));
      right.push_back(b.right(i, j));
    }
    rows.push_back(Json{{"bottom", bottom}, {"left", left}, {"right", right}});
  }
  auto bd = b.boundary();
  return Json{{"rows", rows}, {"boundary", Json{{"I", bd.I}, {"J", bd.J}, {"K", bd.K}}}};
}

Json to_json(const horn::HornInequality& ineq) {
  return Json{{"I", ineq.I}, {"J", ineq.J}, {"K", ineq.K}, {"multiplicity", ineq.multiplicity}};
}

Json to_json(const horn::HornSystem& sys) {
  Json list = Json::array();
  for (const auto& q : sys.inequalities) list.push_back(to_json(q));
  return Json{{"r", sys.r},
              {"mode", sys.mode == horn::HornMode::Irredundant ? "irredundant" : "all_positive"},
              {"trace_equality", sys.trace_equality},
              {"count", sys.inequalities.size()},
              {"inequalities", list}};
}

namespace {

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ",";
      s += cell(e);
    }
    return "(" + s + ")";
  }
  return v.dump();
}

}  // namespace

std::string render_table(const Json& j) {
  std::ostringstream out;
  if (j.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      if (v.is_array() && !v.empty() && !v.front().is_primitive()) {
        out << k << ":\n";
        for (const auto& e : v) out << "  " << cell(e) << "\n";
      } else {
        out << k << std::string(width - k.size() + 2, ' ') << cell(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) out << cell(e) << "\n";
  } else {
    out << cell(j) << "\n";
  }
  return out.str();
}

}  // namespace gitkit::json_io
