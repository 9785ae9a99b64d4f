#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gitkit/characters.hpp"
#include "gitkit/horn.hpp"
#include "gitkit/localization.hpp"
#include "gitkit/polytopes.hpp"
#include "gitkit/puzzles.hpp"
#include "gitkit/torus_git.hpp"

// JSON forms of the core types. Integral rationals are written as JSON
// integers and the rest as "p/q" strings; readers accept both, plus decimals.
namespace gitkit::json_io {

using Json = nlohmann::ordered_json;

/// Throws DomainError("malformed_json").
Json parse(std::string_view text, const std::string& context = {});

Json to_json(const Rational& q);
Rational rational_from(const Json& j);

Json to_json(const Weight& w);
Weight weight_from(const Json& j);
Json to_json(const std::vector<Weight>& ws);
std::vector<Weight> weights_from(const Json& j);

Json to_json(const DominantWeight& lambda);

/// [{"exp": [...], "coeff": c}, ...] in lexicographic exponent order.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from(const Json& j);

Json to_json(const Multiplicities& m);

/// {"rank", "dim", "vertices", "facets": [{"normal", "offset"}], "equations"}.
Json to_json(const Polytope& p);
/// Accepts {"vertices": ...} (hull) or {"rank", "facets", "equations"} (H-form),
/// or a bare array of points.
Polytope polytope_from(const Json& j);

/// Vertex coordinates and ids, facet ids and dimension of a face of p.
Json to_json(const Face& f, const Polytope& p);

Json to_json(const torus::ProjPoint& x);
/// {"weights": [...], "masses": [...]}; masses default to 1.
torus::ProjPoint proj_point_from(const Json& j);
Json to_json(const torus::Slope& s);
Json to_json(const torus::StabilityVerdict& v);

/// [{"num": laurent, "den": [weights], "dir": weight}, ...].
Json to_json(const localization::ConeSeries& s);
localization::ConeSeries cone_series_from(const Json& j);

Json to_json(const puzzles::PuzzleBoard& b);
Json to_json(const horn::HornInequality& ineq);
Json to_json(const horn::HornSystem& sys);

/// Aligned key/value table; nested values are written as compact JSON.
std::string render_table(const Json& j);

}  // namespace gitkit::json_io
