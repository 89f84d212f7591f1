#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "equistate/measure/measure.hpp"
#include "equistate/ratmap/rational_map.hpp"
#include "equistate/thermo/ruelle.hpp"
#include "equistate/thurston/subdivision.hpp"
#include "equistate/verify/verify.hpp"

namespace equistate::io {

using json = nlohmann::ordered_json;

json to_json(const Rational& q);
Rational rational_from_json(const json& j);
json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const json& j);
/// {"mid","rad","approx"}
json to_json(const BallReal& b);
BallReal ball_from_json(const json& j);

/// "inf" or a Gaussian rational such as "1/2-3*i".
SpherePoint parse_sphere_point(std::string_view s);
/// "F(a,b,c)" or "B(a,b,c)", as printed by TilePoint::to_string.
TilePoint parse_tile_point(std::string_view s);
MeasurePoint parse_point(std::string_view s, Space space);

json to_json(const SpherePoint& p);
json to_json(const TilePoint& p);
json to_json(const MeasurePoint& p);
MeasurePoint point_from_json(const json& j, Space space);

json to_json(const FiniteMeasure& mu);
FiniteMeasure measure_from_json(const json& j);
/// point,re,im,weight on the sphere; point,face,x,y,weight on the doubled
/// triangle, with planar coordinates of the unit triangle.
std::string measure_csv(const FiniteMeasure& mu);

json to_json(const RationalMap& f);
/// An expression string or {"num":[...],"den":[...]}.
RationalMap map_from_json(const json& j);

json to_json(const Potential& p);
Potential potential_from_json(const json& j);
/// "const:q", "basis:p", "hat:c,r,eps", or a JSON expression tree.
Potential parse_potential(std::string_view s);

json to_json(const PressureResult& r);
json to_json(const TileComplex& c);
json to_json(const Patch& p);
json to_json(const TestFunction& t);

json read_json_file(const std::string& path);
/// Writes with two-space indentation and a trailing newline.
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const json& j);

}  // namespace equistate::io
