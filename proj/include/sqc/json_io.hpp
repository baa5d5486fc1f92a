#pragma once

#include "sqc/carleson.hpp"
#include "sqc/geometry.hpp"
#include "sqc/kernels.hpp"
#include "sqc/measures.hpp"
#include "sqc/slice_series.hpp"

#include <json.hpp>

#include <string>

namespace sqc {

using Json = nlohmann::json;

/// Quaternions are [w, x, y, z]; units are [x, y, z].
Json to_json(const Quaternion& q);
Json to_json(const UnitImaginary& u);
/// {"coeffs": [[w,x,y,z], ...], "radius": R}
Json to_json(const SliceSeries& f);
/// Kind-tagged object, e.g. {"kind": "atomic", "atoms": [{"point": [...], "weight": w}]}.
Json to_json(const MeasureSpec& mu);
Json to_json(const Region& region);
Json to_json(const GeometrySummary& g);
Json to_json(const VolumeEstimate& v);
Json to_json(const NormEstimate& n);
Json to_json(const CarlesonReport& r);
Json to_json(const FunctionalReport& r);

/// Parsers throw ConfigInvalid on malformed input.
Quaternion quaternion_from_json(const Json& j);
UnitImaginary unit_from_json(const Json& j);
SliceSeries series_from_json(const Json& j);
MeasureSpec measure_from_json(const Json& j);

/// Accepts "[w,x,y,z]", "w,x,y,z" or a plain real.
Quaternion parse_quaternion(const std::string& text);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace sqc
