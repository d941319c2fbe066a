#pragma once

// JSON encoding of the exact types. Rationals are "p/q" strings (q omitted
// when 1); integral vectors of cones and certificates are plain integers.

#include <string>

#include <json.hpp>

#include "zdlab/cones.hpp"
#include "zdlab/qlinalg.hpp"
#include "zdlab/surface.hpp"

namespace zdlab::io {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& r);
/// Accepts "p/q" strings and JSON integers; throws UsageError otherwise.
Rat rat_from(const Json& j);
/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json int_json(const BigInt& z);
BigInt int_from(const Json& j);

Json vec_json(const QVec& v);
/// Throws UsageError unless v is integral.
Json int_vec_json(const QVec& v);
QVec vec_from(const Json& j);

/// {"class": "p/q", ...} over every class, in model order.
Json divisor_json(const surface::Divisor& d);
/// From a class map (missing classes are 0) or a divisor literal string.
surface::Divisor divisor_from(const surface::ModelPtr& model, const Json& j);

/// Model file: classes, intersection, effective_generators, canonical, and
/// optional name, genus, generator_names, relations, nef_generators.
surface::ModelSpec model_spec_from_json(const Json& j);
Json model_json(const surface::SurfaceModel& m);
surface::ModelPtr model_from_json(const Json& j);

/// A bundled model name, or a path to a model file. Throws UsageError.
surface::ModelPtr load_model(const std::string& name_or_path);

Json cone_json(const cones::RationalCone& c);
cones::RationalCone cone_from(const Json& j);
Json polytope_json(const cones::RationalPolytope& p);
cones::RationalPolytope polytope_from(const Json& j);

/// Reads a whole file; throws UsageError when it cannot be opened or parsed.
Json read_json_file(const std::string& path);

}  // namespace zdlab::io
