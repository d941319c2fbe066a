#include "zdlab/serialize.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>

#include "zdlab/errors.hpp"
#include "zdlab/models.hpp"

namespace zdlab::io {

Json rat_json(const Rat& r) { return to_string(r); }

Rat rat_from(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(BigInt(std::to_string(j.get<long long>())));
  throw UsageError("expected a rational \"p/q\", got " + j.dump());
}

Json int_json(const BigInt& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

BigInt int_from(const Json& j) {
  Rat r = rat_from(j);
  if (!is_integer(r)) throw UsageError("expected an integer, got " + j.dump());
  return r.get_num();
}

Json vec_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

Json int_vec_json(const QVec& v) {
  if (!v.is_integral()) throw UsageError("expected an integral vector, got " + to_string(v));
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x.get_num()));
  return out;
}

QVec vec_from(const Json& j) {
  if (!j.is_array()) throw UsageError("expected a vector, got " + j.dump());
  QVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = rat_from(j[i]);
  return v;
}

Json divisor_json(const surface::Divisor& d) {
  Json out = Json::object();
  const auto& names = d.model().class_names();
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = rat_json(d[i]);
  return out;
}

surface::Divisor divisor_from(const surface::ModelPtr& model, const Json& j) {
  if (j.is_string()) return surface::parse_divisor(model, j.get<std::string>());
  if (!j.is_object()) throw UsageError("expected a divisor, got " + j.dump());
  QVec v(model->rank());
  for (const auto& [name, value] : j.items()) {
    auto i = model->class_index(name);
    if (!i) throw UsageError("unknown class '" + name + "' in model '" + model->name() + "'");
    v[*i] = rat_from(value);
  }
  return surface::Divisor(model, std::move(v));
}

namespace {

QVec class_map(const std::vector<std::string>& classes, const Json& j) {
  if (j.is_array()) {
    QVec v = vec_from(j);
    if (v.size() != classes.size()) throw DimensionError("divisor has the wrong number of entries");
    return v;
  }
  if (!j.is_object()) throw UsageError("expected a divisor map, got " + j.dump());
  QVec v(classes.size());
  for (const auto& [name, value] : j.items()) {
    auto it = std::find(classes.begin(), classes.end(), name);
    if (it == classes.end()) throw UsageError("unknown class '" + name + "'");
    v[static_cast<std::size_t>(it - classes.begin())] = rat_from(value);
  }
  return v;
}

Json class_map_json(const std::vector<std::string>& classes, const QVec& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < classes.size(); ++i) out[classes[i]] = rat_json(v[i]);
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

surface::ModelSpec model_spec_from_json(const Json& j) {
  try {
    surface::ModelSpec s;
    s.name = j.value("name", std::string("unnamed"));
    s.class_names = field(j, "classes").get<std::vector<std::string>>();
    const auto& q = field(j, "intersection");
    std::vector<QVec> rows;
    for (const auto& row : q) rows.push_back(vec_from(row));
    s.intersection = QMat(rows);
    for (const auto& g : field(j, "effective_generators")) s.effective_generators.push_back(class_map(s.class_names, g));
    s.canonical = class_map(s.class_names, field(j, "canonical"));
    if (j.contains("genus"))
      for (const auto& [name, g] : j.at("genus").items()) s.genus[name] = g.get<long>();
    if (j.contains("generator_names")) s.generator_names = j.at("generator_names").get<std::vector<std::string>>();
    if (j.contains("relations"))
      for (const auto& r : j.at("relations")) s.relations.push_back(class_map(s.class_names, r));
    if (j.contains("nef_generators"))
      for (const auto& r : j.at("nef_generators")) s.nef_generators.push_back(class_map(s.class_names, r));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed model: ") + e.what());
  }
}

Json model_json(const surface::SurfaceModel& m) {
  const auto& cls = m.class_names();
  Json out = Json::object();
  out["name"] = m.name();
  out["classes"] = cls;
  Json q = Json::array();
  for (std::size_t i = 0; i < m.rank(); ++i) q.push_back(vec_json(m.intersection().row(i)));
  out["intersection"] = q;
  Json gens = Json::array();
  for (const auto& g : m.effective_generators()) gens.push_back(class_map_json(cls, g));
  out["effective_generators"] = gens;
  out["generator_names"] = m.generator_names();
  out["canonical"] = class_map_json(cls, m.canonical());
  Json genus = Json::object();
  for (const auto& [name, g] : m.genus()) genus[name] = g;
  out["genus"] = genus;
  Json rels = Json::array();
  for (const auto& r : m.relations()) rels.push_back(class_map_json(cls, r));
  out["relations"] = rels;
  Json nef = Json::array();
  for (const auto& r : m.nef_generators()) nef.push_back(class_map_json(cls, r));
  out["nef_generators"] = nef;
  return out;
}

surface::ModelPtr model_from_json(const Json& j) { return surface::SurfaceModel::create(model_spec_from_json(j)); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("cannot parse '" + path + "': " + e.what());
  }
}

surface::ModelPtr load_model(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(name_or_path, ec)) return model_from_json(read_json_file(name_or_path));
  for (const auto& n : models::bundled_names())
    if (n == name_or_path) return models::bundled(n);
  throw UsageError("unknown model '" + name_or_path + "' (not a bundled name or a readable file)");
}

Json cone_json(const cones::RationalCone& c) {
  Json out = Json::object();
  out["dim"] = c.dim();
  if (c.has_generators()) {
    Json g = Json::array();
    for (const auto& v : c.generators()) g.push_back(int_vec_json(v));
    out["generators"] = g;
  }
  if (c.has_halfspaces()) {
    Json h = Json::array();
    for (const auto& v : c.halfspaces()) h.push_back(int_vec_json(v));
    out["halfspaces"] = h;
  }
  return out;
}

cones::RationalCone cone_from(const Json& j) {
  const std::size_t dim = field(j, "dim").get<std::size_t>();
  std::vector<QVec> gens, hs;
  for (const auto& v : j.value("generators", Json::array())) gens.push_back(vec_from(v));
  for (const auto& v : j.value("halfspaces", Json::array())) hs.push_back(vec_from(v));
  if (j.contains("generators") && j.contains("halfspaces"))
    return cones::RationalCone::from_both(dim, std::move(gens), std::move(hs));
  if (j.contains("generators")) return cones::RationalCone::from_generators(dim, std::move(gens));
  if (j.contains("halfspaces")) return cones::RationalCone::from_halfspaces(dim, std::move(hs));
  throw UsageError("cone needs generators or halfspaces");
}

Json polytope_json(const cones::RationalPolytope& p) {
  Json out = Json::object();
  out["dim"] = p.dim();
  if (p.has_vertices()) {
    Json v = Json::array();
    for (const auto& x : p.vertices()) v.push_back(vec_json(x));
    out["vertices"] = v;
  }
  if (p.has_halfspaces()) {
    Json h = Json::array();
    for (const auto& x : p.halfspaces()) h.push_back(Json{{"normal", vec_json(x.normal)}, {"offset", rat_json(x.offset)}});
    out["halfspaces"] = h;
  }
  return out;
}

cones::RationalPolytope polytope_from(const Json& j) {
  const std::size_t dim = field(j, "dim").get<std::size_t>();
  std::vector<QVec> vs;
  std::vector<cones::HalfSpace> hs;
  for (const auto& v : j.value("vertices", Json::array())) vs.push_back(vec_from(v));
  for (const auto& h : j.value("halfspaces", Json::array()))
    hs.push_back({vec_from(field(h, "normal")), rat_from(field(h, "offset"))});
  if (j.contains("vertices") && j.contains("halfspaces"))
    return cones::RationalPolytope::from_both(dim, std::move(vs), std::move(hs));
  if (j.contains("vertices")) return cones::RationalPolytope::from_vertices(dim, std::move(vs));
  if (j.contains("halfspaces")) return cones::RationalPolytope::from_halfspaces(dim, std::move(hs));
  throw UsageError("polytope needs vertices or halfspaces");
}

}  // namespace zdlab::io
