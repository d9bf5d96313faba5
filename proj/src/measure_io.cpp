#include "mgl/measure_io.hpp"

#include <fstream>

namespace mgl {

using nlohmann::json;

namespace {

RawMeasure parse_raw(const json& doc) {
  if (!doc.is_object()) throw MeasureError("measure document must be a JSON object");
  RawMeasure raw;

  if (!doc.contains("continuous")) throw MeasureError("measure document lacks \"continuous\"");
  const json& cont = doc.at("continuous");
  const std::string type = cont.value("type", "");
  if (type == "piecewise_linear_cdf") {
    if (!cont.contains("knots") || !cont.at("knots").is_array())
      throw MeasureError("piecewise_linear_cdf needs a \"knots\" array");
    std::vector<CdfKnot> knots;
    for (const auto& k : cont.at("knots")) {
      if (!k.is_array() || k.size() != 2) throw MeasureError("each knot must be a pair [x, F]");
      knots.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
    }
    raw.cdf_knots = std::move(knots);
  } else if (type != "lebesgue") {
    throw MeasureError("unknown continuous part type \"" + type + "\"");
  }

  if (!doc.contains("atoms") || !doc.at("atoms").is_array())
    throw MeasureError("measure document lacks an \"atoms\" array");
  for (const auto& a : doc.at("atoms")) {
    if (!a.contains("z") || !a.contains("alpha")) throw MeasureError("each atom needs \"z\" and \"alpha\"");
    raw.atoms.push_back({a.at("z").get<double>(), a.at("alpha").get<double>()});
  }
  return raw;
}

}  // namespace

RawMeasure raw_measure_from_json(const json& doc) {
  try {
    return parse_raw(doc);
  } catch (const json::exception& e) {
    throw MeasureError(std::string("malformed measure document: ") + e.what());
  }
}

MeasureSpec measure_from_json(const json& doc) { return validate_measure(raw_measure_from_json(doc)); }

MeasureSpec load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeasureError("cannot open measure file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw MeasureError("measure file " + path + " is not valid JSON: " + e.what());
  }
  return measure_from_json(doc);
}

json measure_to_json(const MeasureSpec& spec) {
  json doc;
  if (spec.continuous().is_lebesgue()) {
    doc["continuous"] = {{"type", "lebesgue"}};
  } else {
    json knots = json::array();
    for (const auto& k : spec.continuous().knots()) knots.push_back({k.x, k.F});
    doc["continuous"] = {{"type", "piecewise_linear_cdf"}, {"knots", knots}};
  }
  json atoms = json::array();
  for (const auto& a : spec.atoms()) atoms.push_back({{"z", a.position}, {"alpha", a.weight}});
  doc["atoms"] = atoms;
  return doc;
}

}  // namespace mgl
