#pragma once

// JSON form of a measure:
//   {"continuous": {"type": "lebesgue"}
//                | {"type": "piecewise_linear_cdf", "knots": [[x, F], ...]},
//    "atoms": [{"z": ..., "alpha": ...}, ...]}

#include <string>

#include "json.hpp"
#include "mgl/measure.hpp"

namespace mgl {

RawMeasure raw_measure_from_json(const nlohmann::json& doc);
MeasureSpec measure_from_json(const nlohmann::json& doc);
MeasureSpec load_measure(const std::string& path);
nlohmann::json measure_to_json(const MeasureSpec& spec);

}  // namespace mgl
