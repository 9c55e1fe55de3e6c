#pragma once

#include "mmentropy/map_model.hpp"

#include "json.hpp"

#include <string>

namespace mme {

// Builds a map from a JSON description.  Either a named family with its
// parameters, e.g.
//   {"family": "gaussian", "alpha": 2.8, "beta": -0.5}
//   {"family": "cubic2", "v1": 0.9, "v2": 0.1}
//   {"family": "quartic3", "v2": 0.7, "v3": 1.0}
//   {"family": "pl4"}   {"family": "pl5"}   {"family": "tent"}
// or an explicit piecewise linear table
//   {"breakpoints": ["0", "1/2", "1"], "values": ["0", "1", "0"]}
// where table entries may be JSON numbers or strings; strings are parsed
// exactly and accept decimals ("0.45") and fractions ("23/60").
// Throws std::invalid_argument on malformed input.
MapModel map_from_json(const nlohmann::json& j);

MapModel map_from_file(const std::string& path);

}  // namespace mme
