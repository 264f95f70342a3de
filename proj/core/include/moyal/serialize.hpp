#pragma once

// JSON forms of the library's value types. Matrices are row-major arrays of
// rows; readers throw FormatError on malformed payloads.

#include "moyal/algebra.hpp"
#include "moyal/gridspace.hpp"
#include "moyal/states.hpp"

#include <nlohmann/json.hpp>

namespace moyal {

/// {theta, truncation, re: [[...]], im: [[...]], support?}
nlohmann::json to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const nlohmann::json& j);

/// {theta, label, re: [...], im: [...], tail_mass}
nlohmann::json to_json(const StateVector& s);
StateVector state_from_json(const nlohmann::json& j);

/// {L, M, re: [[...]], im: [[...]]}
nlohmann::json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);

}  // namespace moyal
