#pragma once

#include <json.hpp>

#include "tdlc/matrix.hpp"

namespace tdlc {

// Matrices travel as row-major arrays of exact strings "a/b" or "a".
nlohmann::json rat_matrix_to_json(const RatMat& m);
RatMat rat_matrix_from_json(const nlohmann::json& j);

nlohmann::json int_matrix_to_json(const IntMat& m);
IntMat int_matrix_from_json(const nlohmann::json& j);

Int int_from_json(const nlohmann::json& j);  // accepts number or string
nlohmann::json int_to_json(const Int& x);    // number when it fits, else string

}  // namespace tdlc
