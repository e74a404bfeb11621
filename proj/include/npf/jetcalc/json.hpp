#pragma once

#include "npf/jetcalc/diffpoly.hpp"

#include <json.hpp>

namespace npf::jetcalc {

// [{"coeff": [num, den], "factors": [[symbol, [e_1..e_d]], ...]}, ...]
// Powers repeat the factor. Numbers beyond int64 are emitted as strings.
nlohmann::json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const nlohmann::json& j, const SpacePtr& space);

}  // namespace npf::jetcalc
