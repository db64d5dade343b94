#pragma once

#include <json.hpp>

#include "kbp/lemma_oracles.hpp"
#include "kbp/witness.hpp"

namespace kbp {

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const OverlapReport& report);
nlohmann::json to_json(const Case3Report& report);

}  // namespace kbp
