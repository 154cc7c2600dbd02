#pragma once

#include <string>

#include <json.hpp>

#include "eqfree/equaliser.hpp"
#include "eqfree/harness.hpp"
#include "eqfree/stable_domain.hpp"

namespace eqfree {

// All reports share schema "eqfree/1" and a "kind" discriminator; key order
// is fixed so serialised output is byte-deterministic.
using Json = nlohmann::ordered_json;

Json to_json(const EqualiserReport& report);
Json to_json(const SDTrace& trace);
Json to_json(const CampaignReport& report);
Json fold_json(const SubgroupGraph& graph);

std::string dump(const Json& j);

}  // namespace eqfree
