#pragma once

#include <json.hpp>

#include "erpclass/classifiers.hpp"
#include "erpclass/evaluation.hpp"

namespace erpclass::detail {

nlohmann::ordered_json config_to_json(const ModelConfig& cfg);
ModelConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json spec_to_json(const ModelSpec& spec);
nlohmann::ordered_json policy_to_json(const SplitPolicy& policy);

}  // namespace erpclass::detail
