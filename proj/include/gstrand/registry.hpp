#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gstrand {

struct NamedScenario {
    std::string name;
    std::string description;
    std::string config_json;
};

// Built-in scenario configs, in a fixed order.
const std::vector<NamedScenario>& builtin_scenarios();

// Throws ValidationError for an unknown name.
const NamedScenario& builtin_scenario(std::string_view name);

}  // namespace gstrand
