// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cumulus/evalbench.hpp"

namespace cumulus {

// Configuration problem with file/field context in the message.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct LoadedConfig {
    SceneConfig scene;
    std::vector<ExperimentSpec> experiments;  // empty when the config has none
};

// Parses a JSON scene config (sections: field, medium, camera, render,
// raymarch, taa, experiments), applies dotted-path overrides such as
// "raymarch.n_steps=8" on the parsed document, fills defaults and validates
// every invariant. Unknown keys are rejected; errors carry line or field
// context.
LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Same, from an in-memory JSON string ("source" names the text in errors).
LoadedConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {}, const std::string& source = "<string>");

// Serializes back to the schema. parse(serialize(c)) loads to an identical
// configuration.
std::string config_to_text(const LoadedConfig& config);

}  // namespace cumulus
