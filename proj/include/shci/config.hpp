#pragma once

#include "shci/simulation.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace shci {

/// Flat `key = value` lines over `base`. Blank lines and `#` comments are
/// ignored; unknown keys and malformed values raise ConfigError. Nested
/// fields use dotted keys (noise.variance, lasso.tol, general.c_m, ...);
/// see config_keys().
SimulationConfig parse_simulation_config(std::istream& in, SimulationConfig base);
SimulationConfig load_simulation_config(const std::filesystem::path& path, SimulationConfig base);

/// Applies one assignment.
void set_config_value(SimulationConfig& cfg, const std::string& key, const std::string& value);

/// Recognised keys, in documentation order.
const std::vector<std::string>& config_keys();

/// Overrides cfg.seed with $SHCI_SEED when set.
void apply_seed_override(SimulationConfig& cfg);

SimulationConfig preset_by_name(const std::string& name);

} // namespace shci
