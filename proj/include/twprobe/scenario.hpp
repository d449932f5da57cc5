// Declarative run descriptions: sectioned key-value configs, one section per
// scenario run, dispatched onto the physics modules. Runs are deterministic;
// identical configs produce byte-identical outputs.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "twprobe/timeseries.hpp"

namespace twprobe {

enum class ScenarioKind { coherent_drive, single_photon, fock_pulse, faraday, oracle_compare };

ScenarioKind scenario_from_name(const std::string& name);
std::string scenario_name(ScenarioKind kind);

struct ScenarioConfig {
    std::string name;     // section name; also the default output stem
    ScenarioKind scenario = ScenarioKind::single_photon;
    std::map<std::string, double> params;
    std::string output;   // file name, relative to the output directory
    OutputFormat format = OutputFormat::csv;
    long seed = 0;        // reserved; all current scenarios are deterministic
};

// Parses a full sectioned document. Unknown keys, missing required keys,
// type mismatches and invalid values all raise ConfigError.
std::vector<ScenarioConfig> parse_config(const std::string& text);

// Documentation strings for `list-scenarios`.
struct ScenarioHelp {
    std::string name;
    std::string summary;
    std::vector<std::string> required_keys;
    std::vector<std::string> optional_keys;
};
std::vector<ScenarioHelp> scenario_help();

// Runs one scenario; metadata records every input and derived constant with
// its formula tag.
TimeSeries run_scenario(const ScenarioConfig& cfg);

} // namespace twprobe
