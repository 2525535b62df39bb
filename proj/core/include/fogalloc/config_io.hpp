#pragma once

// Scenario files: one `key = value` per line, `#` starts a comment. Keys
// not present keep the reference scenario's value. Numbers without a unit
// suffix are read in the internal unit of the field (bits, seconds, joules,
// bit/s, km, GHz, FLOP/(s*W)). See docs/formats.md for the full key list.

#include "fogalloc/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fogalloc {

/// Throws ConfigError("<source>:<line>: <key>: <message>") on malformed
/// lines, unknown or repeated keys and invalid values; the result is
/// validated.
ScenarioConfig parse_config(std::string_view text, std::string_view source = "<config>");

ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical text form: every field written explicitly in internal units
/// with round-trip precision, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace fogalloc
