#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geodtn/engine.h"

namespace geodtn {

// One `key = value` line with comments stripped. `tokens` is the value split
// on whitespace; `raw` keeps it verbatim for keys with their own grammar.
struct ConfigEntry {
    std::string key;
    std::string raw;
    std::vector<std::string> tokens;
    int line = 0;
};

// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
// Throws ParseError (with line number) on lines without '=' or without a key.
std::vector<ConfigEntry> parse_kv(std::istream& in);

// Applies a single key to the config. Repeatable keys (group, destination)
// append; everything else overwrites. Throws ParseError for unknown keys or
// malformed values, naming the key.
void set_config_key(ScenarioConfig& config, const std::string& key,
                    const std::vector<std::string>& tokens);

// Entries applied in order. Scalar keys may appear at most once.
ScenarioConfig build_config(const std::vector<ConfigEntry>& entries);

ScenarioConfig load_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);

struct SweepSpec {
    ScenarioConfig base;
    std::string parameter;                         // config key to vary
    std::vector<std::vector<std::string>> values;  // token list per point
    std::vector<uint64_t> seeds;
    std::vector<SchemeId> schemes;

    void validate() const;  // throws ConfigError / ParseError
};

// A sweep file is a config file plus sweep_parameter, sweep_values (comma
// separated points, each tokenized on whitespace), seeds, and schemes.
// Missing seeds/schemes fall back to the base config's.
SweepSpec load_sweep(std::istream& in);
SweepSpec load_sweep_file(const std::string& path);

// Base config with `key` re-applied to `tokens`. Repeatable keys cannot be
// swept. The result is validated.
ScenarioConfig apply_override(const ScenarioConfig& base, const std::string& key,
                              const std::vector<std::string>& tokens);

}  // namespace geodtn
