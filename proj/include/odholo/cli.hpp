#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "odholo/json_io.hpp"

namespace odholo::cli {

/// Command-line overrides applied on top of the config document.
struct Overrides {
    std::optional<std::size_t> grid;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> tolerance;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// FNV-1a over the canonical dump of the config document.
std::string config_hash(const Json& config);

/// Validate + dispatch a scenario config. `expected_scenario` must match the
/// config's "scenario" field (subcommand/config agreement). Returns an exit
/// code; all human-readable output goes to `log`.
int run_scenario(const Json& config, const std::string& expected_scenario,
                 const Overrides& ov, std::ostream& log);

/// Convenience: load the file, then run_scenario. Config errors come back as
/// kExitUsage, numeric check failures as kExitNumeric.
int run_scenario_file(const std::string& config_path, const std::string& expected_scenario,
                      const Overrides& ov, std::ostream& log);

}  // namespace odholo::cli
