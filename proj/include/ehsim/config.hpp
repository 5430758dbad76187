#pragma once

#include "ehsim/controller.hpp"
#include "ehsim/fuzzy.hpp"
#include "ehsim/plant.hpp"
#include "ehsim/sim.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace ehsim
{

/// Configuration problem tied to one key of the config file.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string &message);

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Fully resolved run configuration.
struct RunConfig {
    PlantParams plant{};
    ControllerParams controller{};
    std::vector<double> centers = FuzzyEstimator::default_centers();
    std::vector<double> initial_consequents = std::vector<double>(centers.size(), 0.0);
    Scenario scenario{};
    std::string output;          ///< CSV path; empty means no file
    bool emit_plot_data = true;  ///< write the CSV time series when output is set

    FuzzyEstimator estimator() const;

    /// Checks every module-level invariant; throws ConfigError.
    void validate() const;
};

/// Parses a flat `key = value` document. Blank lines and `#` comments are
/// ignored. Keys not present keep their defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);

/// Writes the resolved configuration in the same format parse_config reads.
void print_config(std::ostream &os, const RunConfig &cfg);

/// Command-line overrides applied on top of a loaded configuration.
struct ConfigOverrides {
    std::optional<SupplyPressureMode> supply_mode;
    std::optional<double> duration;
    std::optional<std::string> output;
    bool freeze_adaptation = false;
};

/// Applies the overrides and re-validates.
RunConfig apply_overrides(RunConfig cfg, const ConfigOverrides &overrides);

} // namespace ehsim
