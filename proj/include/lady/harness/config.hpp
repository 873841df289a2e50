#pragma once

#include <map>
#include <string>
#include <vector>

#include "lady/assimilation/nudging.hpp"
#include "lady/forcing/forcing.hpp"
#include "lady/model/simulation.hpp"

namespace lady {

/// Raised for anything wrong with a configuration file or override.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string dir = ".";
    int sample_every = 10;      ///< steps between diagnostics rows
    int checkpoint_every = 0;   ///< steps between twin checkpoints; 0 writes only the final one
    int slice_every = 0;        ///< steps between slice dumps; 0 disables them
    int slice_axis = 2;         ///< normal of the slice plane (0-based)
    double slice_position = 3.141592653589793;
};

struct ExperimentConfig {
    std::string name = "experiment";
    SimConfig sim;
    bool nu1_auto = false;  ///< nu1 = (1/2)(cs 2pi/N)^2 nu0^{3-p}, evaluated after nu0 is known
    double cs = 0.1;
    ForceSpec force;
    NudgingConfig nudging;
    SpinUpRule spin_up;
    std::string spin_up_load;  ///< start from this checkpoint instead of spinning up
    std::string spin_up_save;  ///< where `spin-up` writes u(t0)
    double run_length = 1.0;
    double fit_begin = 0.0;  ///< offset after t0 where the rate fit starts
    bool sync_initial = false;  ///< v(t0) = u(t0) instead of 0
    std::string resume;         ///< continue from a twin checkpoint
    OutputConfig output;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// Flat `section.key -> value` view of a configuration.
using ConfigMap = std::map<std::string, std::string>;

/// Reads an INI file. Throws ConfigError on I/O or syntax errors.
ConfigMap read_config_file(const std::string& path);

/// Applies `section.key=value` overrides. Throws ConfigError on malformed entries.
void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides);

/// Builds a config from a flat map; `sweep.*` entries are ignored here. Unknown keys
/// and unparsable values throw ConfigError.
ExperimentConfig parse_experiment_config(const ConfigMap& map);

/// One map per point of the Cartesian product of `sweep.<section.key> = v1; v2; ...`
/// entries, with the experiment name suffixed by the swept values. Without a sweep
/// section the input is returned unchanged.
std::vector<ConfigMap> expand_sweep(const ConfigMap& map);

/// Parses a comma-separated list of doubles ("1" or "10, 10, 0").
std::vector<double> parse_number_list(const std::string& text);

/// Final SimConfig and force after the force has fixed nu0 (lifted3d) and nu1 has been
/// derived (nu1 = auto).
struct ResolvedSetup {
    SimConfig sim;
    SpectralField force;
};
ResolvedSetup resolve_setup(const ExperimentConfig& cfg);

}  // namespace lady
