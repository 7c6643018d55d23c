#pragma once

#include <map>
#include <string>
#include <vector>

#include "floqlab/floquet.hpp"
#include "floqlab/model.hpp"

namespace floqlab {

/// Uniform one-dimensional sweep grid. All grid values are in units of the
/// drive frequency.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    std::vector<double> points() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Where stationary populations come from.
struct PopulationSpec {
    enum class Source { FloquetGibbs, Explicit };

    Source source = Source::FloquetGibbs;
    double beta = 5.0;            // inverse temperature times drive frequency
    std::vector<double> values;   // explicit populations, one per state

    friend bool operator==(const PopulationSpec&, const PopulationSpec&) = default;
};

/// Which system to build. Builtin parameters are in units of the drive
/// frequency; a custom model is read from `path` and its nonzero-harmonic
/// components are scaled linearly by the drive amplitude during sweeps.
struct ModelSpec {
    std::string name = "tls";             // "benzene" | "dimer" | "tls" | "custom"
    std::string path;                     // custom-model document
    std::map<std::string, double> params; // builtin parameter overrides

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Response-computation settings. `gamma` is in units of the drive
/// frequency; `bands` lists the sideband indices to emit.
struct ResponseSettings {
    double gamma = 0.002;
    double lambda = 1.0;
    int m_cutoff = 10;
    int dipole_harmonics = 20;
    std::vector<int> bands = {0};
    PopulationSpec populations;

    friend bool operator==(const ResponseSettings&, const ResponseSettings&) = default;
};

/// Full description of one CLI run.
struct RunConfig {
    ModelSpec model;
    SolverConfig solver;
    ResponseSettings response;
    GridSpec drive{0.0, 0.0, 1};
    GridSpec probe{-0.5, 0.5, 101};
    std::vector<std::string> outputs;     // empty means every artifact is allowed

    void validate() const;
    bool allows(const std::string& artifact) const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse a JSON run configuration; unknown or ill-typed fields raise
/// ConfigError naming the field.
RunConfig parse_run_config(const std::string& json_text);

/// Same, reading from a file.
RunConfig load_run_config_file(const std::string& path);

/// Serialize with every field materialized; parse(serialize(c)) == c.
std::string serialize_run_config(const RunConfig& cfg);

/// Instantiate the configured model at one drive amplitude (units of the
/// drive frequency).
ModelBundle build_model(const ModelSpec& spec, double f_over_omega);

} // namespace floqlab
