#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydspec/extraction.hpp"
#include "rydspec/lattice.hpp"
#include "rydspec/units.hpp"

namespace rydspec {

enum class Mode {
    Spectrum,    // eigenvalues along a detuning grid
    Sweep,       // excitation dynamics along a detuning grid
    Extract,     // sweep + peak detection + c6 inversion
    Feasibility, // laboratory-unit resolvability report
    RoundTrip,   // extract + comparison against the model's own c6
};

std::string_view mode_name(Mode mode);

// Inclusive linear grid.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    std::vector<double> values() const;
};

struct OutputOptions {
    bool csv = true;
    bool json = true;
};

struct ExperimentConfig {
    Mode mode = Mode::Sweep;

    LatticeParams lattice;
    GridSpec detuning_grid{-1.1, 0.35, 581};
    std::vector<double> cycle_times;   // empty = 64 points uniform in [15, 30]
    std::vector<double> average_times; // empty = average over cycle_times
    PeakOptions peak_options;
    std::string observable = "ne";

    GridSpec spectrum_grid{-1.3, 0.3, 801};

    int feasibility_kappa_max = 6;
    double feasibility_threshold = 5.0;
    double feasibility_t_max = 30.0;

    std::optional<PhysicalConfig> physical;
    OutputOptions output;

    std::string source_text; // verbatim config text, hashed into outputs

    std::vector<double> effective_cycle_times() const;
    void validate() const;
};

// Parses the key = value / [section] subset described in the README.  Error
// messages carry the 1-based line number of the offending entry; unknown
// keys are rejected.
ExperimentConfig parse_config(std::string_view text);

// parse_config on the contents of a file; missing or unreadable files are
// I/O errors, anything wrong inside the file is a config error.
ExperimentConfig load_config(const std::string& path);

// Built-in configurations, selectable by CLI as --preset <name>.
std::vector<std::string> preset_names();
std::string_view preset_text(const std::string& name);

// FNV-1a over the verbatim config text; stamped into every output file so
// results can be traced back to their inputs.
std::uint64_t fnv1a64(std::string_view text);
std::string config_hash_hex(std::string_view text);

} // namespace rydspec
