#include "rydspec/config.hpp"

#include "rydspec/errors.hpp"

namespace rydspec {

namespace {

// N = 8 chain driven at rabi = 0.15 V: five reported cycle times plus a
// dense 64-point grid for the averaged signal
constexpr std::string_view kFig2Sweep = R"(mode = "sweep"

[lattice]
n_sites = 8
rabi = 0.15
interaction = 1.0
exponent = 6

[detuning_grid]
min = -1.1
max = 0.35
count = 581

[cycle_times]
values = [15.0, 18.0, 21.0, 24.0, 27.0]

[average_times]
min = 15.0
max = 30.0
count = 64
)";

// laboratory-unit resolvability check for n = 70 atoms on a 10 um lattice
constexpr std::string_view kFeasibilityN70A10 = R"(mode = "feasibility"

[physical]
c6_hz_um6 = 876.0e9
spacing_um = 10.0
principal_n = 70
quantum_defect = 3.13
filling = 1

[feasibility]
kappa_max = 6
threshold = 5.0
t_max = 30.0
)";

// closes the loop: simulate the sweep, read the coefficient back out and
// compare with the value the model was built from
constexpr std::string_view kRoundTripDefault = R"(mode = "roundtrip"

[lattice]
n_sites = 8
rabi = 0.15
interaction = 1.0

[detuning_grid]
min = -1.1
max = 0.35
count = 581

[cycle_times]
min = 15.0
max = 30.0
count = 64
)";

struct PresetEntry {
    std::string_view name;
    std::string_view text;
};

constexpr PresetEntry kPresets[] = {
    {"fig2", kFig2Sweep},
    {"feasibility-n70-a10", kFeasibilityN70A10},
    {"roundtrip-default", kRoundTripDefault},
};

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& entry : kPresets)
        names.emplace_back(entry.name);
    return names;
}

std::string_view preset_text(const std::string& name) {
    for (const auto& entry : kPresets)
        if (entry.name == name)
            return entry.text;
    std::string known;
    for (const auto& entry : kPresets) {
        if (!known.empty())
            known += ", ";
        known += entry.name;
    }
    throw ConfigError("unknown preset '" + name + "' (available: " + known + ")");
}

} // namespace rydspec
