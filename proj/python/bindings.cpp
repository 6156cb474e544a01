#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rydspec/config.hpp"
#include "rydspec/dynamics.hpp"
#include "rydspec/errors.hpp"
#include "rydspec/extraction.hpp"
#include "rydspec/lattice.hpp"
#include "rydspec/runner.hpp"
#include "rydspec/spectrum.hpp"
#include "rydspec/units.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Driven Rydberg-lattice excitation dynamics, resonance spectra and "
              "interaction-coefficient extraction";

    py::register_exception<rydspec::ConfigError>(m, "ConfigError");
    py::register_exception<rydspec::NumericalError>(m, "NumericalError");
    py::register_exception<rydspec::IoError>(m, "IoError");

    // model
    py::class_<rydspec::LatticeParams>(m, "LatticeParams")
        .def(py::init<>())
        .def_readwrite("n_sites", &rydspec::LatticeParams::n_sites)
        .def_readwrite("rabi", &rydspec::LatticeParams::rabi)
        .def_readwrite("detuning", &rydspec::LatticeParams::detuning)
        .def_readwrite("interaction", &rydspec::LatticeParams::interaction)
        .def_readwrite("exponent", &rydspec::LatticeParams::exponent)
        .def("validate", &rydspec::LatticeParams::validate)
        .def("dimension", &rydspec::LatticeParams::dimension);

    m.def("enumerate_basis", &rydspec::enumerate_basis, py::arg("n_sites"),
          "All basis states of an n-site chain as bit patterns, site 0 in the LSB");
    m.def("excitation_count", &rydspec::excitation_count, py::arg("state"));
    m.def("adjacent_pair_count", &rydspec::adjacent_pair_count, py::arg("state"),
          py::arg("n_sites"));
    m.def("unperturbed_energy", &rydspec::unperturbed_energy, py::arg("state"),
          py::arg("detuning"), py::arg("interaction"), py::arg("n_sites"));
    m.def("collective_rabi", &rydspec::collective_rabi, py::arg("single_atom_rabi"),
          py::arg("n_atoms"));
    m.def("build_full_hamiltonian", &rydspec::build_full_hamiltonian, py::arg("params"));
    m.def("build_h0", &rydspec::build_h0, py::arg("params"));
    m.def("build_hprime", &rydspec::build_hprime, py::arg("params"));

    // spectrum
    m.def("resonance_detuning", &rydspec::resonance_detuning, py::arg("kappa"),
          py::arg("interaction"));

    py::class_<rydspec::DegeneracyClass>(m, "DegeneracyClass")
        .def_readonly("excitations", &rydspec::DegeneracyClass::excitations)
        .def_readonly("pairs", &rydspec::DegeneracyClass::pairs)
        .def_readonly("energy", &rydspec::DegeneracyClass::energy)
        .def_readonly("members", &rydspec::DegeneracyClass::members);
    py::class_<rydspec::DegeneracyGroup>(m, "DegeneracyGroup")
        .def_readonly("energy", &rydspec::DegeneracyGroup::energy)
        .def_readonly("classes", &rydspec::DegeneracyGroup::classes);
    m.def("degeneracy_classes", &rydspec::degeneracy_classes, py::arg("n_sites"),
          py::arg("detuning"), py::arg("interaction"));

    py::class_<rydspec::SpectrumScan>(m, "SpectrumScan")
        .def_readonly("ratios", &rydspec::SpectrumScan::ratios)
        .def_readonly("eigenvalues", &rydspec::SpectrumScan::eigenvalues)
        .def_readonly("ground_state_line", &rydspec::SpectrumScan::ground_state_line);
    m.def("scan_spectrum", &rydspec::scan_spectrum, py::arg("base"),
          py::arg("detuning_ratios"), py::arg("threads") = 1);

    // dynamics
    py::class_<rydspec::Observables>(m, "Observables")
        .def_readonly("excitations", &rydspec::Observables::excitations)
        .def_readonly("pairs", &rydspec::Observables::pairs);
    m.def("observables", &rydspec::observables, py::arg("state"), py::arg("n_sites"));
    m.def("canonical_ground_state", &rydspec::canonical_ground_state,
          py::arg("n_sites"));

    py::class_<rydspec::Propagator>(m, "Propagator")
        .def(py::init<const Eigen::MatrixXd&>(), py::arg("hamiltonian"))
        .def("evolve", &rydspec::Propagator::evolve, py::arg("initial"),
             py::arg("time"))
        .def_property_readonly("eigenvalues", &rydspec::Propagator::eigenvalues);
    m.def("propagate", &rydspec::propagate, py::arg("hamiltonian"), py::arg("initial"),
          py::arg("time"));

    py::class_<rydspec::SweepResult>(m, "SweepResult")
        .def_readonly("detuning_ratios", &rydspec::SweepResult::detuning_ratios)
        .def_readonly("cycle_times", &rydspec::SweepResult::cycle_times)
        .def_readonly("average_times", &rydspec::SweepResult::average_times)
        .def_readonly("ne_per_time", &rydspec::SweepResult::ne_per_time)
        .def_readonly("nee_per_time", &rydspec::SweepResult::nee_per_time)
        .def_readonly("ne_average", &rydspec::SweepResult::ne_average)
        .def_readonly("nee_average", &rydspec::SweepResult::nee_average);
    m.def("sweep", &rydspec::sweep, py::arg("base"), py::arg("detuning_ratios"),
          py::arg("cycle_times"), py::arg("average_times") = std::vector<double>{},
          py::arg("threads") = 1);

    // extraction
    py::class_<rydspec::PeakOptions>(m, "PeakOptions")
        .def(py::init<>())
        .def_readwrite("min_prominence", &rydspec::PeakOptions::min_prominence)
        .def_readwrite("exclusion_half_width",
                       &rydspec::PeakOptions::exclusion_half_width);
    py::class_<rydspec::Peak>(m, "Peak")
        .def_readonly("position", &rydspec::Peak::position)
        .def_readonly("height", &rydspec::Peak::height)
        .def_readonly("prominence", &rydspec::Peak::prominence)
        .def_readonly("kappa", &rydspec::Peak::kappa)
        .def_readonly("kappa_residual", &rydspec::Peak::kappa_residual)
        .def_readonly("low_confidence", &rydspec::Peak::low_confidence);
    py::class_<rydspec::PeakSet>(m, "PeakSet")
        .def_readonly("peaks", &rydspec::PeakSet::peaks)
        .def_readonly("observable", &rydspec::PeakSet::observable);
    m.def(
        "detect_peaks",
        [](const std::vector<double>& grid, const std::vector<double>& values,
           const rydspec::PeakOptions& options) {
            return rydspec::detect_peaks(grid, values, options);
        },
        py::arg("grid"), py::arg("values"),
        py::arg("options") = rydspec::PeakOptions{});

    py::class_<rydspec::KappaMatch>(m, "KappaMatch")
        .def_readonly("kappa", &rydspec::KappaMatch::kappa)
        .def_readonly("residual", &rydspec::KappaMatch::residual);
    m.def("identify_kappa", &rydspec::identify_kappa, py::arg("position_kappa"),
          py::arg("position_kappa_plus_1"));
    m.def("assign_kappa_labels", &rydspec::assign_kappa_labels, py::arg("peaks"));
    m.def("extract_c6_absolute", &rydspec::extract_c6_absolute,
          py::arg("detuning_at_peak"), py::arg("kappa"), py::arg("spacing"));
    m.def("extract_c6_relative", &rydspec::extract_c6_relative, py::arg("separation"),
          py::arg("kappa"), py::arg("spacing"));

    py::class_<rydspec::PipelineOptions>(m, "PipelineOptions")
        .def(py::init<>())
        .def_readwrite("detuning_ratios", &rydspec::PipelineOptions::detuning_ratios)
        .def_readwrite("cycle_times", &rydspec::PipelineOptions::cycle_times)
        .def_readwrite("average_times", &rydspec::PipelineOptions::average_times)
        .def_readwrite("peaks", &rydspec::PipelineOptions::peaks)
        .def_readwrite("observable", &rydspec::PipelineOptions::observable)
        .def_readwrite("spacing", &rydspec::PipelineOptions::spacing)
        .def_readwrite("threads", &rydspec::PipelineOptions::threads);
    py::class_<rydspec::RoundTripReport>(m, "RoundTripReport")
        .def_readonly("sweep", &rydspec::RoundTripReport::sweep)
        .def_readonly("peaks", &rydspec::RoundTripReport::peaks)
        .def_readonly("c6_absolute", &rydspec::RoundTripReport::c6_absolute)
        .def_readonly("c6_relative", &rydspec::RoundTripReport::c6_relative)
        .def_readonly("true_c6", &rydspec::RoundTripReport::true_c6)
        .def_readonly("error_absolute", &rydspec::RoundTripReport::error_absolute)
        .def_readonly("error_relative", &rydspec::RoundTripReport::error_relative);
    m.def("round_trip", &rydspec::round_trip, py::arg("base"), py::arg("options"));

    // physical units
    py::class_<rydspec::AngularFrequency>(m, "AngularFrequency")
        .def(py::init<>())
        .def_static("from_rad_per_s", &rydspec::AngularFrequency::from_rad_per_s,
                    py::arg("value"))
        .def_static("from_cycles", &rydspec::AngularFrequency::from_cycles,
                    py::arg("hertz"))
        .def("rad_per_s", &rydspec::AngularFrequency::rad_per_s)
        .def("cycles", &rydspec::AngularFrequency::cycles);

    py::class_<rydspec::PhysicalConfig>(m, "PhysicalConfig")
        .def(py::init<>())
        .def_readwrite("c6", &rydspec::PhysicalConfig::c6)
        .def_readwrite("spacing", &rydspec::PhysicalConfig::spacing)
        .def_readwrite("principal_n", &rydspec::PhysicalConfig::principal_n)
        .def_readwrite("quantum_defect", &rydspec::PhysicalConfig::quantum_defect)
        .def_readwrite("single_atom_rabi", &rydspec::PhysicalConfig::single_atom_rabi)
        .def_readwrite("filling", &rydspec::PhysicalConfig::filling)
        .def("validate", &rydspec::PhysicalConfig::validate);

    m.def("interaction_strength", &rydspec::interaction_strength, py::arg("config"),
          py::arg("exponent") = 6);
    m.def("rydberg_linewidth", &rydspec::rydberg_linewidth, py::arg("principal_n"),
          py::arg("quantum_defect"));
    m.def("predicted_peak_separation", &rydspec::predicted_peak_separation,
          py::arg("config"), py::arg("kappa"));
    m.def("excitation_timescale", &rydspec::excitation_timescale, py::arg("rabi"),
          py::arg("t_max"));

    py::class_<rydspec::ResolvabilityRow>(m, "ResolvabilityRow")
        .def_readonly("kappa", &rydspec::ResolvabilityRow::kappa)
        .def_readonly("separation", &rydspec::ResolvabilityRow::separation)
        .def_readonly("linewidth", &rydspec::ResolvabilityRow::linewidth)
        .def_readonly("ratio", &rydspec::ResolvabilityRow::ratio)
        .def_readonly("resolvable", &rydspec::ResolvabilityRow::resolvable);
    py::class_<rydspec::ResolvabilityReport>(m, "ResolvabilityReport")
        .def_readonly("rows", &rydspec::ResolvabilityReport::rows)
        .def_readonly("threshold", &rydspec::ResolvabilityReport::threshold);
    m.def("resolvability_report", &rydspec::resolvability_report, py::arg("config"),
          py::arg("kappa_max") = 6, py::arg("threshold") = 5.0);

    // config and experiment driver
    m.def(
        "parse_config",
        [](const std::string& text) { return rydspec::parse_config(text); },
        py::arg("text"));
    m.def("load_config", &rydspec::load_config, py::arg("path"));
    m.def("preset_names", &rydspec::preset_names);
    m.def(
        "preset_text",
        [](const std::string& name) { return std::string(rydspec::preset_text(name)); },
        py::arg("name"));
    py::class_<rydspec::ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("observable", &rydspec::ExperimentConfig::observable)
        .def_readonly("source_text", &rydspec::ExperimentConfig::source_text)
        .def_property_readonly("mode", [](const rydspec::ExperimentConfig& c) {
            return std::string(rydspec::mode_name(c.mode));
        });
    m.def("run_experiment", &rydspec::run_experiment, py::arg("config"),
          py::arg("out_dir"), py::arg("threads") = 0);
}
