#include "rydspec/runner.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "rydspec/dynamics.hpp"
#include "rydspec/errors.hpp"
#include "rydspec/extraction.hpp"
#include "rydspec/spectrum.hpp"
#include "rydspec/units.hpp"

namespace fs = std::filesystem;

namespace rydspec {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kFrequencyNote =
    "values in *_hz columns and fields are ordinary (cycle) frequencies; "
    "multiply by 2*pi for angular ones";

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file '" + path.string() + "'");
    return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out)
        throw IoError("failed writing output file '" + path.string() + "'");
}

void write_json_file(const json& j, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    close_output(out, path);
}

std::string schema_for(const ExperimentConfig& config) {
    return "rydspec-" + std::string(mode_name(config.mode)) + "-v1";
}

void write_csv_preamble(std::ofstream& out, const ExperimentConfig& config,
                        bool physical_columns) {
    out << "# schema_version: " << schema_for(config) << '\n';
    out << "# config_hash: fnv1a:" << config_hash_hex(config.source_text) << '\n';
    out << "# mode: " << mode_name(config.mode) << '\n';
    out << "# n_sites: " << config.lattice.n_sites
        << " rabi: " << format_double(config.lattice.rabi)
        << " interaction: " << format_double(config.lattice.interaction)
        << " exponent: " << config.lattice.exponent << '\n';
    if (physical_columns)
        out << "# " << kFrequencyNote << '\n';
}

json base_report(const ExperimentConfig& config) {
    json j;
    j["schema_version"] = schema_for(config);
    j["config_hash"] = "fnv1a:" + config_hash_hex(config.source_text);
    j["mode"] = std::string(mode_name(config.mode));
    return j;
}

json lattice_json(const LatticeParams& p) {
    json j;
    j["n_sites"] = p.n_sites;
    j["rabi"] = p.rabi;
    j["interaction"] = p.interaction;
    j["exponent"] = p.exponent;
    return j;
}

std::optional<AngularFrequency> physical_interaction(const ExperimentConfig& config) {
    if (!config.physical)
        return std::nullopt;
    return interaction_strength(*config.physical, config.lattice.exponent);
}

fs::path write_sweep_csv(const ExperimentConfig& config, const SweepResult& result,
                         const fs::path& dir) {
    const auto path = dir / "sweep.csv";
    std::ofstream out = open_output(path);
    const auto physical_v = physical_interaction(config);
    write_csv_preamble(out, config, physical_v.has_value());
    out << "# cycle times in units of 1/rabi; columns ne_T*/nee_T* are single-time "
           "traces, *_avg averages over "
        << result.average_times.size() << " times in ["
        << format_double(*std::min_element(result.average_times.begin(),
                                           result.average_times.end()))
        << ", "
        << format_double(*std::max_element(result.average_times.begin(),
                                           result.average_times.end()))
        << "]\n";

    out << "delta_over_v";
    if (physical_v)
        out << ",delta_hz";
    for (double t : result.cycle_times)
        out << ",ne_T" << format_double(t);
    out << ",ne_avg";
    for (double t : result.cycle_times)
        out << ",nee_T" << format_double(t);
    out << ",nee_avg\n";

    const auto n_points = static_cast<Eigen::Index>(result.detuning_ratios.size());
    const auto n_times = static_cast<Eigen::Index>(result.cycle_times.size());
    for (Eigen::Index i = 0; i < n_points; ++i) {
        const double ratio = result.detuning_ratios[static_cast<std::size_t>(i)];
        out << format_double(ratio);
        if (physical_v)
            out << ',' << format_double(ratio * physical_v->cycles());
        for (Eigen::Index j = 0; j < n_times; ++j)
            out << ',' << format_double(result.ne_per_time(i, j));
        out << ',' << format_double(result.ne_average(i));
        for (Eigen::Index j = 0; j < n_times; ++j)
            out << ',' << format_double(result.nee_per_time(i, j));
        out << ',' << format_double(result.nee_average(i)) << '\n';
    }
    close_output(out, path);
    return path;
}

json sweep_summary(const ExperimentConfig& config, const SweepResult& result) {
    json j = base_report(config);
    j["lattice"] = lattice_json(config.lattice);
    j["grid_points"] = result.detuning_ratios.size();
    j["cycle_times"] = result.cycle_times;
    j["average_times"] = json{{"count", result.average_times.size()},
                              {"min", *std::min_element(result.average_times.begin(),
                                                        result.average_times.end())},
                              {"max", *std::max_element(result.average_times.begin(),
                                                        result.average_times.end())}};
    Eigen::Index argmax = 0;
    result.ne_average.maxCoeff(&argmax);
    j["ne_average_max"] = result.ne_average(argmax);
    j["ne_average_argmax_ratio"] =
        result.detuning_ratios[static_cast<std::size_t>(argmax)];
    return j;
}

json peaks_json(const PeakSet& peaks, const std::optional<AngularFrequency>& physical_v) {
    json array = json::array();
    for (const Peak& p : peaks.peaks) {
        json jp;
        jp["position"] = p.position;
        if (physical_v)
            jp["position_hz"] = p.position * physical_v->cycles();
        jp["height"] = p.height;
        jp["prominence"] = p.prominence;
        jp["kappa"] = p.kappa ? json(*p.kappa) : json(nullptr);
        jp["residual"] = p.kappa_residual ? json(*p.kappa_residual) : json(nullptr);
        jp["low_confidence"] = p.low_confidence;
        array.push_back(jp);
    }
    return array;
}

PipelineOptions pipeline_options(const ExperimentConfig& config, int threads) {
    PipelineOptions options;
    options.detuning_ratios = config.detuning_grid.values();
    options.cycle_times = config.effective_cycle_times();
    options.average_times = config.average_times;
    options.peaks = config.peak_options;
    options.observable = config.observable;
    options.spacing = 1.0;
    options.threads = threads;
    return options;
}

json extraction_json(const ExperimentConfig& config, const RoundTripReport& report) {
    json j = base_report(config);
    j["lattice"] = lattice_json(config.lattice);
    j["observable"] = report.peaks.observable;
    const auto physical_v = physical_interaction(config);
    if (physical_v)
        j["frequency_convention"] = std::string(kFrequencyNote);
    j["peaks"] = peaks_json(report.peaks, physical_v);

    // reduced units: detunings in units of the interaction, spacing = 1, so
    // the coefficient comes out in units of interaction * spacing^6
    j["c6_absolute"] = report.c6_absolute;
    j["c6_relative"] = report.c6_relative ? json(*report.c6_relative) : json(nullptr);
    if (physical_v && config.physical) {
        const double to_physical =
            config.physical->c6.cycles() / (config.lattice.interaction * 1.0);
        j["c6_absolute_hz_um6"] = report.c6_absolute * to_physical;
        j["c6_relative_hz_um6"] = report.c6_relative
                                      ? json(*report.c6_relative * to_physical)
                                      : json(nullptr);
    }
    return j;
}

std::vector<std::string> run_sweep_mode(const ExperimentConfig& config,
                                        const fs::path& dir, int threads) {
    SweepResult result =
        sweep(config.lattice, config.detuning_grid.values(),
              config.effective_cycle_times(), config.average_times, threads);
    std::vector<std::string> written;
    if (config.output.csv)
        written.push_back(write_sweep_csv(config, result, dir).string());
    if (config.output.json) {
        const auto path = dir / "sweep.json";
        write_json_file(sweep_summary(config, result), path);
        written.push_back(path.string());
    }
    return written;
}

std::vector<std::string> run_spectrum_mode(const ExperimentConfig& config,
                                           const fs::path& dir, int threads) {
    SpectrumScan scan =
        scan_spectrum(config.lattice, config.spectrum_grid.values(), threads);
    std::vector<std::string> written;

    if (config.output.csv) {
        const auto path = dir / "spectrum.csv";
        std::ofstream out = open_output(path);
        write_csv_preamble(out, config, false);
        out << "# eigenvalues in units of the interaction, sorted ascending; "
               "g_state_line is the unperturbed all-ground energy\n";
        out << "delta_over_v";
        for (Eigen::Index c = 0; c < scan.eigenvalues.cols(); ++c)
            out << ",eig_" << c;
        out << ",g_state_line\n";
        for (Eigen::Index i = 0; i < scan.eigenvalues.rows(); ++i) {
            out << format_double(scan.ratios[static_cast<std::size_t>(i)]);
            for (Eigen::Index c = 0; c < scan.eigenvalues.cols(); ++c)
                out << ',' << format_double(scan.eigenvalues(i, c));
            out << ',' << format_double(scan.ground_state_line[static_cast<std::size_t>(i)])
                << '\n';
        }
        close_output(out, path);
        written.push_back(path.string());
    }

    if (config.output.json) {
        json j = base_report(config);
        j["lattice"] = lattice_json(config.lattice);
        j["grid_points"] = scan.ratios.size();
        j["dimension"] = scan.eigenvalues.cols();
        const auto path = dir / "spectrum.json";
        write_json_file(j, path);
        written.push_back(path.string());
    }
    return written;
}

std::vector<std::string> run_extract_mode(const ExperimentConfig& config,
                                          const fs::path& dir, int threads,
                                          bool with_truth) {
    PipelineOptions options = pipeline_options(config, threads);
    RoundTripReport report = round_trip(config.lattice, options);

    std::vector<std::string> written;
    if (config.output.csv)
        written.push_back(write_sweep_csv(config, report.sweep, dir).string());

    json j = extraction_json(config, report);
    if (with_truth) {
        j["true_c6"] = report.true_c6;
        json errors;
        errors["absolute"] = report.error_absolute;
        errors["relative"] =
            report.error_relative ? json(*report.error_relative) : json(nullptr);
        j["relative_error_vs_truth"] = errors;
    }
    const auto path = dir / (with_truth ? "roundtrip.json" : "extract.json");
    write_json_file(j, path);
    written.push_back(path.string());
    return written;
}

std::vector<std::string> run_feasibility_mode(const ExperimentConfig& config,
                                              const fs::path& dir) {
    const PhysicalConfig& physical = *config.physical;
    const AngularFrequency interaction = interaction_strength(physical);
    const AngularFrequency linewidth =
        rydberg_linewidth(physical.principal_n, physical.quantum_defect);
    ResolvabilityReport resolvability = resolvability_report(
        physical, config.feasibility_kappa_max, config.feasibility_threshold);

    AngularFrequency rabi;
    std::string rabi_source;
    if (physical.single_atom_rabi.rad_per_s() > 0.0) {
        rabi = AngularFrequency::from_rad_per_s(collective_rabi(
            physical.single_atom_rabi.rad_per_s(), physical.filling));
        rabi_source = "sqrt(filling) * single_atom_rabi";
    } else {
        rabi = interaction * 0.15;
        rabi_source = "default 0.15 * interaction";
    }

    json j = base_report(config);
    j["frequency_convention"] = std::string(kFrequencyNote);
    j["physical"] = {{"c6_hz_um6", physical.c6.cycles()},
                     {"spacing_um", physical.spacing},
                     {"principal_n", physical.principal_n},
                     {"quantum_defect", physical.quantum_defect},
                     {"filling", physical.filling}};
    j["interaction_hz"] = interaction.cycles();
    j["linewidth_hz"] = linewidth.cycles();
    j["rabi_hz"] = rabi.cycles();
    j["rabi_source"] = rabi_source;
    j["t_max"] = config.feasibility_t_max;
    j["excitation_timescale_s"] = excitation_timescale(rabi, config.feasibility_t_max);
    j["threshold"] = resolvability.threshold;
    j["scaling_note"] =
        "peak separations scale as n^11 through c6 while the linewidth falls "
        "as n^-3, so higher principal numbers resolve more orders at fixed spacing";

    json rows = json::array();
    for (const ResolvabilityRow& row : resolvability.rows) {
        rows.push_back({{"kappa", row.kappa},
                        {"separation_hz", row.separation.cycles()},
                        {"linewidth_hz", row.linewidth.cycles()},
                        {"ratio", row.ratio},
                        {"resolvable", row.resolvable}});
    }
    j["resolvability"] = rows;

    const auto path = dir / "feasibility.json";
    write_json_file(j, path);
    return {path.string()};
}

} // namespace

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc{})
        throw NumericalError("format_double: conversion failed");
    return std::string(buffer.data(), ptr);
}

std::vector<std::string> run_experiment(const ExperimentConfig& config,
                                        const std::string& out_dir, int threads) {
    config.validate();

    const fs::path dir{out_dir.empty() ? "." : out_dir};
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " +
                      ec.message());

    switch (config.mode) {
    case Mode::Sweep:
        return run_sweep_mode(config, dir, threads);
    case Mode::Spectrum:
        return run_spectrum_mode(config, dir, threads);
    case Mode::Extract:
        return run_extract_mode(config, dir, threads, false);
    case Mode::RoundTrip:
        return run_extract_mode(config, dir, threads, true);
    case Mode::Feasibility:
        return run_feasibility_mode(config, dir);
    }
    throw ConfigError("run_experiment: unhandled mode");
}

} // namespace rydspec
