#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rydspec/config.hpp"
#include "rydspec/errors.hpp"
#include "rydspec/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& out_dir, int threads) {
    rydspec::ExperimentConfig config =
        preset.empty() ? rydspec::load_config(config_path)
                       : rydspec::parse_config(rydspec::preset_text(preset));
    auto written = rydspec::run_experiment(config, out_dir, threads);
    for (const auto& path : written)
        std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rydspec: excitation spectra of driven Rydberg lattices and "
                 "interaction-coefficient extraction"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "Run an experiment");
    CLI::Option* config_opt =
        run->add_option("--config", config_path, "Config file to run");
    CLI::Option* preset_opt =
        run->add_option("--preset", preset, "Built-in preset to run");
    run->add_option("--out", out_dir, "Output directory (default: current)");
    run->add_option("--threads", threads, "Worker threads (0 = hardware count)");
    config_opt->excludes(preset_opt);
    preset_opt->excludes(config_opt);

    CLI::App* presets = app.add_subcommand("presets", "Inspect built-in presets");
    presets->require_subcommand(1);
    CLI::App* presets_list = presets->add_subcommand("list", "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (presets_list->parsed()) {
            for (const auto& name : rydspec::preset_names())
                std::printf("%s\n", name.c_str());
            return kExitOk;
        }
        if (run->parsed()) {
            if (config_path.empty() && preset.empty())
                throw rydspec::ConfigError("run needs --config <file> or --preset <name>");
            return run_command(config_path, preset, out_dir, threads);
        }
        return kExitConfig;
    } catch (const rydspec::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const rydspec::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const rydspec::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
}
