#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydspec/config.hpp"
#include "rydspec/errors.hpp"
#include "rydspec/runner.hpp"

using namespace rydspec;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "rydspec_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

constexpr const char* kTinySweep = R"(mode = "sweep"

[lattice]
n_sites = 2
rabi = 0.15

[detuning_grid]
min = -0.6
max = -0.4
count = 7

[cycle_times]
values = [15.0, 18.0]
)";

} // namespace

TEST_CASE("minimal config picks up the documented defaults") {
    ExperimentConfig config = parse_config(R"(mode = "sweep"

[lattice]
n_sites = 3
)");
    CHECK(config.mode == Mode::Sweep);
    CHECK(config.lattice.n_sites == 3);
    CHECK(config.lattice.rabi == 0.15);
    CHECK(config.lattice.interaction == 1.0);
    CHECK(config.lattice.exponent == 6);

    CHECK(config.detuning_grid.min == -1.1);
    CHECK(config.detuning_grid.max == 0.35);
    CHECK(config.detuning_grid.count == 581);

    auto times = config.effective_cycle_times();
    REQUIRE(times.size() == 64);
    CHECK(times.front() == 15.0);
    CHECK(times.back() == 30.0);

    CHECK(config.peak_options.min_prominence == 0.1);
    CHECK(config.peak_options.exclusion_half_width == 0.15);
    CHECK(config.observable == "ne");
    CHECK(config.spectrum_grid.min == -1.3);
    CHECK(config.spectrum_grid.max == 0.3);
    CHECK(config.spectrum_grid.count == 801);
    CHECK(config.output.csv);
    CHECK(config.output.json);
    CHECK_FALSE(config.physical.has_value());
}

TEST_CASE("grids produce inclusive endpoints") {
    GridSpec grid{-1.0, 1.0, 5};
    auto v = grid.values();
    REQUIRE(v.size() == 5);
    CHECK(v[0] == -1.0);
    CHECK(v[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v[4] == 1.0);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0}.values()), ConfigError);
}

TEST_CASE("missing required fields are named in the error") {
    try {
        parse_config(R"(mode = "sweep"
)");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("lattice.n_sites") != std::string::npos);
    }

    try {
        parse_config("");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mode") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with their line number") {
    try {
        parse_config(R"(mode = "sweep"

[lattice]
n_sites = 2
n_sties = 3
)");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        std::string message = e.what();
        CHECK(message.find("lattice.n_sties") != std::string::npos);
        CHECK(message.find("line 5") != std::string::npos);
    }
}

TEST_CASE("malformed input is a config error") {
    CHECK_THROWS_AS(parse_config("mode = \"sweep\"\nn_sites = what\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = \"sweep\"\nkey_without_value\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = \"sweep\"\nname = \"unterminated\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = \"nonsense\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = \"sweep\"\n[unterminated\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = \"sweep\"\nmode = \"sweep\"\n"), ConfigError);
    // integer-valued fields reject fractions
    CHECK_THROWS_AS(parse_config(R"(mode = "sweep"
[lattice]
n_sites = 2.5
)"),
                    ConfigError);
    // arrays must hold numbers
    CHECK_THROWS_AS(parse_config(R"(mode = "sweep"
[lattice]
n_sites = 2
[cycle_times]
values = ["a", "b"]
)"),
                    ConfigError);
    // time sections accept either a list or a grid, not both
    CHECK_THROWS_AS(parse_config(R"(mode = "sweep"
[lattice]
n_sites = 2
[cycle_times]
values = [15.0]
min = 15.0
max = 30.0
count = 4
)"),
                    ConfigError);
}

TEST_CASE("comments and spacing are tolerated") {
    ExperimentConfig config = parse_config(R"(
# leading comment
mode = "sweep"   # trailing comment

[lattice]   # section comment
n_sites   =   4

[detuning_grid]
min = -0.9   # inline
max = 0.1
count = 11
)");
    CHECK(config.lattice.n_sites == 4);
    CHECK(config.detuning_grid.count == 11);
}

TEST_CASE("feasibility config wants a physical section") {
    CHECK_THROWS_AS(parse_config("mode = \"feasibility\"\n"), ConfigError);

    ExperimentConfig config = parse_config(R"(mode = "feasibility"

[physical]
c6_hz_um6 = 876.0e9
spacing_um = 10.0
principal_n = 70
quantum_defect = 3.13
)");
    REQUIRE(config.physical.has_value());
    CHECK(config.physical->spacing == 10.0);
    CHECK(config.physical->principal_n == 70);
    CHECK(config.feasibility_kappa_max == 6);
    CHECK(config.feasibility_threshold == 5.0);
    CHECK(config.feasibility_t_max == 30.0);
}

TEST_CASE("presets parse and carry their documented shapes") {
    auto names = preset_names();
    REQUIRE(names.size() == 3);
    CHECK(names[0] == "fig2");
    CHECK(names[1] == "feasibility-n70-a10");
    CHECK(names[2] == "roundtrip-default");

    ExperimentConfig fig2 = parse_config(preset_text("fig2"));
    CHECK(fig2.mode == Mode::Sweep);
    CHECK(fig2.lattice.n_sites == 8);
    CHECK(fig2.lattice.rabi == 0.15);
    REQUIRE(fig2.cycle_times.size() == 5);
    CHECK(fig2.cycle_times == std::vector<double>{15.0, 18.0, 21.0, 24.0, 27.0});
    REQUIRE(fig2.average_times.size() == 64);
    CHECK(fig2.average_times.front() == 15.0);
    CHECK(fig2.average_times.back() == 30.0);
    CHECK(fig2.detuning_grid.count == 581);

    ExperimentConfig feasibility = parse_config(preset_text("feasibility-n70-a10"));
    CHECK(feasibility.mode == Mode::Feasibility);
    REQUIRE(feasibility.physical.has_value());
    CHECK(feasibility.physical->c6.cycles() == doctest::Approx(876.0e9).epsilon(1e-12));

    ExperimentConfig roundtrip = parse_config(preset_text("roundtrip-default"));
    CHECK(roundtrip.mode == Mode::RoundTrip);
    CHECK(roundtrip.lattice.n_sites == 8);
    REQUIRE(roundtrip.cycle_times.size() == 64);

    CHECK_THROWS_AS(preset_text("no-such"), ConfigError);
}

TEST_CASE("hash is stable and text-sensitive") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(config_hash_hex("").size() == 16);
    CHECK(config_hash_hex("x") != config_hash_hex("y"));
    CHECK(config_hash_hex(kTinySweep) == config_hash_hex(kTinySweep));
}

TEST_CASE("sweep outputs are byte-identical across runs") {
    ExperimentConfig config = parse_config(kTinySweep);
    fs::path dir_a = fresh_dir("determinism_a");
    fs::path dir_b = fresh_dir("determinism_b");
    auto written_a = run_experiment(config, dir_a.string(), 1);
    auto written_b = run_experiment(config, dir_b.string(), 2);
    REQUIRE(written_a.size() == 2);
    REQUIRE(written_b.size() == 2);
    CHECK(read_file(dir_a / "sweep.csv") == read_file(dir_b / "sweep.csv"));
    CHECK(read_file(dir_a / "sweep.json") == read_file(dir_b / "sweep.json"));
}

TEST_CASE("sweep csv carries the header contract and round-trips its numbers") {
    ExperimentConfig config = parse_config(kTinySweep);
    fs::path dir = fresh_dir("csv_contract");
    run_experiment(config, dir.string(), 1);

    std::ifstream in(dir / "sweep.csv");
    REQUIRE(in.good());
    std::string line;

    std::getline(in, line);
    CHECK(line == "# schema_version: rydspec-sweep-v1");
    std::getline(in, line);
    CHECK(line.rfind("# config_hash: fnv1a:", 0) == 0);
    CHECK(line.size() == std::string("# config_hash: fnv1a:").size() + 16);

    // skip remaining comment lines, then the column header
    while (std::getline(in, line) && line.rfind("#", 0) == 0)
        ;
    CHECK(line == "delta_over_v,ne_T15,ne_T18,ne_avg,nee_T15,nee_T18,nee_avg");

    // every cell parses as a double and re-prints identically
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            std::string cell = line.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            double value = 0.0;
            auto [ptr, ec] =
                std::from_chars(cell.data(), cell.data() + cell.size(), value);
            CHECK(ec == std::errc{});
            CHECK(ptr == cell.data() + cell.size());
            CHECK(format_double(value) == cell);
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    CHECK(rows == 7);
}

TEST_CASE("json reports declare their schema") {
    ExperimentConfig config = parse_config(kTinySweep);
    fs::path dir = fresh_dir("json_schema");
    run_experiment(config, dir.string(), 1);

    auto j = nlohmann::json::parse(read_file(dir / "sweep.json"));
    CHECK(j.at("schema_version") == "rydspec-sweep-v1");
    CHECK(j.at("config_hash").get<std::string>().rfind("fnv1a:", 0) == 0);
    CHECK(j.at("mode") == "sweep");
    CHECK(j.at("grid_points") == 7);
}

TEST_CASE("roundtrip mode writes the comparison report") {
    ExperimentConfig config = parse_config(R"(mode = "roundtrip"

[lattice]
n_sites = 4
rabi = 0.15

[detuning_grid]
min = -0.85
max = -0.3
count = 221

[cycle_times]
values = [15.0, 18.0, 21.0, 24.0, 27.0]
)");
    fs::path dir = fresh_dir("roundtrip_report");
    run_experiment(config, dir.string(), 0);

    auto j = nlohmann::json::parse(read_file(dir / "roundtrip.json"));
    CHECK(j.at("schema_version") == "rydspec-roundtrip-v1");
    CHECK(j.at("true_c6") == 1.0);
    REQUIRE(j.at("peaks").is_array());
    CHECK(j.at("peaks").size() >= 2);
    CHECK(j.at("relative_error_vs_truth").at("absolute").get<double>() < 0.10);
    CHECK(j.at("c6_absolute").get<double>() > 0.0);
    CHECK(fs::exists(dir / "sweep.csv"));
}

TEST_CASE("feasibility mode writes the laboratory report") {
    ExperimentConfig config = parse_config(preset_text("feasibility-n70-a10"));
    fs::path dir = fresh_dir("feasibility_report");
    run_experiment(config, dir.string(), 1);

    auto j = nlohmann::json::parse(read_file(dir / "feasibility.json"));
    CHECK(j.at("schema_version") == "rydspec-feasibility-v1");
    CHECK(j.at("interaction_hz").get<double>() == doctest::Approx(876.0e3).epsilon(1e-9));
    CHECK(j.at("linewidth_hz").get<double>() == doctest::Approx(3008.13).epsilon(1e-3));
    REQUIRE(j.at("resolvability").is_array());
    CHECK(j.at("resolvability").size() == 5);
    for (const auto& row : j.at("resolvability"))
        CHECK(row.at("resolvable").get<bool>());
    // default drive: 0.15 x interaction, so 30 cycles take 30 / 131.4 kHz
    CHECK(j.at("excitation_timescale_s").get<double>() ==
          doctest::Approx(30.0 / (0.15 * 876.0e3)).epsilon(1e-9));
    CHECK(j.at("frequency_convention").is_string());
}

TEST_CASE("spectrum mode writes the eigenvalue table") {
    ExperimentConfig config = parse_config(R"(mode = "spectrum"

[lattice]
n_sites = 2

[spectrum_grid]
min = -1.0
max = 0.0
count = 5
)");
    fs::path dir = fresh_dir("spectrum_table");
    run_experiment(config, dir.string(), 1);

    std::ifstream in(dir / "spectrum.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# schema_version: rydspec-spectrum-v1");
    while (std::getline(in, line) && line.rfind("#", 0) == 0)
        ;
    CHECK(line == "delta_over_v,eig_0,eig_1,eig_2,eig_3,g_state_line");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 5);
}

TEST_CASE("file loading distinguishes io from config problems") {
    CHECK_THROWS_AS(load_config("/nonexistent/rydspec.toml"), IoError);

    fs::path dir = fresh_dir("io_probe");
    fs::path good = dir / "good.toml";
    std::ofstream(good) << kTinySweep;
    ExperimentConfig config = load_config(good.string());
    CHECK(config.lattice.n_sites == 2);

    fs::path bad = dir / "bad.toml";
    std::ofstream(bad) << "mode = \"sweep\"\nbroken\n";
    CHECK_THROWS_AS(load_config(bad.string()), ConfigError);

    CHECK_THROWS_AS(run_experiment(config, "/proc/rydspec_unwritable", 1), IoError);
}
