#include "rydspec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rydspec/errors.hpp"

namespace rydspec {

namespace {

struct RawValue {
    enum class Kind { Number, String, Boolean, NumberList } kind = Kind::Number;
    double number = 0.0;
    std::string string;
    bool boolean = false;
    std::vector<double> list;
    int line = 0;
    bool consumed = false;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view token, int line) {
    token = trim(token);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        fail(line, "expected a number, got '" + std::string(token) + "'");
    return value;
}

RawValue parse_value(std::string_view token, int line) {
    RawValue v;
    v.line = line;
    token = trim(token);
    if (token.empty())
        fail(line, "missing value");
    if (token.front() == '"') {
        if (token.size() < 2 || token.back() != '"')
            fail(line, "unterminated string");
        v.kind = RawValue::Kind::String;
        v.string = std::string(token.substr(1, token.size() - 2));
        return v;
    }
    if (token == "true" || token == "false") {
        v.kind = RawValue::Kind::Boolean;
        v.boolean = token == "true";
        return v;
    }
    if (token.front() == '[') {
        if (token.back() != ']')
            fail(line, "unterminated array");
        v.kind = RawValue::Kind::NumberList;
        std::string_view inner = trim(token.substr(1, token.size() - 2));
        while (!inner.empty()) {
            auto comma = inner.find(',');
            std::string_view item =
                comma == std::string_view::npos ? inner : inner.substr(0, comma);
            v.list.push_back(parse_number(item, line));
            if (comma == std::string_view::npos)
                break;
            inner = inner.substr(comma + 1);
            if (trim(inner).empty())
                fail(line, "trailing comma in array");
        }
        return v;
    }
    v.kind = RawValue::Kind::Number;
    v.number = parse_number(token, line);
    return v;
}

// flat table of "section.key" -> value; good enough for the config subset
class RawConfig {
  public:
    explicit RawConfig(std::string_view text) {
        std::string section;
        int line_no = 0;
        std::istringstream stream{std::string(text)};
        std::string raw_line;
        while (std::getline(stream, raw_line)) {
            ++line_no;
            std::string_view line = raw_line;
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                // keep '#' inside quoted strings
                auto quote_open = line.find('"');
                auto quote_close = line.rfind('"');
                if (quote_open == std::string_view::npos || hash < quote_open ||
                    hash > quote_close)
                    line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    fail(line_no, "unterminated section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (section.empty())
                    fail(line_no, "empty section name");
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                fail(line_no, "expected 'key = value'");
            std::string key(trim(line.substr(0, eq)));
            if (key.empty())
                fail(line_no, "missing key");
            std::string full = section.empty() ? key : section + "." + key;
            if (entries_.count(full))
                fail(line_no, "duplicate key '" + full + "'");
            entries_[full] = parse_value(line.substr(eq + 1), line_no);
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const RawValue* take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    double number(const std::string& key, double fallback) {
        const RawValue* v = take(key);
        if (!v)
            return fallback;
        if (v->kind != RawValue::Kind::Number)
            fail(v->line, "'" + key + "' must be a number");
        return v->number;
    }

    int integer(const std::string& key, int fallback) {
        const RawValue* v = take(key);
        if (!v)
            return fallback;
        if (v->kind != RawValue::Kind::Number ||
            v->number != std::floor(v->number) || std::abs(v->number) > 1e9)
            fail(v->line, "'" + key + "' must be an integer");
        return static_cast<int>(v->number);
    }

    bool boolean(const std::string& key, bool fallback) {
        const RawValue* v = take(key);
        if (!v)
            return fallback;
        if (v->kind != RawValue::Kind::Boolean)
            fail(v->line, "'" + key + "' must be true or false");
        return v->boolean;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const RawValue* v = take(key);
        if (!v)
            return fallback;
        if (v->kind != RawValue::Kind::String)
            fail(v->line, "'" + key + "' must be a quoted string");
        return v->string;
    }

    std::optional<std::vector<double>> number_list(const std::string& key) {
        const RawValue* v = take(key);
        if (!v)
            return std::nullopt;
        if (v->kind != RawValue::Kind::NumberList)
            fail(v->line, "'" + key + "' must be an array of numbers");
        return v->list;
    }

    void reject_unconsumed() const {
        for (const auto& [key, value] : entries_)
            if (!value.consumed)
                fail(value.line, "unknown key '" + key + "'");
    }

  private:
    std::map<std::string, RawValue> entries_;
};

Mode parse_mode(const std::string& name, int line) {
    if (name == "spectrum")
        return Mode::Spectrum;
    if (name == "sweep")
        return Mode::Sweep;
    if (name == "extract")
        return Mode::Extract;
    if (name == "feasibility")
        return Mode::Feasibility;
    if (name == "roundtrip")
        return Mode::RoundTrip;
    fail(line, "unknown mode '" + name + "' (expected spectrum, sweep, extract, "
               "feasibility or roundtrip)");
}

GridSpec read_grid(RawConfig& raw, const std::string& section, GridSpec fallback) {
    GridSpec grid = fallback;
    grid.min = raw.number(section + ".min", grid.min);
    grid.max = raw.number(section + ".max", grid.max);
    grid.count = raw.integer(section + ".count", grid.count);
    return grid;
}

// a time list is either explicit values or a min/max/count grid
std::vector<double> read_times(RawConfig& raw, const std::string& section) {
    auto values = raw.number_list(section + ".values");
    bool has_grid = raw.has(section + ".min") || raw.has(section + ".max") ||
                    raw.has(section + ".count");
    if (values && has_grid)
        throw ConfigError("config: '" + section +
                          "' must use either values or min/max/count, not both");
    if (values)
        return *values;
    if (has_grid) {
        GridSpec grid = read_grid(raw, section, {0.0, 0.0, 0});
        if (grid.count < 2)
            throw ConfigError("config: '" + section + ".count' must be >= 2");
        if (!(grid.max > grid.min))
            throw ConfigError("config: '" + section + ".max' must exceed min");
        return grid.values();
    }
    return {};
}

} // namespace

std::string_view mode_name(Mode mode) {
    switch (mode) {
    case Mode::Spectrum:
        return "spectrum";
    case Mode::Sweep:
        return "sweep";
    case Mode::Extract:
        return "extract";
    case Mode::Feasibility:
        return "feasibility";
    case Mode::RoundTrip:
        return "roundtrip";
    }
    return "unknown";
}

std::vector<double> GridSpec::values() const {
    if (count < 1)
        throw ConfigError("GridSpec: count must be >= 1, got " + std::to_string(count));
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = min;
        return out;
    }
    const double step = (max - min) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = min + step * i;
    out.back() = max;
    return out;
}

std::vector<double> ExperimentConfig::effective_cycle_times() const {
    if (!cycle_times.empty())
        return cycle_times;
    return GridSpec{15.0, 30.0, 64}.values();
}

void ExperimentConfig::validate() const {
    const bool needs_lattice =
        mode == Mode::Spectrum || mode == Mode::Sweep || mode == Mode::Extract ||
        mode == Mode::RoundTrip;
    if (needs_lattice) {
        lattice.validate();
        if (mode == Mode::Spectrum) {
            if (spectrum_grid.count < 2)
                throw ConfigError("config: 'spectrum_grid.count' must be >= 2");
            if (!(spectrum_grid.max > spectrum_grid.min))
                throw ConfigError("config: 'spectrum_grid.max' must exceed min");
        } else {
            if (detuning_grid.count < 2)
                throw ConfigError("config: 'detuning_grid.count' must be >= 2");
            if (!(detuning_grid.max > detuning_grid.min))
                throw ConfigError("config: 'detuning_grid.max' must exceed min");
            if (!(lattice.rabi > 0.0))
                throw ConfigError("config: 'lattice.rabi' must be > 0 for dynamics");
            for (double t : cycle_times)
                if (!(t >= 0.0))
                    throw ConfigError("config: cycle times must be >= 0");
        }
    }
    if (mode == Mode::Extract || mode == Mode::RoundTrip) {
        if (!(peak_options.min_prominence > 0.0))
            throw ConfigError("config: 'peaks.min_prominence' must be > 0");
        if (peak_options.exclusion_half_width < 0.0)
            throw ConfigError("config: 'peaks.exclusion_half_width' must be >= 0");
        if (observable != "ne" && observable != "nee")
            throw ConfigError("config: 'observable' must be \"ne\" or \"nee\"");
    }
    if (mode == Mode::Feasibility) {
        if (!physical)
            throw ConfigError("config: feasibility mode needs a [physical] section");
        if (feasibility_kappa_max < 2)
            throw ConfigError("config: 'feasibility.kappa_max' must be >= 2");
        if (!(feasibility_threshold > 0.0))
            throw ConfigError("config: 'feasibility.threshold' must be > 0");
        if (!(feasibility_t_max > 0.0))
            throw ConfigError("config: 'feasibility.t_max' must be > 0");
    }
    if (physical)
        physical->validate();
}

ExperimentConfig parse_config(std::string_view text) {
    RawConfig raw{text};

    ExperimentConfig config;
    config.source_text = std::string(text);

    const RawValue* mode_value = raw.take("mode");
    if (!mode_value)
        throw ConfigError("config: missing required field 'mode'");
    if (mode_value->kind != RawValue::Kind::String)
        fail(mode_value->line, "'mode' must be a quoted string");
    config.mode = parse_mode(mode_value->string, mode_value->line);

    const bool needs_lattice = config.mode != Mode::Feasibility;
    if (needs_lattice) {
        if (!raw.has("lattice.n_sites"))
            throw ConfigError("config: missing required field 'lattice.n_sites'");
        config.lattice.n_sites = raw.integer("lattice.n_sites", 0);
        config.lattice.rabi = raw.number("lattice.rabi", 0.15);
        config.lattice.interaction = raw.number("lattice.interaction", 1.0);
        config.lattice.exponent = raw.integer("lattice.exponent", 6);
    }

    config.detuning_grid = read_grid(raw, "detuning_grid", config.detuning_grid);
    config.spectrum_grid = read_grid(raw, "spectrum_grid", config.spectrum_grid);
    config.cycle_times = read_times(raw, "cycle_times");
    config.average_times = read_times(raw, "average_times");

    config.peak_options.min_prominence =
        raw.number("peaks.min_prominence", config.peak_options.min_prominence);
    config.peak_options.exclusion_half_width =
        raw.number("peaks.exclusion_half_width",
                   config.peak_options.exclusion_half_width);
    config.observable = raw.text("observable", config.observable);

    config.feasibility_kappa_max =
        raw.integer("feasibility.kappa_max", config.feasibility_kappa_max);
    config.feasibility_threshold =
        raw.number("feasibility.threshold", config.feasibility_threshold);
    config.feasibility_t_max =
        raw.number("feasibility.t_max", config.feasibility_t_max);

    if (raw.has("physical.c6_hz_um6") || raw.has("physical.spacing_um") ||
        raw.has("physical.principal_n") || raw.has("physical.quantum_defect") ||
        raw.has("physical.single_atom_rabi_hz") || raw.has("physical.filling")) {
        PhysicalConfig phys;
        phys.c6 = AngularFrequency::from_cycles(
            raw.number("physical.c6_hz_um6", 876.0e9));
        phys.spacing = raw.number("physical.spacing_um", 10.0);
        phys.principal_n = raw.integer("physical.principal_n", 70);
        phys.quantum_defect = raw.number("physical.quantum_defect", 3.13);
        phys.single_atom_rabi = AngularFrequency::from_cycles(
            raw.number("physical.single_atom_rabi_hz", 0.0));
        phys.filling = raw.integer("physical.filling", 1);
        config.physical = phys;
    }

    config.output.csv = raw.boolean("output.csv", true);
    config.output.json = raw.boolean("output.json", true);

    raw.reject_unconsumed();
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading config file '" + path + "'");
    return parse_config(buffer.str());
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string config_hash_hex(std::string_view text) {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(text);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

} // namespace rydspec
