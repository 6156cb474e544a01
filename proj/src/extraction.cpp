#include "rydspec/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rydspec/errors.hpp"

namespace rydspec {

namespace {

double ipow6(double x) {
    double x2 = x * x;
    return x2 * x2 * x2;
}

// vertex of the parabola through (x0,y0), (x1,y1), (x2,y2) via divided
// differences; falls back to the centre sample when the curvature vanishes
void refine_parabola(double x0, double y0, double x1, double y1, double x2,
                     double y2, double& position, double& height) {
    double d1 = (y1 - y0) / (x1 - x0);
    double d2 = (y2 - y1) / (x2 - x1);
    double curvature = (d2 - d1) / (x2 - x0);
    position = x1;
    height = y1;
    if (std::abs(curvature) < 1e-300)
        return;
    double vertex = 0.5 * (x0 + x1) - d1 / (2.0 * curvature);
    vertex = std::clamp(vertex, x0, x2);
    position = vertex;
    height = y0 + d1 * (vertex - x0) + curvature * (vertex - x0) * (vertex - x1);
}

double ideal_ratio(int kappa) {
    double k = static_cast<double>(kappa);
    return 1.0 - 1.0 / (k * k);
}

// rough order estimate from a single position in units of the interaction,
// inverting position = -1 + 1/kappa; only used when no pair is available
std::optional<int> kappa_from_position(double position) {
    if (!(position > -1.0 && position < 0.0))
        return std::nullopt;
    long k = std::lround(1.0 / (1.0 + position));
    if (k < 2)
        k = 2;
    return static_cast<int>(k);
}

} // namespace

PeakSet detect_peaks(std::span<const double> grid, std::span<const double> values,
                     const PeakOptions& options) {
    if (grid.size() != values.size())
        throw std::invalid_argument("detect_peaks: grid and values differ in length");
    if (grid.size() < 5)
        throw std::invalid_argument("detect_peaks: need at least 5 samples, got " +
                                    std::to_string(grid.size()));
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("detect_peaks: grid must be strictly increasing");
    if (!(options.min_prominence > 0.0))
        throw std::invalid_argument("detect_peaks: min_prominence must be > 0");
    if (options.exclusion_half_width < 0.0)
        throw std::invalid_argument("detect_peaks: exclusion_half_width must be >= 0");

    const std::size_t n = grid.size();
    PeakSet result;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] > values[i + 1]))
            continue;
        if (std::abs(grid[i]) < options.exclusion_half_width)
            continue;

        // walk left and right to the nearest strictly higher sample,
        // tracking the minimum of each stretch
        double left_min = values[i];
        for (std::size_t j = i; j-- > 0;) {
            if (values[j] > values[i])
                break;
            left_min = std::min(left_min, values[j]);
        }
        double right_min = values[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[j] > values[i])
                break;
            right_min = std::min(right_min, values[j]);
        }
        double prominence = values[i] - std::max(left_min, right_min);
        if (prominence < options.min_prominence)
            continue;

        Peak peak;
        refine_parabola(grid[i - 1], values[i - 1], grid[i], values[i], grid[i + 1],
                        values[i + 1], peak.position, peak.height);
        peak.prominence = prominence;
        result.peaks.push_back(peak);
    }

    return result;
}

KappaMatch identify_kappa(double position_kappa, double position_kappa_plus_1) {
    if (!(position_kappa < 0.0) || !(position_kappa_plus_1 < 0.0))
        throw std::domain_error("identify_kappa: resonance positions must be negative");
    const double ratio = position_kappa / position_kappa_plus_1;
    if (!(ratio < 1.0))
        throw std::domain_error(
            "identify_kappa: expected the first position closer to zero than the "
            "second (ratio " + std::to_string(ratio) + " is not < 1)");
    if (!(ratio > 0.70))
        throw std::domain_error(
            "identify_kappa: position ratio " + std::to_string(ratio) +
            " is below 0.70; adjacent resonances never sit that far apart");

    int kappa = static_cast<int>(std::lround(1.0 / std::sqrt(1.0 - ratio)));
    kappa = std::max(kappa, 2);
    auto deviation = [&](int k) { return std::abs(ratio - ideal_ratio(k)); };
    for (int k : {kappa - 1, kappa + 1})
        if (k >= 2 && deviation(k) < deviation(kappa))
            kappa = k;
    return {kappa, deviation(kappa)};
}

void assign_kappa_labels(PeakSet& peaks) {
    auto& ps = peaks.peaks;
    if (ps.empty())
        return;
    std::sort(ps.begin(), ps.end(),
              [](const Peak& a, const Peak& b) { return a.position < b.position; });

    auto label_from_position = [](Peak& p) {
        if (auto k = kappa_from_position(p.position)) {
            p.kappa = *k;
            double ideal = -1.0 + 1.0 / static_cast<double>(*k);
            p.kappa_residual = std::abs(p.position - ideal) / std::abs(ideal);
            p.low_confidence = true;
        }
    };

    if (ps.size() == 1) {
        label_from_position(ps[0]);
        return;
    }

    // seed the chain from the rightmost pair, then walk left: each further
    // peak is one order higher than its right neighbour
    const std::size_t last = ps.size() - 1;
    KappaMatch seed;
    try {
        seed = identify_kappa(ps[last].position, ps[last - 1].position);
    } catch (const std::domain_error&) {
        for (auto& p : ps)
            label_from_position(p);
        return;
    }
    ps[last].kappa = seed.kappa;
    ps[last].kappa_residual = seed.residual;

    for (std::size_t i = last; i-- > 0;) {
        int expected = *ps[i + 1].kappa + 1;
        ps[i].kappa = expected;
        try {
            KappaMatch pair = identify_kappa(ps[i + 1].position, ps[i].position);
            ps[i].kappa_residual = pair.residual;
            // the pair ratio has its own opinion about the right neighbour's
            // order; a mismatch means the chain skipped or picked up a peak
            if (pair.kappa != *ps[i + 1].kappa)
                ps[i].low_confidence = true;
        } catch (const std::domain_error&) {
            ps[i].low_confidence = true;
        }
    }
}

double extract_c6_absolute(double detuning_at_peak, int kappa, double spacing) {
    if (kappa < 2)
        throw std::domain_error("extract_c6_absolute: kappa must be >= 2, got " +
                                std::to_string(kappa));
    if (!(detuning_at_peak < 0.0))
        throw std::domain_error("extract_c6_absolute: the resonance detuning must be "
                                "negative, got " + std::to_string(detuning_at_peak));
    if (!(spacing > 0.0))
        throw std::domain_error("extract_c6_absolute: spacing must be > 0");
    double k = static_cast<double>(kappa);
    return -k / (k - 1.0) * detuning_at_peak * ipow6(spacing);
}

double extract_c6_relative(double separation, int kappa, double spacing) {
    if (kappa < 2)
        throw std::domain_error("extract_c6_relative: kappa must be >= 2, got " +
                                std::to_string(kappa));
    if (!(separation > 0.0))
        throw std::domain_error("extract_c6_relative: separation must be > 0, got " +
                                std::to_string(separation));
    if (!(spacing > 0.0))
        throw std::domain_error("extract_c6_relative: spacing must be > 0");
    double k = static_cast<double>(kappa);
    return k * (k + 1.0) * separation * ipow6(spacing);
}

RoundTripReport round_trip(const LatticeParams& base, const PipelineOptions& options) {
    if (options.observable != "ne" && options.observable != "nee")
        throw ConfigError("round_trip: observable must be \"ne\" or \"nee\", got \"" +
                          options.observable + "\"");
    if (!(options.spacing > 0.0))
        throw ConfigError("round_trip: spacing must be > 0");

    RoundTripReport report;
    report.sweep = sweep(base, options.detuning_ratios, options.cycle_times,
                         options.average_times, options.threads);
    const Eigen::VectorXd& signal =
        options.observable == "nee" ? report.sweep.nee_average : report.sweep.ne_average;

    report.peaks = detect_peaks(
        std::span<const double>(report.sweep.detuning_ratios),
        std::span<const double>(signal.data(), static_cast<std::size_t>(signal.size())),
        options.peaks);
    report.peaks.observable = options.observable;
    if (report.peaks.peaks.empty())
        throw NumericalError("round_trip: no resonance peaks found in the averaged " +
                             options.observable + " signal");
    assign_kappa_labels(report.peaks);

    const auto& ps = report.peaks.peaks;

    // absolute method: rightmost labelled peak
    const Peak* anchor = nullptr;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it)
        if (it->kappa) {
            anchor = &*it;
            break;
        }
    if (anchor == nullptr)
        throw NumericalError("round_trip: peaks were found but none could be labelled");
    report.c6_absolute = extract_c6_absolute(anchor->position * base.interaction,
                                             *anchor->kappa, options.spacing);

    // relative method: rightmost adjacent pair with consecutive labels
    for (std::size_t i = ps.size(); i-- > 1;) {
        if (!ps[i].kappa || !ps[i - 1].kappa)
            continue;
        if (*ps[i - 1].kappa != *ps[i].kappa + 1)
            continue;
        double separation = (ps[i].position - ps[i - 1].position) * base.interaction;
        report.c6_relative =
            extract_c6_relative(separation, *ps[i].kappa, options.spacing);
        break;
    }

    report.true_c6 = base.interaction * ipow6(options.spacing);
    report.error_absolute =
        std::abs(report.c6_absolute - report.true_c6) / report.true_c6;
    if (report.c6_relative)
        report.error_relative =
            std::abs(*report.c6_relative - report.true_c6) / report.true_c6;
    return report;
}

} // namespace rydspec
