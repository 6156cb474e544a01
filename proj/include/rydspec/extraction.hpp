#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydspec/dynamics.hpp"
#include "rydspec/lattice.hpp"

namespace rydspec {

struct PeakOptions {
    double min_prominence = 0.1;
    // half-width of the window around zero detuning that is dropped before
    // peak detection; the trivial single-atom resonance lives there
    double exclusion_half_width = 0.15;
};

struct Peak {
    double position = 0.0; // refined abscissa, same units as the input grid
    double height = 0.0;
    double prominence = 0.0;
    std::optional<int> kappa;
    std::optional<double> kappa_residual;
    bool low_confidence = false;
};

struct PeakSet {
    std::vector<Peak> peaks; // sorted by position, ascending
    std::string observable;
};

// Local-maximum detection with prominences measured the usual way: extend
// from each peak to the nearest higher sample (or the signal edge) on both
// sides and take the higher of the two interval minima as the base.  Peaks
// below min_prominence and peaks inside the exclusion window are dropped;
// survivors are refined with a parabola through the three samples around
// the maximum.
PeakSet detect_peaks(std::span<const double> grid, std::span<const double> values,
                     const PeakOptions& options = {});

// Order assignment from the position ratio of two adjacent resonances:
// position(kappa) / position(kappa + 1) = 1 - 1/kappa^2, which is 0.75 for
// kappa = 2 and approaches 1 from below.  `residual` is the distance of the
// measured ratio from the ideal one.
struct KappaMatch {
    int kappa = 0;
    double residual = 0.0;
};

KappaMatch identify_kappa(double position_kappa, double position_kappa_plus_1);

// Labels the peaks of a set in place, chaining identify_kappa from the
// rightmost pair leftwards.  Peaks whose pair ratio disagrees with the
// chained label, or that had to be labelled from their bare position, are
// marked low_confidence.
void assign_kappa_labels(PeakSet& peaks);

// Interaction coefficient from one labelled resonance position:
//   C6 = -kappa / (kappa - 1) * detuning_at_peak * spacing^6.
double extract_c6_absolute(double detuning_at_peak, int kappa, double spacing);

// Interaction coefficient from the separation of two adjacent resonances:
//   C6 = kappa * (kappa + 1) * separation * spacing^6,
// where separation = detuning(kappa) - detuning(kappa + 1) > 0; resonances
// accumulate leftwards, so the higher order sits at the more negative
// detuning.  This variant needs no absolute frequency reference.
double extract_c6_relative(double separation, int kappa, double spacing);

struct PipelineOptions {
    std::vector<double> detuning_ratios;
    std::vector<double> cycle_times;
    std::vector<double> average_times;
    PeakOptions peaks;
    std::string observable = "ne"; // "ne" or "nee"
    double spacing = 1.0;
    int threads = 1;
};

struct RoundTripReport {
    SweepResult sweep; // the trace the peaks were read from
    PeakSet peaks;
    double c6_absolute = 0.0;
    std::optional<double> c6_relative;
    double true_c6 = 0.0;
    double error_absolute = 0.0; // |c6_absolute - true_c6| / true_c6
    std::optional<double> error_relative;
};

// Full simulate -> detect -> label -> invert chain against a model whose
// true coefficient is interaction * spacing^6 by construction.
RoundTripReport round_trip(const LatticeParams& base, const PipelineOptions& options);

} // namespace rydspec
