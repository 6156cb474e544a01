#include "rydspec/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rydspec/errors.hpp"

namespace rydspec {

double AngularFrequency::two_pi() {
    return 2.0 * std::numbers::pi;
}

AngularFrequency AngularFrequency::from_rad_per_s(double value) {
    if (!std::isfinite(value))
        throw std::domain_error("AngularFrequency: value must be finite");
    return AngularFrequency(value);
}

AngularFrequency AngularFrequency::from_cycles(double hertz) {
    if (!std::isfinite(hertz))
        throw std::domain_error("AngularFrequency: value must be finite");
    return AngularFrequency(hertz * two_pi());
}

AngularFrequency AngularFrequency::operator*(double factor) const {
    return AngularFrequency(rad_per_s_ * factor);
}

AngularFrequency AngularFrequency::operator/(double factor) const {
    return AngularFrequency(rad_per_s_ / factor);
}

double AngularFrequency::operator/(const AngularFrequency& other) const {
    return rad_per_s_ / other.rad_per_s_;
}

AngularFrequency AngularFrequency::operator+(const AngularFrequency& other) const {
    return AngularFrequency(rad_per_s_ + other.rad_per_s_);
}

AngularFrequency AngularFrequency::operator-(const AngularFrequency& other) const {
    return AngularFrequency(rad_per_s_ - other.rad_per_s_);
}

void PhysicalConfig::validate() const {
    if (!(c6.rad_per_s() > 0.0))
        throw ConfigError("PhysicalConfig: c6 must be > 0");
    if (!(spacing > 0.0))
        throw ConfigError("PhysicalConfig: spacing must be > 0, got " +
                          std::to_string(spacing));
    if (quantum_defect < 0.0)
        throw ConfigError("PhysicalConfig: quantum_defect must be >= 0, got " +
                          std::to_string(quantum_defect));
    if (static_cast<double>(principal_n) <= quantum_defect)
        throw ConfigError("PhysicalConfig: principal_n must exceed the quantum defect");
    if (single_atom_rabi.rad_per_s() < 0.0)
        throw ConfigError("PhysicalConfig: single_atom_rabi must be >= 0");
    if (filling < 1)
        throw ConfigError("PhysicalConfig: filling must be >= 1, got " +
                          std::to_string(filling));
}

AngularFrequency interaction_strength(const PhysicalConfig& config, int exponent) {
    config.validate();
    if (exponent < 1)
        throw ConfigError("interaction_strength: exponent must be >= 1");
    return config.c6 / std::pow(config.spacing, exponent);
}

AngularFrequency rydberg_linewidth(int principal_n, double quantum_defect) {
    if (quantum_defect < 0.0)
        throw std::domain_error("rydberg_linewidth: quantum_defect must be >= 0");
    double effective_n = static_cast<double>(principal_n) - quantum_defect;
    if (!(effective_n > 0.0))
        throw std::domain_error("rydberg_linewidth: principal_n must exceed the defect");
    return AngularFrequency::from_cycles(0.699e9 * std::pow(effective_n, -2.94));
}

AngularFrequency predicted_peak_separation(const PhysicalConfig& config, int kappa) {
    if (kappa < 2)
        throw std::domain_error("predicted_peak_separation: kappa must be >= 2, got " +
                                std::to_string(kappa));
    double k = static_cast<double>(kappa);
    return interaction_strength(config) / (k * (k + 1.0));
}

double excitation_timescale(const AngularFrequency& rabi, double t_max) {
    if (!(rabi.rad_per_s() > 0.0))
        throw std::domain_error("excitation_timescale: rabi must be > 0");
    if (!(t_max > 0.0))
        throw std::domain_error("excitation_timescale: t_max must be > 0");
    return t_max / rabi.cycles();
}

ResolvabilityReport resolvability_report(const PhysicalConfig& config, int kappa_max,
                                         double threshold) {
    config.validate();
    if (kappa_max < 2)
        throw ConfigError("resolvability_report: kappa_max must be >= 2, got " +
                          std::to_string(kappa_max));
    if (!(threshold > 0.0))
        throw ConfigError("resolvability_report: threshold must be > 0");

    const AngularFrequency linewidth =
        rydberg_linewidth(config.principal_n, config.quantum_defect);

    ResolvabilityReport report;
    report.threshold = threshold;
    for (int kappa = 2; kappa <= kappa_max; ++kappa) {
        ResolvabilityRow row;
        row.kappa = kappa;
        row.separation = predicted_peak_separation(config, kappa);
        row.linewidth = linewidth;
        row.ratio = row.separation / linewidth;
        row.resolvable = row.ratio >= threshold;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace rydspec
