#pragma once

#include <vector>

namespace rydspec {

// A frequency-like quantity that knows whether you are asking for the
// angular value (rad/s) or the ordinary cycle value (Hz).  Every quantity
// quoted as "2 pi x f" in the literature is from_cycles(f); keeping the
// factor inside one type is what stops it from leaking into formulas.
class AngularFrequency {
  public:
    AngularFrequency() = default;

    static AngularFrequency from_rad_per_s(double value);
    static AngularFrequency from_cycles(double hertz);

    double rad_per_s() const { return rad_per_s_; }
    double cycles() const { return rad_per_s_ / two_pi(); }

    AngularFrequency operator*(double factor) const;
    AngularFrequency operator/(double factor) const;
    double operator/(const AngularFrequency& other) const; // dimensionless
    AngularFrequency operator+(const AngularFrequency& other) const;
    AngularFrequency operator-(const AngularFrequency& other) const;

    static double two_pi();

  private:
    explicit AngularFrequency(double rad_per_s) : rad_per_s_(rad_per_s) {}
    double rad_per_s_ = 0.0;
};

// Experimental parameters in laboratory units: lengths in micrometres,
// frequencies wrapped in AngularFrequency.  c6 is the interaction strength
// at 1 um separation, so c6 / spacing^6 is the nearest-neighbour strength.
struct PhysicalConfig {
    AngularFrequency c6;                   // per um^6
    double spacing = 10.0;                 // lattice period in um
    int principal_n = 70;
    double quantum_defect = 3.13;
    AngularFrequency single_atom_rabi;     // zero means "not specified"
    int filling = 1;                       // ground-state atoms per site

    void validate() const;
};

// Power-law interaction strength between neighbouring sites, c6 / spacing^m.
AngularFrequency interaction_strength(const PhysicalConfig& config, int exponent = 6);

// Radiative linewidth of the Rydberg level: 2 pi x 0.699 GHz / (n - defect)^2.94.
AngularFrequency rydberg_linewidth(int principal_n, double quantum_defect);

// Separation of the resonance of order kappa from the next one,
// c6 / (kappa (kappa+1) spacing^6); the relative-extraction formula run
// forwards.
AngularFrequency predicted_peak_separation(const PhysicalConfig& config, int kappa);

// Duration of the excitation protocol in seconds: t_max laser cycles, i.e.
// t_max / (rabi in cycles per second).
double excitation_timescale(const AngularFrequency& rabi, double t_max);

struct ResolvabilityRow {
    int kappa = 0;
    AngularFrequency separation;
    AngularFrequency linewidth;
    double ratio = 0.0; // separation / linewidth
    bool resolvable = false;
};

struct ResolvabilityReport {
    std::vector<ResolvabilityRow> rows;
    double threshold = 0.0;
};

// Peak separations against the linewidth for kappa = 2 .. kappa_max; a row
// is resolvable when separation >= threshold * linewidth.
ResolvabilityReport resolvability_report(const PhysicalConfig& config,
                                         int kappa_max = 6, double threshold = 5.0);

} // namespace rydspec
