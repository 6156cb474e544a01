#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rydspec/lattice.hpp"

namespace rydspec {

// Expectation values of the excitation count and the adjacent-pair count in
// a normalised state over the chain basis.
struct Observables {
    double excitations = 0.0;
    double pairs = 0.0;
};

Observables observables(const Eigen::VectorXcd& state, int n_sites);

// |ggg...g>, the state with every site in the ground state (basis index 0).
Eigen::VectorXcd canonical_ground_state(int n_sites);

// Exact propagator built from one eigendecomposition of a real symmetric
// Hamiltonian.  evolve() applies exp(-i H t) spectrally, so many evolution
// times reuse the same factorisation; this is what makes averaging over a
// set of cycle times cheap.
class Propagator {
  public:
    explicit Propagator(const Eigen::MatrixXd& hamiltonian);

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& initial, double time) const;

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

  private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

// One-shot evolution with norm checking: applies exp(-i H t) to a
// normalised state and verifies that the result is still normalised to
// within 1e-9 (it is, up to roundoff, because the propagator is unitary).
Eigen::VectorXcd propagate(const Eigen::MatrixXd& hamiltonian,
                           const Eigen::VectorXcd& initial, double time);

// Detuning sweep of the excitation dynamics.  For every ratio in
// `detuning_ratios` the chain starts in the all-ground state and evolves
// under the full Hamiltonian with detuning = ratio * interaction.
//
// Times are laser cycle times in units of 1/rabi: an entry T means an
// evolution over t = T / rabi.  `cycle_times` are reported individually as
// columns of ne_per_time / nee_per_time; `average_times` (defaulting to the
// cycle times themselves) feed the time-averaged signals ne_average /
// nee_average that the peak extraction consumes.
struct SweepResult {
    std::vector<double> detuning_ratios;
    std::vector<double> cycle_times;
    std::vector<double> average_times;
    Eigen::MatrixXd ne_per_time;  // (grid points) x (cycle times)
    Eigen::MatrixXd nee_per_time; // same layout
    Eigen::VectorXd ne_average;
    Eigen::VectorXd nee_average;
};

SweepResult sweep(const LatticeParams& base,
                  const std::vector<double>& detuning_ratios,
                  const std::vector<double>& cycle_times,
                  const std::vector<double>& average_times = {},
                  int threads = 1);

} // namespace rydspec
