#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rydspec/lattice.hpp"

namespace rydspec {

// Detuning at which kappa-fold excited clusters cross the ground state in
// the nearest-neighbour model:
//   Delta_kappa = interaction * (-1 + 1/kappa),  kappa >= 2.
// The sequence starts at -interaction/2 and accumulates towards -interaction.
double resonance_detuning(int kappa, double interaction);

// States that share both excitation count and adjacent-pair count; all of
// them have the same unperturbed energy for any detuning.
struct DegeneracyClass {
    int excitations = 0;
    int pairs = 0;
    double energy = 0.0;
    std::vector<BasisState> members;
};

// A group of classes whose unperturbed energies coincide at one particular
// detuning.  At a resonance several (n_e, n_ee) classes collapse onto the
// ground-state energy; away from it each group usually holds one class.
struct DegeneracyGroup {
    double energy = 0.0;
    std::vector<DegeneracyClass> classes;
};

// Partition of the basis by unperturbed energy at the given detuning.
// Groups are sorted by energy; classes inside a group by (n_e, n_ee);
// members in index order.  Energies within 1e-12 * |interaction| of each
// other are treated as degenerate.
std::vector<DegeneracyGroup> degeneracy_classes(int n_sites, double detuning,
                                                double interaction);

// Eigenvalues of the full Hamiltonian along a grid of detuning ratios
// Delta / interaction.  Row i of `eigenvalues` holds the sorted spectrum at
// ratios[i], in units of the interaction.  `ground_state_line` is the
// unperturbed energy of the all-ground state in the same units,
// -n_sites * ratio / 2.
struct SpectrumScan {
    std::vector<double> ratios;
    Eigen::MatrixXd eigenvalues;
    std::vector<double> ground_state_line;
};

SpectrumScan scan_spectrum(const LatticeParams& base,
                           const std::vector<double>& detuning_ratios,
                           int threads = 1);

} // namespace rydspec
