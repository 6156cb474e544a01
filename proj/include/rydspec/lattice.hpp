#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace rydspec {

// A many-body basis state of the open chain, encoded as a bit pattern:
// bit k is 1 when site k carries the excitation |e> and 0 for the ground
// state |g>.  Site 0 is the leftmost site and sits in the least significant
// bit, so the basis index of a state equals its bit pattern read as an
// integer and the computational basis is simply 0 .. 2^N - 1.
using BasisState = std::uint32_t;

// Hard cap for basis enumeration (2^24 states).
inline constexpr int kMaxSites = 24;

// Cap for operations that materialise dense 2^N x 2^N matrices.
inline constexpr int kMaxDenseSites = 12;

// Model parameters of the driven chain.  All energies (rabi, detuning,
// interaction) share one unit; the natural choice is the nearest-neighbour
// interaction itself, i.e. interaction = 1 and everything else measured in
// units of V.  Times are then measured in 1/rabi.
struct LatticeParams {
    int n_sites = 1;
    double rabi = 0.0;        // laser coupling strength Omega
    double detuning = 0.0;    // laser detuning Delta
    double interaction = 1.0; // nearest-neighbour interaction V
    int exponent = 6;         // power-law exponent of the interaction tail

    void validate() const;
    std::size_t dimension() const; // 2^n_sites
};

// Number of excited sites in a basis state.
int excitation_count(BasisState state);

// Number of adjacent excited pairs (bonds with both ends excited).  The
// chain is open, so there are n_sites - 1 bonds and no wrap-around.
int adjacent_pair_count(BasisState state, int n_sites);

// All 2^n basis states in index order.
std::vector<BasisState> enumerate_basis(int n_sites);

// Energy of a basis state under the diagonal part of the model with the
// interaction truncated to nearest neighbours:
//   E = detuning * (n_e - N/2) + interaction * n_ee.
double unperturbed_energy(BasisState state, double detuning, double interaction,
                          int n_sites);

// Collective coupling of a site holding n_atoms ground-state atoms:
// sqrt(n_atoms) * single_atom_rabi.
double collective_rabi(double single_atom_rabi, int n_atoms);

// Dense Hamiltonian of the driven chain,
//   H = rabi/2 * sum_k sigma_x^(k)
//     + detuning * sum_k n_e^(k)          (up to a constant, see below)
//     + interaction * sum_{k<l} n_e^(k) n_e^(l) / (l-k)^exponent,
// written in the symmetrised detuning form detuning/2 * sum_k sigma_z^(k),
// which shifts the diagonal by detuning * N/2 and nothing else.  The
// returned matrix is exactly build_h0 + build_hprime, entry by entry.
Eigen::MatrixXd build_full_hamiltonian(const LatticeParams& params);

// Diagonal reference part: detuning and nearest-neighbour interactions only
// (the diagonal holds unperturbed_energy of each basis state).
Eigen::MatrixXd build_h0(const LatticeParams& params);

// Everything else: the laser coupling (off-diagonal, connects states that
// differ on exactly one site) and the interaction tail between sites at
// distance >= 2.
Eigen::MatrixXd build_hprime(const LatticeParams& params);

} // namespace rydspec
