#include "rydspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "rydspec/errors.hpp"
#include "rydspec/thread_pool.hpp"

namespace rydspec {

double resonance_detuning(int kappa, double interaction) {
    if (kappa < 2)
        throw std::domain_error("resonance_detuning: kappa must be >= 2, got " +
                                std::to_string(kappa));
    if (interaction <= 0.0)
        throw std::domain_error("resonance_detuning: interaction must be > 0");
    return interaction * (-1.0 + 1.0 / static_cast<double>(kappa));
}

std::vector<DegeneracyGroup> degeneracy_classes(int n_sites, double detuning,
                                                double interaction) {
    if (n_sites < 1 || n_sites > 16)
        throw ConfigError("degeneracy_classes: n_sites must be in [1, 16], got " +
                          std::to_string(n_sites));
    if (interaction <= 0.0)
        throw ConfigError("degeneracy_classes: interaction must be > 0");

    // bucket by (n_e, n_ee); the energy is a function of those two counts
    std::map<std::pair<int, int>, DegeneracyClass> buckets;
    for (BasisState state : enumerate_basis(n_sites)) {
        int ne = excitation_count(state);
        int nee = adjacent_pair_count(state, n_sites);
        auto& cls = buckets[{ne, nee}];
        if (cls.members.empty()) {
            cls.excitations = ne;
            cls.pairs = nee;
            cls.energy = unperturbed_energy(state, detuning, interaction, n_sites);
        }
        cls.members.push_back(state);
    }

    std::vector<DegeneracyClass> classes;
    classes.reserve(buckets.size());
    for (auto& [key, cls] : buckets)
        classes.push_back(std::move(cls));
    std::sort(classes.begin(), classes.end(),
              [](const DegeneracyClass& a, const DegeneracyClass& b) {
                  if (a.energy != b.energy)
                      return a.energy < b.energy;
                  if (a.excitations != b.excitations)
                      return a.excitations < b.excitations;
                  return a.pairs < b.pairs;
              });

    const double tol = 1e-12 * std::abs(interaction);
    std::vector<DegeneracyGroup> groups;
    for (auto& cls : classes) {
        if (groups.empty() || cls.energy - groups.back().energy > tol) {
            groups.push_back({cls.energy, {}});
        }
        groups.back().classes.push_back(std::move(cls));
    }
    return groups;
}

SpectrumScan scan_spectrum(const LatticeParams& base,
                           const std::vector<double>& detuning_ratios,
                           int threads) {
    base.validate();
    if (base.n_sites > 12)
        throw ConfigError("scan_spectrum: n_sites must be <= 12, got " +
                          std::to_string(base.n_sites));
    if (detuning_ratios.empty())
        throw ConfigError("scan_spectrum: detuning grid is empty");
    for (std::size_t i = 1; i < detuning_ratios.size(); ++i)
        if (!(detuning_ratios[i] > detuning_ratios[i - 1]))
            throw ConfigError("scan_spectrum: detuning grid must be strictly increasing");

    const auto dim = static_cast<Eigen::Index>(base.dimension());
    SpectrumScan scan;
    scan.ratios = detuning_ratios;
    scan.eigenvalues.resize(static_cast<Eigen::Index>(detuning_ratios.size()), dim);
    scan.ground_state_line.resize(detuning_ratios.size());

    parallel_for(detuning_ratios.size(), threads, [&](std::size_t i) {
        LatticeParams p = base;
        p.detuning = detuning_ratios[i] * base.interaction;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.compute(build_full_hamiltonian(p), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericalError("scan_spectrum: eigenvalue solver failed at delta/V = " +
                                 std::to_string(detuning_ratios[i]));
        scan.eigenvalues.row(static_cast<Eigen::Index>(i)) =
            solver.eigenvalues().transpose() / base.interaction;
        scan.ground_state_line[i] = -0.5 * base.n_sites * detuning_ratios[i];
    });

    return scan;
}

} // namespace rydspec
