#include "rydspec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rydspec/errors.hpp"
#include "rydspec/thread_pool.hpp"

namespace rydspec {

namespace {

int site_count_for_dimension(Eigen::Index dim, const char* what) {
    if (dim < 2)
        throw std::invalid_argument(std::string(what) + ": state dimension must be >= 2");
    int n = 0;
    while ((Eigen::Index{1} << n) < dim)
        ++n;
    if ((Eigen::Index{1} << n) != dim)
        throw std::invalid_argument(std::string(what) +
                                    ": state dimension must be a power of two, got " +
                                    std::to_string(dim));
    return n;
}

} // namespace

Observables observables(const Eigen::VectorXcd& state, int n_sites) {
    int n_from_dim = site_count_for_dimension(state.size(), "observables");
    if (n_sites != n_from_dim)
        throw std::invalid_argument("observables: state dimension " +
                                    std::to_string(state.size()) +
                                    " does not match n_sites = " +
                                    std::to_string(n_sites));
    Observables obs;
    for (Eigen::Index a = 0; a < state.size(); ++a) {
        double p = std::norm(state(a));
        auto bits = static_cast<BasisState>(a);
        obs.excitations += p * excitation_count(bits);
        obs.pairs += p * adjacent_pair_count(bits, n_sites);
    }
    return obs;
}

Eigen::VectorXcd canonical_ground_state(int n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw ConfigError("canonical_ground_state: n_sites must be in [1, " +
                          std::to_string(kMaxSites) + "], got " +
                          std::to_string(n_sites));
    Eigen::VectorXcd state =
        Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
    state(0) = 1.0;
    return state;
}

Propagator::Propagator(const Eigen::MatrixXd& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("Propagator: hamiltonian must be square");
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    const double asymmetry =
        (hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12 * scale)
        throw std::invalid_argument("Propagator: hamiltonian is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Propagator: eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& initial,
                                    double time) const {
    if (initial.size() != eigenvalues_.size())
        throw std::invalid_argument("Propagator::evolve: state dimension " +
                                    std::to_string(initial.size()) +
                                    " does not match the hamiltonian");
    // U^T psi, phase per mode, then U back; the two real products per
    // direction avoid promoting the eigenvector matrix to complex
    Eigen::VectorXcd modal(initial.size());
    modal.real() = eigenvectors_.transpose() * initial.real();
    modal.imag() = eigenvectors_.transpose() * initial.imag();
    for (Eigen::Index j = 0; j < modal.size(); ++j)
        modal(j) *= std::exp(std::complex<double>(0.0, -eigenvalues_(j) * time));
    Eigen::VectorXcd out(initial.size());
    out.real() = eigenvectors_ * modal.real();
    out.imag() = eigenvectors_ * modal.imag();
    return out;
}

Eigen::VectorXcd propagate(const Eigen::MatrixXd& hamiltonian,
                           const Eigen::VectorXcd& initial, double time) {
    if (std::abs(initial.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: initial state is not normalised");
    Propagator prop(hamiltonian);
    Eigen::VectorXcd out = prop.evolve(initial, time);
    if (std::abs(out.norm() - 1.0) > 1e-9)
        throw NumericalError("propagate: norm drifted by more than 1e-9");
    return out;
}

SweepResult sweep(const LatticeParams& base,
                  const std::vector<double>& detuning_ratios,
                  const std::vector<double>& cycle_times,
                  const std::vector<double>& average_times, int threads) {
    base.validate();
    if (base.n_sites > kMaxDenseSites)
        throw ConfigError("sweep: n_sites must be <= " +
                          std::to_string(kMaxDenseSites) + ", got " +
                          std::to_string(base.n_sites));
    if (!(base.rabi > 0.0))
        throw ConfigError("sweep: rabi must be > 0 (cycle times are in units of 1/rabi)");
    if (detuning_ratios.empty())
        throw ConfigError("sweep: detuning grid is empty");
    for (std::size_t i = 1; i < detuning_ratios.size(); ++i)
        if (!(detuning_ratios[i] > detuning_ratios[i - 1]))
            throw ConfigError("sweep: detuning grid must be strictly increasing");
    if (cycle_times.empty())
        throw ConfigError("sweep: cycle-time list is empty");
    for (double t : cycle_times)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw ConfigError("sweep: cycle times must be finite and >= 0");
    for (double t : average_times)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw ConfigError("sweep: averaging times must be finite and >= 0");

    const bool separate_average = !average_times.empty();

    SweepResult result;
    result.detuning_ratios = detuning_ratios;
    result.cycle_times = cycle_times;
    result.average_times = separate_average ? average_times : cycle_times;

    const auto n_points = static_cast<Eigen::Index>(detuning_ratios.size());
    const auto n_times = static_cast<Eigen::Index>(cycle_times.size());
    result.ne_per_time.resize(n_points, n_times);
    result.nee_per_time.resize(n_points, n_times);
    result.ne_average.resize(n_points);
    result.nee_average.resize(n_points);

    const Eigen::VectorXcd psi0 = canonical_ground_state(base.n_sites);

    parallel_for(detuning_ratios.size(), threads, [&](std::size_t i) {
        const double ratio = detuning_ratios[i];
        LatticeParams p = base;
        p.detuning = ratio * base.interaction;
        const Propagator prop(build_full_hamiltonian(p));
        const auto row = static_cast<Eigen::Index>(i);

        auto measure = [&](double cycle_time) {
            Eigen::VectorXcd psi = prop.evolve(psi0, cycle_time / base.rabi);
            if (std::abs(psi.norm() - 1.0) > 1e-9)
                throw NumericalError("sweep: norm drifted at delta/V = " +
                                     std::to_string(ratio) + ", T = " +
                                     std::to_string(cycle_time));
            return observables(psi, base.n_sites);
        };

        for (Eigen::Index j = 0; j < n_times; ++j) {
            Observables obs = measure(cycle_times[static_cast<std::size_t>(j)]);
            result.ne_per_time(row, j) = obs.excitations;
            result.nee_per_time(row, j) = obs.pairs;
        }

        if (separate_average) {
            double ne_sum = 0.0;
            double nee_sum = 0.0;
            for (double t : average_times) {
                Observables obs = measure(t);
                ne_sum += obs.excitations;
                nee_sum += obs.pairs;
            }
            result.ne_average(row) = ne_sum / static_cast<double>(average_times.size());
            result.nee_average(row) = nee_sum / static_cast<double>(average_times.size());
        } else {
            result.ne_average(row) = result.ne_per_time.row(row).mean();
            result.nee_average(row) = result.nee_per_time.row(row).mean();
        }
    });

    return result;
}

} // namespace rydspec
