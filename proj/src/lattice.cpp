#include "rydspec/lattice.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "rydspec/errors.hpp"

namespace rydspec {

namespace {

// Exact small integer powers; std::pow is not guaranteed to round-trip
// integer arguments and the tail weights 1/d^m must be reproducible.
double ipow(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i)
        out *= base;
    return out;
}

void check_site_count(int n_sites, int cap, const char* what) {
    if (n_sites < 1)
        throw ConfigError(std::string(what) + ": n_sites must be >= 1, got " +
                          std::to_string(n_sites));
    if (n_sites > cap)
        throw ConfigError(std::string(what) + ": n_sites = " + std::to_string(n_sites) +
                          " exceeds the cap of " + std::to_string(cap));
}

} // namespace

void LatticeParams::validate() const {
    check_site_count(n_sites, kMaxSites, "LatticeParams");
    if (!std::isfinite(rabi) || !std::isfinite(detuning) || !std::isfinite(interaction))
        throw ConfigError("LatticeParams: rabi, detuning and interaction must be finite");
    if (interaction <= 0.0)
        throw ConfigError("LatticeParams: interaction must be > 0, got " +
                          std::to_string(interaction));
    if (exponent < 1)
        throw ConfigError("LatticeParams: exponent must be >= 1, got " +
                          std::to_string(exponent));
}

std::size_t LatticeParams::dimension() const {
    check_site_count(n_sites, kMaxSites, "LatticeParams");
    return std::size_t{1} << n_sites;
}

int excitation_count(BasisState state) {
    return std::popcount(state);
}

int adjacent_pair_count(BasisState state, int n_sites) {
    BasisState mask = (n_sites >= 32) ? ~BasisState{0}
                                      : ((BasisState{1} << n_sites) - 1);
    BasisState s = state & mask;
    return std::popcount(s & (s >> 1));
}

std::vector<BasisState> enumerate_basis(int n_sites) {
    check_site_count(n_sites, kMaxSites, "enumerate_basis");
    std::vector<BasisState> basis(std::size_t{1} << n_sites);
    for (std::size_t i = 0; i < basis.size(); ++i)
        basis[i] = static_cast<BasisState>(i);
    return basis;
}

double unperturbed_energy(BasisState state, double detuning, double interaction,
                          int n_sites) {
    int ne = excitation_count(state);
    int nee = adjacent_pair_count(state, n_sites);
    return detuning * (ne - 0.5 * n_sites) + interaction * nee;
}

double collective_rabi(double single_atom_rabi, int n_atoms) {
    if (n_atoms < 1)
        throw ConfigError("collective_rabi: n_atoms must be >= 1, got " +
                          std::to_string(n_atoms));
    return std::sqrt(static_cast<double>(n_atoms)) * single_atom_rabi;
}

Eigen::MatrixXd build_h0(const LatticeParams& params) {
    params.validate();
    check_site_count(params.n_sites, kMaxDenseSites, "build_h0");
    const auto dim = static_cast<Eigen::Index>(params.dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        h(a, a) = unperturbed_energy(static_cast<BasisState>(a), params.detuning,
                                     params.interaction, params.n_sites);
    return h;
}

Eigen::MatrixXd build_hprime(const LatticeParams& params) {
    params.validate();
    check_site_count(params.n_sites, kMaxDenseSites, "build_hprime");
    const int n = params.n_sites;
    const auto dim = static_cast<Eigen::Index>(params.dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    // interaction tail: pairs of excited sites at distance >= 2
    for (Eigen::Index a = 0; a < dim; ++a) {
        const auto bits = static_cast<BasisState>(a);
        double tail = 0.0;
        for (int k = 0; k < n; ++k) {
            if (!((bits >> k) & 1u))
                continue;
            for (int l = k + 2; l < n; ++l)
                if ((bits >> l) & 1u)
                    tail += params.interaction / ipow(static_cast<double>(l - k),
                                                      params.exponent);
        }
        h(a, a) = tail;
    }

    // laser coupling: flip one site
    const double half_rabi = 0.5 * params.rabi;
    for (Eigen::Index a = 0; a < dim; ++a)
        for (int k = 0; k < n; ++k) {
            const auto b = static_cast<Eigen::Index>(
                static_cast<BasisState>(a) ^ (BasisState{1} << k));
            h(a, b) += half_rabi;
        }

    return h;
}

Eigen::MatrixXd build_full_hamiltonian(const LatticeParams& params) {
    return build_h0(params) + build_hprime(params);
}

} // namespace rydspec
