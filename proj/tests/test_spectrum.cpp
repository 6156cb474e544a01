#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rydspec/errors.hpp"
#include "rydspec/spectrum.hpp"

using namespace rydspec;

TEST_CASE("resonance positions") {
    CHECK(resonance_detuning(2, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(resonance_detuning(3, 1.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(resonance_detuning(4, 1.0) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(resonance_detuning(10, 1.0) == doctest::Approx(-0.9).epsilon(1e-15));
    CHECK(resonance_detuning(2, 2.5) == doctest::Approx(-1.25).epsilon(1e-15));

    // the sequence marches monotonically towards -interaction
    for (int kappa = 2; kappa < 40; ++kappa) {
        CHECK(resonance_detuning(kappa + 1, 1.0) < resonance_detuning(kappa, 1.0));
        CHECK(resonance_detuning(kappa, 1.0) > -1.0);
    }

    CHECK_THROWS_AS(resonance_detuning(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(resonance_detuning(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(resonance_detuning(2, 0.0), std::domain_error);
}

TEST_CASE("position ratios of adjacent orders obey 1 - 1/kappa^2") {
    for (int kappa = 2; kappa <= 10; ++kappa) {
        double ratio = resonance_detuning(kappa, 1.0) / resonance_detuning(kappa + 1, 1.0);
        double k = kappa;
        CHECK(ratio == doctest::Approx(1.0 - 1.0 / (k * k)).epsilon(1e-14));
    }
    CHECK(resonance_detuning(2, 1.0) / resonance_detuning(3, 1.0) ==
          doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("degenerate manifold at the first resonance of an 8-site chain") {
    auto groups = degeneracy_classes(8, -0.5, 1.0);

    // total booking: every basis state appears exactly once
    std::set<BasisState> seen;
    std::size_t total = 0;
    for (const auto& group : groups)
        for (const auto& cls : group.classes) {
            total += cls.members.size();
            seen.insert(cls.members.begin(), cls.members.end());
        }
    CHECK(total == 256);
    CHECK(seen.size() == 256);

    // group containing all-ground
    const DegeneracyGroup* ground_group = nullptr;
    for (const auto& group : groups)
        for (const auto& cls : group.classes)
            if (std::find(cls.members.begin(), cls.members.end(), BasisState{0}) !=
                cls.members.end())
                ground_group = &group;
    REQUIRE(ground_group != nullptr);

    // every member has its excitation count balanced by pairs: ne = 2 nee
    for (const auto& cls : ground_group->classes)
        CHECK(cls.excitations == 2 * cls.pairs);

    REQUIRE(ground_group->classes.size() == 4);
    auto find_class = [&](int ne, int nee) -> const DegeneracyClass* {
        for (const auto& cls : ground_group->classes)
            if (cls.excitations == ne && cls.pairs == nee)
                return &cls;
        return nullptr;
    };
    const DegeneracyClass* empty_chain = find_class(0, 0);
    const DegeneracyClass* quads = find_class(4, 2);
    const DegeneracyClass* sextets = find_class(6, 3);
    REQUIRE(empty_chain != nullptr);
    REQUIRE(quads != nullptr);
    REQUIRE(sextets != nullptr);
    CHECK(empty_chain->members.size() == 1);
    CHECK(quads->members.size() == 30);
    CHECK(sextets->members.size() == 10);

    // the doubly-excited class is exactly the 7 adjacent doublets
    const DegeneracyClass* doublets = find_class(2, 1);
    REQUIRE(doublets != nullptr);
    REQUIRE(doublets->members.size() == 7);
    for (int k = 0; k < 7; ++k)
        CHECK(doublets->members[static_cast<std::size_t>(k)] ==
              (BasisState{0b11} << k));
}

TEST_CASE("at zero detuning the ground group is the blockade-allowed set") {
    auto groups = degeneracy_classes(8, 0.0, 1.0);
    const DegeneracyGroup* ground_group = nullptr;
    for (const auto& group : groups)
        for (const auto& cls : group.classes)
            if (std::find(cls.members.begin(), cls.members.end(), BasisState{0}) !=
                cls.members.end())
                ground_group = &group;
    REQUIRE(ground_group != nullptr);

    std::size_t member_count = 0;
    for (const auto& cls : ground_group->classes) {
        CHECK(cls.pairs == 0);
        member_count += cls.members.size();
        for (BasisState s : cls.members)
            CHECK(adjacent_pair_count(s, 8) == 0);
    }

    // independent count of pair-free bit strings via the two-term recurrence
    long a1 = 2, a2 = 3;
    for (int n = 3; n <= 8; ++n) {
        long next = a2 + a1;
        a1 = a2;
        a2 = next;
    }
    CHECK(member_count == static_cast<std::size_t>(a2));
    CHECK(member_count == 55);
}

TEST_CASE("generic detuning keeps every class in its own group") {
    auto groups = degeneracy_classes(8, -0.3, 1.0);
    for (const auto& group : groups)
        CHECK(group.classes.size() == 1);
    // groups are sorted
    for (std::size_t i = 1; i < groups.size(); ++i)
        CHECK(groups[i].energy > groups[i - 1].energy);
}

TEST_CASE("degeneracy classification caps the chain length") {
    CHECK_THROWS_AS(degeneracy_classes(17, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(degeneracy_classes(0, 0.0, 1.0), ConfigError);
    CHECK_NOTHROW(degeneracy_classes(16, 0.0, 1.0));
}

TEST_CASE("spectrum scan matches a direct diagonalisation") {
    LatticeParams base;
    base.n_sites = 2;
    base.rabi = 0.15;
    base.interaction = 1.0;

    std::vector<double> ratios{-0.8, -0.5, -0.2, 0.0, 0.2};
    SpectrumScan scan = scan_spectrum(base, ratios);
    REQUIRE(scan.eigenvalues.rows() == 5);
    REQUIRE(scan.eigenvalues.cols() == 4);

    for (std::size_t i = 0; i < ratios.size(); ++i) {
        LatticeParams p = base;
        p.detuning = ratios[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_full_hamiltonian(p));
        for (Eigen::Index c = 0; c < 4; ++c)
            CHECK(scan.eigenvalues(static_cast<Eigen::Index>(i), c) ==
                  doctest::Approx(solver.eigenvalues()(c)).epsilon(1e-12));
        // rows are sorted ascending
        for (Eigen::Index c = 1; c < 4; ++c)
            CHECK(scan.eigenvalues(static_cast<Eigen::Index>(i), c) >=
                  scan.eigenvalues(static_cast<Eigen::Index>(i), c - 1));
        CHECK(scan.ground_state_line[i] == doctest::Approx(-ratios[i]).epsilon(1e-14));
    }
}

TEST_CASE("spectrum scan reports energies in units of the interaction") {
    LatticeParams narrow;
    narrow.n_sites = 3;
    narrow.rabi = 0.3;
    narrow.interaction = 2.0;
    std::vector<double> ratios{-0.5, 0.0};
    SpectrumScan scaled = scan_spectrum(narrow, ratios);

    LatticeParams unit = narrow;
    unit.rabi = 0.15;
    unit.interaction = 1.0;
    SpectrumScan reference = scan_spectrum(unit, ratios);

    // the model only depends on the ratios rabi/V and detuning/V
    CHECK((scaled.eigenvalues - reference.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectrum scan is deterministic across thread counts") {
    LatticeParams base;
    base.n_sites = 4;
    base.rabi = 0.15;
    std::vector<double> ratios;
    for (int i = 0; i <= 40; ++i)
        ratios.push_back(-1.0 + 0.03 * i);
    SpectrumScan serial = scan_spectrum(base, ratios, 1);
    SpectrumScan parallel = scan_spectrum(base, ratios, 3);
    CHECK((serial.eigenvalues - parallel.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("avoided crossing near the first resonance is perturbatively narrow") {
    LatticeParams base;
    base.n_sites = 8;
    base.rabi = 0.15;
    std::vector<double> ratios{-0.52, -0.51, -0.50, -0.49, -0.48};
    SpectrumScan scan = scan_spectrum(base, ratios);

    // gap between the eigenvalues bracketing the unperturbed ground line
    std::vector<double> gaps;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        double line = scan.ground_state_line[i];
        double below = -1e300;
        double above = 1e300;
        for (Eigen::Index c = 0; c < scan.eigenvalues.cols(); ++c) {
            double v = scan.eigenvalues(static_cast<Eigen::Index>(i), c);
            if (v < line)
                below = std::max(below, v);
            else
                above = std::min(above, v);
        }
        gaps.push_back(above - below);
    }
    auto smallest = std::min_element(gaps.begin(), gaps.end());
    // narrowest right at the resonance, and of second order in the coupling
    CHECK(smallest - gaps.begin() == 2);
    CHECK(*smallest > 1e-6);
    CHECK(*smallest <= 0.25 * base.rabi * base.rabi);
}

TEST_CASE("spectrum scan input validation") {
    LatticeParams base;
    base.n_sites = 2;
    CHECK_THROWS_AS(scan_spectrum(base, {}), ConfigError);
    CHECK_THROWS_AS(scan_spectrum(base, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(scan_spectrum(base, {0.2, -0.2}), ConfigError);
    LatticeParams big;
    big.n_sites = 13;
    CHECK_THROWS_AS(scan_spectrum(big, {0.0, 0.1}), ConfigError);
}
