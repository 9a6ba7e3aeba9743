#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <xxxring/inverse_bethe.hpp>

using namespace xxxring;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("Cayley map and its inverse") {
    std::mt19937 rng(41u);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const cplx lambda(dist(rng), dist(rng));
        if (std::abs(lambda - cplx(0, 0.5)) < 0.1 || std::abs(lambda + cplx(0, 0.5)) < 0.1) continue;
        const cplx a = phase_from_lambda(lambda);
        REQUIRE(std::abs(cayley_to_lambda(a) - lambda) < 1e-10);
    }
    // Real rapidity maps to the unit circle.
    REQUIRE(std::abs(std::abs(phase_from_lambda(cplx(0.7, 0))) - 1.0) < 1e-13);
    // lambda = cot(theta/2)/2 inverts the unimodular phase a = exp(i theta).
    const double theta = 2.0 * pi / 7.0;
    const cplx a = std::polar(1.0, theta);
    REQUIRE(std::abs(cayley_to_lambda(a) - cplx(0.5 / std::tan(theta / 2.0), 0)) < 1e-12);
    REQUIRE(cayley_to_lambda(a).real() == Approx(1.038260698286168).margin(1e-12));

    REQUIRE_THROWS_AS(cayley_to_lambda(cplx(1, 0)), std::domain_error);
    REQUIRE_THROWS_AS(phase_from_lambda(cplx(0, 0.5)), std::domain_error);
}

TEST_CASE("two-body scattering ratio is unitary") {
    std::mt19937 rng(43u);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const cplx a(dist(rng), dist(rng));
        const cplx b(dist(rng), dist(rng));
        try {
            const cplx fwd = scattering(a, b);
            const cplx bwd = scattering(b, a);
            REQUIRE(std::abs(fwd * bwd - cplx(1, 0)) < 1e-10);
        } catch (const std::domain_error&) {
            // pole of the ratio; nothing to check
        }
    }
    // Pole at a b - 2b + 1 = 0: pick b = 1/(2 - a).
    const cplx a(0.3, 0.4);
    REQUIRE_THROWS_AS(scattering(a, 1.0 / (2.0 - a)), std::domain_error);
}

TEST_CASE("phase-count energy bookkeeping") {
    // E = sum(a + 1/a) - 2r, real part.
    const std::vector<cplx> phases{cplx(0, 1), cplx(0, -1)};
    REQUIRE(energy_from_phases(phases) == Approx(-4.0).margin(1e-14));
    const double th = 2.0 * pi / 7.0;
    REQUIRE(energy_from_phases({std::polar(1.0, th)}) ==
            Approx(2.0 * std::cos(th) - 2.0).margin(1e-13));
}

TEST_CASE("one-magnon phases solve the system exactly") {
    const std::vector<double> energies{-0.753020396283, -2.445041867913, -3.801937735805};
    for (int k = 1; k <= 3; ++k) {
        const cplx a = std::polar(1.0, 2.0 * pi * k / 7.0);
        const double E = 2.0 * std::cos(2.0 * pi * k / 7.0) - 2.0;
        REQUIRE(E == Approx(energies[static_cast<std::size_t>(k - 1)]).margin(1e-9));
        const auto res = verify_bethe_system({a}, 7, k, E);
        REQUIRE(res.momentum < 1e-13);
        REQUIRE(res.energy < 1e-13);
        REQUIRE(res.max_residual < 1e-13);
    }
}

TEST_CASE("the qubit sextic is the expected palindrome") {
    const auto p = heptagon_qubit_polynomial();
    REQUIRE(p.degree() == 6);
    const std::vector<cplx> expected{cplx(1, 0), cplx(-1, 0), cplx(5, 0), cplx(5, 0),
                                     cplx(5, 0), cplx(-1, 0), cplx(1, 0)};
    for (int i = 0; i <= 6; ++i) REQUIRE(std::abs(p.coefficient(i) - expected[static_cast<std::size_t>(i)]) < 1e-15);
    REQUIRE(p.is_palindromic());
}

TEST_CASE("qubit phase solutions match the frozen constants") {
    const auto sol = solve_qubit_phases();

    SECTION("folded cubic and radical data") {
        REQUIRE(std::abs(sol.folded.coefficient(0) - cplx(7, 0)) < 1e-12);
        REQUIRE(std::abs(sol.folded.coefficient(1) - cplx(2, 0)) < 1e-12);
        REQUIRE(std::abs(sol.folded.coefficient(2) - cplx(-1, 0)) < 1e-12);
        REQUIRE(sol.cubic.roots[0].real() == Approx(-1.3516828810608482).margin(1e-11));
        REQUIRE(std::abs(sol.cubic.roots[0].imag()) < 1e-12);
        REQUIRE(sol.cubic.y1 == Approx(0.2823809834462402).margin(1e-11));
        REQUIRE(sol.cubic.y2 == Approx(-1.9673971978404217).margin(1e-11));
        const cplx xb(1.1758414405304241, 1.9483650578742014);
        const bool match_b = std::abs(sol.cubic.roots[1] - xb) < 1e-9 ||
                             std::abs(sol.cubic.roots[2] - xb) < 1e-9;
        REQUIRE(match_b);
    }

    SECTION("six phases reconstruct the sextic") {
        std::vector<cplx> all;
        for (const auto& lift : sol.lifts) {
            all.push_back(lift.t1);
            all.push_back(lift.t2);
        }
        const auto rebuilt = ComplexPolynomial::from_roots(all);
        for (int i = 0; i <= 6; ++i)
            REQUIRE(std::abs(rebuilt.coefficient(i) - sol.sextic.coefficient(i)) < 1e-8);
        for (const auto& t : all) REQUIRE(std::abs(sol.sextic(t)) < 1e-10);
    }

    SECTION("state phases, conjugacy and products") {
        const cplx a_ref(-0.675841440530424, -0.737047045487438);
        const cplx b_ref(1.016373160545785, 2.310951888232674);
        const cplx c_ref(0.159468279984639, 0.362586830358472);
        REQUIRE(std::abs(sol.state1[0] - a_ref) < 1e-10);
        REQUIRE(std::abs(sol.state1[1] - b_ref) < 1e-10);
        REQUIRE(std::abs(sol.state1[2] - c_ref) < 1e-10);
        for (int i = 0; i < 3; ++i)
            REQUIRE(std::abs(sol.state2[static_cast<std::size_t>(i)] -
                             std::conj(sol.state1[static_cast<std::size_t>(i)])) < 1e-10);
        REQUIRE(std::abs(sol.state1[0] * sol.state1[1] * sol.state1[2] - cplx(1, 0)) < 1e-10);
        REQUIRE(std::abs(std::abs(sol.state1[0]) - 1.0) < 1e-10);
        REQUIRE(std::abs(sol.state1[1]) == Approx(2.5245817537176308).margin(1e-9));
        REQUIRE(std::arg(sol.state1[1]) == Approx(1.1564510348979531).margin(1e-9));
        // b pairs with the conjugate-root lift, so bc is unimodular though not 1.
        REQUIRE(std::abs(std::abs(sol.state1[1] * sol.state1[2]) - 1.0) < 1e-10);
        REQUIRE(std::abs(sol.state1[1] * sol.state1[2] - cplx(1, 0)) > 0.1);
    }

    SECTION("both states sit at the degenerate energy") {
        REQUIRE(sol.energy1 == Approx(-5.0).margin(1e-10));
        REQUIRE(sol.energy2 == Approx(-5.0).margin(1e-10));
        const auto res1 = verify_bethe_system({sol.state1[0], sol.state1[1], sol.state1[2]}, 7, 0, -5.0);
        REQUIRE(res1.momentum < 1e-10);
        REQUIRE(res1.energy < 1e-10);
        REQUIRE(res1.max_residual < 1e-9);
    }

    SECTION("rapidities form a two-string plus a one-string") {
        const auto cls = classify_strings({sol.state1[0], sol.state1[1], sol.state1[2]});
        REQUIRE(cls.classified);
        REQUIRE(cls.pattern == std::vector<int>{2, 1});
        REQUIRE(cls.strings.size() == 2);
        REQUIRE(cls.strings[0].length == 1);
        REQUIRE(cls.strings[0].center == Approx(-0.21990357430657447).margin(1e-10));
        REQUIRE(cls.strings[1].length == 2);
        REQUIRE(cls.strings[1].center == Approx(0.43270039933723864).margin(1e-10));
        REQUIRE(cls.strings[1].half_separation == Approx(0.5030656947652821).margin(1e-10));
        // Deformed string: the half separation is measurably away from 1/2.
        REQUIRE(std::abs(cls.strings[1].half_separation - 0.5) > 1e-3);
    }

    SECTION("string riggings") {
        const auto r1 = compute_riggings({sol.state1[0], sol.state1[1], sol.state1[2]}, 7);
        REQUIRE(r1.size() == 2);
        REQUIRE(r1[0].length == 1);
        REQUIRE(r1[0].rigging == -3);
        REQUIRE(r1[1].length == 2);
        REQUIRE(r1[1].rigging == 3);
        for (const auto& s : r1) REQUIRE(s.residue < 1e-8);
        const auto r2 = compute_riggings({sol.state2[0], sol.state2[1], sol.state2[2]}, 7);
        REQUIRE(r2[0].rigging == 3);
        REQUIRE(r2[1].rigging == -3);
    }
}

TEST_CASE("string classification of plain configurations") {
    const auto real_pair =
        classify_strings({phase_from_lambda(cplx(0.4, 0)), phase_from_lambda(cplx(-1.2, 0))});
    REQUIRE(real_pair.classified);
    REQUIRE(real_pair.pattern == std::vector<int>{1, 1});
    REQUIRE(real_pair.strings[0].center == Approx(0.4).margin(1e-10));
    REQUIRE(real_pair.strings[1].center == Approx(-1.2).margin(1e-10));

    const auto pair = classify_strings(
        {phase_from_lambda(cplx(0.1, 0.52)), phase_from_lambda(cplx(0.1, -0.52))});
    REQUIRE(pair.classified);
    REQUIRE(pair.pattern == std::vector<int>{2});
    REQUIRE(pair.strings[0].half_separation == Approx(0.52).margin(1e-10));
    REQUIRE(pair.strings[0].members[0].imag() > pair.strings[0].members[1].imag());

    // A lone off-axis rapidity cannot be grouped into conjugate strings.
    const auto bad = classify_strings({phase_from_lambda(cplx(0.1, 0.52))});
    REQUIRE_FALSE(bad.classified);
}

TEST_CASE("rigging quantisation rejects non-solutions") {
    REQUIRE_THROWS_AS(compute_riggings({std::polar(1.0, 0.3)}, 7), std::runtime_error);
    // A genuine one-magnon phase has an integer quasimomentum label.
    const auto r = compute_riggings({std::polar(1.0, 2.0 * pi * 2 / 7.0)}, 7);
    REQUIRE(r.size() == 1);
    REQUIRE(r[0].rigging == 2);
    REQUIRE(r[0].residue < 1e-12);
}

TEST_CASE("Newton iteration lands on the two-deviation solutions") {
    SECTION("second tuple") {
        const double th = 2.0 * pi * 2 / 7.0;
        const auto res = solve_bethe_newton({std::polar(1.0, th), std::polar(1.0, -th)}, 7, 0);
        REQUIRE(res.converged);
        REQUIRE(res.residual < 1e-12);
        std::vector<cplx> sorted = res.phases;
        std::sort(sorted.begin(), sorted.end(), [](cplx u, cplx v) { return u.imag() > v.imag(); });
        REQUIRE(std::abs(sorted[0] - cplx(0, 1)) < 1e-8);
        REQUIRE(std::abs(sorted[1] - cplx(0, -1)) < 1e-8);
        REQUIRE(energy_from_phases(res.phases) == Approx(-4.0).margin(1e-10));
        const auto rap = rapidities_from_phases(res.phases);
        std::vector<double> re{rap[0].real(), rap[1].real()};
        std::sort(re.begin(), re.end());
        REQUIRE(re[0] == Approx(-0.5).margin(1e-8));
        REQUIRE(re[1] == Approx(0.5).margin(1e-8));
    }
    SECTION("third tuple") {
        const double th = 2.0 * pi * 3 / 7.0;
        const auto res = solve_bethe_newton({std::polar(1.0, th), std::polar(1.0, -th)}, 7, 0);
        REQUIRE(res.converged);
        const cplx target = std::polar(1.0, 5.0 * pi / 6.0);
        const bool hit = std::abs(res.phases[0] - target) < 1e-8 ||
                         std::abs(res.phases[1] - target) < 1e-8;
        REQUIRE(hit);
        REQUIRE(energy_from_phases(res.phases) == Approx(-4.0 - 2.0 * std::sqrt(3.0)).margin(1e-10));
        // Rapidities +-(2 - sqrt(3))/2.
        const auto rap = rapidities_from_phases(res.phases);
        std::vector<double> re{rap[0].real(), rap[1].real()};
        std::sort(re.begin(), re.end());
        REQUIRE(re[0] == Approx(-0.13397459621556135).margin(1e-8));
        REQUIRE(re[1] == Approx(0.13397459621556135).margin(1e-8));
    }
    SECTION("one-magnon fixed points") {
        for (int k = 1; k <= 3; ++k) {
            const cplx exact = std::polar(1.0, 2.0 * pi * k / 7.0);
            const auto res = solve_bethe_newton({exact * cplx(1.1, 0.02)}, 7, k);
            REQUIRE(res.converged);
            REQUIRE(std::abs(res.phases[0] - exact) < 1e-9);
        }
    }
}
