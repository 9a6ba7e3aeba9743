#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <xxxring/lattice.hpp>

using namespace xxxring;
using Catch::Approx;

TEST_CASE("binomial coefficients") {
    REQUIRE(binomial(7, 3) == 35);
    REQUIRE(binomial(7, 0) == 1);
    REQUIRE(binomial(7, 7) == 1);
    REQUIRE(binomial(4, 2) == 6);
    REQUIRE(binomial(14, 7) == 3432);
}

TEST_CASE("configuration enumeration is lexicographic and ranked consistently") {
    for (const auto [N, r] : std::vector<std::pair<int, int>>{{7, 3}, {7, 2}, {6, 3}, {5, 1}, {4, 2}}) {
        const auto configs = enumerate_configurations(N, r);
        REQUIRE(static_cast<std::int64_t>(configs.size()) == binomial(N, r));
        for (std::size_t i = 0; i < configs.size(); ++i) {
            REQUIRE(configuration_index(configs[i]) == static_cast<std::int64_t>(i));
            if (i > 0) REQUIRE(configs[i - 1].nodes < configs[i].nodes);
        }
    }
}

TEST_CASE("translation has period N") {
    const SpinConfiguration c{7, {1, 2, 5}};
    SpinConfiguration cur = c;
    for (int j = 0; j < 7; ++j) cur = translate(cur);
    REQUIRE(cur == c);
    // One step moves each node up by one (mod N, 1-based).
    const auto once = translate(c);
    REQUIRE(once.nodes == std::vector<int>{2, 3, 6});
    const auto wrap = translate(SpinConfiguration{7, {6, 7}});
    REQUIRE(wrap.nodes == std::vector<int>{1, 7});
}

TEST_CASE("relative positions are rotation invariant and sum to N") {
    const SpinConfiguration c{7, {1, 2, 4}};
    const auto t = relative_positions(c);
    REQUIRE(t == Triad{1, 2, 4});
    REQUIRE(std::accumulate(t.begin(), t.end(), 0) == 7);
    SpinConfiguration cur = c;
    for (int j = 0; j < 7; ++j) {
        cur = translate(cur);
        REQUIRE(relative_positions(cur) == t);
    }
    REQUIRE(relative_positions(SpinConfiguration{7, {3, 4, 5}}) == Triad{1, 1, 5});
    REQUIRE(relative_positions(SpinConfiguration{5, {2}}) == Triad{5});
    REQUIRE_THROWS_AS(relative_positions(SpinConfiguration{5, {}}), std::domain_error);
}

TEST_CASE("heptagon three-deviation orbits use the conventional order") {
    const auto orbits = orbit_decompose(7, 3);
    REQUIRE(orbits.size() == 5);
    const std::vector<Triad> expected{{1, 1, 5}, {1, 3, 3}, {2, 2, 3}, {1, 2, 4}, {1, 4, 2}};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        REQUIRE(orbits[i].triad == expected[i]);
        REQUIRE(orbits[i].size == 7);
        REQUIRE(orbits[i].members.size() == 7);
        // Representative is the lexicographically smallest member.
        for (const auto& m : orbits[i].members)
            REQUIRE(orbits[i].members[0].nodes <= m.nodes);
    }
    // Orbits partition the sector.
    int total = 0;
    for (const auto& o : orbits) total += o.size;
    REQUIRE(total == 35);
}

TEST_CASE("square sector splits into a free orbit and a stabilized one") {
    const auto orbits = orbit_decompose(4, 2);
    REQUIRE(orbits.size() == 2);
    REQUIRE(orbits[0].triad == Triad{1, 3});
    REQUIRE(orbits[0].size == 4);
    REQUIRE(orbits[1].triad == Triad{2, 2});
    REQUIRE(orbits[1].size == 2);
    REQUIRE_THROWS_AS(orbit_decompose(4, 0), std::domain_error);
}

TEST_CASE("wavelet columns are orthonormal and carry the right amplitudes") {
    const WaveletBasis basis = wavelet_basis({7, 3, 0});
    REQUIRE(basis.vectors.rows() == 35);
    REQUIRE(basis.vectors.cols() == 5);
    const Eigen::MatrixXcd gram = basis.vectors.adjoint() * basis.vectors;
    REQUIRE((gram - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-13);

    const WaveletBasis b2 = wavelet_basis({7, 2, 3});
    const double w = 2.0 * std::numbers::pi * 3 / 7.0;
    for (Eigen::Index col = 0; col < b2.vectors.cols(); ++col) {
        const auto& orbit = b2.orbits[static_cast<std::size_t>(col)];
        for (int j = 0; j < orbit.size; ++j) {
            const auto idx = configuration_index(orbit.members[static_cast<std::size_t>(j)]);
            const cplx expected = std::polar(1.0 / std::sqrt(7.0), -w * j);
            REQUIRE(std::abs(b2.vectors(idx, col) - expected) < 1e-13);
        }
    }
}

TEST_CASE("stabilized orbits appear only at compatible quasimomenta") {
    REQUIRE(wavelet_basis({4, 2, 0}).vectors.cols() == 2);
    REQUIRE(wavelet_basis({4, 2, 1}).vectors.cols() == 1);
    REQUIRE(wavelet_basis({4, 2, 2}).vectors.cols() == 2);
    REQUIRE(wavelet_basis({4, 2, 3}).vectors.cols() == 1);
    // Columns across all k tile the full sector.
    int total = 0;
    for (int k = 0; k < 7; ++k) total += static_cast<int>(wavelet_basis({7, 3, k}).vectors.cols());
    REQUIRE(total == 35);
    REQUIRE_THROWS_AS(wavelet_basis({7, 0, 0}), std::domain_error);
}

TEST_CASE("wavelets diagonalize the translation operator") {
    for (int k = 0; k < 7; ++k) {
        const WaveletBasis basis = wavelet_basis({7, 2, k});
        const auto configs = enumerate_configurations(7, 2);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(21, 21);
        for (const auto& c : configs)
            T(configuration_index(translate(c)), configuration_index(c)) = 1.0;
        const cplx eig = std::polar(1.0, 2.0 * std::numbers::pi * k / 7.0);
        REQUIRE((T * basis.vectors - eig * basis.vectors).norm() < 1e-12);
    }
}

TEST_CASE("reflection fixes the expected nodes") {
    const auto p7 = parity_permutation(7);
    REQUIRE(p7 == std::vector<int>{6, 5, 4, 3, 2, 1, 7});
    const auto p6 = parity_permutation(6);
    REQUIRE(p6 == std::vector<int>{5, 4, 3, 2, 1, 6});  // nodes 3 and 6 fixed
    REQUIRE(p6[2] == 3);
    REQUIRE(p6[5] == 6);

    const SpinConfiguration c{7, {1, 2, 4}};
    const auto r = parity_apply(c);
    REQUIRE(r.nodes == std::vector<int>{3, 5, 6});
    REQUIRE(parity_apply(r) == c);
}

TEST_CASE("configuration-space reflection is a symmetric involution") {
    const Eigen::MatrixXd P = parity_configuration_matrix(7, 3);
    REQUIRE((P * P - Eigen::MatrixXd::Identity(35, 35)).norm() < 1e-14);
    REQUIRE((P - P.transpose()).norm() < 1e-14);
    for (Eigen::Index j = 0; j < 35; ++j) REQUIRE(P.col(j).sum() == Approx(1.0));
}

TEST_CASE("wavelet-basis reflection at zero quasimomentum") {
    const WaveletBasis basis = wavelet_basis({7, 3, 0});
    const Eigen::MatrixXcd Pi = parity_matrix(basis);
    REQUIRE(Pi.imag().norm() < 1e-13);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(5, 5);
    expected(0, 0) = expected(1, 1) = expected(2, 2) = 1.0;
    expected(3, 4) = expected(4, 3) = 1.0;
    REQUIRE((Pi.real() - expected).norm() < 1e-13);
    REQUIRE((Pi * Pi - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-13);

    REQUIRE_THROWS_AS(parity_matrix(wavelet_basis({7, 3, 1})), std::domain_error);
    REQUIRE_NOTHROW(parity_matrix(wavelet_basis({6, 2, 3})));
}

TEST_CASE("projection onto the wavelet basis") {
    const WaveletBasis basis = wavelet_basis({7, 3, 0});
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(5);
    coeffs(2) = cplx(0.6, -0.8);
    const Eigen::VectorXcd v = basis.vectors * coeffs;
    REQUIRE((fourier_project(v, basis) - coeffs).norm() < 1e-13);
    REQUIRE_THROWS_AS(fourier_project(Eigen::VectorXcd::Zero(3), basis), std::domain_error);
}
