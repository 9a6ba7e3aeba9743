#pragma once

// Algebraic construction on the periodic ring: sector-graded monodromy blocks
// of the rational six-vertex Lax chain, creation-operator products, transfer
// matrices, the heptagonal qubit density matrices, and parity diagnostics of
// two-deviation states.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "heisenberg.hpp"
#include "inverse_bethe.hpp"
#include "lattice.hpp"

namespace xxxring {

inline constexpr int kMonodromyNodeCap = 14;

// Monodromy matrix over the auxiliary spin restricted to one source sector:
// A, D preserve the deviation number, B raises it, C lowers it. Blocks are
// accumulated node by node, M = L_N ... L_1, each update costing one diagonal
// scaling plus one sparse injection per block.
struct MonodromyBlocks {
    int N = 0;
    int r = 0;  // source sector
    cplx lambda{};
    Eigen::MatrixXcd A;  // r -> r
    Eigen::MatrixXcd B;  // r -> r+1
    Eigen::MatrixXcd C;  // r -> r-1
    Eigen::MatrixXcd D;  // r -> r
};

namespace detail {

inline bool occupies(const SpinConfiguration& c, int j) {
    return std::find(c.nodes.begin(), c.nodes.end(), j) != c.nodes.end();
}

}  // namespace detail

inline MonodromyBlocks monodromy_blocks(int N, int r, cplx lambda) {
    if (N < 1 || N > kMonodromyNodeCap) throw std::domain_error("monodromy_blocks: node count out of range");
    if (r < 0 || r > N) throw std::domain_error("monodromy_blocks: invalid source sector");
    const cplx p = lambda + cplx{0.0, 0.5};
    const cplx q = lambda - cplx{0.0, 0.5};
    const cplx imag_unit{0.0, 1.0};

    const auto src = enumerate_configurations(N, r);
    const auto up = r + 1 <= N ? enumerate_configurations(N, r + 1) : std::vector<SpinConfiguration>{};
    const auto down = r - 1 >= 0 ? enumerate_configurations(N, r - 1) : std::vector<SpinConfiguration>{};
    const auto d0 = static_cast<Eigen::Index>(src.size());
    const auto dp = static_cast<Eigen::Index>(up.size());
    const auto dm = static_cast<Eigen::Index>(down.size());

    auto diags = [&](const std::vector<SpinConfiguration>& cs, int j) {
        Eigen::VectorXcd a(static_cast<Eigen::Index>(cs.size())), d(static_cast<Eigen::Index>(cs.size()));
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            const bool occ = detail::occupies(cs[static_cast<std::size_t>(i)], j);
            a(i) = occ ? q : p;
            d(i) = occ ? p : q;
        }
        return std::pair{a, d};
    };
    // creation pairs at node j: (index in sector t, index in sector t+1 with j added)
    auto create_pairs = [&](const std::vector<SpinConfiguration>& from, int j) {
        std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (detail::occupies(from[i], j)) continue;
            SpinConfiguration tgt = from[i];
            tgt.nodes.insert(std::upper_bound(tgt.nodes.begin(), tgt.nodes.end(), j), j);
            pairs.emplace_back(static_cast<Eigen::Index>(i), configuration_index(tgt));
        }
        return pairs;
    };
    auto annihilate_pairs = [&](const std::vector<SpinConfiguration>& from, int j) {
        std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (!detail::occupies(from[i], j)) continue;
            SpinConfiguration tgt = from[i];
            tgt.nodes.erase(std::find(tgt.nodes.begin(), tgt.nodes.end(), j));
            pairs.emplace_back(static_cast<Eigen::Index>(i), configuration_index(tgt));
        }
        return pairs;
    };

    MonodromyBlocks M{N, r, lambda,
                      Eigen::MatrixXcd::Zero(d0, d0), Eigen::MatrixXcd::Zero(dp, d0),
                      Eigen::MatrixXcd::Zero(dm, d0), Eigen::MatrixXcd::Zero(d0, d0)};

    // node 1 seeds the recursion
    {
        const auto d1 = diags(src, 1);
        M.A = d1.first.asDiagonal();
        M.D = d1.second.asDiagonal();
        for (const auto& [s, t] : create_pairs(src, 1)) M.B(t, s) = imag_unit;
        for (const auto& [s, t] : annihilate_pairs(src, 1)) M.C(t, s) = imag_unit;
    }
    for (int j = 2; j <= N; ++j) {
        const auto dsrc = diags(src, j);
        const auto dup = diags(up, j);
        const auto ddown = diags(down, j);
        Eigen::MatrixXcd A2 = dsrc.first.asDiagonal() * M.A;
        Eigen::MatrixXcd B2 = dup.first.asDiagonal() * M.B;
        Eigen::MatrixXcd C2 = ddown.second.asDiagonal() * M.C;
        Eigen::MatrixXcd D2 = dsrc.second.asDiagonal() * M.D;
        for (const auto& [s, t] : create_pairs(down, j)) A2.row(t) += imag_unit * M.C.row(s);
        for (const auto& [s, t] : create_pairs(src, j)) B2.row(t) += imag_unit * M.D.row(s);
        for (const auto& [s, t] : annihilate_pairs(src, j)) C2.row(t) += imag_unit * M.A.row(s);
        for (const auto& [s, t] : annihilate_pairs(up, j)) D2.row(t) += imag_unit * M.B.row(s);
        M.A = std::move(A2);
        M.B = std::move(B2);
        M.C = std::move(C2);
        M.D = std::move(D2);
    }
    return M;
}

// Creation block from sector r to r+1 at spectral parameter lambda.
inline Eigen::MatrixXcd b_block(int N, int r, cplx lambda) {
    return monodromy_blocks(N, r, lambda).B;
}

// One-deviation creation column from the combinatorial path rule: the walk
// switches the auxiliary spin exactly once, contributing i p^{N-j} q^{j-1}
// at node j.
inline Eigen::VectorXcd b_column_one_deviation(int N, cplx lambda) {
    const cplx p = lambda + cplx{0.0, 0.5};
    const cplx q = lambda - cplx{0.0, 0.5};
    Eigen::VectorXcd v(N);
    for (int j = 1; j <= N; ++j)
        v(j - 1) = cplx{0.0, 1.0} * std::pow(p, N - j) * std::pow(q, j - 1);
    return v;
}

inline Eigen::MatrixXcd transfer_matrix(int N, int r, cplx lambda) {
    const auto M = monodromy_blocks(N, r, lambda);
    return M.A + M.D;
}

struct CommutatorNorm {
    double norm = 0.0;
    double scale = 0.0;
};

inline CommutatorNorm commutator_norm(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
    return {(X * Y - Y * X).norm(), X.norm() * Y.norm()};
}

// Product state B(lambda_1) ... B(lambda_r) |0>, in the configuration basis
// of the r-deviation sector.
inline Eigen::VectorXcd build_state(int N, const std::vector<cplx>& lambdas) {
    const int r = static_cast<int>(lambdas.size());
    if (r > N / 2) throw std::invalid_argument("build_state: more deviations than N/2");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (std::abs(std::abs(lambdas[i].imag()) - 0.5) < 1e-12 && std::abs(lambdas[i].real()) < 1e-12)
            throw std::invalid_argument("build_state: spectral parameter at +/- i/2");
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (std::abs(lambdas[i] - lambdas[j]) < 1e-12)
                throw std::invalid_argument("build_state: repeated spectral parameter");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (int i = 0; i < r; ++i) v = (b_block(N, i, lambdas[static_cast<std::size_t>(i)]) * v).eval();
    return v;
}

struct QubitDensityReport {
    QubitPhaseSolutions phases;
    Eigen::VectorXcd v1, v2;      // unit vectors over the five zero-momentum wavelets
    Eigen::MatrixXcd rho1, rho2;
    double purity1 = 0.0, purity2 = 0.0;
    double overlap = 0.0;                 // |<v1, v2>|
    double h_residual1 = 0.0, h_residual2 = 0.0;
    double s2_residual1 = 0.0, s2_residual2 = 0.0;
    double projector_deviation = 0.0;     // || rho1 + rho2 - P ||
    double parity_swap_deviation = 0.0;   // || Pi rho1 Pi - rho2 ||
};

// The two degenerate three-deviation heptagon states as density matrices over
// the zero-momentum wavelet quintet, with their spectral diagnostics.
inline QubitDensityReport qubit_density_matrices() {
    QubitDensityReport out;
    out.phases = solve_qubit_phases();
    const auto basis = wavelet_basis({7, 3, 0});
    const Eigen::MatrixXcd H = hamiltonian_wavelet(basis);
    const Eigen::MatrixXcd S2 =
        basis.vectors.adjoint() * total_spin_squared(7, 3) * basis.vectors;
    auto project = [&](const std::array<cplx, 3>& triple) {
        const auto lam = rapidities_from_phases({triple.begin(), triple.end()});
        Eigen::VectorXcd v = basis.vectors.adjoint() * build_state(7, lam);
        return (v / v.norm()).eval();
    };
    out.v1 = project(out.phases.state1);
    out.v2 = project(out.phases.state2);
    out.rho1 = out.v1 * out.v1.adjoint();
    out.rho2 = out.v2 * out.v2.adjoint();
    out.purity1 = (out.rho1 * out.rho1).trace().real();
    out.purity2 = (out.rho2 * out.rho2).trace().real();
    out.overlap = std::abs(out.v1.dot(out.v2));
    out.h_residual1 = (H * out.v1 + 5.0 * out.v1).norm();
    out.h_residual2 = (H * out.v2 + 5.0 * out.v2).norm();
    out.s2_residual1 = (S2 * out.v1 - 0.75 * out.v1).norm();
    out.s2_residual2 = (S2 * out.v2 - 0.75 * out.v2).norm();
    const Eigen::MatrixXcd P = degenerate_projector(H, -5.0);
    out.projector_deviation = (out.rho1 + out.rho2 - P).norm();
    const Eigen::MatrixXcd Pi = parity_matrix(basis);
    out.parity_swap_deviation = (Pi * out.rho1 * Pi - out.rho2).norm();
    return out;
}

struct TwoMagnonReport {
    NewtonResult newton;
    double energy = 0.0;
    std::vector<StringRigging> riggings;
    Eigen::VectorXcd wavelet_vector;  // unit vector over the zero-momentum doublet triplet
    double sector_defect = 0.0;       // norm lost when projecting onto the sector
    cplx parity_phase{};
    double parity_deviation = 0.0;
};

// Two-deviation zero-momentum heptagon state from the phase-form system,
// seeded on the unit circle at exponent L/7.
inline TwoMagnonReport two_magnon_state(int L) {
    TwoMagnonReport out;
    const double theta = 2.0 * std::numbers::pi * L / 7.0;
    out.newton = solve_bethe_newton({std::polar(1.0, theta), std::polar(1.0, -theta)}, 7, 0);
    if (!out.newton.converged) throw std::runtime_error("two_magnon_state: iteration did not converge");
    out.energy = energy_from_phases(out.newton.phases);
    out.riggings = compute_riggings(out.newton.phases, 7);
    const Eigen::VectorXcd full = build_state(7, rapidities_from_phases(out.newton.phases));
    const auto basis = wavelet_basis({7, 2, 0});
    Eigen::VectorXcd v = basis.vectors.adjoint() * full;
    out.sector_defect = std::abs(v.norm() - full.norm()) / full.norm();
    v /= v.norm();
    out.wavelet_vector = v;
    const Eigen::MatrixXcd Pi = parity_matrix(basis);
    const Eigen::VectorXcd w = Pi * v;
    out.parity_phase = v.dot(w);
    const cplx unit_phase = out.parity_phase / std::abs(out.parity_phase);
    out.parity_deviation = (w - unit_phase * v).norm();
    return out;
}

}  // namespace xxxring
