#pragma once

// Ring combinatorics for r spin deviations on an N-node cycle: configuration
// enumeration, translation orbits with canonical relative-position tuples,
// symmetry-adapted (wavelet) bases per quasimomentum, and the ring parity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "complexpoly.hpp"

namespace xxxring {

struct RingSector {
    int N = 0;
    int r = 0;
    int k = 0;  // quasimomentum label, used mod N
};

struct SpinConfiguration {
    int N = 0;
    std::vector<int> nodes;  // strictly increasing, values in 1..N

    bool operator==(const SpinConfiguration& o) const { return N == o.N && nodes == o.nodes; }
};

using Triad = std::vector<int>;

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t v = 1;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

inline void validate_sector_size(int N, int r) {
    if (N < 1 || N > 24) throw std::domain_error("ring size out of supported range");
    if (r < 0 || r > N) throw std::domain_error("deviation count out of range");
}

inline std::vector<SpinConfiguration> enumerate_configurations(int N, int r) {
    validate_sector_size(N, r);
    std::vector<SpinConfiguration> out;
    out.reserve(static_cast<std::size_t>(binomial(N, r)));
    std::vector<int> cur(static_cast<std::size_t>(r));
    // lexicographic combinations of {1..N}
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == r) {
            out.push_back({N, cur});
            return;
        }
        for (int v = start; v <= N - (r - depth - 1); ++v) {
            cur[static_cast<std::size_t>(depth)] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 1, 0);
    return out;
}

// Lexicographic index of a configuration within enumerate_configurations(N, r).
inline std::int64_t configuration_index(const SpinConfiguration& c) {
    const int N = c.N, r = static_cast<int>(c.nodes.size());
    std::int64_t idx = 0;
    int prev = 0;
    for (int i = 0; i < r; ++i) {
        for (int v = prev + 1; v < c.nodes[static_cast<std::size_t>(i)]; ++v)
            idx += binomial(N - v, r - i - 1);
        prev = c.nodes[static_cast<std::size_t>(i)];
    }
    return idx;
}

inline SpinConfiguration translate(const SpinConfiguration& c, int shift = 1) {
    SpinConfiguration out{c.N, {}};
    out.nodes.reserve(c.nodes.size());
    for (int j : c.nodes) out.nodes.push_back((j - 1 + shift) % c.N + 1);
    std::sort(out.nodes.begin(), out.nodes.end());
    return out;
}

// Cyclic gaps between consecutive deviations (a single deviation wraps the
// full ring, gap N), rotated to the lexicographically smallest tuple.
inline Triad relative_positions(const SpinConfiguration& c) {
    const int r = static_cast<int>(c.nodes.size());
    if (r == 0) throw std::domain_error("relative_positions: vacuum has no triad");
    Triad gaps(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        const int cur = c.nodes[static_cast<std::size_t>(i)];
        const int next = c.nodes[static_cast<std::size_t>((i + 1) % r)];
        gaps[static_cast<std::size_t>(i)] = (next - cur + c.N - 1) % c.N + 1;
    }
    Triad best = gaps;
    for (int s = 1; s < r; ++s) {
        Triad rot(gaps.begin() + s, gaps.end());
        rot.insert(rot.end(), gaps.begin(), gaps.begin() + s);
        if (rot < best) best = rot;
    }
    return best;
}

struct CyclicOrbit {
    Triad triad;
    int size = 0;
    std::vector<SpinConfiguration> members;  // representative first, then successive translates
};

namespace detail {

inline CyclicOrbit orbit_of(const SpinConfiguration& rep) {
    CyclicOrbit o;
    o.triad = relative_positions(rep);
    o.members.push_back(rep);
    SpinConfiguration cur = translate(rep);
    while (!(cur == rep)) {
        o.members.push_back(cur);
        cur = translate(cur);
    }
    o.size = static_cast<int>(o.members.size());
    return o;
}

}  // namespace detail

// Orbits in lexicographic triad order, except the heptagon three-deviation
// sector, which uses the conventional ordering with the parity-self-conjugate
// orbits first and the enantiomorphic pair (1,2,4), (1,4,2) last.
inline std::vector<CyclicOrbit> orbit_decompose(int N, int r) {
    validate_sector_size(N, r);
    if (r < 1) throw std::domain_error("orbit_decompose: no orbits in the vacuum sector");
    std::vector<CyclicOrbit> orbits;
    std::vector<Triad> seen;
    for (const auto& c : enumerate_configurations(N, r)) {
        Triad t = relative_positions(c);
        if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
        seen.push_back(t);
        orbits.push_back(detail::orbit_of(c));  // lex enumeration makes c the smallest member
    }
    if (N == 7 && r == 3) {
        const std::vector<Triad> fixed{{1, 1, 5}, {1, 3, 3}, {2, 2, 3}, {1, 2, 4}, {1, 4, 2}};
        std::vector<CyclicOrbit> reordered;
        for (const auto& t : fixed)
            for (auto& o : orbits)
                if (o.triad == t) reordered.push_back(std::move(o));
        return reordered;
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const CyclicOrbit& a, const CyclicOrbit& b) { return a.triad < b.triad; });
    return orbits;
}

struct WaveletBasis {
    RingSector sector;
    std::vector<CyclicOrbit> orbits;  // only the k-compatible orbits
    Eigen::MatrixXcd vectors;         // full sector dim x orbit count, columns orthonormal
};

// Column per compatible orbit: |orbit|^{-1/2} sum_j w^{-k j} T^j |rep>, with
// w = exp(2 pi i / N). An orbit of stabilizer order s = N/|orbit| contributes
// only when s divides k.
inline WaveletBasis wavelet_basis(const RingSector& sector) {
    const auto [N, r, k] = sector;
    validate_sector_size(N, r);
    if (r < 1) throw std::domain_error("wavelet_basis: vacuum sector has no orbit basis");
    WaveletBasis out;
    out.sector = sector;
    const auto all = orbit_decompose(N, r);
    const std::int64_t dim = binomial(N, r);

    std::vector<Eigen::VectorXcd> cols;
    for (const auto& o : all) {
        const int stab = N / o.size;
        if (((k % stab) + stab) % stab != 0) continue;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        const double norm = 1.0 / std::sqrt(static_cast<double>(o.size));
        for (int j = 0; j < o.size; ++j) {
            const double ang = -2.0 * std::numbers::pi * k * j / N;
            v(configuration_index(o.members[static_cast<std::size_t>(j)])) =
                norm * cplx{std::cos(ang), std::sin(ang)};
        }
        cols.push_back(std::move(v));
        out.orbits.push_back(o);
    }
    out.vectors.resize(dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
        out.vectors.col(static_cast<Eigen::Index>(i)) = cols[i];
    return out;
}

// Ring reflection j -> (N - j) mod N with node N as the fixed point; 1-based images.
inline std::vector<int> parity_permutation(int N) {
    std::vector<int> perm(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j) {
        const int img = (N - j) % N;
        perm[static_cast<std::size_t>(j - 1)] = img == 0 ? N : img;
    }
    return perm;
}

inline SpinConfiguration parity_apply(const SpinConfiguration& c) {
    const auto perm = parity_permutation(c.N);
    SpinConfiguration out{c.N, {}};
    out.nodes.reserve(c.nodes.size());
    for (int j : c.nodes) out.nodes.push_back(perm[static_cast<std::size_t>(j - 1)]);
    std::sort(out.nodes.begin(), out.nodes.end());
    return out;
}

// Parity as a permutation matrix on the full (N, r) configuration basis.
inline Eigen::MatrixXd parity_configuration_matrix(int N, int r) {
    const auto configs = enumerate_configurations(N, r);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(configs.size()),
                                              static_cast<Eigen::Index>(configs.size()));
    for (const auto& c : configs)
        P(configuration_index(parity_apply(c)), configuration_index(c)) = 1.0;
    return P;
}

// Parity in the wavelet basis. Reflection maps quasimomentum k to -k, so a
// single-sector matrix exists only for the self-paired labels k = 0 and
// (even N) k = N/2.
inline Eigen::MatrixXcd parity_matrix(const WaveletBasis& basis) {
    const auto [N, r, k] = basis.sector;
    const int km = ((k % N) + N) % N;
    if (km != 0 && !(N % 2 == 0 && km == N / 2))
        throw std::domain_error("parity_matrix: reflection leaves this quasimomentum sector");
    const Eigen::MatrixXd P = parity_configuration_matrix(N, r);
    return basis.vectors.adjoint() * P * basis.vectors;
}

// Coefficients of a full-sector vector over the orthonormal wavelets.
inline Eigen::VectorXcd fourier_project(const Eigen::VectorXcd& v, const WaveletBasis& basis) {
    if (v.size() != basis.vectors.rows())
        throw std::domain_error("fourier_project: vector does not match the sector dimension");
    return basis.vectors.adjoint() * v;
}

}  // namespace xxxring
