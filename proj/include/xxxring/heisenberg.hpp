#pragma once

// Sector Hamiltonians of the isotropic spin-1/2 exchange ring, exact integer
// characteristic polynomials, Hermitian eigendecomposition, projectors onto
// degenerate eigenspaces, and the total-spin-squared operator.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "lattice.hpp"

namespace xxxring {

using bigint = boost::multiprecision::cpp_int;

// Deviation-hopping form: +1 between configurations that differ by moving one
// deviation to an unoccupied neighbour, and a diagonal -1 per open channel, so
// the vacuum has energy 0 and every column sums to zero.
inline Eigen::MatrixXd hamiltonian_configuration(int N, int r) {
    const auto configs = enumerate_configurations(N, r);
    const auto dim = static_cast<Eigen::Index>(configs.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& c : configs) {
        const auto col = configuration_index(c);
        for (int j : c.nodes) {
            for (int step : {1, N - 1}) {
                const int t = (j - 1 + step) % N + 1;
                if (std::find(c.nodes.begin(), c.nodes.end(), t) != c.nodes.end()) continue;
                SpinConfiguration moved{N, {}};
                for (int x : c.nodes)
                    moved.nodes.push_back(x == j ? t : x);
                std::sort(moved.nodes.begin(), moved.nodes.end());
                H(configuration_index(moved), col) += 1.0;
                H(col, col) -= 1.0;
            }
        }
    }
    return H;
}

inline Eigen::MatrixXcd hamiltonian_wavelet(const WaveletBasis& basis) {
    const Eigen::MatrixXd H = hamiltonian_configuration(basis.sector.N, basis.sector.r);
    return basis.vectors.adjoint() * H * basis.vectors;
}

namespace detail {

using BigMatrix = std::vector<std::vector<bigint>>;

inline BigMatrix big_identity(std::size_t n) {
    BigMatrix I(n, std::vector<bigint>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

inline BigMatrix big_mul(const BigMatrix& a, const BigMatrix& b) {
    const std::size_t n = a.size();
    BigMatrix out(n, std::vector<bigint>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline bool integer_valued(const Eigen::MatrixXd& M, double tol = 1e-9) {
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (std::abs(M(i, j) - std::round(M(i, j))) > tol) return false;
    return true;
}

inline BigMatrix to_big(const Eigen::MatrixXd& M) {
    const auto n = static_cast<std::size_t>(M.rows());
    BigMatrix out(n, std::vector<bigint>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = static_cast<long long>(
                std::llround(M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    return out;
}

}  // namespace detail

struct CharacteristicPolynomial {
    bool exact = false;
    std::vector<bigint> integer_coefficients;  // lowest degree first, monic; empty unless exact
    ComplexPolynomial poly;                    // double-precision mirror, lowest degree first
};

// Faddeev-LeVerrier recursion; exact over arbitrary-size integers whenever the
// matrix entries are integers, floating otherwise (flagged by `exact`).
inline CharacteristicPolynomial characteristic_polynomial(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw std::domain_error("characteristic_polynomial: square input required");
    const int n = static_cast<int>(M.rows());
    CharacteristicPolynomial out;
    if (detail::integer_valued(M)) {
        out.exact = true;
        const auto A = detail::to_big(M);
        auto Nk = detail::big_identity(static_cast<std::size_t>(n));
        std::vector<bigint> c(static_cast<std::size_t>(n) + 1, 0);
        c[static_cast<std::size_t>(n)] = 1;
        for (int k = 1; k <= n; ++k) {
            Nk = detail::big_mul(A, Nk);
            bigint tr = 0;
            for (int i = 0; i < n; ++i)
                tr += Nk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            const bigint ck = -tr / k;  // division is exact
            c[static_cast<std::size_t>(n - k)] = ck;
            for (int i = 0; i < n; ++i)
                Nk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += ck;
        }
        out.integer_coefficients = c;
        std::vector<cplx> dc(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) dc[i] = cplx{c[i].convert_to<double>(), 0.0};
        out.poly = ComplexPolynomial(std::move(dc));
    } else {
        Eigen::MatrixXd Nk = Eigen::MatrixXd::Identity(n, n);
        std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
        c[static_cast<std::size_t>(n)] = 1.0;
        for (int k = 1; k <= n; ++k) {
            Nk = (M * Nk).eval();
            c[static_cast<std::size_t>(n - k)] = -Nk.trace() / k;
            Nk.diagonal().array() += c[static_cast<std::size_t>(n - k)];
        }
        std::vector<cplx> dc(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) dc[i] = cplx{c[i], 0.0};
        out.poly = ComplexPolynomial(std::move(dc));
    }
    return out;
}

struct EigenReport {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns
    std::vector<std::pair<double, int>> multiplicities;
    double max_residual = 0.0;
};

inline constexpr Eigen::Index kEigenDimensionCap = 1 << 14;

inline EigenReport eigen_decompose(const Eigen::MatrixXcd& M, double tol = 1e-9) {
    if (M.rows() != M.cols()) throw std::domain_error("eigen_decompose: square input required");
    if (M.rows() > kEigenDimensionCap) throw std::domain_error("eigen_decompose: dimension cap exceeded");
    const double scale = std::max(1.0, M.norm());
    if ((M - M.adjoint()).norm() > tol * scale)
        throw std::domain_error("eigen_decompose: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    EigenReport out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    for (Eigen::Index i = 0; i < out.values.size(); ++i) {
        const double resid = (M * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
        out.max_residual = std::max(out.max_residual, resid);
    }
    const double cluster = std::max(tol, 1e-9) * scale;
    for (Eigen::Index i = 0; i < out.values.size(); ++i) {
        if (!out.multiplicities.empty() &&
            std::abs(out.values(i) - out.multiplicities.back().first) <= cluster)
            ++out.multiplicities.back().second;
        else
            out.multiplicities.emplace_back(out.values(i), 1);
    }
    return out;
}

// Orthogonal projector onto the E-eigenspace. Integer matrices go through the
// exact characteristic polynomial: with w(x) = (x-E)^m s(x) and s(E) != 0 the
// projector is s(M)/s(E), evaluated in integer arithmetic; other inputs fall
// back to summed outer products of numeric eigenvectors.
inline Eigen::MatrixXcd degenerate_projector(const Eigen::MatrixXcd& M, double E, double tol = 1e-9) {
    const auto report = eigen_decompose(M, std::max(tol, 1e-9));
    const double scale = std::max(1.0, M.norm());
    bool found = false;
    for (Eigen::Index i = 0; i < report.values.size(); ++i)
        if (std::abs(report.values(i) - E) <= std::max(tol, tol * scale)) found = true;
    if (!found) throw std::invalid_argument("degenerate_projector: no eigenvalue near the target");

    const bool integer_target = std::abs(E - std::round(E)) < tol;
    const Eigen::MatrixXd Mre = M.real();
    if (integer_target && M.rows() <= 128 && M.imag().norm() < 1e-12 && detail::integer_valued(Mre)) {
        const auto cp = characteristic_polynomial(Mre);
        const bigint e = static_cast<long long>(std::llround(E));
        // strip (x - E)^m by synthetic division while exact
        std::vector<bigint> w = cp.integer_coefficients;
        int m = 0;
        for (;;) {
            std::vector<bigint> q(w.size() - 1, 0);
            bigint carry = 0;
            for (std::size_t i = w.size(); i-- > 1;) {
                carry = w[i] + carry * e;
                q[i - 1] = carry;
            }
            const bigint rem = w[0] + carry * e;
            if (rem != 0) break;
            w = std::move(q);
            ++m;
        }
        if (m >= 1) {
            bigint sE = 0;
            for (std::size_t i = w.size(); i-- > 0;) sE = sE * e + w[i];
            const auto A = detail::to_big(Mre);
            const std::size_t n = A.size();
            detail::BigMatrix S(n, std::vector<bigint>(n, 0));
            for (std::size_t i = 0; i < n; ++i) S[i][i] = w.back();
            for (std::size_t i = w.size() - 1; i-- > 0;) {
                S = detail::big_mul(A, S);
                for (std::size_t d = 0; d < n; ++d) S[d][d] += w[i];
            }
            Eigen::MatrixXcd P(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            const double den = sE.convert_to<double>();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        cplx{S[i][j].convert_to<double>() / den, 0.0};
            return P;
        }
    }

    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < report.values.size(); ++i)
        if (std::abs(report.values(i) - E) <= std::max(tol, tol * scale))
            P += report.vectors.col(i) * report.vectors.col(i).adjoint();
    return P;
}

// S^2 on the (N, r) configuration basis: the zz part is constant on the
// sector, the transverse part moves one deviation to any unoccupied node.
inline Eigen::MatrixXd total_spin_squared(int N, int r) {
    const auto configs = enumerate_configurations(N, r);
    const auto dim = static_cast<Eigen::Index>(configs.size());
    const double zz =
        (static_cast<double>(binomial(r, 2)) + static_cast<double>(binomial(N - r, 2)) -
         static_cast<double>(r) * (N - r)) /
        4.0;
    const double diag = 3.0 * N / 4.0 + 2.0 * zz;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& c : configs) {
        const auto col = configuration_index(c);
        S(col, col) = diag;
        for (int j : c.nodes) {
            for (int t = 1; t <= N; ++t) {
                if (std::find(c.nodes.begin(), c.nodes.end(), t) != c.nodes.end()) continue;
                SpinConfiguration moved{N, {}};
                for (int x : c.nodes) moved.nodes.push_back(x == j ? t : x);
                std::sort(moved.nodes.begin(), moved.nodes.end());
                S(configuration_index(moved), col) += 1.0;
            }
        }
    }
    return S;
}

}  // namespace xxxring
