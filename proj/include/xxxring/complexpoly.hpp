#pragma once

// Dense complex polynomials: evaluation, root finding (companion matrix +
// Newton polish), closed-form cubics, palindromic folding x = t + 1/t, and
// reduction of polynomials modulo a monic cubic.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace xxxring {

using cplx = std::complex<double>;

class ComplexPolynomial {
public:
    // coefficients lowest degree first; exact trailing zeros are trimmed
    explicit ComplexPolynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
        while (c_.size() > 1 && c_.back() == cplx{0.0, 0.0}) c_.pop_back();
        if (c_.empty()) c_.push_back({0.0, 0.0});
    }
    ComplexPolynomial() : c_{cplx{0.0, 0.0}} {}

    static ComplexPolynomial from_roots(const std::vector<cplx>& roots) {
        std::vector<cplx> c{cplx{1.0, 0.0}};
        for (const cplx& r : roots) {
            std::vector<cplx> next(c.size() + 1, cplx{0.0, 0.0});
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= r * c[i];
            }
            c = std::move(next);
        }
        return ComplexPolynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return c_; }
    cplx coefficient(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : cplx{0.0, 0.0};
    }

    cplx operator()(cplx x) const {
        cplx v{0.0, 0.0};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    ComplexPolynomial derivative() const {
        if (c_.size() <= 1) return ComplexPolynomial();
        std::vector<cplx> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return ComplexPolynomial(std::move(d));
    }

    double coeff_scale() const {
        double s = 0.0;
        for (const cplx& v : c_) s = std::max(s, std::abs(v));
        return s;
    }

    bool is_palindromic(double tol = 1e-12) const {
        const std::size_t n = c_.size();
        const double s = std::max(coeff_scale(), 1.0);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(c_[i] - c_[n - 1 - i]) > tol * s) return false;
        return true;
    }

private:
    std::vector<cplx> c_;
};

// All roots with multiplicity: companion-matrix eigenvalues polished by Newton.
inline std::vector<cplx> roots(const ComplexPolynomial& p, double tol = 1e-12) {
    const int n = p.degree();
    if (n < 1) throw std::domain_error("roots: constant polynomial");
    const auto& c = p.coefficients();
    const cplx lead = c[n];

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    const ComplexPolynomial dp = p.derivative();
    const double scale = p.coeff_scale();

    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()(i);
        for (int it = 0; it < 50; ++it) {
            const cplx f = p(z);
            if (std::abs(f) <= tol * scale) break;
            const cplx d = dp(z);
            if (std::abs(d) == 0.0) break;  // multiple root: keep eigenvalue estimate
            const cplx step = f / d;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        out[static_cast<std::size_t>(i)] = z;
    }
    return out;
}

// Groups a root multiset into (value, multiplicity) clusters.
inline std::vector<std::pair<cplx, int>> cluster_roots(const std::vector<cplx>& rs,
                                                       double radius = 1e-8) {
    std::vector<std::pair<cplx, int>> clusters;
    for (const cplx& r : rs) {
        bool merged = false;
        for (auto& [v, m] : clusters) {
            if (std::abs(r - v) <= radius * std::max(1.0, std::abs(v))) {
                v = (v * static_cast<double>(m) + r) / static_cast<double>(m + 1);
                ++m;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.emplace_back(r, 1);
    }
    return clusters;
}

struct CubicRoots {
    std::array<cplx, 3> roots;  // real root first when the discriminant is nonnegative
    double y1 = 0.0, y2 = 0.0;  // real radical intermediates; NaN for three-real-root cubics
    cplx epsilon;               // primitive cube root of unity, (-1 + i*sqrt(3))/2
};

// Roots of x^3 + c2 x^2 + c1 x + c0 with real coefficients, in the radical form
// x_k = -c2/3 + eps^k Y1 + eps^{2k} Y2 with real Y1, Y2 (single-real-root case);
// the three-real-root case falls back to the trigonometric form.
inline CubicRoots cardano_cubic(double c0, double c1, double c2) {
    CubicRoots out;
    out.epsilon = cplx{-0.5, std::sqrt(3.0) / 2.0};
    const double shift = -c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = c0 - c1 * c2 / 3.0 + 2.0 * c2 * c2 * c2 / 27.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        out.y1 = std::cbrt(-q / 2.0 + s);
        out.y2 = std::cbrt(-q / 2.0 - s);
        const cplx e = out.epsilon, e2 = e * e;
        out.roots[0] = cplx{shift + out.y1 + out.y2, 0.0};
        out.roots[1] = shift + e * out.y1 + e2 * out.y2;
        out.roots[2] = shift + e2 * out.y1 + e * out.y2;
    } else {
        out.y1 = std::numeric_limits<double>::quiet_NaN();
        out.y2 = out.y1;
        const double rho = 2.0 * std::sqrt(-p / 3.0);
        const double theta = std::acos(std::clamp(3.0 * q / (p * rho), -1.0, 1.0));
        for (int k = 0; k < 3; ++k)
            out.roots[static_cast<std::size_t>(k)] =
                cplx{shift + rho * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0), 0.0};
    }
    return out;
}

// For self-reciprocal p of even degree 2n returns q with p(t) = t^n q(t + 1/t),
// built from the recursion D_0 = 2, D_1 = x, D_k = x D_{k-1} - D_{k-2}
// (so that t^k + t^{-k} = D_k(t + 1/t)).
inline ComplexPolynomial palindromic_fold(const ComplexPolynomial& p) {
    const int deg = p.degree();
    if (deg % 2 != 0 || deg == 0) throw std::domain_error("palindromic_fold: degree must be even and positive");
    if (!p.is_palindromic()) throw std::domain_error("palindromic_fold: coefficients are not self-reciprocal");
    const int n = deg / 2;
    const auto& c = p.coefficients();

    std::vector<cplx> q(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
    std::vector<cplx> dkm1{cplx{2.0, 0.0}};       // D_0
    std::vector<cplx> dk{cplx{0.0, 0.0}, cplx{1.0, 0.0}};  // D_1
    q[0] += c[static_cast<std::size_t>(n)];
    auto add_scaled = [&q](const std::vector<cplx>& d, cplx s) {
        for (std::size_t i = 0; i < d.size(); ++i) q[i] += s * d[i];
    };
    for (int k = 1; k <= n; ++k) {
        add_scaled(dk, c[static_cast<std::size_t>(n - k)]);
        if (k == n) break;
        std::vector<cplx> next(dk.size() + 1, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < dk.size(); ++i) next[i + 1] = dk[i];
        for (std::size_t i = 0; i < dkm1.size(); ++i) next[i] -= dkm1[i];
        dkm1 = std::move(dk);
        dk = std::move(next);
    }
    return ComplexPolynomial(std::move(q));
}

struct LiftedPair {
    cplx t1, t2;       // t^2 - x t + 1 = 0, so t1 t2 = 1
    bool degenerate;   // x = +-2 collapses the pair to a double root
};

inline LiftedPair lift_root(cplx x) {
    const cplx s = std::sqrt(cplx{4.0, 0.0} - x * x);
    LiftedPair out;
    out.t1 = x / 2.0 + cplx{0.0, 0.5} * s;
    out.t2 = x / 2.0 - cplx{0.0, 0.5} * s;
    out.degenerate = std::abs(x - 2.0) < 1e-12 || std::abs(x + 2.0) < 1e-12;
    return out;
}

// Remainder of p modulo a monic cubic u; degree <= 2.
inline ComplexPolynomial reduce_mod_cubic(const ComplexPolynomial& p, const ComplexPolynomial& u) {
    if (u.degree() != 3) throw std::domain_error("reduce_mod_cubic: modulus must be cubic");
    if (std::abs(u.coefficient(3) - cplx{1.0, 0.0}) > 1e-12)
        throw std::domain_error("reduce_mod_cubic: modulus must be monic");
    std::vector<cplx> r = p.coefficients();
    const cplx m0 = u.coefficient(0), m1 = u.coefficient(1), m2 = u.coefficient(2);
    for (std::size_t d = r.size(); d-- > 3;) {
        const cplx lead = r[d];
        r[d] = 0.0;
        r[d - 1] -= lead * m2;
        r[d - 2] -= lead * m1;
        r[d - 3] -= lead * m0;
    }
    r.resize(3);
    return ComplexPolynomial(std::move(r));
}

}  // namespace xxxring
