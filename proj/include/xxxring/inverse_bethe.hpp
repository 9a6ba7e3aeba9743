#pragma once

// Inverse Bethe-ansatz toolkit: Cayley maps between scattering phases and
// rapidities, the heptagonal qubit phase polynomial and its closed-form
// solution through the palindromic fold, string classification, rigging
// extraction, and a damped Newton solver for the phase-form Bethe system.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "complexpoly.hpp"

namespace xxxring {

// lambda = (i/2)(a+1)/(a-1); pole at a = 1 (zero-momentum phase).
inline cplx cayley_to_lambda(cplx a, double tol = 1e-12) {
    if (std::abs(a - 1.0) < tol) throw std::domain_error("cayley_to_lambda: pole at a = 1");
    return cplx{0.0, 0.5} * (a + 1.0) / (a - 1.0);
}

// a = (lambda + i/2)/(lambda - i/2); pole at lambda = i/2.
inline cplx phase_from_lambda(cplx lambda, double tol = 1e-12) {
    const cplx half_i{0.0, 0.5};
    if (std::abs(lambda - half_i) < tol) throw std::domain_error("phase_from_lambda: pole at lambda = i/2");
    return (lambda + half_i) / (lambda - half_i);
}

inline std::vector<cplx> rapidities_from_phases(const std::vector<cplx>& phases) {
    std::vector<cplx> out;
    out.reserve(phases.size());
    for (const auto& a : phases) out.push_back(cayley_to_lambda(a));
    return out;
}

// Two-body scattering ratio V(a, b) = (ab - 2a + 1)/(ab - 2b + 1).
inline cplx scattering(cplx a, cplx b, double tol = 1e-14) {
    const cplx den = a * b - 2.0 * b + 1.0;
    if (std::abs(den) < tol) throw std::domain_error("scattering: vanishing denominator");
    return (a * b - 2.0 * a + 1.0) / den;
}

// E = sum of (a + 1/a) - 2r, with the deviation-hopping zero of energy.
inline double energy_from_phases(const std::vector<cplx>& phases) {
    cplx s{0.0, 0.0};
    for (const auto& a : phases) s += a + 1.0 / a;
    return s.real() - 2.0 * static_cast<double>(phases.size());
}

struct BetheResidual {
    double momentum = 0.0;
    double energy = 0.0;
    std::vector<double> per_particle;
    double max_residual = 0.0;
};

// Residuals of the phase-form system: product of phases against the sector
// momentum, the energy sum rule, and a_i^N = prod_{j != i} V(a_i, a_j).
inline BetheResidual verify_bethe_system(const std::vector<cplx>& phases, int N, int k, double E) {
    BetheResidual out;
    const double two_pi = 2.0 * std::numbers::pi;
    cplx prod{1.0, 0.0};
    cplx esum{0.0, 0.0};
    for (const auto& a : phases) {
        prod *= a;
        esum += a + 1.0 / a;
    }
    out.momentum = std::abs(prod - std::polar(1.0, two_pi * k / N));
    out.energy = std::abs(esum - cplx{E + 2.0 * static_cast<double>(phases.size()), 0.0});
    out.max_residual = std::max(out.momentum, out.energy);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        cplx rhs{1.0, 0.0};
        for (std::size_t j = 0; j < phases.size(); ++j)
            if (j != i) rhs *= scattering(phases[i], phases[j]);
        const double resid = std::abs(std::pow(phases[i], N) - rhs);
        out.per_particle.push_back(resid);
        out.max_residual = std::max(out.max_residual, resid);
    }
    return out;
}

// Phase polynomial of the three-deviation zero-momentum heptagon state with
// doubly degenerate energy -5: t^6 - t^5 + 5t^4 + 5t^3 + 5t^2 - t + 1.
inline ComplexPolynomial heptagon_qubit_polynomial() {
    return ComplexPolynomial{{1.0, -1.0, 5.0, 5.0, 5.0, -1.0, 1.0}};
}

struct QubitPhaseSolutions {
    ComplexPolynomial sextic;
    ComplexPolynomial folded;             // cubic in x = t + 1/t
    CubicRoots cubic;
    std::array<LiftedPair, 3> lifts;      // reciprocal pairs over each cubic root
    std::array<cplx, 3> state1;           // (a, b, c), abc = 1, two-string centre > 0
    std::array<cplx, 3> state2;           // entrywise conjugate companion
    double energy1 = 0.0;
    double energy2 = 0.0;
};

namespace detail {

inline cplx polish_on(const ComplexPolynomial& p, cplx t) {
    const auto dp = p.derivative();
    for (int it = 0; it < 8; ++it) {
        const cplx d = dp(t);
        if (std::abs(d) < 1e-14) break;
        const cplx step = p(t) / d;
        t -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    return t;
}

}  // namespace detail

// Closed-form solution of the qubit phase system: fold the palindromic sextic
// to a cubic in t + 1/t, solve by radicals, lift each root to a reciprocal
// pair, and keep the sign choices whose phase product is 1. Exactly two
// survive, conjugate to each other.
inline QubitPhaseSolutions solve_qubit_phases() {
    QubitPhaseSolutions out;
    out.sextic = heptagon_qubit_polynomial();
    out.folded = palindromic_fold(out.sextic);
    out.cubic = cardano_cubic(out.folded.coefficient(0).real(), out.folded.coefficient(1).real(),
                              out.folded.coefficient(2).real());
    for (int i = 0; i < 3; ++i) {
        auto lp = lift_root(out.cubic.roots[static_cast<std::size_t>(i)]);
        lp.t1 = detail::polish_on(out.sextic, lp.t1);
        lp.t2 = detail::polish_on(out.sextic, lp.t2);
        out.lifts[static_cast<std::size_t>(i)] = lp;
    }
    std::vector<std::array<cplx, 3>> admissible;
    for (int mask = 0; mask < 8; ++mask) {
        std::array<cplx, 3> triple;
        for (int i = 0; i < 3; ++i) {
            const auto& lp = out.lifts[static_cast<std::size_t>(i)];
            triple[static_cast<std::size_t>(i)] = (mask >> i & 1) ? lp.t2 : lp.t1;
        }
        if (std::abs(triple[0] * triple[1] * triple[2] - 1.0) < 1e-8) admissible.push_back(triple);
    }
    if (admissible.size() != 2)
        throw std::runtime_error("solve_qubit_phases: fiber selection did not isolate two states");
    for (auto& triple : admissible) {
        // order as (unimodular, large modulus, small modulus)
        std::sort(triple.begin(), triple.end(), [](const cplx& u, const cplx& v) {
            const double du = std::abs(std::abs(u) - 1.0);
            const double dv = std::abs(std::abs(v) - 1.0);
            if (du != dv) return du < dv;
            return std::abs(u) > std::abs(v);
        });
        if (std::abs(triple[1]) < std::abs(triple[2])) std::swap(triple[1], triple[2]);
    }
    const double centre0 = cayley_to_lambda(admissible[0][1]).real();
    const auto& first = centre0 > 0.0 ? admissible[0] : admissible[1];
    const auto& second = centre0 > 0.0 ? admissible[1] : admissible[0];
    out.state1 = first;
    out.state2 = second;
    out.energy1 = energy_from_phases({first.begin(), first.end()});
    out.energy2 = energy_from_phases({second.begin(), second.end()});
    return out;
}

struct BetheString {
    int length = 0;
    double center = 0.0;
    double half_separation = 0.0;  // m in lambda = center +/- i m, zero for 1-strings
    std::vector<cplx> members;     // descending imaginary part
    std::vector<std::size_t> indices;
};

struct StringClassification {
    std::vector<cplx> rapidities;
    std::vector<BetheString> strings;  // ascending length, then descending center
    std::vector<int> pattern;          // partition of r, descending
    bool classified = false;
};

// Group rapidities into real 1-strings and conjugate 2-strings.
inline StringClassification classify_strings(const std::vector<cplx>& phases, double tol = 1e-8) {
    StringClassification out;
    out.rapidities = rapidities_from_phases(phases);
    std::vector<bool> used(out.rapidities.size(), false);
    for (std::size_t i = 0; i < out.rapidities.size(); ++i) {
        if (used[i]) continue;
        const cplx lam = out.rapidities[i];
        if (std::abs(lam.imag()) < tol) {
            used[i] = true;
            out.strings.push_back({1, lam.real(), 0.0, {lam}, {i}});
            continue;
        }
        for (std::size_t j = i + 1; j < out.rapidities.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(out.rapidities[j] - std::conj(lam)) < tol * std::max(1.0, std::abs(lam))) {
                used[i] = used[j] = true;
                BetheString s;
                s.length = 2;
                s.center = 0.5 * (lam.real() + out.rapidities[j].real());
                s.half_separation = 0.5 * std::abs(lam.imag() - out.rapidities[j].imag());
                s.members = lam.imag() > 0 ? std::vector<cplx>{lam, out.rapidities[j]}
                                           : std::vector<cplx>{out.rapidities[j], lam};
                s.indices = {i, j};
                out.strings.push_back(std::move(s));
                break;
            }
        }
    }
    out.classified = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
    std::sort(out.strings.begin(), out.strings.end(), [](const BetheString& u, const BetheString& v) {
        if (u.length != v.length) return u.length < v.length;
        return u.center > v.center;
    });
    for (const auto& s : out.strings) out.pattern.push_back(s.length);
    std::sort(out.pattern.begin(), out.pattern.end(), std::greater<int>());
    return out;
}

struct StringRigging {
    int length = 0;
    double center = 0.0;
    long rigging = 0;
    double residue = 0.0;  // distance of the quantisation ratio from the integer
};

// Logarithmic form of the phase system, resolved per string: with p_i the
// principal argument of a_i and Phi the principal argument of the product of
// V(a_i, a_j) over members i and outsiders j,
//   L = (N sum_i p_i - Phi) / (2 pi)
// must land on an integer. Strings are reported in ascending length.
inline std::vector<StringRigging> compute_riggings(const std::vector<cplx>& phases, int N,
                                                   double tol = 1e-6) {
    const auto cls = classify_strings(phases);
    if (!cls.classified) throw std::runtime_error("compute_riggings: string classification failed");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<StringRigging> out;
    for (const auto& s : cls.strings) {
        double psum = 0.0;
        cplx vprod{1.0, 0.0};
        for (std::size_t i : s.indices) {
            psum += std::arg(phases[i]);
            for (std::size_t j = 0; j < phases.size(); ++j) {
                if (std::find(s.indices.begin(), s.indices.end(), j) != s.indices.end()) continue;
                vprod *= scattering(phases[i], phases[j]);
            }
        }
        const double x = (N * psum - std::arg(vprod)) / two_pi;
        const long L = std::lround(x);
        const double residue = std::abs(x - static_cast<double>(L));
        if (residue > tol)
            throw std::runtime_error("compute_riggings: branch resolution failed");
        out.push_back({s.length, s.center, L, residue});
    }
    return out;
}

struct NewtonResult {
    std::vector<cplx> phases;
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
};

namespace detail {

inline Eigen::VectorXcd bethe_equations(const std::vector<cplx>& a, int N, int k) {
    const auto r = static_cast<Eigen::Index>(a.size());
    Eigen::VectorXcd F(r + 1);
    for (Eigen::Index i = 0; i < r; ++i) {
        cplx rhs{1.0, 0.0};
        for (Eigen::Index j = 0; j < r; ++j)
            if (j != i)
                rhs *= scattering(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        F(i) = std::pow(a[static_cast<std::size_t>(i)], N) - rhs;
    }
    cplx prod{1.0, 0.0};
    for (const auto& v : a) prod *= v;
    F(r) = prod - std::polar(1.0, 2.0 * std::numbers::pi * k / N);
    return F;
}

}  // namespace detail

// Damped Newton iteration on the phase-form system augmented with the sector
// momentum constraint; the rectangular step is the least-squares solution of
// the forward-difference Jacobian.
inline NewtonResult solve_bethe_newton(std::vector<cplx> initial, int N, int k, double tol = 1e-12,
                                       int max_iter = 200) {
    NewtonResult out;
    out.phases = std::move(initial);
    const auto r = static_cast<Eigen::Index>(out.phases.size());
    if (r == 0) throw std::invalid_argument("solve_bethe_newton: empty seed");
    Eigen::VectorXcd F = detail::bethe_equations(out.phases, N, k);
    out.residual = F.norm();
    for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
        if (out.residual < tol) {
            out.converged = true;
            return out;
        }
        Eigen::MatrixXcd J(r + 1, r);
        for (Eigen::Index j = 0; j < r; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(out.phases[static_cast<std::size_t>(j)]));
            auto bumped = out.phases;
            bumped[static_cast<std::size_t>(j)] += cplx{h, 0.0};
            J.col(j) = (detail::bethe_equations(bumped, N, k) - F) / h;
        }
        const Eigen::VectorXcd step = J.colPivHouseholderQr().solve(-F);
        double damp = 1.0;
        for (int back = 0; back < 25; ++back) {
            auto trial = out.phases;
            for (Eigen::Index j = 0; j < r; ++j)
                trial[static_cast<std::size_t>(j)] += damp * step(j);
            const Eigen::VectorXcd Ft = detail::bethe_equations(trial, N, k);
            if (Ft.norm() < out.residual || back == 24) {
                out.phases = std::move(trial);
                F = Ft;
                out.residual = Ft.norm();
                break;
            }
            damp *= 0.5;
        }
    }
    out.converged = out.residual < tol;
    return out;
}

}  // namespace xxxring
