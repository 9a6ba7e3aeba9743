// Command-line front end: sector spectra, the full qubit pipeline report,
// the verification suite, and ad-hoc state construction, with JSON, CSV,
// and human-readable output.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <xxxring/algebraic_bethe.hpp>
#include <xxxring/complexpoly.hpp>
#include <xxxring/heisenberg.hpp>
#include <xxxring/inverse_bethe.hpp>
#include <xxxring/lattice.hpp>
#include <xxxring/report.hpp>
#include <xxxring/verification.hpp>

namespace {

using xxxring::cplx;
using xxxring::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_complex(double re, double im) {
    std::ostringstream os;
    os.precision(12);
    os << re;
    if (im != 0.0) os << (im < 0.0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
}

// Complex values are serialized as [re, im] pairs of floats; integer pairs
// stay plain arrays.
bool is_complex_pair(const json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number_float() && j[1].is_number_float();
}

bool is_matrix_object(const json& j) {
    return j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries");
}

std::string scalar_text(const json& j) {
    if (is_complex_pair(j)) return fmt_complex(j[0].get<double>(), j[1].get<double>());
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_matrix(std::ostream& os, const json& m, const std::string& indent) {
    const auto rows = m["rows"].get<long>();
    const auto cols = m["cols"].get<long>();
    os << indent << rows << " x " << cols;
    if (m.contains("basis")) {
        os << "  basis:";
        for (const auto& b : m["basis"]) os << " " << b.get<std::string>();
    }
    os << "\n";
    const auto& e = m["entries"];
    for (long i = 0; i < rows; ++i) {
        os << indent << " ";
        for (long j = 0; j < cols; ++j)
            os << " " << scalar_text(e[static_cast<std::size_t>(i * cols + j)]);
        os << "\n";
    }
}

void render_pretty(std::ostream& os, const json& j, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (is_matrix_object(value)) {
                os << indent << key << ":\n";
                render_matrix(os, value, indent + "  ");
            } else if (value.is_object() || (value.is_array() && !is_complex_pair(value) &&
                                             !value.empty() && !value[0].is_number() &&
                                             !value[0].is_string() && !is_complex_pair(value[0]))) {
                os << indent << key << ":\n";
                render_pretty(os, value, depth + 1);
            } else if (value.is_array() && !is_complex_pair(value)) {
                os << indent << key << ": [";
                for (std::size_t i = 0; i < value.size(); ++i)
                    os << (i ? ", " : "") << scalar_text(value[i]);
                os << "]\n";
            } else {
                os << indent << key << ": " << scalar_text(value) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j.items()) {
            os << indent << "-\n";
            render_pretty(os, item.value(), depth + 1);
        }
    } else {
        os << indent << scalar_text(j) << "\n";
    }
}

void render_csv(std::ostream& os, const json& j, const std::string& path) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            render_csv(os, value, path.empty() ? key : path + "." + key);
    } else if (j.is_array()) {
        if (is_complex_pair(j)) {
            os << path << "," << fmt_complex(j[0].get<double>(), j[1].get<double>()) << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            render_csv(os, j[i], path + "[" + std::to_string(i) + "]");
    } else {
        std::string v = j.is_string() ? j.get<std::string>() : j.dump();
        if (v.find(',') != std::string::npos) v = "\"" + v + "\"";
        os << path << "," << v << "\n";
    }
}

void write_json_file(const json& report, const std::string& json_path) {
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot open output path " + json_path);
    out << report.dump(2) << "\n";
}

void emit(const json& report, const std::string& format, const std::string& json_path) {
    if (!json_path.empty()) write_json_file(report, json_path);
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else if (format == "csv")
        render_csv(std::cout, report, "");
    else
        render_pretty(std::cout, report, 0);
}

json polynomial_to_json(const xxxring::ComplexPolynomial& p) {
    json out;
    out["degree"] = p.degree();
    out["coefficients_low_first"] = xxxring::complex_vector_to_json(p.coefficients());
    return out;
}

json riggings_to_json(const std::vector<xxxring::StringRigging>& rs) {
    json out = json::array();
    for (const auto& s : rs) {
        json item;
        item["length"] = s.length;
        item["center"] = s.center;
        item["rigging"] = s.rigging;
        item["residue"] = s.residue;
        out.push_back(item);
    }
    return out;
}

json check_entry(double value, double tolerance) {
    json out;
    out["value"] = value;
    out["tolerance"] = tolerance;
    out["pass"] = std::isfinite(value) && value <= tolerance;
    return out;
}

std::vector<cplx> parse_lambdas(const std::vector<std::string>& raw) {
    std::vector<cplx> out;
    for (const auto& s : raw) {
        try {
            const auto comma = s.find(',');
            std::size_t used = 0;
            const double re = std::stod(s.substr(0, comma), &used);
            if (used != (comma == std::string::npos ? s.size() : comma))
                throw UsageError("malformed spectral parameter " + s);
            double im = 0.0;
            if (comma != std::string::npos) {
                const std::string rest = s.substr(comma + 1);
                im = std::stod(rest, &used);
                if (used != rest.size()) throw UsageError("malformed spectral parameter " + s);
            }
            out.emplace_back(re, im);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("malformed spectral parameter " + s + " (expected re or re,im)");
        }
    }
    return out;
}

int cmd_spectrum(int n, int r, int k, double tol, const std::string& format,
                 const std::string& json_path) {
    json report = xxxring::report_envelope("spectrum");
    report["inputs"] = {{"n", n}, {"r", r}, {"k", k}};
    const double eig_tol = tol > 0.0 ? tol : 1e-9;
    try {
        xxxring::validate_sector_size(n, r);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const int km = ((k % n) + n) % n;
    if (r == 0) {
        if (km != 0) throw UsageError("the vacuum sector carries quasimomentum 0 only");
        report["results"]["dimension"] = 1;
        report["results"]["matrix"] = xxxring::real_matrix_to_json(Eigen::MatrixXd::Zero(1, 1));
        json charpoly = polynomial_to_json(
            xxxring::ComplexPolynomial({cplx{0.0, 0.0}, cplx{1.0, 0.0}}));
        charpoly["exact"] = true;
        charpoly["integer_coefficients"] = json::array({"0", "1"});
        report["results"]["characteristic_polynomial"] = charpoly;
        json vacuum;
        vacuum["value"] = 0.0;
        vacuum["multiplicity"] = 1;
        report["results"]["eigenvalues"] = json::array({vacuum});
        emit(report, format, json_path);
        return 0;
    }
    const auto basis = xxxring::wavelet_basis({n, r, k});
    const Eigen::MatrixXcd Hw = xxxring::hamiltonian_wavelet(basis);
    report["results"]["dimension"] = Hw.rows();
    report["results"]["matrix"] = xxxring::matrix_to_json(Hw, xxxring::basis_labels(basis));
    json charpoly;
    if (Hw.rows() > 0 && Hw.imag().cwiseAbs().maxCoeff() < 1e-12) {
        const auto cp = xxxring::characteristic_polynomial(Hw.real());
        charpoly = polynomial_to_json(cp.poly);
        charpoly["exact"] = cp.exact;
        if (cp.exact) {
            json ints = json::array();
            for (const auto& v : cp.integer_coefficients) ints.push_back(v.str());
            charpoly["integer_coefficients"] = ints;
        }
    } else if (Hw.rows() > 0) {
        const auto eig = xxxring::eigen_decompose(Hw, eig_tol);
        std::vector<cplx> vals(static_cast<std::size_t>(eig.values.size()));
        for (Eigen::Index i = 0; i < eig.values.size(); ++i)
            vals[static_cast<std::size_t>(i)] = cplx{eig.values(i), 0.0};
        charpoly = polynomial_to_json(xxxring::ComplexPolynomial::from_roots(vals));
        charpoly["exact"] = false;
    }
    report["results"]["characteristic_polynomial"] = charpoly;
    json eigs = json::array();
    double residual = 0.0;
    if (Hw.rows() > 0) {
        const auto eig = xxxring::eigen_decompose(Hw, eig_tol);
        for (const auto& [value, mult] : eig.multiplicities)
            eigs.push_back({{"value", value}, {"multiplicity", mult}});
        residual = eig.max_residual;
    }
    report["results"]["eigenvalues"] = eigs;
    report["results"]["max_residual"] = check_entry(residual, eig_tol);
    emit(report, format, json_path);
    return 0;
}

int cmd_qubit_report(double tol, const std::string& format, const std::string& json_path) {
    const double tol_res = tol > 0.0 ? tol : 1e-9;
    const double tol_alg = tol > 0.0 ? tol : 1e-10;
    json report = xxxring::report_envelope("qubit-report");
    report["inputs"] = {{"n", 7}, {"r", 3}, {"k", 0}, {"energy", -5.0}};

    const auto qdm = xxxring::qubit_density_matrices();
    const auto& sol = qdm.phases;
    auto& res = report["results"];
    res["phase_polynomial"] = polynomial_to_json(sol.sextic);
    json folded = polynomial_to_json(sol.folded);
    folded["radical_intermediates"] = {{"y1", sol.cubic.y1}, {"y2", sol.cubic.y2}};
    folded["epsilon"] = xxxring::complex_to_json(sol.cubic.epsilon);
    json cubic_roots = json::array();
    for (const auto& x : sol.cubic.roots) cubic_roots.push_back(xxxring::complex_to_json(x));
    folded["roots"] = cubic_roots;
    res["folded_cubic"] = folded;

    json phase_roots = json::array();
    for (const auto& lp : sol.lifts) {
        phase_roots.push_back(xxxring::complex_to_json(lp.t1));
        phase_roots.push_back(xxxring::complex_to_json(lp.t2));
    }
    res["phase_roots"] = phase_roots;
    res["phase_triples"] = {
        {"state1", xxxring::complex_vector_to_json({sol.state1.begin(), sol.state1.end()})},
        {"state2", xxxring::complex_vector_to_json({sol.state2.begin(), sol.state2.end()})}};
    res["energies"] = json::array({sol.energy1, sol.energy2});

    const auto cls1 = xxxring::classify_strings({sol.state1.begin(), sol.state1.end()});
    res["spectral_parameters"] = {
        {"state1", xxxring::complex_vector_to_json(
                       xxxring::rapidities_from_phases({sol.state1.begin(), sol.state1.end()}))},
        {"state2", xxxring::complex_vector_to_json(
                       xxxring::rapidities_from_phases({sol.state2.begin(), sol.state2.end()}))}};
    const auto& one = cls1.strings.at(0);
    const auto& two = cls1.strings.at(1);
    res["string_parameters"] = {{"lambda0", one.center},
                                {"mu0", two.center},
                                {"half_separation", two.half_separation}};

    const auto rig1 = xxxring::compute_riggings({sol.state1.begin(), sol.state1.end()}, 7);
    const auto rig2 = xxxring::compute_riggings({sol.state2.begin(), sol.state2.end()}, 7);
    res["riggings"] = {{"state1", riggings_to_json(rig1)}, {"state2", riggings_to_json(rig2)}};

    const auto basis = xxxring::wavelet_basis({7, 3, 0});
    const auto labels = xxxring::basis_labels(basis);
    res["density_matrices"] = {{"rho1", xxxring::matrix_to_json(qdm.rho1, labels)},
                               {"rho2", xxxring::matrix_to_json(qdm.rho2, labels)}};

    json checks;
    checks["sum_rule"] = check_entry(qdm.projector_deviation, tol_alg);
    checks["orthogonality"] = check_entry(qdm.overlap, tol_alg);
    checks["parity_swap"] = check_entry(qdm.parity_swap_deviation, tol_alg);
    checks["purity"] = check_entry(
        std::max(std::abs(qdm.purity1 - 1.0), std::abs(qdm.purity2 - 1.0)), tol_alg);
    checks["hamiltonian_residual"] =
        check_entry(std::max(qdm.h_residual1, qdm.h_residual2), 10.0 * tol_res);
    checks["total_spin_residual"] =
        check_entry(std::max(qdm.s2_residual1, qdm.s2_residual2), 10.0 * tol_res);
    const bool rig_ok = rig1.size() == 2 && rig1[0].rigging == -3 && rig1[1].rigging == 3 &&
                        rig2.size() == 2 && rig2[0].rigging == 3 && rig2[1].rigging == -3;
    checks["riggings"] = {{"pass", rig_ok}};
    report["checks"] = checks;

    bool all = rig_ok;
    for (const auto& [key, value] : checks.items())
        if (value.contains("pass")) all = all && value["pass"].get<bool>();
    report["all_checks_pass"] = all;
    emit(report, format, json_path);
    return all ? 0 : 1;
}

int cmd_verify(double tol, const std::string& format, const std::string& json_path) {
    xxxring::VerificationTolerances tols;
    if (tol > 0.0) {
        tols.residual = tol;
        tols.algebraic = tol;
    }
    const auto verdict = xxxring::run_verification(tols);
    json report = xxxring::report_envelope("verify");
    report["inputs"] = {{"tolerance_residual", tols.residual},
                        {"tolerance_algebraic", tols.algebraic}};
    json checks = json::array();
    for (const auto& c : verdict.checks) {
        json item;
        item["index"] = c.index;
        item["name"] = c.name;
        item["passed"] = c.passed;
        json metrics;
        for (const auto& [label, value] : c.metrics) metrics[label] = value;
        item["metrics"] = metrics;
        if (!c.note.empty()) item["note"] = c.note;
        checks.push_back(item);
    }
    report["results"]["checks"] = checks;
    report["results"]["all_passed"] = verdict.all_passed;
    if (format == "pretty") {
        for (const auto& c : verdict.checks) {
            std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.index << " " << c.name << "\n";
            if (!c.passed)
                for (const auto& [label, value] : c.metrics)
                    std::cout << "         " << label << " = " << value << "\n";
            if (!c.note.empty()) std::cout << "         note: " << c.note << "\n";
        }
        std::cout << (verdict.all_passed ? "all checks passed" : "some checks FAILED") << "\n";
        if (!json_path.empty()) write_json_file(report, json_path);
    } else {
        emit(report, format, json_path);
    }
    return verdict.all_passed ? 0 : 1;
}

int cmd_state(int n, int k, const std::vector<std::string>& raw, double tol,
              const std::string& format, const std::string& json_path) {
    const auto lambdas = parse_lambdas(raw);
    if (lambdas.empty()) throw UsageError("at least one --lambda is required");
    const double tol_res = tol > 0.0 ? tol : 1e-9;
    json report = xxxring::report_envelope("state");
    report["inputs"] = {{"n", n},
                        {"k", k},
                        {"lambda", xxxring::complex_vector_to_json(lambdas)}};
    Eigen::VectorXcd v;
    try {
        v = xxxring::build_state(n, lambdas);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const int r = static_cast<int>(lambdas.size());
    auto& res = report["results"];
    res["sector"] = {{"n", n}, {"r", r}, {"dimension", v.size()}};
    res["norm"] = v.norm();

    const Eigen::MatrixXd H = xxxring::hamiltonian_configuration(n, r);
    const double nrm2 = v.squaredNorm();
    const cplx rayleigh = (v.adjoint() * (H * v))(0) / nrm2;
    const double h_residual = (H * v - rayleigh.real() * v).norm() / v.norm();
    res["rayleigh_energy"] = rayleigh.real();
    res["hamiltonian_residual"] = check_entry(h_residual, 10.0 * tol_res);

    std::vector<cplx> phases;
    for (const auto& lam : lambdas) phases.push_back(xxxring::phase_from_lambda(lam));
    res["phases"] = xxxring::complex_vector_to_json(phases);
    res["phase_energy"] = xxxring::energy_from_phases(phases);
    const auto cls = xxxring::classify_strings(phases);
    json strings = json::array();
    for (const auto& s : cls.strings) {
        json item;
        item["length"] = s.length;
        item["center"] = s.center;
        item["half_separation"] = s.half_separation;
        strings.push_back(item);
    }
    res["strings"] = {{"classified", cls.classified}, {"pattern", cls.pattern}, {"list", strings}};
    try {
        res["riggings"] = riggings_to_json(xxxring::compute_riggings(phases, n));
    } catch (const std::exception& e) {
        res["riggings"] = {{"error", e.what()}};
    }

    json scan = json::array();
    int best_k = 0;
    double best_frac = -1.0;
    for (int kk = 0; kk < n; ++kk) {
        const auto b = xxxring::wavelet_basis({n, r, kk});
        const double frac = (b.vectors.adjoint() * v).squaredNorm() / nrm2;
        scan.push_back({{"k", kk}, {"fraction", frac}});
        if (frac > best_frac) {
            best_frac = frac;
            best_k = kk;
        }
    }
    res["quasimomentum_scan"] = scan;
    res["dominant_k"] = best_k;
    const auto basis = xxxring::wavelet_basis({n, r, k});
    res["wavelet_projection"] = {
        {"k", k},
        {"basis", xxxring::basis_labels(basis)},
        {"coefficients", xxxring::eigen_vector_to_json(basis.vectors.adjoint() * v)}};
    emit(report, format, json_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of isotropic exchange rings: sector spectra, phase-polynomial "
                 "solutions, creation-operator states, and the verification suite"};
    app.require_subcommand(1);

    int n = 7, r = 3, k = 0;
    double tol = 0.0;
    std::string json_path, format = "pretty";
    std::vector<std::string> lambdas;

    auto add_common = [&](CLI::App* sub, bool with_sector) {
        if (with_sector) {
            sub->add_option("--n", n, "ring size");
            sub->add_option("--r", r, "number of spin deviations");
            sub->add_option("--k", k, "quasimomentum label");
        }
        sub->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
        sub->add_option("--json", json_path, "write the JSON report to this path");
        sub->add_option("--format", format, "stdout format")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
    };

    auto* spectrum = app.add_subcommand("spectrum", "wavelet Hamiltonian, characteristic "
                                                    "polynomial, and spectrum of a sector");
    add_common(spectrum, true);
    auto* qubit = app.add_subcommand("qubit-report", "full pipeline report for the heptagonal "
                                                     "three-deviation qubit");
    add_common(qubit, false);
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify, false);
    auto* state = app.add_subcommand("state", "build a creation-operator product state");
    add_common(state, true);
    state->add_option("--lambda", lambdas, "spectral parameter re or re,im (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(n, r, k, tol, format, json_path);
        if (qubit->parsed()) return cmd_qubit_report(tol, format, json_path);
        if (verify->parsed()) return cmd_verify(tol, format, json_path);
        if (state->parsed()) return cmd_state(n, k, lambdas, tol, format, json_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
