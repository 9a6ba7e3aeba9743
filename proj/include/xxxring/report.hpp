#pragma once

// JSON serialization helpers for CLI reports: complex numbers as [re, im]
// pairs, matrices row-major with their basis labels alongside, and the shared
// report envelope.

#include <chrono>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lattice.hpp"

namespace xxxring {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json complex_vector_to_json(const std::vector<cplx>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(complex_to_json(z));
    return out;
}

inline json eigen_vector_to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

inline json real_vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

inline std::string triad_label(const Triad& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

inline std::vector<std::string> basis_labels(const WaveletBasis& basis) {
    std::vector<std::string> out;
    out.reserve(basis.orbits.size());
    for (const auto& o : basis.orbits) out.push_back(triad_label(o.triad));
    return out;
}

inline json matrix_to_json(const Eigen::MatrixXcd& M, const std::vector<std::string>& labels = {}) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) entries.push_back(complex_to_json(M(i, j)));
    json out;
    out["rows"] = M.rows();
    out["cols"] = M.cols();
    if (!labels.empty()) out["basis"] = labels;
    out["entries"] = entries;
    return out;
}

inline json real_matrix_to_json(const Eigen::MatrixXd& M, const std::vector<std::string>& labels = {}) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) entries.push_back(M(i, j));
    json out;
    out["rows"] = M.rows();
    out["cols"] = M.cols();
    if (!labels.empty()) out["basis"] = labels;
    out["entries"] = entries;
    return out;
}

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Common envelope; every command fills "inputs" and "results".
inline json report_envelope(const std::string& command) {
    json out;
    out["command"] = command;
    out["version"] = kVersion;
    out["timestamp"] = iso_timestamp();
    out["inputs"] = json::object();
    out["results"] = json::object();
    return out;
}

}  // namespace xxxring
