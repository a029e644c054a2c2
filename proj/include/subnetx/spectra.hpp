#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "subnetx/errors.hpp"
#include "subnetx/graph.hpp"

namespace subnetx {

enum class MatrixFamily {
    adjacency,
    signless_laplacian,
    signless_laplacian_incidence,
    normalized_signless_laplacian,
    distance,
    randic_adjacency,
    randic_incidence,
    general_randic,
};

// One of the matrix families; general_randic carries its exponent.
struct MatrixKind {
    MatrixFamily family = MatrixFamily::adjacency;
    double beta = 0.0;

    static MatrixKind adjacency() { return {MatrixFamily::adjacency, 0.0}; }
    static MatrixKind signless_laplacian() { return {MatrixFamily::signless_laplacian, 0.0}; }
    static MatrixKind signless_laplacian_incidence() {
        return {MatrixFamily::signless_laplacian_incidence, 0.0};
    }
    static MatrixKind normalized_signless_laplacian() {
        return {MatrixFamily::normalized_signless_laplacian, 0.0};
    }
    static MatrixKind distance() { return {MatrixFamily::distance, 0.0}; }
    static MatrixKind randic_adjacency() { return {MatrixFamily::randic_adjacency, 0.0}; }
    static MatrixKind randic_incidence() { return {MatrixFamily::randic_incidence, 0.0}; }
    static MatrixKind general_randic(double beta) {
        if (!std::isfinite(beta)) throw DataError("general randic exponent must be finite");
        return {MatrixFamily::general_randic, beta};
    }

    friend bool operator==(const MatrixKind& a, const MatrixKind& b) {
        return a.family == b.family &&
               (a.family != MatrixFamily::general_randic || a.beta == b.beta);
    }
};

inline std::string family_name(MatrixFamily f) {
    switch (f) {
        case MatrixFamily::adjacency: return "adjacency";
        case MatrixFamily::signless_laplacian: return "signless_laplacian";
        case MatrixFamily::signless_laplacian_incidence: return "signless_laplacian_incidence";
        case MatrixFamily::normalized_signless_laplacian: return "normalized_signless_laplacian";
        case MatrixFamily::distance: return "distance";
        case MatrixFamily::randic_adjacency: return "randic_adjacency";
        case MatrixFamily::randic_incidence: return "randic_incidence";
        case MatrixFamily::general_randic: return "general_randic";
    }
    return "unknown";
}

inline std::string kind_name(const MatrixKind& kind) {
    std::string name = family_name(kind.family);
    if (kind.family == MatrixFamily::general_randic) {
        std::string b = std::to_string(kind.beta);
        b.erase(b.find_last_not_of('0') + 1);
        if (!b.empty() && b.back() == '.') b.pop_back();
        name += "[b=" + b + "]";
    }
    return name;
}

// Eigenvalues (or singular values) in descending order.
struct Spectrum {
    MatrixKind kind;
    std::vector<double> values;
};

// Graph energy as the sum of the kind's normalizer terms.
struct EnergyValue {
    MatrixKind kind;
    double value = 0.0;
};

namespace detail {

inline void require_no_isolated(const std::vector<int>& degrees) {
    for (int d : degrees) {
        if (d == 0) throw DataError("isolated vertex in degree-normalized matrix");
    }
}

// Eigenvalues of negligible magnitude on positive-semidefinite kinds snap
// to zero (fractional powers would otherwise amplify solver noise);
// anything below -1e-10 is a solver failure.
inline double clamp_psd(double value) {
    if (std::abs(value) <= 1e-10) return 0.0;
    if (value > 0.0) return value;
    throw DataError("negative eigenvalue on positive-semidefinite matrix");
}

inline bool is_psd_family(MatrixFamily f) {
    return f == MatrixFamily::signless_laplacian ||
           f == MatrixFamily::signless_laplacian_incidence ||
           f == MatrixFamily::normalized_signless_laplacian ||
           f == MatrixFamily::randic_incidence;
}

} // namespace detail

// Build the symmetric matrix of `kind` for g. Distance requires a table
// covering every node of g; degree-normalized kinds reject isolated
// vertices (the caller restricts to the non-isolated set first).
inline Eigen::MatrixXd build_matrix(const BinaryGraph& g, const MatrixKind& kind,
                                    const DistanceTable* distances = nullptr) {
    const int n = g.node_count();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const auto deg = g.degrees();

    switch (kind.family) {
        case MatrixFamily::adjacency:
            for (const auto& [u, v] : g.edges()) m(u, v) = m(v, u) = 1.0;
            break;
        case MatrixFamily::signless_laplacian:
        case MatrixFamily::signless_laplacian_incidence:
            for (const auto& [u, v] : g.edges()) m(u, v) = m(v, u) = 1.0;
            for (int v = 0; v < n; ++v) m(v, v) = deg[static_cast<std::size_t>(v)];
            break;
        case MatrixFamily::normalized_signless_laplacian:
            detail::require_no_isolated(deg);
            for (const auto& [u, v] : g.edges()) {
                const double du = deg[static_cast<std::size_t>(u)];
                const double dv = deg[static_cast<std::size_t>(v)];
                m(u, v) = m(v, u) = std::pow(du * dv, -0.5);
            }
            for (int v = 0; v < n; ++v) m(v, v) = 1.0;
            break;
        case MatrixFamily::distance: {
            if (distances == nullptr || distances->size() != n) {
                throw DataError("missing distances for distance matrix");
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) m(i, j) = distances->dist(i, j);
            }
            break;
        }
        case MatrixFamily::randic_adjacency:
            detail::require_no_isolated(deg);
            for (const auto& [u, v] : g.edges()) {
                const double du = deg[static_cast<std::size_t>(u)];
                const double dv = deg[static_cast<std::size_t>(v)];
                m(u, v) = m(v, u) = std::pow(du * dv, -0.5);
            }
            break;
        case MatrixFamily::general_randic:
            detail::require_no_isolated(deg);
            for (const auto& [u, v] : g.edges()) {
                const double du = deg[static_cast<std::size_t>(u)];
                const double dv = deg[static_cast<std::size_t>(v)];
                m(u, v) = m(v, u) = std::pow(du * dv, kind.beta);
            }
            break;
        case MatrixFamily::randic_incidence:
            throw DataError("randic incidence spectrum comes from randic_incidence_singulars");
    }
    return m;
}

// All real eigenvalues of a symmetric matrix, descending. Backed by
// Eigen's self-adjoint solver (Householder tridiagonalization + implicit
// QL shifts), which is deterministic for identical input.
inline Spectrum spectrum(const Eigen::MatrixXd& matrix, const MatrixKind& kind) {
    if (matrix.rows() != matrix.cols()) throw DataError("non-square matrix");
    if (matrix.rows() > 0) {
        const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
        const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * scale) throw DataError("non-symmetric matrix");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DataError("eigensolver failed to converge");

    Spectrum spec;
    spec.kind = kind;
    const auto& ev = solver.eigenvalues();
    spec.values.assign(ev.data(), ev.data() + ev.size());
    std::reverse(spec.values.begin(), spec.values.end());
    if (detail::is_psd_family(kind.family)) {
        for (double& v : spec.values) v = detail::clamp_psd(v);
    }
    return spec;
}

inline Spectrum spectrum(const BinaryGraph& g, const MatrixKind& kind,
                         const DistanceTable* distances = nullptr) {
    return spectrum(build_matrix(g, kind, distances), kind);
}

// Singular values of the Randic incidence matrix B_R (entries d_v^{-1/2}
// at incidences): sigma_i^2 are the eigenvalues of B_R B_R^T, which
// equals the normalized signless Laplacian on isolated-free graphs.
inline Spectrum randic_incidence_singulars(const BinaryGraph& g) {
    const auto q = spectrum(g, MatrixKind::normalized_signless_laplacian());
    Spectrum spec;
    spec.kind = MatrixKind::randic_incidence();
    spec.values.reserve(q.values.size());
    for (double v : q.values) spec.values.push_back(std::sqrt(detail::clamp_psd(v)));
    std::sort(spec.values.begin(), spec.values.end(), std::greater<>());
    return spec;
}

// Per-eigenvalue contributions to the kind's energy; these are also the
// unnormalized probabilities of the spectral distribution.
inline std::vector<double> normalizer_terms(const Spectrum& spec) {
    std::vector<double> terms;
    terms.reserve(spec.values.size());
    switch (spec.kind.family) {
        case MatrixFamily::adjacency:
        case MatrixFamily::distance:
        case MatrixFamily::randic_adjacency:
        case MatrixFamily::general_randic:
            for (double v : spec.values) terms.push_back(std::abs(v));
            break;
        case MatrixFamily::signless_laplacian:
        case MatrixFamily::normalized_signless_laplacian:
        case MatrixFamily::randic_incidence:
            for (double v : spec.values) terms.push_back(detail::clamp_psd(v));
            break;
        case MatrixFamily::signless_laplacian_incidence:
            for (double v : spec.values) terms.push_back(std::sqrt(detail::clamp_psd(v)));
            break;
    }
    return terms;
}

inline EnergyValue energy(const Spectrum& spec) {
    const auto terms = normalizer_terms(spec);
    EnergyValue e;
    e.kind = spec.kind;
    for (double t : terms) e.value += t;
    return e;
}

} // namespace subnetx
