#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "subnetx/errors.hpp"
#include "subnetx/graph.hpp"
#include "subnetx/spectra.hpp"

namespace subnetx {

// Probability vector p_i = normalizer_term_i / energy over a spectrum.
struct SpectralDistribution {
    MatrixKind kind;
    std::vector<double> p;
};

inline SpectralDistribution spectral_distribution(const Spectrum& spec) {
    auto terms = normalizer_terms(spec);
    double total = 0.0;
    for (double t : terms) total += t;
    if (!(total > 0.0)) throw DataError("degenerate spectrum");
    for (double& t : terms) t /= total;
    return {spec.kind, std::move(terms)};
}

inline SpectralDistribution spectral_distribution(const BinaryGraph& g, const MatrixKind& kind,
                                                  const DistanceTable* distances = nullptr) {
    if (kind.family == MatrixFamily::randic_incidence) {
        return spectral_distribution(randic_incidence_singulars(g));
    }
    return spectral_distribution(spectrum(g, kind, distances));
}

namespace detail {

inline void validate_alpha(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (alpha == 1.0) throw std::invalid_argument("alpha must differ from 1");
}

inline double power_sum(const std::vector<double>& p, double alpha) {
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s += std::pow(v, alpha);
    }
    return s;
}

} // namespace detail

// First-degree entropy, unified over all kinds: 1 - sum p_i^2.
inline double i1(const SpectralDistribution& d) {
    double s = 0.0;
    for (double v : d.p) s += v * v;
    return 1.0 - s;
}

// Renyi entropy of order alpha, log base 2.
inline double i2(const SpectralDistribution& d, double alpha) {
    detail::validate_alpha(alpha);
    const double value = std::log2(detail::power_sum(d.p, alpha)) / (1.0 - alpha);
    return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

// Daroczy entropy of order alpha.
inline double i3(const SpectralDistribution& d, double alpha) {
    detail::validate_alpha(alpha);
    const double value =
        (detail::power_sum(d.p, alpha) - 1.0) / (std::exp2(1.0 - alpha) - 1.0);
    return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

// Closed-form I^1 from combinatorial indices, as printed in the source
// table. The distance row keeps the printed coefficient 4, which exceeds
// the trace-identity coefficient by a factor of 2; the unified i1() is
// authoritative and this form is for diagnostics and cross-checks.
inline double i1_closed_form(const MatrixKind& kind, const IndexBundle& bundle,
                             double energy_value, int n, int non_isolated) {
    const double m = bundle.edge_count;
    const double e2 = energy_value * energy_value;
    switch (kind.family) {
        case MatrixFamily::adjacency:
            return 1.0 - 2.0 * m / e2;
        case MatrixFamily::signless_laplacian:
            return 1.0 - (bundle.zagreb_m1 + 2.0 * m) / (4.0 * m * m);
        case MatrixFamily::signless_laplacian_incidence:
            return 1.0 - 2.0 * m / e2;
        case MatrixFamily::normalized_signless_laplacian: {
            const double r1 = bundle.randic.at(-1.0);
            return 1.0 - (n + 2.0 * r1) / (static_cast<double>(n) * n);
        }
        case MatrixFamily::distance:
            return 1.0 - 4.0 * (2.0 * bundle.hyper_wiener - bundle.wiener_w1) / e2;
        case MatrixFamily::randic_adjacency:
            return 1.0 - 2.0 * bundle.randic.at(-1.0) / e2;
        case MatrixFamily::randic_incidence:
            return 1.0 - non_isolated / e2;
        case MatrixFamily::general_randic:
            return 1.0 - 2.0 * bundle.randic.at(2.0 * kind.beta) / e2;
    }
    throw DataError("unknown matrix kind");
}

// Which entropy features to compute: matrix families, the alpha grid for
// I2/I3, and the exponent grid for the general Randic family.
struct FeatureConfig {
    std::vector<MatrixFamily> families{
        MatrixFamily::adjacency,
        MatrixFamily::signless_laplacian,
        MatrixFamily::signless_laplacian_incidence,
        MatrixFamily::normalized_signless_laplacian,
        MatrixFamily::distance,
        MatrixFamily::randic_adjacency,
        MatrixFamily::randic_incidence,
        MatrixFamily::general_randic,
    };
    std::vector<double> alpha_grid{0.5, 2.0};
    std::vector<double> beta_grid{-0.5, 1.0};

    void validate() const {
        if (families.empty()) throw ConfigError("feature config needs at least one matrix kind");
        if (alpha_grid.empty()) throw ConfigError("feature config needs at least one alpha");
        for (double a : alpha_grid) detail::validate_alpha(a);
        bool has_general = false;
        for (auto f : families) {
            if (f == MatrixFamily::general_randic) has_general = true;
        }
        if (has_general && beta_grid.empty()) {
            throw ConfigError("general randic family needs a beta grid");
        }
        for (double b : beta_grid) {
            if (!std::isfinite(b)) throw ConfigError("beta grid values must be finite");
        }
    }

    // Expands general_randic over the beta grid, preserving family order.
    std::vector<MatrixKind> kinds() const {
        std::vector<MatrixKind> out;
        for (auto f : families) {
            if (f == MatrixFamily::general_randic) {
                for (double b : beta_grid) out.push_back(MatrixKind::general_randic(b));
            } else {
                out.push_back({f, 0.0});
            }
        }
        return out;
    }
};

enum class EntropyFamilyId { i1, i2, i3 };

struct FeatureDescriptor {
    MatrixKind kind;
    EntropyFamilyId entropy = EntropyFamilyId::i1;
    double alpha = 0.0;

    std::string name() const {
        std::string out = kind_name(kind);
        switch (entropy) {
            case EntropyFamilyId::i1: return out + ".I1";
            case EntropyFamilyId::i2: out += ".I2"; break;
            case EntropyFamilyId::i3: out += ".I3"; break;
        }
        std::string a = std::to_string(alpha);
        a.erase(a.find_last_not_of('0') + 1);
        if (!a.empty() && a.back() == '.') a.pop_back();
        return out + "[a=" + a + "]";
    }
};

// Fixed slot order for a config: per kind, I1 then (I2, I3) per alpha.
inline std::vector<FeatureDescriptor> feature_layout(const FeatureConfig& cfg) {
    cfg.validate();
    std::vector<FeatureDescriptor> out;
    for (const auto& kind : cfg.kinds()) {
        out.push_back({kind, EntropyFamilyId::i1, 0.0});
        for (double a : cfg.alpha_grid) {
            out.push_back({kind, EntropyFamilyId::i2, a});
            out.push_back({kind, EntropyFamilyId::i3, a});
        }
    }
    return out;
}

struct FeatureSlot {
    double value = 0.0;
    bool degenerate = false; // graph too degenerate for this kind; value forced to 0
    bool on_lcc = false;     // computed on the largest connected component
    bool restricted = false; // computed on the non-isolated vertex set
};

struct EntropyFeatureVector {
    std::vector<FeatureDescriptor> descriptors;
    std::vector<FeatureSlot> slots;

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(slots.size());
        for (const auto& s : slots) out.push_back(s.value);
        return out;
    }
};

namespace detail {

// Fills the I1/I2/I3 slots for one kind from its distribution.
inline void emit_kind(const SpectralDistribution& dist, const FeatureConfig& cfg,
                      bool on_lcc, bool restricted, std::vector<FeatureSlot>& slots) {
    FeatureSlot base;
    base.on_lcc = on_lcc;
    base.restricted = restricted;
    FeatureSlot s = base;
    s.value = i1(dist);
    slots.push_back(s);
    for (double a : cfg.alpha_grid) {
        s = base;
        s.value = i2(dist, a);
        slots.push_back(s);
        s = base;
        s.value = i3(dist, a);
        slots.push_back(s);
    }
}

inline void emit_degenerate(const FeatureConfig& cfg, std::vector<FeatureSlot>& slots) {
    FeatureSlot s;
    s.degenerate = true;
    slots.push_back(s);
    for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
        slots.push_back(s);
        slots.push_back(s);
    }
}

} // namespace detail

// Entropy features for one graph. Degree-normalized kinds are computed on
// the non-isolated vertex set, the distance kind on the largest connected
// component; an edgeless graph yields flagged zeros so downstream fitness
// stays total. Derivations shared across kinds: eigenvalues of the
// normalized signless Laplacian are 1 + rho_i (rho from the Randic
// adjacency matrix), and the Randic incidence singular values are their
// square roots.
inline EntropyFeatureVector feature_vector(const BinaryGraph& g, const FeatureConfig& cfg) {
    cfg.validate();
    if (g.node_count() < 2) throw DataError("feature vector needs at least 2 nodes");

    EntropyFeatureVector fv;
    fv.descriptors = feature_layout(cfg);
    fv.slots.reserve(fv.descriptors.size());

    const auto kinds = cfg.kinds();
    if (g.edge_count() == 0) {
        for (std::size_t i = 0; i < kinds.size(); ++i) detail::emit_degenerate(cfg, fv.slots);
        return fv;
    }

    bool need_core = false;
    bool need_rho = false;
    bool need_q = false;
    bool need_distance = false;
    for (const auto& kind : kinds) {
        switch (kind.family) {
            case MatrixFamily::signless_laplacian:
            case MatrixFamily::signless_laplacian_incidence:
                need_q = true;
                break;
            case MatrixFamily::normalized_signless_laplacian:
            case MatrixFamily::randic_adjacency:
            case MatrixFamily::randic_incidence:
                need_core = need_rho = true;
                break;
            case MatrixFamily::general_randic:
                need_core = true;
                if (kind.beta == -0.5) need_rho = true;
                break;
            case MatrixFamily::distance:
                need_distance = true;
                break;
            case MatrixFamily::adjacency:
                break;
        }
    }

    // non-isolated restriction shared by the degree-normalized kinds
    std::optional<BinaryGraph> core;
    bool restricted = false;
    if (need_core) {
        const auto deg = g.degrees();
        SubnetMask keep(static_cast<std::size_t>(g.node_count()));
        for (int v = 0; v < g.node_count(); ++v) {
            if (deg[static_cast<std::size_t>(v)] > 0) keep.set(static_cast<std::size_t>(v), true);
        }
        restricted = keep.popcount() < static_cast<std::size_t>(g.node_count());
        core = restricted ? induce(g, keep) : g;
    }

    std::optional<std::vector<double>> rho; // Randic adjacency eigenvalues, descending
    if (need_rho) {
        rho = spectrum(*core, MatrixKind::randic_adjacency()).values;
    }
    std::optional<std::vector<double>> q; // signless Laplacian eigenvalues
    if (need_q) {
        q = spectrum(g, MatrixKind::signless_laplacian()).values;
    }

    std::optional<BinaryGraph> lcc_graph;
    std::optional<DistanceTable> lcc_distances;
    bool on_lcc = false;
    if (need_distance) {
        auto comp = largest_component(g);
        on_lcc = static_cast<int>(comp.size()) < g.node_count();
        SubnetMask keep = SubnetMask::from_nodes(static_cast<std::size_t>(g.node_count()), comp);
        lcc_graph = on_lcc ? induce(g, keep) : g;
        std::vector<int> all(static_cast<std::size_t>(lcc_graph->node_count()));
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        lcc_distances = all_pairs_distances(*lcc_graph, all);
    }

    for (const auto& kind : kinds) {
        switch (kind.family) {
            case MatrixFamily::adjacency:
                detail::emit_kind(spectral_distribution(g, kind), cfg, false, false, fv.slots);
                break;
            case MatrixFamily::signless_laplacian:
            case MatrixFamily::signless_laplacian_incidence:
                detail::emit_kind(spectral_distribution(Spectrum{kind, *q}), cfg, false, false,
                                  fv.slots);
                break;
            case MatrixFamily::normalized_signless_laplacian: {
                std::vector<double> values(*rho);
                for (double& v : values) v = detail::clamp_psd(1.0 + v);
                detail::emit_kind(spectral_distribution(Spectrum{kind, std::move(values)}), cfg,
                                  false, restricted, fv.slots);
                break;
            }
            case MatrixFamily::randic_adjacency:
                detail::emit_kind(spectral_distribution(Spectrum{kind, *rho}), cfg, false,
                                  restricted, fv.slots);
                break;
            case MatrixFamily::randic_incidence: {
                std::vector<double> values(*rho);
                for (double& v : values) v = std::sqrt(detail::clamp_psd(1.0 + v));
                std::sort(values.begin(), values.end(), std::greater<>());
                detail::emit_kind(spectral_distribution(Spectrum{kind, std::move(values)}), cfg,
                                  false, restricted, fv.slots);
                break;
            }
            case MatrixFamily::general_randic: {
                if (kind.beta == -0.5) {
                    detail::emit_kind(spectral_distribution(Spectrum{kind, *rho}), cfg, false,
                                      restricted, fv.slots);
                } else {
                    detail::emit_kind(spectral_distribution(*core, kind), cfg, false, restricted,
                                      fv.slots);
                }
                break;
            }
            case MatrixFamily::distance:
                detail::emit_kind(
                    spectral_distribution(*lcc_graph, kind, &*lcc_distances), cfg, on_lcc, false,
                    fv.slots);
                break;
        }
    }
    return fv;
}

} // namespace subnetx
