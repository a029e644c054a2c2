#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "subnetx/errors.hpp"
#include "subnetx/mask.hpp"

namespace subnetx {

// Symmetric real weight matrix over atlas nodes for one subject.
using WeightedNetwork = Eigen::MatrixXd;

// Simple undirected graph: node count plus a sorted edge list (u < v),
// no self-loops, no duplicates.
class BinaryGraph {
public:
    BinaryGraph() : n_(0) {}

    BinaryGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
        if (n < 0) throw DataError("negative node count");
        for (auto& [u, v] : edges) {
            if (u == v) throw DataError("self-loop in edge list");
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n) throw DataError("edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
            throw DataError("duplicate edge in edge list");
        }
        edges_ = std::move(edges);
    }

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(n_), 0);
        for (const auto& [u, v] : edges_) {
            ++d[static_cast<std::size_t>(u)];
            ++d[static_cast<std::size_t>(v)];
        }
        return d;
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
        for (const auto& [u, v] : edges_) {
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return adj;
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
};

enum class ThresholdMode { raw, absolute };

// Graph density 2|E| / (n(n-1)).
inline double density(const BinaryGraph& g) {
    const int n = g.node_count();
    if (n < 2) throw DataError("density undefined for fewer than 2 nodes");
    return 2.0 * g.edge_count() / (static_cast<double>(n) * (n - 1));
}

// Binarize a weighted network by keeping exactly k = round(s*n(n-1)/2)
// edges with the largest weight (raw) or |weight| (absolute). Zero-weight
// pairs are never edges. Ties at the cut are broken by (u,v) order.
inline BinaryGraph threshold_to_density(const WeightedNetwork& w, double s,
                                        ThresholdMode mode = ThresholdMode::raw) {
    const auto n = static_cast<int>(w.rows());
    if (w.cols() != w.rows()) throw DataError("non-square matrix");
    if (n < 2) throw DataError("network needs at least 2 nodes");
    if (!(s > 0.0) || s > 1.0) throw DataError("target density must lie in (0,1]");
    const double asym = (w - w.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9) throw DataError("asymmetric weight matrix");

    struct Candidate {
        double key;
        int u, v;
    };
    std::vector<Candidate> cands;
    cands.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double weight = w(u, v);
            if (weight == 0.0) continue;
            const double key = mode == ThresholdMode::raw ? weight : std::abs(weight);
            cands.push_back({key, u, v});
        }
    }

    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const auto k = static_cast<std::size_t>(std::llround(s * pairs));
    if (k > cands.size()) {
        throw DataError("insufficient edges for target density");
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.key != b.key) return a.key > b.key;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    std::vector<std::pair<int, int>> edges;
    edges.reserve(k);
    for (std::size_t i = 0; i < k; ++i) edges.emplace_back(cands[i].u, cands[i].v);
    return BinaryGraph(n, std::move(edges));
}

// Subgraph on the selected nodes, re-indexed 0..k-1 in ascending original
// order; an edge survives iff both endpoints are selected.
inline BinaryGraph induce(const BinaryGraph& g, const SubnetMask& mask) {
    if (mask.size() != static_cast<std::size_t>(g.node_count())) {
        throw DataError("mask length does not match node count");
    }
    if (mask.popcount() == 0) throw DataError("empty sub-network");

    std::vector<int> remap(static_cast<std::size_t>(g.node_count()), -1);
    int next = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        if (mask.test(static_cast<std::size_t>(v))) remap[static_cast<std::size_t>(v)] = next++;
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : g.edges()) {
        const int ru = remap[static_cast<std::size_t>(u)];
        const int rv = remap[static_cast<std::size_t>(v)];
        if (ru >= 0 && rv >= 0) edges.emplace_back(ru, rv);
    }
    return BinaryGraph(next, std::move(edges));
}

// Connected components as sorted node lists, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const BinaryGraph& g) {
    const auto adj = g.adjacency();
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<std::vector<int>> comps;
    for (int start = 0; start < g.node_count(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        std::deque<int> queue{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Largest connected component; ties go to the component containing the
// smallest node index.
inline std::vector<int> largest_component(const BinaryGraph& g) {
    auto comps = connected_components(g);
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].size() > comps[best].size()) best = i;
    }
    if (comps.empty()) return {};
    return comps[best];
}

// Pairwise hop distances inside one connected component. Rows/columns are
// indexed by position in `nodes` (ascending original node ids).
struct DistanceTable {
    std::vector<int> nodes;
    Eigen::MatrixXi dist;

    int size() const { return static_cast<int>(nodes.size()); }
};

// BFS hop distances for all pairs of `component`, which must be connected
// in g.
inline DistanceTable all_pairs_distances(const BinaryGraph& g, std::vector<int> component) {
    std::sort(component.begin(), component.end());
    const int k = static_cast<int>(component.size());
    std::vector<int> local(static_cast<std::size_t>(g.node_count()), -1);
    for (int i = 0; i < k; ++i) {
        const int v = component[static_cast<std::size_t>(i)];
        if (v < 0 || v >= g.node_count()) throw DataError("component node out of range");
        local[static_cast<std::size_t>(v)] = i;
    }

    const auto adj = g.adjacency();
    DistanceTable table;
    table.nodes = component;
    table.dist = Eigen::MatrixXi::Constant(k, k, -1);

    for (int i = 0; i < k; ++i) {
        const int source = component[static_cast<std::size_t>(i)];
        table.dist(i, i) = 0;
        std::deque<int> queue{source};
        std::vector<int> hops(static_cast<std::size_t>(g.node_count()), -1);
        hops[static_cast<std::size_t>(source)] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (hops[static_cast<std::size_t>(v)] >= 0) continue;
                hops[static_cast<std::size_t>(v)] = hops[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
        for (int j = 0; j < k; ++j) {
            const int target = component[static_cast<std::size_t>(j)];
            const int d = hops[static_cast<std::size_t>(target)];
            if (d < 0) throw DataError("component not connected");
            table.dist(i, j) = d;
        }
    }
    return table;
}

// Combinatorial indices from the thresholded graph: edge count, first
// Zagreb index, general Randic indices, Wiener sums, non-isolated count.
struct IndexBundle {
    int edge_count = 0;
    double zagreb_m1 = 0.0;
    std::map<double, double> randic; // beta -> R_beta
    double wiener_w1 = 0.0;
    double wiener_w2 = 0.0;
    double hyper_wiener = 0.0;
    int non_isolated = 0;
    bool has_wiener = false;
};

inline IndexBundle topological_indices(const BinaryGraph& g,
                                       const std::vector<double>& beta_set,
                                       const DistanceTable* distances = nullptr) {
    IndexBundle bundle;
    bundle.edge_count = g.edge_count();
    const auto deg = g.degrees();
    for (int d : deg) {
        bundle.zagreb_m1 += static_cast<double>(d) * d;
        if (d > 0) ++bundle.non_isolated;
    }
    for (double beta : beta_set) {
        double r = 0.0;
        for (const auto& [u, v] : g.edges()) {
            const double du = deg[static_cast<std::size_t>(u)];
            const double dv = deg[static_cast<std::size_t>(v)];
            r += std::pow(du * dv, beta);
        }
        bundle.randic[beta] = r;
    }
    if (distances != nullptr) {
        const int k = distances->size();
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                const double d = distances->dist(i, j);
                bundle.wiener_w1 += d;
                bundle.wiener_w2 += d * d;
            }
        }
        bundle.hyper_wiener = 0.5 * (bundle.wiener_w1 + bundle.wiener_w2);
        bundle.has_wiener = true;
    }
    return bundle;
}

} // namespace subnetx
