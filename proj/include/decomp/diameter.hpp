#ifndef DECOMP_DIAMETER_HPP
#define DECOMP_DIAMETER_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "complex.hpp"
#include "error.hpp"

namespace decomp {

/// Facets of a pure complex, adjacent when they share a ridge.
struct FacetRidgeGraph {
    std::vector<Face> nodes;
    std::vector<std::vector<int>> adjacency;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    [[nodiscard]] std::size_t degree(std::size_t i) const { return adjacency[i].size(); }
};

inline FacetRidgeGraph facet_ridge_graph(const SimplicialComplex& cx)
{
    require_input(!cx.is_void(), "facet_ridge_graph: complex has no facets");
    require_input(cx.is_pure(), "facet_ridge_graph: complex is not pure");
    FacetRidgeGraph g;
    g.nodes = cx.facets();
    const int ridge = g.nodes.front().size() - 1;
    const std::size_t n = g.nodes.size();
    g.adjacency.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((g.nodes[i] & g.nodes[j]).size() == ridge) {
                g.adjacency[i].push_back(static_cast<int>(j));
                g.adjacency[j].push_back(static_cast<int>(i));
            }
        }
    }
    for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
    return g;
}

/// Breadth-first distances from one node; -1 marks unreachable nodes.
inline std::vector<int> bfs_distances(const FacetRidgeGraph& g, int source)
{
    std::vector<int> dist(g.size(), -1);
    std::deque<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline int distance(const FacetRidgeGraph& g, int from, int to)
{
    return bfs_distances(g, from)[static_cast<std::size_t>(to)];
}

/// Exact diameter by BFS from every node. Throws InputError on a disconnected
/// graph, naming one facet from each of two components.
inline int diameter(const FacetRidgeGraph& g, unsigned threads = 1)
{
    const std::size_t n = g.size();
    if (n == 0) throw InputError("diameter: empty graph");

    std::vector<int> first = bfs_distances(g, 0);
    auto stray = std::find(first.begin(), first.end(), -1);
    if (stray != first.end()) {
        throw InputError("diameter: facet-ridge graph is disconnected; " + to_string(g.nodes[0]) +
                         " cannot reach " + to_string(g.nodes[static_cast<std::size_t>(stray - first.begin())]));
    }

    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<int> ecc(threads, 0);
    auto work = [&](unsigned t) {
        for (std::size_t s = t; s < n; s += threads) {
            auto d = bfs_distances(g, static_cast<int>(s));
            ecc[t] = std::max(ecc[t], *std::max_element(d.begin(), d.end()));
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    return *std::max_element(ecc.begin(), ecc.end());
}

inline int diameter(const SimplicialComplex& cx, unsigned threads = 1)
{
    return diameter(facet_ridge_graph(cx), threads);
}

enum class BoundKind { hirsch, provan_billera_strong, provan_billera_weak, brightwell_et_al };

inline std::string to_string(BoundKind k)
{
    switch (k) {
    case BoundKind::hirsch: return "hirsch";
    case BoundKind::provan_billera_strong: return "provan_billera_strong";
    case BoundKind::provan_billera_weak: return "provan_billera_weak";
    case BoundKind::brightwell_et_al: return "brightwell_et_al";
    }
    return "?";
}

/// Shape of the simple polytope whose polar boundary the complex is.
/// Rows/cols are only needed for the transportation-polytope bound.
struct PolytopeParams {
    int facets = 0; // n: facets of the simple polytope = vertices of the complex
    int dim = 0;    // d
    int rows = 0;   // m
    int cols = 0;   // n of the m x n transportation table
};

struct BoundReport {
    std::int64_t diameter = 0;
    BoundKind kind = BoundKind::hirsch;
    std::int64_t bound_value = 0;
    bool satisfied = false;
};

inline std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BoundReport bound_report(const SimplicialComplex& cx, int k, BoundKind kind,
                                std::optional<PolytopeParams> params = std::nullopt, unsigned threads = 1)
{
    BoundReport r;
    r.kind = kind;
    r.diameter = diameter(cx, threads);
    const int d = cx.dim() + 1;
    switch (kind) {
    case BoundKind::hirsch:
        require_input(params.has_value(), "hirsch bound needs polytope parameters (n, d)");
        r.bound_value = params->facets - params->dim;
        break;
    case BoundKind::provan_billera_strong:
        r.bound_value = f_count(cx, k) - binomial(d, k + 1);
        break;
    case BoundKind::provan_billera_weak:
        r.bound_value = 2 * f_count(cx, k);
        break;
    case BoundKind::brightwell_et_al:
        require_input(params.has_value() && params->rows > 0 && params->cols > 0,
                      "transportation bound needs table shape (m, n)");
        r.bound_value = 8 * (params->rows + params->cols - 1);
        break;
    }
    r.satisfied = r.diameter <= r.bound_value;
    return r;
}

/// Graphviz export. Node label = comma-joined vertex labels of the facet.
inline std::string to_dot(const FacetRidgeGraph& g, const SimplicialComplex& cx)
{
    std::ostringstream out;
    out << "graph facet_ridge {\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << "  n" << i << " [label=\"";
        bool first = true;
        g.nodes[i].for_each([&](VertexId v) {
            out << (first ? "" : ",") << cx.label(v);
            first = false;
        });
        out << "\"];\n";
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (int j : g.adjacency[i])
            if (static_cast<std::size_t>(j) > i) out << "  n" << i << " -- n" << j << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace decomp

#endif // DECOMP_DIAMETER_HPP
