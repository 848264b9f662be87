#include "marketnet/mst.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "marketnet/errors.hpp"

namespace marketnet {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

std::vector<std::uint32_t> full_subset(std::size_t n) {
    std::vector<std::uint32_t> subset(n);
    std::iota(subset.begin(), subset.end(), 0u);
    return subset;
}

// Kruskal over the complete graph on `subset` (parent indices), weights from
// `weight(i, j)` on parent indices. Ties resolve by ascending (src, dst).
SpanningTree kruskal(const std::vector<std::string>& symbols, std::vector<std::uint32_t> subset,
                     const std::function<double(std::uint32_t, std::uint32_t)>& weight) {
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw InputError("node subset contains duplicates");
    if (!subset.empty() && subset.back() >= symbols.size())
        throw InputError("node subset index out of range");
    if (subset.size() < 2)
        throw InputError("spanning tree needs at least 2 nodes, got " + std::to_string(subset.size()));

    const std::size_t s = subset.size();
    std::vector<Edge> all;
    all.reserve(s * (s - 1) / 2);
    for (std::uint32_t a = 0; a + 1 < s; ++a)
        for (std::uint32_t b = a + 1; b < s; ++b)
            all.push_back({a, b, weight(subset[a], subset[b])});
    std::sort(all.begin(), all.end(), [&](const Edge& x, const Edge& y) {
        if (x.distance != y.distance) return x.distance < y.distance;
        if (subset[x.src] != subset[y.src]) return subset[x.src] < subset[y.src];
        return subset[x.dst] < subset[y.dst];
    });

    SpanningTree tree;
    tree.nodes.reserve(s);
    for (const std::uint32_t i : subset) tree.nodes.push_back(symbols[i]);

    UnionFind forest(s);
    for (const Edge& e : all) {
        if (!forest.unite(e.src, e.dst)) continue;
        tree.edges.push_back(e);
        tree.total_weight += e.distance;
        if (tree.edges.size() == s - 1) break;
    }
    std::sort(tree.edges.begin(), tree.edges.end(), [](const Edge& a, const Edge& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    });
    return tree;
}

}  // namespace

SpanningTree minimum_spanning_tree(const DistanceMatrix& dist) {
    return minimum_spanning_tree(dist, full_subset(dist.symbols.size()));
}

SpanningTree minimum_spanning_tree(const DistanceMatrix& dist,
                                   const std::vector<std::uint32_t>& node_subset) {
    if (dist.d.rows != dist.symbols.size() || dist.d.cols != dist.symbols.size())
        throw InputError("distance matrix shape does not match symbol count");
    return kruskal(dist.symbols, node_subset,
                   [&dist](std::uint32_t i, std::uint32_t j) { return dist.d.at(i, j); });
}

SpanningTree minimum_spanning_tree(const MarketGraph& graph) {
    return minimum_spanning_tree(graph, full_subset(graph.symbols.size()));
}

SpanningTree minimum_spanning_tree(const MarketGraph& graph,
                                   const std::vector<std::uint32_t>& node_subset) {
    const std::size_t n = graph.symbols.size();
    if (graph.edges.size() != n * (n - 1) / 2)
        throw InputError("market graph is not complete");
    Matrix d(n, n);
    for (const Edge& e : graph.edges) {
        d.at(e.src, e.dst) = e.distance;
        d.at(e.dst, e.src) = e.distance;
    }
    return kruskal(graph.symbols, node_subset,
                   [&d](std::uint32_t i, std::uint32_t j) { return d.at(i, j); });
}

}  // namespace marketnet
