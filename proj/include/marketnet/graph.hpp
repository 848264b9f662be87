#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "marketnet/bitset.hpp"
#include "marketnet/panel.hpp"

namespace marketnet {

enum class RemovalKind { WeakFirst, StrongFirst, Random };

// WeakFirst removes the largest distances (weakest correlations) first,
// StrongFirst the smallest, Random a seeded uniform permutation.
struct RemovalMode {
    RemovalKind kind = RemovalKind::WeakFirst;
    std::uint64_t seed = 0;  // consumed by Random only

    static RemovalMode weak_first() { return {RemovalKind::WeakFirst, 0}; }
    static RemovalMode strong_first() { return {RemovalKind::StrongFirst, 0}; }
    static RemovalMode random(std::uint64_t seed) { return {RemovalKind::Random, seed}; }
};

// CLI/CSV token: "weak", "strong" or "random".
std::string mode_name(const RemovalMode& mode);
RemovalMode parse_mode(const std::string& name, std::uint64_t seed = 0);

struct Edge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;  // src < dst
    double distance = 0.0;
};

// Complete weighted graph over all symbol pairs.
struct MarketGraph {
    std::vector<std::string> symbols;
    std::vector<Edge> edges;  // all n(n-1)/2 pairs, ordered by (src, dst)
};

struct FilteredGraph {
    std::vector<std::string> symbols;            // parent universe
    std::vector<Edge> edges;                     // survivors, ordered by (src, dst)
    double q = 0.0;                              // removed fraction
    RemovalMode mode;
    std::vector<std::uint32_t> connected_nodes;  // degree >= 1, ascending
};

MarketGraph build_graph(const DistanceMatrix& dist);

// Edges filter_links removes at fraction q: floor(q * m), with an epsilon guard
// so products that are exact in real arithmetic are not floored down.
std::size_t removal_count(std::size_t m, double q);

// Full edge list in removal order; distance ties break by (src, dst) ascending.
std::vector<Edge> removal_order(const MarketGraph& graph, const RemovalMode& mode);

FilteredGraph filter_links(const MarketGraph& graph, const RemovalMode& mode, double q);

// Per-symbol degree (0 for isolated nodes).
std::vector<std::uint32_t> degrees(const FilteredGraph& fg);

// Connected clusters of connected_nodes, each ascending by node index;
// clusters ordered by size descending, ties by smallest member symbol.
std::vector<std::vector<std::uint32_t>> components(const FilteredGraph& fg);

// <k^2>/<k> over connected nodes; throws EmptyGraph when no edges survive.
double kappa(const FilteredGraph& fg);

// Adjacency rows as bitsets over the full symbol universe.
std::vector<Bitset> adjacency(std::size_t n_symbols, const std::vector<Edge>& edges);

}  // namespace marketnet
