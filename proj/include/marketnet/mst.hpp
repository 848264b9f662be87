#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marketnet/graph.hpp"

namespace marketnet {

struct SpanningTree {
    std::vector<std::string> nodes;  // spanned symbols
    std::vector<Edge> edges;         // |nodes| - 1 edges over local node indices, ordered by (src, dst)
    double total_weight = 0.0;
};

// Kruskal over ascending (distance, src, dst), so ties resolve identically on
// every run. node_subset (parent indices) restricts the tree to those nodes
// while still using the full pairwise distances between them; this is how a
// tree over the connected nodes of a sparse filtered graph is built.
SpanningTree minimum_spanning_tree(const DistanceMatrix& dist);
SpanningTree minimum_spanning_tree(const DistanceMatrix& dist, const std::vector<std::uint32_t>& node_subset);
SpanningTree minimum_spanning_tree(const MarketGraph& graph);
SpanningTree minimum_spanning_tree(const MarketGraph& graph, const std::vector<std::uint32_t>& node_subset);

}  // namespace marketnet
