#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marketnet/graph.hpp"

namespace marketnet {

struct ResourceLimits {
    std::uint64_t max_steps = 10'000'000;  // recursion budget for clique search
};

struct CliqueSet {
    std::vector<std::vector<std::uint32_t>> cliques;  // each ascending; ordered size desc, then lexicographic
    std::string source_fingerprint;                   // fingerprint of the graph the set came from
    std::uint64_t steps_used = 0;
};

struct CliqueMetrics {
    std::uint64_t n_cliques = 0;
    std::uint32_t max_clique_size = 0;
    double relative_count = 0.0;  // n_cliques / n_connected
    double relative_max = 0.0;    // max_clique_size / n_connected
    double clustering = 0.0;
};

// Hash of the node count and surviving edge topology.
std::string graph_fingerprint(const FilteredGraph& fg);

// Mean local clustering over connected nodes; degree-1 nodes contribute 0.
// Throws EmptyGraph when no edges survive.
double clustering_coefficient(const FilteredGraph& fg);

// Exact enumeration of all maximal cliques (each has >= 2 nodes; isolated nodes
// carry none) via pivoted branch-and-bound. Throws BudgetExceeded, with progress
// statistics, when the recursion budget runs out; no partial list is returned.
CliqueSet maximal_cliques(const FilteredGraph& fg, const ResourceLimits& limits = {});

// Counts and the n_connected-relative ratios; requires cliques computed from fg.
CliqueMetrics clique_metrics(const FilteredGraph& fg, const CliqueSet& cliques);

}  // namespace marketnet
