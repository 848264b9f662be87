#pragma once

#include <cstdint>
#include <vector>

#include "marketnet/cliques.hpp"
#include "marketnet/graph.hpp"

namespace marketnet {

struct ScanRecord {
    RemovalMode mode;
    double q = 0.0;
    std::uint32_t n_connected = 0;
    std::uint32_t lcc_size = 0;
    std::uint32_t slcc_size = 0;
    double kappa = 0.0;       // 0 when no edges survive
    double clustering = 0.0;  // 0 when no edges survive
    bool has_clique_metrics = false;
    CliqueMetrics cliques;
};

struct ScanOptions {
    // Clique enumeration is exponential on dense graphs, so the clique columns
    // are opt-in and only filled for rows with q >= clique_min_q.
    bool with_cliques = false;
    double clique_min_q = 0.99;
    ResourceLimits limits;
    unsigned threads = 1;  // modes may run in parallel; output order is fixed
};

struct ScanTable {
    std::vector<ScanRecord> records;  // grouped by mode in input order, q ascending
    bool with_cliques = false;
};

// One record per (mode, grid q). Computed incrementally but guaranteed to match
// an independent filter_links + components/kappa/clustering at every grid point.
ScanTable scan(const MarketGraph& graph, const std::vector<RemovalMode>& modes,
               const std::vector<double>& q_grid, const ScanOptions& options = {});

}  // namespace marketnet
