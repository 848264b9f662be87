#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "marketnet/cliques.hpp"

namespace marketnet {

// Overlapping communities: connected components of the clique graph whose
// vertices are maximal cliques of size >= k and whose edges join cliques
// sharing >= k-1 nodes; each community is the union of its cliques' nodes.
struct CommunityCover {
    int k = 0;
    std::vector<std::string> symbols;                     // parent universe
    std::vector<std::vector<std::uint32_t>> communities;  // node sets, ascending; ordered size desc, then lexicographic
    std::vector<std::vector<std::uint32_t>> membership;   // node index -> community ids, ascending
};

struct OverlapReport {
    // (node index, its community ids) for nodes in >= 2 communities, ascending by node.
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> multi_members;
};

// k >= 3 (InvalidK otherwise); BudgetExceeded propagates from clique enumeration.
CommunityCover detect_communities(const FilteredGraph& fg, int k, const ResourceLimits& limits = {});

OverlapReport overlap_report(const CommunityCover& cover);

// Max label share per community, aligned with cover.communities; every member
// must have a label.
std::vector<double> label_purity(const CommunityCover& cover, const std::map<std::string, std::string>& labels);

}  // namespace marketnet
