#include "marketnet/communities.hpp"

#include <algorithm>
#include <numeric>
#include <string>

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

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

CommunityCover detect_communities(const FilteredGraph& fg, int k, const ResourceLimits& limits) {
    if (k < 3) throw InvalidK("k must be >= 3, got " + std::to_string(k));

    CommunityCover cover;
    cover.k = k;
    cover.symbols = fg.symbols;
    cover.membership.assign(fg.symbols.size(), {});

    const CliqueSet clique_set = maximal_cliques(fg, limits);
    const std::size_t n = fg.symbols.size();

    // A maximal clique of size >= k stands for all its k-sub-cliques; two such
    // cliques belong to the same community iff they share >= k-1 nodes, which
    // reproduces the chain of k-cliques overlapping in k-1 nodes.
    std::vector<Bitset> members;
    for (const auto& clique : clique_set.cliques) {
        if (clique.size() < static_cast<std::size_t>(k)) continue;
        Bitset bits(n);
        for (const std::uint32_t v : clique) bits.set(v);
        members.push_back(std::move(bits));
    }
    if (members.empty()) return cover;

    UnionFind groups(members.size());
    const std::size_t overlap = static_cast<std::size_t>(k) - 1;
    for (std::uint32_t a = 0; a + 1 < members.size(); ++a)
        for (std::uint32_t b = a + 1; b < members.size(); ++b)
            if (members[a].count_and(members[b]) >= overlap) groups.unite(a, b);

    std::vector<Bitset> merged(members.size(), Bitset());
    for (std::uint32_t c = 0; c < members.size(); ++c) {
        const std::uint32_t root = groups.find(c);
        if (merged[root].size() == 0) merged[root] = Bitset(n);
        merged[root] |= members[c];
    }
    for (const Bitset& nodes : merged) {
        if (nodes.size() == 0) continue;
        std::vector<std::uint32_t> community;
        nodes.for_each([&](std::size_t v) { community.push_back(static_cast<std::uint32_t>(v)); });
        cover.communities.push_back(std::move(community));
    }

    std::sort(cover.communities.begin(), cover.communities.end(),
              [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    for (std::uint32_t id = 0; id < cover.communities.size(); ++id)
        for (const std::uint32_t v : cover.communities[id]) cover.membership[v].push_back(id);
    return cover;
}

OverlapReport overlap_report(const CommunityCover& cover) {
    OverlapReport report;
    for (std::uint32_t v = 0; v < cover.membership.size(); ++v)
        if (cover.membership[v].size() >= 2) report.multi_members.emplace_back(v, cover.membership[v]);
    return report;
}

std::vector<double> label_purity(const CommunityCover& cover,
                                 const std::map<std::string, std::string>& labels) {
    std::vector<double> purity;
    purity.reserve(cover.communities.size());
    for (const auto& community : cover.communities) {
        std::map<std::string, std::size_t> counts;
        for (const std::uint32_t v : community) {
            const auto it = labels.find(cover.symbols[v]);
            if (it == labels.end())
                throw InputError("missing sector label for symbol " + cover.symbols[v]);
            ++counts[it->second];
        }
        std::size_t best = 0;
        for (const auto& [label, count] : counts) best = std::max(best, count);
        purity.push_back(static_cast<double>(best) / static_cast<double>(community.size()));
    }
    return purity;
}

}  // namespace marketnet
