#include "marketnet/cliques.hpp"

#include <algorithm>
#include <string>

#include "marketnet/errors.hpp"
#include "marketnet/hash.hpp"

namespace marketnet {

std::string graph_fingerprint(const FilteredGraph& fg) {
    std::string buffer;
    buffer.reserve(16 + fg.edges.size() * 8);
    const auto append_u32 = [&buffer](std::uint32_t v) {
        for (int shift = 0; shift < 32; shift += 8)
            buffer.push_back(static_cast<char>((v >> shift) & 0xff));
    };
    append_u32(static_cast<std::uint32_t>(fg.symbols.size()));
    append_u32(static_cast<std::uint32_t>(fg.edges.size()));
    for (const Edge& e : fg.edges) {
        append_u32(e.src);
        append_u32(e.dst);
    }
    return hex64(fnv1a64(buffer));
}

double clustering_coefficient(const FilteredGraph& fg) {
    if (fg.connected_nodes.empty())
        throw EmptyGraph("clustering coefficient undefined: no connected nodes");

    const std::size_t n = fg.symbols.size();
    const std::vector<Bitset> adj = adjacency(n, fg.edges);
    const std::vector<std::uint32_t> deg = degrees(fg);

    double sum = 0.0;
    for (const std::uint32_t i : fg.connected_nodes) {
        const std::uint32_t k = deg[i];
        if (k < 2) continue;  // degree-1 nodes contribute 0
        // Each edge between two neighbors of i is counted once from each side.
        std::size_t twice_links = 0;
        adj[i].for_each([&](std::size_t j) { twice_links += adj[i].count_and(adj[j]); });
        sum += static_cast<double>(twice_links) / (static_cast<double>(k) * (k - 1));
    }
    return sum / static_cast<double>(fg.connected_nodes.size());
}

namespace {

// Bron-Kerbosch with the Tomita pivot rule on bitset adjacency. Candidates are
// visited in ascending node order, so the recursion (and the step count) is
// fully deterministic.
class CliqueEnumerator {
  public:
    CliqueEnumerator(const std::vector<Bitset>& adj, std::uint64_t max_steps)
        : adj_(adj), max_steps_(max_steps) {}

    std::vector<std::vector<std::uint32_t>> run(const Bitset& start) {
        Bitset excluded(start.size());
        expand(start, excluded);
        return std::move(found_);
    }

    std::uint64_t steps() const { return steps_; }

  private:
    void expand(Bitset candidates, Bitset excluded) {
        if (++steps_ > max_steps_) throw BudgetExceeded(steps_, max_steps_, found_.size());

        if (candidates.none() && excluded.none()) {
            found_.push_back(current_);
            return;
        }

        // Pivot: the node of P ∪ X covering the most candidates.
        std::size_t pivot = 0, best = 0;
        bool have_pivot = false;
        const auto consider = [&](std::size_t u) {
            const std::size_t covered = candidates.count_and(adj_[u]);
            if (!have_pivot || covered > best) {
                have_pivot = true;
                pivot = u;
                best = covered;
            }
        };
        candidates.for_each(consider);
        excluded.for_each(consider);

        Bitset branch = candidates;
        branch.and_not(adj_[pivot]);
        std::vector<std::uint32_t> order;
        branch.for_each([&](std::size_t v) { order.push_back(static_cast<std::uint32_t>(v)); });

        for (const std::uint32_t v : order) {
            current_.push_back(v);
            expand(candidates & adj_[v], excluded & adj_[v]);
            current_.pop_back();
            candidates.reset(v);
            excluded.set(v);
        }
    }

    const std::vector<Bitset>& adj_;
    std::uint64_t max_steps_;
    std::uint64_t steps_ = 0;
    std::vector<std::uint32_t> current_;
    std::vector<std::vector<std::uint32_t>> found_;
};

void sort_clique_list(std::vector<std::vector<std::uint32_t>>& cliques) {
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end(),
              [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
}

}  // namespace

CliqueSet maximal_cliques(const FilteredGraph& fg, const ResourceLimits& limits) {
    CliqueSet result;
    result.source_fingerprint = graph_fingerprint(fg);
    if (fg.connected_nodes.empty()) return result;

    const std::size_t n = fg.symbols.size();
    const std::vector<Bitset> adj = adjacency(n, fg.edges);
    Bitset start(n);
    for (const std::uint32_t i : fg.connected_nodes) start.set(i);

    CliqueEnumerator enumerator(adj, limits.max_steps);
    result.cliques = enumerator.run(start);
    result.steps_used = enumerator.steps();
    sort_clique_list(result.cliques);
    return result;
}

CliqueMetrics clique_metrics(const FilteredGraph& fg, const CliqueSet& cliques) {
    if (fg.edges.empty()) throw EmptyGraph("clique metrics undefined: no edges survive");
    if (cliques.source_fingerprint != graph_fingerprint(fg))
        throw InputError("clique set was not computed from this graph");

    CliqueMetrics metrics;
    metrics.n_cliques = cliques.cliques.size();
    metrics.max_clique_size = static_cast<std::uint32_t>(cliques.cliques.front().size());
    const double n_connected = static_cast<double>(fg.connected_nodes.size());
    metrics.relative_count = static_cast<double>(metrics.n_cliques) / n_connected;
    metrics.relative_max = static_cast<double>(metrics.max_clique_size) / n_connected;
    metrics.clustering = clustering_coefficient(fg);
    return metrics;
}

}  // namespace marketnet
