#include "marketnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "marketnet/errors.hpp"
#include "marketnet/rng.hpp"

namespace marketnet {

std::string mode_name(const RemovalMode& mode) {
    switch (mode.kind) {
        case RemovalKind::WeakFirst: return "weak";
        case RemovalKind::StrongFirst: return "strong";
        case RemovalKind::Random: return "random";
    }
    return "weak";
}

RemovalMode parse_mode(const std::string& name, std::uint64_t seed) {
    if (name == "weak") return RemovalMode::weak_first();
    if (name == "strong") return RemovalMode::strong_first();
    if (name == "random") return RemovalMode::random(seed);
    throw InputError("unknown removal mode '" + name + "' (expected weak, strong or random)");
}

MarketGraph build_graph(const DistanceMatrix& dist) {
    const std::size_t n = dist.symbols.size();
    if (n < 2) throw InputError("need at least 2 symbols to build a graph");
    if (dist.d.rows != n || dist.d.cols != n)
        throw InputError("distance matrix shape does not match symbol count");

    MarketGraph graph;
    graph.symbols = dist.symbols;
    graph.edges.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            graph.edges.push_back({i, j, dist.d.at(i, j)});
    return graph;
}

std::size_t removal_count(std::size_t m, double q) {
    if (m == 0) return 0;
    const double scaled = q * static_cast<double>(m) + 1e-9;
    const auto count = static_cast<std::size_t>(scaled);
    return std::min(count, m);
}

std::vector<Edge> removal_order(const MarketGraph& graph, const RemovalMode& mode) {
    std::vector<Edge> order = graph.edges;
    switch (mode.kind) {
        case RemovalKind::WeakFirst:
            std::sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) {
                if (a.distance != b.distance) return a.distance > b.distance;
                if (a.src != b.src) return a.src < b.src;
                return a.dst < b.dst;
            });
            break;
        case RemovalKind::StrongFirst:
            std::sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) {
                if (a.distance != b.distance) return a.distance < b.distance;
                if (a.src != b.src) return a.src < b.src;
                return a.dst < b.dst;
            });
            break;
        case RemovalKind::Random: {
            std::mt19937_64 rng(mode.seed);
            fisher_yates(order, rng);
            break;
        }
    }
    return order;
}

FilteredGraph filter_links(const MarketGraph& graph, const RemovalMode& mode, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("q must be in [0, 1]");

    const std::vector<Edge> order = removal_order(graph, mode);
    const std::size_t removed = removal_count(order.size(), q);

    FilteredGraph fg;
    fg.symbols = graph.symbols;
    fg.q = q;
    fg.mode = mode;
    fg.edges.assign(order.begin() + static_cast<std::ptrdiff_t>(removed), order.end());
    std::sort(fg.edges.begin(), fg.edges.end(), [](const Edge& a, const Edge& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    });

    std::vector<std::uint32_t> deg(graph.symbols.size(), 0);
    for (const Edge& e : fg.edges) {
        ++deg[e.src];
        ++deg[e.dst];
    }
    for (std::uint32_t i = 0; i < deg.size(); ++i)
        if (deg[i] > 0) fg.connected_nodes.push_back(i);
    return fg;
}

std::vector<std::uint32_t> degrees(const FilteredGraph& fg) {
    std::vector<std::uint32_t> deg(fg.symbols.size(), 0);
    for (const Edge& e : fg.edges) {
        ++deg[e.src];
        ++deg[e.dst];
    }
    return deg;
}

std::vector<std::vector<std::uint32_t>> components(const FilteredGraph& fg) {
    const std::size_t n = fg.symbols.size();
    std::vector<std::vector<std::uint32_t>> adj_list(n);
    for (const Edge& e : fg.edges) {
        adj_list[e.src].push_back(e.dst);
        adj_list[e.dst].push_back(e.src);
    }

    std::vector<std::vector<std::uint32_t>> clusters;
    std::vector<bool> visited(n, false);
    for (const std::uint32_t start : fg.connected_nodes) {
        if (visited[start]) continue;
        std::vector<std::uint32_t> cluster;
        std::queue<std::uint32_t> frontier;
        frontier.push(start);
        visited[start] = true;
        while (!frontier.empty()) {
            const std::uint32_t u = frontier.front();
            frontier.pop();
            cluster.push_back(u);
            for (const std::uint32_t v : adj_list[u]) {
                if (!visited[v]) {
                    visited[v] = true;
                    frontier.push(v);
                }
            }
        }
        std::sort(cluster.begin(), cluster.end());
        clusters.push_back(std::move(cluster));
    }

    std::sort(clusters.begin(), clusters.end(),
              [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  const std::string* min_a = &fg.symbols[a[0]];
                  for (const std::uint32_t i : a)
                      if (fg.symbols[i] < *min_a) min_a = &fg.symbols[i];
                  const std::string* min_b = &fg.symbols[b[0]];
                  for (const std::uint32_t i : b)
                      if (fg.symbols[i] < *min_b) min_b = &fg.symbols[i];
                  return *min_a < *min_b;
              });
    return clusters;
}

double kappa(const FilteredGraph& fg) {
    if (fg.edges.empty()) throw EmptyGraph("kappa undefined: no edges survive");
    const std::vector<std::uint32_t> deg = degrees(fg);
    // Isolated nodes have k = 0 and drop out of both sums; the shared
    // 1/n_connected factor cancels in the ratio.
    double sum_k = 0.0, sum_k2 = 0.0;
    for (const std::uint32_t k : deg) {
        sum_k += k;
        sum_k2 += static_cast<double>(k) * k;
    }
    return sum_k2 / sum_k;
}

std::vector<Bitset> adjacency(std::size_t n_symbols, const std::vector<Edge>& edges) {
    std::vector<Bitset> adj(n_symbols, Bitset(n_symbols));
    for (const Edge& e : edges) {
        adj[e.src].set(e.dst);
        adj[e.dst].set(e.src);
    }
    return adj;
}

}  // namespace marketnet
