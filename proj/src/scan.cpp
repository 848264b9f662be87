#include "marketnet/scan.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <thread>
#include <vector>

#include "marketnet/errors.hpp"

namespace marketnet {

namespace {

// Builds one mode's records by adding edges in reverse removal order, so each
// grid point costs O(delta edges + n) instead of a fresh filtration.
class ReverseBuilder {
  public:
    explicit ReverseBuilder(std::size_t n)
        : n_(n), parent_(n), comp_size_(n, 1), degree_(n, 0), triangles_(n, 0),
          adj_(n, Bitset(n)) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    void add_edge(const Edge& e) {
        const std::uint32_t u = e.src, v = e.dst;
        sum_k_ += 2;
        sum_k2_ += 2.0 * degree_[u] + 1.0;
        sum_k2_ += 2.0 * degree_[v] + 1.0;
        if (degree_[u] == 0) ++n_connected_;
        if (degree_[v] == 0) ++n_connected_;
        ++degree_[u];
        ++degree_[v];

        const Bitset common = adj_[u] & adj_[v];
        const std::size_t shared = common.count();
        triangles_[u] += shared;
        triangles_[v] += shared;
        common.for_each([this](std::size_t w) { ++triangles_[w]; });

        adj_[u].set(v);
        adj_[v].set(u);
        unite(u, v);
    }

    std::uint32_t n_connected() const { return n_connected_; }

    double kappa() const { return sum_k_ == 0.0 ? 0.0 : sum_k2_ / sum_k_; }

    double clustering() const {
        if (n_connected_ == 0) return 0.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t k = degree_[i];
            if (k < 2) continue;
            sum += 2.0 * static_cast<double>(triangles_[i]) /
                   (static_cast<double>(k) * (k - 1));
        }
        return sum / static_cast<double>(n_connected_);
    }

    void component_sizes(std::uint32_t& lcc, std::uint32_t& slcc) {
        lcc = 0;
        slcc = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (find(i) != i || comp_size_[i] < 2) continue;
            const std::uint32_t size = comp_size_[i];
            if (size > lcc) {
                slcc = lcc;
                lcc = size;
            } else if (size > slcc) {
                slcc = size;
            }
        }
    }

  private:
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (comp_size_[a] < comp_size_[b]) std::swap(a, b);
        parent_[b] = a;
        comp_size_[a] += comp_size_[b];
    }

    std::size_t n_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> comp_size_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint64_t> triangles_;
    std::vector<Bitset> adj_;
    double sum_k_ = 0.0;
    double sum_k2_ = 0.0;
    std::uint32_t n_connected_ = 0;
};

void scan_one_mode(const MarketGraph& graph, const RemovalMode& mode,
                   const std::vector<double>& q_grid, const ScanOptions& options,
                   ScanRecord* records) {
    const std::vector<Edge> order = removal_order(graph, mode);
    const std::size_t m = order.size();
    const std::size_t n = graph.symbols.size();

    ReverseBuilder builder(n);
    std::size_t kept_from = m;  // current graph holds order[kept_from..m)
    for (std::size_t gi = q_grid.size(); gi-- > 0;) {
        const double q = q_grid[gi];
        const std::size_t removed = removal_count(m, q);
        while (kept_from > removed) {
            --kept_from;
            builder.add_edge(order[kept_from]);
        }
        ScanRecord& rec = records[gi];
        rec.mode = mode;
        rec.q = q;
        rec.n_connected = builder.n_connected();
        builder.component_sizes(rec.lcc_size, rec.slcc_size);
        rec.kappa = builder.kappa();
        rec.clustering = builder.clustering();
    }

    if (!options.with_cliques) return;
    for (std::size_t gi = 0; gi < q_grid.size(); ++gi) {
        if (q_grid[gi] < options.clique_min_q - 1e-12) continue;
        const FilteredGraph fg = filter_links(graph, mode, q_grid[gi]);
        if (fg.edges.empty()) continue;  // clique columns stay empty, like the kappa sentinel
        const CliqueSet cliques = maximal_cliques(fg, options.limits);
        records[gi].cliques = clique_metrics(fg, cliques);
        records[gi].has_clique_metrics = true;
    }
}

}  // namespace

ScanTable scan(const MarketGraph& graph, const std::vector<RemovalMode>& modes,
               const std::vector<double>& q_grid, const ScanOptions& options) {
    if (modes.empty()) throw InputError("scan needs at least one removal mode");
    if (q_grid.empty()) throw InputError("scan needs a non-empty q grid");
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (!(q_grid[i] >= 0.0 && q_grid[i] <= 1.0)) throw InputError("q grid values must be in [0, 1]");
        if (i > 0 && q_grid[i] < q_grid[i - 1]) throw InputError("q grid must be sorted ascending");
    }

    ScanTable table;
    table.with_cliques = options.with_cliques;
    table.records.resize(modes.size() * q_grid.size());

    const unsigned workers = std::max(1u, std::min<unsigned>(
        options.threads == 0 ? std::thread::hardware_concurrency() : options.threads,
        static_cast<unsigned>(modes.size())));

    if (workers <= 1 || modes.size() == 1) {
        for (std::size_t mi = 0; mi < modes.size(); ++mi)
            scan_one_mode(graph, modes[mi], q_grid, options, &table.records[mi * q_grid.size()]);
        return table;
    }

    std::vector<std::exception_ptr> failures(modes.size());
    std::vector<std::thread> pool;
    pool.reserve(modes.size());
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
        pool.emplace_back([&, mi] {
            try {
                scan_one_mode(graph, modes[mi], q_grid, options, &table.records[mi * q_grid.size()]);
            } catch (...) {
                failures[mi] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return table;
}

}  // namespace marketnet
