#include "marketnet/dynamics.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>
#include <utility>

#include "marketnet/errors.hpp"

namespace marketnet {

namespace {

PricePanel slice_rows(const PricePanel& panel, std::size_t begin, std::size_t end) {
    PricePanel window;
    window.symbols = panel.symbols;
    window.sector_labels = panel.sector_labels;
    window.dates.assign(panel.dates.begin() + static_cast<std::ptrdiff_t>(begin),
                        panel.dates.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t n = panel.symbols.size();
    window.prices = Matrix(end - begin, n);
    std::copy(panel.prices.data.begin() + static_cast<std::ptrdiff_t>(begin * n),
              panel.prices.data.begin() + static_cast<std::ptrdiff_t>(end * n),
              window.prices.data.begin());
    return window;
}

std::size_t intersection_size(const std::vector<EdgeKey>& a, const std::vector<EdgeKey>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

std::vector<EdgeKey> intersect(const std::vector<EdgeKey>& a, const std::vector<EdgeKey>& b) {
    std::vector<EdgeKey> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<PanelWindow> window_panel(const PricePanel& panel, const WindowScheme& scheme) {
    std::vector<PanelWindow> windows;
    const std::size_t t_rows = panel.dates.size();

    if (scheme.kind == WindowScheme::Kind::CalendarYear) {
        std::size_t begin = 0;
        while (begin < t_rows) {
            const std::string year = panel.dates[begin].substr(0, 4);
            std::size_t end = begin + 1;
            while (end < t_rows && panel.dates[end].substr(0, 4) == year) ++end;
            if (end - begin < 3)
                throw InputError("calendar window " + year + " has " +
                                 std::to_string(end - begin) + " rows; need >= 3");
            windows.push_back({year, slice_rows(panel, begin, end)});
            begin = end;
        }
        return windows;
    }

    const std::size_t length = scheme.length;
    if (length < 3) throw InputError("window length must be >= 3");
    if (length > t_rows)
        throw InputError("window length " + std::to_string(length) + " exceeds " +
                         std::to_string(t_rows) + " rows");
    for (std::size_t begin = 0; begin + length <= t_rows; begin += length) {
        PricePanel window = slice_rows(panel, begin, begin + length);
        std::string label = window.dates.front() + ".." + window.dates.back();
        windows.push_back({std::move(label), std::move(window)});
    }
    return windows;
}

std::vector<EdgeKey> edge_set(const FilteredGraph& fg) {
    std::vector<EdgeKey> keys;
    keys.reserve(fg.edges.size());
    for (const Edge& e : fg.edges) {
        const std::string& a = fg.symbols[e.src];
        const std::string& b = fg.symbols[e.dst];
        keys.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

WindowedNetworkSeries build_window_series(const std::vector<PanelWindow>& windows, int lag,
                                          const RemovalMode& mode, double q, unsigned threads) {
    if (windows.empty()) throw InputError("no windows to build networks from");

    WindowedNetworkSeries series;
    series.mode = mode;
    series.q = q;

    std::set<std::string> seen;
    for (const PanelWindow& w : windows)
        for (const std::string& sym : w.panel.symbols)
            if (seen.insert(sym).second) series.symbols.push_back(sym);

    series.windows.resize(windows.size());
    const auto build_one = [&](std::size_t wi) {
        const ReturnMatrix returns = log_returns(windows[wi].panel, lag);
        const CorrelationMatrix corr = correlation(returns, 1);
        const DistanceMatrix dist = to_distance(corr);
        const MarketGraph graph = build_graph(dist);
        series.windows[wi] = {windows[wi].label, filter_links(graph, mode, q)};
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers = std::max(1u, std::min<unsigned>(threads == 0 ? (hw == 0 ? 1 : hw) : threads,
                                                             static_cast<unsigned>(windows.size())));
    if (workers <= 1) {
        for (std::size_t wi = 0; wi < windows.size(); ++wi) build_one(wi);
        return series;
    }

    std::vector<std::exception_ptr> failures(windows.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t wi = w; wi < windows.size(); wi += workers) {
                try {
                    build_one(wi);
                } catch (...) {
                    failures[wi] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return series;
}

double single_step_similarity(const std::vector<EdgeKey>& current, const std::vector<EdgeKey>& previous) {
    if (current.empty()) throw EmptyGraph("similarity undefined: empty current edge set");
    return static_cast<double>(intersection_size(current, previous)) /
           static_cast<double>(current.size());
}

double multi_step_similarity(const WindowedNetworkSeries& series, std::size_t t, std::size_t tau) {
    if (tau < 1) throw InputError("tau must be >= 1");
    if (t >= series.windows.size()) throw InputError("window index out of range");
    if (t < tau)
        throw InputError("insufficient history: window " + std::to_string(t) + " has only " +
                         std::to_string(t) + " predecessors, tau=" + std::to_string(tau));

    const std::vector<EdgeKey> current = edge_set(series.windows[t].graph);
    if (current.empty()) throw EmptyGraph("similarity undefined: empty current edge set");

    std::vector<EdgeKey> running = current;
    for (std::size_t back = 1; back <= tau; ++back)
        running = intersect(running, edge_set(series.windows[t - back].graph));
    return static_cast<double>(running.size()) / static_cast<double>(current.size());
}

SimilarityReport similarity_report(const WindowedNetworkSeries& series, std::size_t tau_max) {
    SimilarityReport report;
    report.mode = series.mode;
    report.q = series.q;

    const std::size_t n_windows = series.windows.size();
    std::vector<std::vector<EdgeKey>> sets;
    sets.reserve(n_windows);
    for (const NetworkWindow& w : series.windows) {
        report.labels.push_back(w.label);
        sets.push_back(edge_set(w.graph));
        report.edge_counts.push_back(sets.back().size());
    }

    report.multi_step.resize(n_windows);
    for (std::size_t t = 1; t < n_windows; ++t) {
        if (sets[t].empty()) throw EmptyGraph("similarity undefined: empty edge set in window " +
                                              series.windows[t].label);
        const double denom = static_cast<double>(sets[t].size());
        std::vector<EdgeKey> running = intersect(sets[t], sets[t - 1]);
        report.single_step.push_back(static_cast<double>(running.size()) / denom);
        const std::size_t deepest = std::min(tau_max, t);
        for (std::size_t tau = 1; tau <= deepest; ++tau) {
            if (tau > 1) running = intersect(running, sets[t - tau]);
            report.multi_step[t].push_back(static_cast<double>(running.size()) / denom);
        }
    }
    return report;
}

}  // namespace marketnet
