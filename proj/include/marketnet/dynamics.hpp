#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "marketnet/graph.hpp"
#include "marketnet/panel.hpp"

namespace marketnet {

struct WindowScheme {
    enum class Kind { CalendarYear, FixedLength };
    Kind kind = Kind::CalendarYear;
    std::size_t length = 0;  // rows per window (FixedLength)

    static WindowScheme calendar_year() { return {Kind::CalendarYear, 0}; }
    static WindowScheme fixed_length(std::size_t rows) { return {Kind::FixedLength, rows}; }
};

struct PanelWindow {
    std::string label;  // "1997" or "2000-01-03..2000-06-23"
    PricePanel panel;
};

// CalendarYear groups rows by the year of their date; FixedLength cuts
// consecutive blocks of `length` rows and drops the partial tail. Every window
// must keep >= 3 rows.
std::vector<PanelWindow> window_panel(const PricePanel& panel, const WindowScheme& scheme);

// Unordered symbol pair, lexicographically ordered inside the pair; weights are
// deliberately dropped, similarity is pure set arithmetic.
using EdgeKey = std::pair<std::string, std::string>;

// Sorted edge keys of a filtered graph.
std::vector<EdgeKey> edge_set(const FilteredGraph& fg);

struct NetworkWindow {
    std::string label;
    FilteredGraph graph;
};

struct WindowedNetworkSeries {
    std::vector<std::string> symbols;  // union universe over windows, first-seen order
    std::vector<NetworkWindow> windows;
    RemovalMode mode;
    double q = 0.0;
};

// Each window gets its own returns -> correlation -> distance -> filtration at
// the shared (mode, q). Windows may build in parallel; output order is fixed.
WindowedNetworkSeries build_window_series(const std::vector<PanelWindow>& windows, int lag,
                                          const RemovalMode& mode, double q, unsigned threads = 1);

// |current ∩ previous| / |current|; throws EmptyGraph when current is empty.
double single_step_similarity(const std::vector<EdgeKey>& current, const std::vector<EdgeKey>& previous);

// |E(t) ∩ E(t-1) ∩ ... ∩ E(t-tau)| / |E(t)| for 0-based window index t, tau >= 1.
double multi_step_similarity(const WindowedNetworkSeries& series, std::size_t t, std::size_t tau);

struct SimilarityReport {
    RemovalMode mode;
    double q = 0.0;
    std::vector<std::string> labels;              // per window
    std::vector<std::size_t> edge_counts;         // |E(t)|
    std::vector<double> single_step;              // single_step[t-1] = S(t) for t = 1..W-1
    std::vector<std::vector<double>> multi_step;  // multi_step[t][tau-1], tau = 1..min(t, tau_max)
};

SimilarityReport similarity_report(const WindowedNetworkSeries& series, std::size_t tau_max);

}  // namespace marketnet
