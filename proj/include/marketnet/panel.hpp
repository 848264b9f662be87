#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "marketnet/matrix.hpp"

namespace marketnet {

struct PricePanel {
    std::vector<std::string> dates;                    // ISO-8601, strictly increasing
    std::vector<std::string> symbols;                  // unique tickers, column order
    Matrix prices;                                     // rows = dates, cols = symbols, all > 0
    std::map<std::string, std::string> sector_labels;  // optional symbol -> label
};

struct ReturnMatrix {
    std::vector<std::string> symbols;
    Matrix returns;  // rows = panel rows - lag
    int lag = 1;
};

struct CorrelationMatrix {
    std::vector<std::string> symbols;
    Matrix rho;  // symmetric, unit diagonal
};

struct DistanceMatrix {
    std::vector<std::string> symbols;
    Matrix d;  // symmetric, zero diagonal, values in [0, 2]
};

struct IngestOptions {
    bool drop_incomplete_rows = false;
};

// Wide CSV: first column ISO date, one column per symbol, '#' lines skipped.
PricePanel load_panel(std::istream& in, const IngestOptions& options = {});
PricePanel load_panel_file(const std::string& path, const IngestOptions& options = {});

// Two-column CSV "symbol,label"; a literal header row and '#' lines are skipped.
std::map<std::string, std::string> load_labels(std::istream& in);
std::map<std::string, std::string> load_labels_file(const std::string& path);

// returns[t][i] = ln P_i(t+lag) - ln P_i(t)
ReturnMatrix log_returns(const PricePanel& panel, int lag = 1);

// Pearson correlation of return columns from time-averaged moments. Pairs may be
// computed in parallel (threads = 0 picks the hardware count); the summation
// order inside each pair is fixed, so results are thread-count-independent.
CorrelationMatrix correlation(const ReturnMatrix& returns, unsigned threads = 1);

// d = sqrt(2 (1 - rho)), rho clamped to [-1, 1] first; zero diagonal.
DistanceMatrix to_distance(const CorrelationMatrix& corr);

}  // namespace marketnet
