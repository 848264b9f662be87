#include "marketnet/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "marketnet/errors.hpp"

namespace marketnet {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

// Reads lines, dropping '\r' and '#'-comment lines.
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        return true;
    }
    return false;
}

double parse_price(const std::string& cell, const std::string& date, const std::string& symbol) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw InputError("non-numeric price '" + cell + "' for " + symbol + " at " + date);
    if (value <= 0.0)
        throw NonPositivePrice("non-positive price " + cell + " for " + symbol + " at " + date);
    return value;
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

PricePanel load_panel(std::istream& in, const IngestOptions& options) {
    std::string line;
    if (!next_data_line(in, line)) throw InputError("empty input: no header row");

    const std::vector<std::string> header = split_csv(line);
    if (header.size() < 3) throw InputError("need at least 2 symbol columns after the date column");

    PricePanel panel;
    panel.symbols.assign(header.begin() + 1, header.end());
    std::set<std::string> seen;
    for (const auto& sym : panel.symbols) {
        if (sym.empty()) throw InputError("empty symbol name in header");
        if (!seen.insert(sym).second) throw InputError("duplicate symbol " + sym);
    }

    const std::size_t n = panel.symbols.size();
    std::vector<double> values;
    while (next_data_line(in, line)) {
        const std::vector<std::string> cells = split_csv(line);
        if (cells.empty() || cells[0].empty())
            throw InputError("row with empty date: '" + line + "'");
        const std::string& date = cells[0];
        if (cells.size() > n + 1)
            throw InputError("row at " + date + " has more cells than the header");

        bool incomplete = cells.size() < n + 1;
        for (std::size_t i = 1; i < cells.size() && !incomplete; ++i)
            if (cells[i].empty()) incomplete = true;
        if (incomplete) {
            if (options.drop_incomplete_rows) continue;
            throw InputError("missing cell at " + date +
                             " (enable drop_incomplete_rows to skip such rows)");
        }

        if (!panel.dates.empty() && date <= panel.dates.back())
            throw InputError("dates not strictly increasing at " + date);
        values.reserve(values.size() + n);
        for (std::size_t i = 0; i < n; ++i)
            values.push_back(parse_price(cells[i + 1], date, panel.symbols[i]));
        panel.dates.push_back(date);
    }

    if (panel.dates.size() < 3)
        throw InputError("need at least 3 complete rows, got " + std::to_string(panel.dates.size()));

    panel.prices = Matrix(panel.dates.size(), n);
    panel.prices.data = std::move(values);
    return panel;
}

PricePanel load_panel_file(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return load_panel(in, options);
}

std::map<std::string, std::string> load_labels(std::istream& in) {
    std::map<std::string, std::string> labels;
    std::string line;
    while (next_data_line(in, line)) {
        if (line == "symbol,label") continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 2 || cells[0].empty())
            throw InputError("bad label row: '" + line + "'");
        if (!labels.emplace(cells[0], cells[1]).second)
            throw InputError("duplicate label for symbol " + cells[0]);
    }
    return labels;
}

std::map<std::string, std::string> load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return load_labels(in);
}

ReturnMatrix log_returns(const PricePanel& panel, int lag) {
    if (lag < 1) throw InputError("lag must be >= 1");
    const std::size_t t_rows = panel.prices.rows;
    if (static_cast<std::size_t>(lag) >= t_rows)
        throw InputError("lag " + std::to_string(lag) + " >= row count " + std::to_string(t_rows));

    ReturnMatrix result;
    result.symbols = panel.symbols;
    result.lag = lag;
    const std::size_t n = panel.symbols.size();
    const std::size_t rows = t_rows - static_cast<std::size_t>(lag);
    result.returns = Matrix(rows, n);
    for (std::size_t t = 0; t < rows; ++t)
        for (std::size_t i = 0; i < n; ++i)
            result.returns.at(t, i) =
                std::log(panel.prices.at(t + static_cast<std::size_t>(lag), i)) -
                std::log(panel.prices.at(t, i));
    return result;
}

CorrelationMatrix correlation(const ReturnMatrix& returns, unsigned threads) {
    const std::size_t rows = returns.returns.rows;
    const std::size_t n = returns.symbols.size();
    if (rows < 2) throw InputError("need at least 2 return rows to correlate");

    // First and second time-averaged moments per column, fixed summation order.
    std::vector<double> mean(n), var(n);
    std::vector<std::string> degenerate;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t t = 0; t < rows; ++t) {
            const double r = returns.returns.at(t, i);
            sum += r;
            sum_sq += r * r;
        }
        mean[i] = sum / static_cast<double>(rows);
        var[i] = sum_sq / static_cast<double>(rows) - mean[i] * mean[i];
        if (!(var[i] > 0.0)) degenerate.push_back(returns.symbols[i]);
    }
    if (!degenerate.empty()) throw ZeroVarianceColumn(std::move(degenerate));

    CorrelationMatrix corr;
    corr.symbols = returns.symbols;
    corr.rho = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) corr.rho.at(i, i) = 1.0;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    const auto compute_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const auto [i, j] = pairs[p];
            double cross = 0.0;
            for (std::size_t t = 0; t < rows; ++t)
                cross += returns.returns.at(t, i) * returns.returns.at(t, j);
            const double cov = cross / static_cast<double>(rows) - mean[i] * mean[j];
            const double rho = cov / std::sqrt(var[i] * var[j]);
            corr.rho.at(i, j) = rho;
            corr.rho.at(j, i) = rho;
        }
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), pairs.size()));
    if (workers <= 1) {
        compute_range(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (pairs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(begin + chunk, pairs.size());
            if (begin >= end) break;
            pool.emplace_back(compute_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return corr;
}

DistanceMatrix to_distance(const CorrelationMatrix& corr) {
    const std::size_t n = corr.symbols.size();
    DistanceMatrix dist;
    dist.symbols = corr.symbols;
    dist.d = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double rho = std::clamp(corr.rho.at(i, j), -1.0, 1.0);
            const double d = std::sqrt(2.0 * (1.0 - rho));
            dist.d.at(i, j) = d;
            dist.d.at(j, i) = d;
        }
    }
    return dist;
}

}  // namespace marketnet
