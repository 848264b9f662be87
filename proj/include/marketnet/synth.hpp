#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marketnet/panel.hpp"

namespace marketnet {

// A stock wired into two sectors instead of its round-robin one; it loads
// gamma/sqrt(2) on each, which preserves the per-stock return variance.
struct HubSpec {
    std::string symbol;
    std::uint32_t sector_a = 0;
    std::uint32_t sector_b = 0;
};

// One shared market factor plus one factor per sector plus idiosyncratic noise:
//   r_i(t) = beta * m(t) + gamma * s_{g(i)}(t) + sigma * eps_i(t)
// with standard Gaussian factors and round-robin sector assignment g(i).
// Expected correlations: intra-sector (beta^2 + gamma^2) / (beta^2 + gamma^2 + sigma^2),
// inter-sector beta^2 / (beta^2 + gamma^2 + sigma^2).
struct MarketSpec {
    std::uint32_t n_stocks = 200;
    std::uint32_t n_sectors = 10;
    std::uint32_t days = 500;
    double beta = 0.25;   // market loading
    double gamma = 0.6;   // sector loading
    double sigma = 1.0;   // idiosyncratic scale
    std::vector<HubSpec> hub_stocks;
    std::uint64_t seed = 0;
};

std::string synth_symbol(std::uint32_t index, std::uint32_t n_stocks);
std::string synth_sector_label(std::uint32_t sector, std::uint32_t n_sectors);

// Prices start at 100 and compound exp(r), so log_returns recovers the drawn
// returns up to roundoff. Weekday dates from 2000-01-03. Reproducible per seed.
PricePanel generate_panel(const MarketSpec& spec);

}  // namespace marketnet
