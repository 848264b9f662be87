#include "marketnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "marketnet/errors.hpp"
#include "marketnet/rng.hpp"

namespace marketnet {

namespace {

int decimal_width(std::uint32_t max_value) {
    int width = 1;
    while (max_value >= 10) {
        max_value /= 10;
        ++width;
    }
    return width;
}

std::string padded(const char* prefix, std::uint32_t value, int width) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%s%0*u", prefix, width, value);
    return buffer;
}

// Civil-date arithmetic on days since 1970-01-01 (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t year = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(year + (m <= 2));
}

bool is_weekday(std::int64_t serial) {
    const int iso = static_cast<int>((serial % 7 + 7 + 3) % 7) + 1;  // 1970-01-01 is Thursday (4)
    return iso <= 5;
}

std::vector<std::string> weekday_dates(std::size_t count) {
    std::vector<std::string> dates;
    dates.reserve(count);
    std::int64_t serial = days_from_civil(2000, 1, 3);  // a Monday
    while (dates.size() < count) {
        if (is_weekday(serial)) {
            int y, m, d;
            civil_from_days(serial, y, m, d);
            char buffer[16];
            std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02d", y, m, d);
            dates.emplace_back(buffer);
        }
        ++serial;
    }
    return dates;
}

void validate(const MarketSpec& spec) {
    if (spec.n_stocks < 2) throw InputError("need at least 2 stocks");
    if (spec.n_sectors < 1 || spec.n_sectors > spec.n_stocks)
        throw InputError("n_sectors must be in [1, n_stocks]");
    if (spec.days < 3) throw InputError("days must be >= 3");
    if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) throw InputError("beta must be finite and >= 0");
    if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma))
        throw InputError("gamma must be finite and >= 0");
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) throw InputError("sigma must be finite and > 0");
}

}  // namespace

std::string synth_symbol(std::uint32_t index, std::uint32_t n_stocks) {
    return padded("S", index, std::max(3, decimal_width(n_stocks - 1)));
}

std::string synth_sector_label(std::uint32_t sector, std::uint32_t n_sectors) {
    return padded("SEC", sector, std::max(2, decimal_width(n_sectors - 1)));
}

PricePanel generate_panel(const MarketSpec& spec) {
    validate(spec);

    const std::uint32_t n = spec.n_stocks;
    const std::uint32_t n_sectors = spec.n_sectors;

    PricePanel panel;
    panel.symbols.reserve(n);
    std::map<std::string, std::uint32_t> index_of;
    for (std::uint32_t i = 0; i < n; ++i) {
        panel.symbols.push_back(synth_symbol(i, n));
        index_of[panel.symbols.back()] = i;
        panel.sector_labels[panel.symbols.back()] = synth_sector_label(i % n_sectors, n_sectors);
    }

    // Hub wiring: stock index -> its two sectors.
    std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> hubs;
    for (const HubSpec& hub : spec.hub_stocks) {
        const auto it = index_of.find(hub.symbol);
        if (it == index_of.end()) throw InputError("hub symbol " + hub.symbol + " does not exist");
        if (hub.sector_a >= n_sectors || hub.sector_b >= n_sectors)
            throw InputError("hub sector id out of range for " + hub.symbol);
        if (hub.sector_a == hub.sector_b)
            throw InputError("hub " + hub.symbol + " needs two distinct sectors");
        if (!hubs.emplace(it->second, std::make_pair(hub.sector_a, hub.sector_b)).second)
            throw InputError("duplicate hub entry for " + hub.symbol);
    }

    const std::size_t t_returns = spec.days - 1;
    GaussianSource gauss(spec.seed);
    const double hub_gamma = spec.gamma / std::sqrt(2.0);

    panel.dates = weekday_dates(spec.days);
    panel.prices = Matrix(spec.days, n);
    for (std::uint32_t i = 0; i < n; ++i) panel.prices.at(0, i) = 100.0;

    std::vector<double> sector_factor(n_sectors);
    for (std::size_t t = 0; t < t_returns; ++t) {
        const double market = gauss.next();
        for (std::uint32_t g = 0; g < n_sectors; ++g) sector_factor[g] = gauss.next();
        for (std::uint32_t i = 0; i < n; ++i) {
            const double noise = gauss.next();
            double sector_term;
            const auto hub = hubs.find(i);
            if (hub == hubs.end()) {
                sector_term = spec.gamma * sector_factor[i % n_sectors];
            } else {
                sector_term = hub_gamma * (sector_factor[hub->second.first] +
                                           sector_factor[hub->second.second]);
            }
            const double r = spec.beta * market + sector_term + spec.sigma * noise;
            panel.prices.at(t + 1, i) = panel.prices.at(t, i) * std::exp(r);
        }
    }
    return panel;
}

}  // namespace marketnet
