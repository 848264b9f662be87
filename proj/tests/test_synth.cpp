#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "marketnet/communities.hpp"
#include "marketnet/errors.hpp"
#include "marketnet/graph.hpp"
#include "marketnet/panel.hpp"
#include "marketnet/synth.hpp"

using namespace marketnet;

namespace {

// Sakamoto's day-of-week, 0 = Sunday; independent of the generator's calendar.
int day_of_week(int y, int m, int d) {
    static const int offset[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    if (m < 3) y -= 1;
    return (y + y / 4 - y / 100 + y / 400 + offset[m - 1] + d) % 7;
}

double mean_offdiag_abs_rho(const CorrelationMatrix& corr) {
    const std::size_t n = corr.rho.rows;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            total += std::abs(corr.rho.at(i, j));
            ++count;
        }
    return total / static_cast<double>(count);
}

struct SectorMeans {
    double intra = 0.0;
    double inter = 0.0;
};

SectorMeans sector_means(const CorrelationMatrix& corr, const PricePanel& panel) {
    double intra = 0.0, inter = 0.0;
    std::size_t n_intra = 0, n_inter = 0;
    const std::size_t n = corr.rho.rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = panel.sector_labels.at(panel.symbols[i]) ==
                              panel.sector_labels.at(panel.symbols[j]);
            (same ? intra : inter) += corr.rho.at(i, j);
            (same ? n_intra : n_inter) += 1;
        }
    return {intra / static_cast<double>(n_intra), inter / static_cast<double>(n_inter)};
}

}  // namespace

TEST_CASE("names are zero-padded to the universe width") {
    CHECK(synth_symbol(0, 200) == "S000");
    CHECK(synth_symbol(57, 200) == "S057");
    CHECK(synth_symbol(3, 8) == "S003");       // minimum width 3
    CHECK(synth_symbol(3, 2000) == "S0003");
    CHECK(synth_sector_label(0, 10) == "SEC00");
    CHECK(synth_sector_label(9, 10) == "SEC09");
    CHECK(synth_sector_label(3, 7) == "SEC03");
    CHECK(synth_sector_label(3, 120) == "SEC003");
}

TEST_CASE("default panel has the documented shape") {
    MarketSpec spec;
    spec.days = 30;  // keep the test quick; other defaults untouched
    const PricePanel panel = generate_panel(spec);
    CHECK(panel.symbols.size() == 200);
    CHECK(panel.prices.rows == 30);
    CHECK(panel.dates.size() == 30);
    CHECK(panel.dates.front() == "2000-01-03");
    CHECK(panel.symbols.front() == "S000");
    CHECK(panel.symbols.back() == "S199");
    for (std::size_t j = 0; j < 200; ++j) CHECK(panel.prices.at(0, j) == 100.0);
    // Round-robin sectors.
    CHECK(panel.sector_labels.at("S000") == "SEC00");
    CHECK(panel.sector_labels.at("S009") == "SEC09");
    CHECK(panel.sector_labels.at("S010") == "SEC00");
    CHECK(panel.sector_labels.at("S123") == "SEC03");
    for (const auto& [symbol, label] : panel.sector_labels) CHECK(label.substr(0, 3) == "SEC");
}

TEST_CASE("dates are strictly increasing weekdays") {
    MarketSpec spec;
    spec.n_stocks = 4;
    spec.n_sectors = 2;
    spec.days = 800;  // spans > 3 years, crosses leap boundaries
    const PricePanel panel = generate_panel(spec);
    std::string previous;
    for (const std::string& date : panel.dates) {
        CHECK(date > previous);
        previous = date;
        int y = 0, m = 0, d = 0;
        REQUIRE(std::sscanf(date.c_str(), "%d-%d-%d", &y, &m, &d) == 3);
        const int dow = day_of_week(y, m, d);
        CHECK(dow >= 1);
        CHECK(dow <= 5);
    }
}

TEST_CASE("prices stay positive and compound from 100") {
    MarketSpec spec;
    spec.n_stocks = 6;
    spec.n_sectors = 3;
    spec.days = 50;
    spec.seed = 4;
    const PricePanel panel = generate_panel(spec);
    for (double p : panel.prices.data) {
        CHECK(p > 0.0);
        CHECK(std::isfinite(p));
    }
    const ReturnMatrix rets = log_returns(panel, 1);
    CHECK(rets.returns.rows == 49);
}

TEST_CASE("same seed is bit-identical, different seed is not") {
    MarketSpec spec;
    spec.n_stocks = 10;
    spec.n_sectors = 2;
    spec.days = 40;
    spec.seed = 123;
    const PricePanel a = generate_panel(spec);
    const PricePanel b = generate_panel(spec);
    CHECK(a.prices == b.prices);
    CHECK(a.dates == b.dates);
    spec.seed = 124;
    const PricePanel c = generate_panel(spec);
    CHECK_FALSE(a.prices == c.prices);
}

TEST_CASE("longer runs extend shorter ones row for row") {
    MarketSpec spec;
    spec.n_stocks = 5;
    spec.n_sectors = 5;
    spec.days = 10;
    spec.seed = 9;
    const PricePanel short_run = generate_panel(spec);
    spec.days = 25;
    const PricePanel long_run = generate_panel(spec);
    for (std::size_t t = 0; t < 10; ++t) {
        CHECK(long_run.dates[t] == short_run.dates[t]);
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(long_run.prices.at(t, j) == short_run.prices.at(t, j));
    }
}

TEST_CASE("without factors the panel is uncorrelated noise") {
    MarketSpec spec;
    spec.n_stocks = 20;
    spec.n_sectors = 4;
    spec.days = 500;
    spec.beta = 0.0;
    spec.gamma = 0.0;
    spec.seed = 31;
    const PricePanel panel = generate_panel(spec);
    const CorrelationMatrix corr = correlation(log_returns(panel, 1));
    CHECK(mean_offdiag_abs_rho(corr) < 3.0 / std::sqrt(500.0));
}

TEST_CASE("sector loading separates intra from inter correlations") {
    // Analytic target: gamma^2 / (gamma^2 + sigma^2) intra, 0 inter.
    const double gamma = 0.6, sigma = 1.0;
    const double expected = gamma * gamma / (gamma * gamma + sigma * sigma);
    std::vector<double> intra_means;
    double inter_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        MarketSpec spec;
        spec.n_stocks = 40;
        spec.n_sectors = 4;
        spec.days = 500;
        spec.beta = 0.0;
        spec.gamma = gamma;
        spec.sigma = sigma;
        spec.seed = seed;
        const PricePanel panel = generate_panel(spec);
        const SectorMeans means = sector_means(correlation(log_returns(panel, 1)), panel);
        intra_means.push_back(means.intra);
        inter_sum += means.inter;
        CHECK(means.intra > means.inter);
    }
    double mean = 0.0;
    for (double x : intra_means) mean += x;
    mean /= 10.0;
    double var = 0.0;
    for (double x : intra_means) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / 9.0) / std::sqrt(10.0);
    CHECK(std::abs(mean - expected) < 3.0 * se + 1e-3);  // floor guards se ~ 0
    CHECK(std::abs(inter_sum / 10.0) < 0.05);
}

TEST_CASE("market loading correlates everything") {
    MarketSpec spec;
    spec.n_stocks = 20;
    spec.n_sectors = 4;
    spec.days = 500;
    spec.beta = 0.8;
    spec.gamma = 0.0;
    spec.seed = 17;
    const PricePanel panel = generate_panel(spec);
    const SectorMeans means = sector_means(correlation(log_returns(panel, 1)), panel);
    const double expected = 0.64 / (0.64 + 1.0);
    CHECK(means.intra == doctest::Approx(expected).epsilon(0.35));
    CHECK(means.inter == doctest::Approx(expected).epsilon(0.35));
}

TEST_CASE("hub stock correlates with both of its sectors") {
    MarketSpec spec;  // defaults: beta 0.25, gamma 0.6, sigma 1
    spec.n_stocks = 60;
    spec.n_sectors = 6;
    spec.days = 500;
    spec.hub_stocks.push_back({"S000", 2, 4});
    spec.seed = 5;
    const PricePanel panel = generate_panel(spec);
    CHECK(panel.sector_labels.at("S000") == "SEC00");  // label keeps the round-robin slot

    const CorrelationMatrix corr = correlation(log_returns(panel, 1));
    std::map<std::string, std::pair<double, int>> by_sector;
    for (std::size_t j = 1; j < panel.symbols.size(); ++j) {
        auto& [sum, count] = by_sector[panel.sector_labels.at(panel.symbols[j])];
        sum += corr.rho.at(0, j);
        count += 1;
    }
    const auto mean_of = [&](const std::string& label) {
        const auto& [sum, count] = by_sector.at(label);
        return sum / count;
    };
    const double with_a = mean_of("SEC02");
    const double with_b = mean_of("SEC04");
    for (const std::string other : {"SEC01", "SEC03", "SEC05"}) {
        CHECK(with_a > mean_of(other) + 0.05);
        CHECK(with_b > mean_of(other) + 0.05);
    }

    // The split loading preserves the hub's return variance (~ beta^2+gamma^2+sigma^2).
    const ReturnMatrix rets = log_returns(panel, 1);
    const auto column_var = [&](std::size_t j) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t t = 0; t < rets.returns.rows; ++t) {
            s += rets.returns.at(t, j);
            s2 += rets.returns.at(t, j) * rets.returns.at(t, j);
        }
        const double n = static_cast<double>(rets.returns.rows);
        return s2 / n - (s / n) * (s / n);
    };
    const double expected_var = 0.25 * 0.25 + 0.6 * 0.6 + 1.0;
    CHECK(column_var(0) == doctest::Approx(expected_var).epsilon(0.25));
}

TEST_CASE("pinned market: hub joins two sector communities after filtration") {
    // Deterministic regression: defaults, one hub bridging sectors 0 and 1,
    // weak-first filtration at q=0.90, k=4.
    MarketSpec spec;
    spec.hub_stocks.push_back({"S000", 0, 1});
    spec.seed = 0;
    const PricePanel panel = generate_panel(spec);
    const MarketGraph graph = build_graph(to_distance(correlation(log_returns(panel, 1), 4)));
    const CommunityCover cover =
        detect_communities(filter_links(graph, RemovalMode::weak_first(), 0.90), 4);
    CHECK(cover.membership[0].size() == 2);  // the hub, S000

    // Every planted sector is matched by a >= 0.8 purity community.
    const std::vector<double> purity = label_purity(cover, panel.sector_labels);
    std::set<std::string> covered;
    for (std::size_t c = 0; c < cover.communities.size(); ++c) {
        if (purity[c] < 0.8) continue;
        std::map<std::string, int> counts;
        for (std::uint32_t v : cover.communities[c])
            counts[panel.sector_labels.at(panel.symbols[v])] += 1;
        std::string best;
        int best_count = -1;
        for (const auto& [label, count] : counts)
            if (count > best_count) {
                best_count = count;
                best = label;
            }
        covered.insert(best);
    }
    CHECK(covered.size() == 10);
}

TEST_CASE("hub and shape validation") {
    MarketSpec spec;
    spec.n_stocks = 10;
    spec.n_sectors = 5;
    spec.days = 10;

    MarketSpec bad = spec;
    bad.hub_stocks.push_back({"S999", 0, 1});
    CHECK_THROWS_AS(generate_panel(bad), InputError);  // unknown symbol

    bad = spec;
    bad.hub_stocks.push_back({"S001", 0, 5});
    CHECK_THROWS_AS(generate_panel(bad), InputError);  // sector out of range

    bad = spec;
    bad.hub_stocks.push_back({"S001", 3, 3});
    CHECK_THROWS_AS(generate_panel(bad), InputError);  // sectors must differ

    bad = spec;
    bad.hub_stocks.push_back({"S001", 0, 1});
    bad.hub_stocks.push_back({"S001", 2, 3});
    CHECK_THROWS_AS(generate_panel(bad), InputError);  // duplicate hub

    bad = spec;
    bad.days = 2;
    CHECK_THROWS_AS(generate_panel(bad), InputError);

    bad = spec;
    bad.sigma = 0.0;
    CHECK_THROWS_AS(generate_panel(bad), InputError);

    bad = spec;
    bad.beta = -0.1;
    CHECK_THROWS_AS(generate_panel(bad), InputError);

    bad = spec;
    bad.n_sectors = 11;
    CHECK_THROWS_AS(generate_panel(bad), InputError);

    bad = spec;
    bad.n_stocks = 1;
    CHECK_THROWS_AS(generate_panel(bad), InputError);
}
