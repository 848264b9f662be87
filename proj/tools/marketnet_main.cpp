#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "marketnet/cliques.hpp"
#include "marketnet/communities.hpp"
#include "marketnet/dynamics.hpp"
#include "marketnet/errors.hpp"
#include "marketnet/graph.hpp"
#include "marketnet/hash.hpp"
#include "marketnet/io.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/panel.hpp"
#include "marketnet/rng.hpp"
#include "marketnet/scan.hpp"
#include "marketnet/synth.hpp"
#include "marketnet/version.hpp"

namespace {

using namespace marketnet;

unsigned resolve_threads(unsigned cli_value) {
    if (cli_value != 0) return cli_value;
    if (const char* env = std::getenv("MARKETNET_THREADS")) {
        const unsigned long parsed = std::strtoul(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// "start:end:step", inclusive of end when the step lands on it.
std::vector<double> parse_q_grid(const std::string& text) {
    double start = 0.0, end = 0.0, step = 0.0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &end, &step, &extra) != 3)
        throw InputError("bad q grid '" + text + "' (expected start:end:step)");
    if (!(step > 0.0)) throw InputError("q grid step must be positive");
    if (start > end) throw InputError("q grid must be sorted ascending (start <= end)");
    if (start < 0.0 || end > 1.0) throw InputError("q grid values must be in [0, 1]");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double q = start + static_cast<double>(i) * step;
        if (q > end + 1e-12) break;
        grid.push_back(std::min(q, 1.0));
    }
    return grid;
}

std::vector<RemovalMode> parse_modes(const std::string& text, std::uint64_t seed) {
    std::vector<RemovalMode> modes;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t pos = text.find(',', begin);
        const std::string token =
            text.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin);
        if (token.empty()) throw InputError("empty removal mode in '" + text + "'");
        modes.push_back(parse_mode(token, seed));
        if (pos == std::string::npos) break;
        begin = pos + 1;
    }
    return modes;
}

HubSpec parse_hub(const std::string& text) {
    const std::size_t first = text.find(':');
    const std::size_t second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw InputError("bad hub '" + text + "' (expected SYMBOL:sector_a:sector_b)");
    HubSpec hub;
    hub.symbol = text.substr(0, first);
    try {
        hub.sector_a = static_cast<std::uint32_t>(std::stoul(text.substr(first + 1, second - first - 1)));
        hub.sector_b = static_cast<std::uint32_t>(std::stoul(text.substr(second + 1)));
    } catch (const std::exception&) {
        throw InputError("bad hub sector ids in '" + text + "'");
    }
    return hub;
}

// Canonical key=value accumulator hashed into the metadata config field.
// Thread counts are deliberately excluded: results are thread-count-independent.
class ConfigHash {
  public:
    void add(const std::string& key, const std::string& value) {
        canonical_ += key;
        canonical_ += '=';
        canonical_ += value;
        canonical_ += ';';
    }
    void add(const std::string& key, double value) {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.17g", value);
        add(key, std::string(buffer));
    }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }

    std::string hex() const { return hex64(fnv1a64(canonical_)); }

  private:
    std::string canonical_;
};

// Returns std::cout for an empty path.
std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw InputError("cannot open output file " + path);
    return file;
}

struct InputArgs {
    std::string path;
    int lag = 1;
    bool drop_incomplete = false;
};

void add_input_args(CLI::App* cmd, InputArgs& args) {
    cmd->add_option("--input", args.path, "price panel CSV (date column + one column per symbol)")
        ->required();
    cmd->add_option("--lag", args.lag, "return lag in rows")->capture_default_str();
    cmd->add_flag("--drop-incomplete", args.drop_incomplete, "drop rows with missing cells");
}

PricePanel load_input(const InputArgs& args) {
    return load_panel_file(args.path, IngestOptions{args.drop_incomplete});
}

void hash_input(ConfigHash& hash, const InputArgs& args) {
    hash.add("input", args.path);
    hash.add("lag", args.lag);
    hash.add("drop_incomplete", args.drop_incomplete ? "1" : "0");
}

DistanceMatrix panel_to_distance(const PricePanel& panel, int lag, unsigned threads) {
    return to_distance(correlation(log_returns(panel, lag), threads));
}

bool uses_random(const std::vector<RemovalMode>& modes) {
    for (const RemovalMode& mode : modes)
        if (mode.kind == RemovalKind::Random) return true;
    return false;
}

void finish_meta(OutputMeta& meta, const std::vector<RemovalMode>& modes, std::uint64_t seed) {
    if (uses_random(modes)) {
        meta.seed = seed;
        meta.rng = kShuffleAlgorithm;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kVersion +
                 ": correlation-network analysis of multivariate price panels"};
    app.require_subcommand(1);

    // --- synth ---
    MarketSpec synth_spec;
    std::vector<std::string> synth_hubs;
    std::string synth_out, synth_labels_out;
    auto* synth = app.add_subcommand("synth", "generate a synthetic factor-model market panel");
    synth->add_option("--n", synth_spec.n_stocks, "number of stocks")->capture_default_str();
    synth->add_option("--sectors", synth_spec.n_sectors, "number of sectors")->capture_default_str();
    synth->add_option("--days", synth_spec.days, "panel rows")->capture_default_str();
    synth->add_option("--beta", synth_spec.beta, "market factor loading")->capture_default_str();
    synth->add_option("--gamma", synth_spec.gamma, "sector factor loading")->capture_default_str();
    synth->add_option("--sigma", synth_spec.sigma, "idiosyncratic noise scale")->capture_default_str();
    synth->add_option("--seed", synth_spec.seed, "generator seed")->capture_default_str();
    synth->add_option("--hub", synth_hubs, "hub stock SYMBOL:sector_a:sector_b (repeatable)");
    synth->add_option("--out", synth_out, "panel CSV path (default: stdout)");
    synth->add_option("--labels-out", synth_labels_out, "sector label CSV path");

    // --- returns ---
    InputArgs returns_in;
    std::string returns_out;
    auto* returns_cmd = app.add_subcommand("returns", "log returns of a price panel");
    add_input_args(returns_cmd, returns_in);
    returns_cmd->add_option("--out", returns_out, "output CSV path (default: stdout)");

    // --- corr ---
    InputArgs corr_in;
    std::string corr_out;
    unsigned corr_threads = 0;
    bool corr_distances = false;
    auto* corr_cmd = app.add_subcommand("corr", "correlation matrix of a price panel");
    add_input_args(corr_cmd, corr_in);
    corr_cmd->add_option("--threads", corr_threads, "worker threads (0 = auto)");
    corr_cmd->add_flag("--distances", corr_distances, "emit the distance matrix instead");
    corr_cmd->add_option("--out", corr_out, "output CSV path (default: stdout)");

    // --- net ---
    InputArgs net_in;
    std::string net_mode = "weak", net_out, net_labels, net_format = "csv";
    double net_q = 0.0;
    std::uint64_t net_seed = 0;
    unsigned net_threads = 0;
    auto* net_cmd = app.add_subcommand("net", "filtered correlation network at one q");
    add_input_args(net_cmd, net_in);
    net_cmd->add_option("--mode", net_mode, "removal mode: weak, strong or random")->capture_default_str();
    net_cmd->add_option("--q", net_q, "removed link fraction")->required();
    net_cmd->add_option("--seed", net_seed, "seed for random mode")->capture_default_str();
    net_cmd->add_option("--format", net_format, "csv or graphml")->capture_default_str();
    net_cmd->add_option("--labels", net_labels, "sector label CSV for GraphML node attributes");
    net_cmd->add_option("--threads", net_threads, "worker threads (0 = auto)");
    net_cmd->add_option("--out", net_out, "output path (default: stdout)");

    // --- scan ---
    InputArgs scan_in;
    std::string scan_modes = "weak,strong,random", scan_grid = "0:0.999:0.001", scan_out;
    std::uint64_t scan_seed = 0;
    bool scan_with_cliques = false;
    double scan_clique_min_q = 0.99;
    std::uint64_t scan_max_steps = ResourceLimits{}.max_steps;
    unsigned scan_threads = 0;
    auto* scan_cmd = app.add_subcommand("scan", "component/percolation diagnostics over a q grid");
    add_input_args(scan_cmd, scan_in);
    scan_cmd->add_option("--modes", scan_modes, "comma-separated removal modes")->capture_default_str();
    scan_cmd->add_option("--q-grid", scan_grid, "start:end:step")->capture_default_str();
    scan_cmd->add_option("--seed", scan_seed, "seed for random mode")->capture_default_str();
    scan_cmd->add_flag("--with-cliques", scan_with_cliques, "add clique metric columns");
    scan_cmd->add_option("--clique-min-q", scan_clique_min_q,
                         "fill clique columns only for q >= this")->capture_default_str();
    scan_cmd->add_option("--max-steps", scan_max_steps, "clique search budget")->capture_default_str();
    scan_cmd->add_option("--threads", scan_threads, "worker threads (0 = auto)");
    scan_cmd->add_option("--out", scan_out, "output CSV path (default: stdout)");

    // --- cliques ---
    InputArgs cliques_in;
    std::string cliques_mode = "weak", cliques_out;
    double cliques_q = 0.995;
    std::uint64_t cliques_seed = 0;
    std::uint64_t cliques_max_steps = ResourceLimits{}.max_steps;
    unsigned cliques_threads = 0;
    auto* cliques_cmd = app.add_subcommand("cliques", "maximal cliques of the filtered network");
    add_input_args(cliques_cmd, cliques_in);
    cliques_cmd->add_option("--mode", cliques_mode, "removal mode")->capture_default_str();
    cliques_cmd->add_option("--q", cliques_q, "removed link fraction")->capture_default_str();
    cliques_cmd->add_option("--seed", cliques_seed, "seed for random mode")->capture_default_str();
    cliques_cmd->add_option("--max-steps", cliques_max_steps, "clique search budget")->capture_default_str();
    cliques_cmd->add_option("--threads", cliques_threads, "worker threads (0 = auto)");
    cliques_cmd->add_option("--out", cliques_out, "output JSON path (default: stdout)");

    // --- communities ---
    InputArgs comm_in;
    std::string comm_mode = "weak", comm_labels, comm_out;
    double comm_q = 0.995;
    int comm_k = 4;
    std::uint64_t comm_seed = 0;
    std::uint64_t comm_max_steps = ResourceLimits{}.max_steps;
    unsigned comm_threads = 0;
    auto* comm_cmd = app.add_subcommand("communities", "overlapping clique-percolation communities");
    add_input_args(comm_cmd, comm_in);
    comm_cmd->add_option("--mode", comm_mode, "removal mode")->capture_default_str();
    comm_cmd->add_option("--q", comm_q, "removed link fraction")->capture_default_str();
    comm_cmd->add_option("--k", comm_k, "clique size parameter (>= 3)")->capture_default_str();
    comm_cmd->add_option("--seed", comm_seed, "seed for random mode")->capture_default_str();
    comm_cmd->add_option("--labels", comm_labels, "sector label CSV; adds per-community purity");
    comm_cmd->add_option("--max-steps", comm_max_steps, "clique search budget")->capture_default_str();
    comm_cmd->add_option("--threads", comm_threads, "worker threads (0 = auto)");
    comm_cmd->add_option("--out", comm_out, "output JSON path (default: stdout)");

    // --- mst ---
    InputArgs mst_in;
    std::string mst_out, mst_labels, mst_format = "csv", mst_restrict_mode = "weak";
    double mst_restrict_q = -1.0;
    std::uint64_t mst_seed = 0;
    unsigned mst_threads = 0;
    auto* mst_cmd = app.add_subcommand("mst", "minimum spanning tree of the distance matrix");
    add_input_args(mst_cmd, mst_in);
    mst_cmd->add_option("--restrict-q", mst_restrict_q,
                        "restrict the tree to nodes still connected after this filtration");
    mst_cmd->add_option("--restrict-mode", mst_restrict_mode, "removal mode for --restrict-q")
        ->capture_default_str();
    mst_cmd->add_option("--seed", mst_seed, "seed for random restrict mode")->capture_default_str();
    mst_cmd->add_option("--format", mst_format, "csv or graphml")->capture_default_str();
    mst_cmd->add_option("--labels", mst_labels, "sector label CSV for GraphML node attributes");
    mst_cmd->add_option("--threads", mst_threads, "worker threads (0 = auto)");
    mst_cmd->add_option("--out", mst_out, "output path (default: stdout)");

    // --- dynamics ---
    InputArgs dyn_in;
    std::string dyn_window = "year", dyn_mode = "weak", dyn_out;
    double dyn_q = 0.995;
    std::uint64_t dyn_seed = 0;
    std::size_t dyn_tau_max = 1;
    unsigned dyn_threads = 0;
    auto* dyn_cmd = app.add_subcommand("dynamics", "windowed network similarity over time");
    add_input_args(dyn_cmd, dyn_in);
    dyn_cmd->add_option("--window", dyn_window, "'year' or a fixed row count")->capture_default_str();
    dyn_cmd->add_option("--mode", dyn_mode, "removal mode")->capture_default_str();
    dyn_cmd->add_option("--q", dyn_q, "removed link fraction")->capture_default_str();
    dyn_cmd->add_option("--seed", dyn_seed, "seed for random mode")->capture_default_str();
    dyn_cmd->add_option("--tau-max", dyn_tau_max, "deepest multi-step horizon")->capture_default_str();
    dyn_cmd->add_option("--threads", dyn_threads, "worker threads (0 = auto)");
    dyn_cmd->add_option("--out", dyn_out, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) {
            for (const std::string& hub : synth_hubs) synth_spec.hub_stocks.push_back(parse_hub(hub));
            ConfigHash hash;
            hash.add("cmd", "synth");
            hash.add("n", std::uint64_t{synth_spec.n_stocks});
            hash.add("sectors", std::uint64_t{synth_spec.n_sectors});
            hash.add("days", std::uint64_t{synth_spec.days});
            hash.add("beta", synth_spec.beta);
            hash.add("gamma", synth_spec.gamma);
            hash.add("sigma", synth_spec.sigma);
            hash.add("seed", synth_spec.seed);
            for (const std::string& hub : synth_hubs) hash.add("hub", hub);

            const PricePanel panel = generate_panel(synth_spec);
            OutputMeta meta{"synth", hash.hex(), synth_spec.seed, kGaussianAlgorithm};
            std::ofstream panel_file;
            write_panel_csv(open_output(synth_out, panel_file), panel, meta);
            if (!synth_labels_out.empty()) {
                std::ofstream labels_file;
                write_labels_csv(open_output(synth_labels_out, labels_file), panel.sector_labels, meta);
            }
            return 0;
        }

        if (returns_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "returns");
            hash_input(hash, returns_in);
            const PricePanel panel = load_input(returns_in);
            const ReturnMatrix rets = log_returns(panel, returns_in.lag);
            OutputMeta meta{"returns", hash.hex(), std::nullopt, std::nullopt};
            std::ofstream file;
            write_returns_csv(open_output(returns_out, file), panel, rets, meta);
            return 0;
        }

        if (corr_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "corr");
            hash_input(hash, corr_in);
            hash.add("distances", corr_distances ? "1" : "0");
            const PricePanel panel = load_input(corr_in);
            const CorrelationMatrix corr = correlation(log_returns(panel, corr_in.lag),
                                                       resolve_threads(corr_threads));
            OutputMeta meta{"corr", hash.hex(), std::nullopt, std::nullopt};
            std::ofstream file;
            std::ostream& out = open_output(corr_out, file);
            if (corr_distances)
                write_matrix_csv(out, corr.symbols, to_distance(corr).d, meta);
            else
                write_matrix_csv(out, corr.symbols, corr.rho, meta);
            return 0;
        }

        if (net_cmd->parsed()) {
            if (net_format != "csv" && net_format != "graphml")
                throw InputError("unknown format '" + net_format + "' (expected csv or graphml)");
            ConfigHash hash;
            hash.add("cmd", "net");
            hash_input(hash, net_in);
            hash.add("mode", net_mode);
            hash.add("q", net_q);
            hash.add("seed", net_seed);
            hash.add("format", net_format);

            const RemovalMode mode = parse_mode(net_mode, net_seed);
            const PricePanel panel = load_input(net_in);
            const MarketGraph graph =
                build_graph(panel_to_distance(panel, net_in.lag, resolve_threads(net_threads)));
            const FilteredGraph fg = filter_links(graph, mode, net_q);

            OutputMeta meta{"net", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, {mode}, net_seed);
            std::ofstream file;
            std::ostream& out = open_output(net_out, file);
            if (net_format == "graphml") {
                const auto labels = net_labels.empty() ? std::map<std::string, std::string>{}
                                                       : load_labels_file(net_labels);
                write_graphml(out, fg, labels, meta);
            } else {
                write_edges_csv(out, fg, meta);
            }
            return 0;
        }

        if (scan_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "scan");
            hash_input(hash, scan_in);
            hash.add("modes", scan_modes);
            hash.add("q_grid", scan_grid);
            hash.add("seed", scan_seed);
            hash.add("with_cliques", scan_with_cliques ? "1" : "0");
            hash.add("clique_min_q", scan_clique_min_q);
            hash.add("max_steps", scan_max_steps);

            const std::vector<RemovalMode> modes = parse_modes(scan_modes, scan_seed);
            const std::vector<double> grid = parse_q_grid(scan_grid);
            const unsigned threads = resolve_threads(scan_threads);
            const PricePanel panel = load_input(scan_in);
            const MarketGraph graph = build_graph(panel_to_distance(panel, scan_in.lag, threads));

            ScanOptions options;
            options.with_cliques = scan_with_cliques;
            options.clique_min_q = scan_clique_min_q;
            options.limits.max_steps = scan_max_steps;
            options.threads = threads;
            const ScanTable table = scan(graph, modes, grid, options);

            OutputMeta meta{"scan", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, modes, scan_seed);
            std::ofstream file;
            write_scan_csv(open_output(scan_out, file), table, meta);
            return 0;
        }

        if (cliques_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "cliques");
            hash_input(hash, cliques_in);
            hash.add("mode", cliques_mode);
            hash.add("q", cliques_q);
            hash.add("seed", cliques_seed);
            hash.add("max_steps", cliques_max_steps);

            const RemovalMode mode = parse_mode(cliques_mode, cliques_seed);
            const PricePanel panel = load_input(cliques_in);
            const MarketGraph graph =
                build_graph(panel_to_distance(panel, cliques_in.lag, resolve_threads(cliques_threads)));
            const FilteredGraph fg = filter_links(graph, mode, cliques_q);
            const CliqueSet cliques = maximal_cliques(fg, ResourceLimits{cliques_max_steps});
            const bool have_edges = !fg.edges.empty();
            CliqueMetrics metrics;
            if (have_edges) metrics = clique_metrics(fg, cliques);

            OutputMeta meta{"cliques", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, {mode}, cliques_seed);
            std::ofstream file;
            write_cliques_json(open_output(cliques_out, file), fg, cliques,
                               have_edges ? &metrics : nullptr, meta);
            return 0;
        }

        if (comm_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "communities");
            hash_input(hash, comm_in);
            hash.add("mode", comm_mode);
            hash.add("q", comm_q);
            hash.add("k", comm_k);
            hash.add("seed", comm_seed);
            hash.add("labels", comm_labels);
            hash.add("max_steps", comm_max_steps);

            const RemovalMode mode = parse_mode(comm_mode, comm_seed);
            const PricePanel panel = load_input(comm_in);
            const MarketGraph graph =
                build_graph(panel_to_distance(panel, comm_in.lag, resolve_threads(comm_threads)));
            const FilteredGraph fg = filter_links(graph, mode, comm_q);
            const CommunityCover cover = detect_communities(fg, comm_k, ResourceLimits{comm_max_steps});

            std::optional<std::vector<double>> purity;
            if (!comm_labels.empty()) purity = label_purity(cover, load_labels_file(comm_labels));

            OutputMeta meta{"communities", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, {mode}, comm_seed);
            std::ofstream file;
            write_communities_json(open_output(comm_out, file), cover, comm_q,
                                   purity ? &*purity : nullptr, meta);
            return 0;
        }

        if (mst_cmd->parsed()) {
            if (mst_format != "csv" && mst_format != "graphml")
                throw InputError("unknown format '" + mst_format + "' (expected csv or graphml)");
            const bool restricted = mst_restrict_q >= 0.0;
            ConfigHash hash;
            hash.add("cmd", "mst");
            hash_input(hash, mst_in);
            hash.add("restrict_q", mst_restrict_q);
            hash.add("restrict_mode", mst_restrict_mode);
            hash.add("seed", mst_seed);
            hash.add("format", mst_format);

            const PricePanel panel = load_input(mst_in);
            const DistanceMatrix dist =
                panel_to_distance(panel, mst_in.lag, resolve_threads(mst_threads));

            SpanningTree tree;
            std::vector<RemovalMode> modes;
            if (restricted) {
                const RemovalMode mode = parse_mode(mst_restrict_mode, mst_seed);
                modes.push_back(mode);
                const FilteredGraph fg = filter_links(build_graph(dist), mode, mst_restrict_q);
                if (fg.connected_nodes.size() < 2)
                    throw InputError("fewer than 2 connected nodes left at q=" +
                                     std::to_string(mst_restrict_q));
                tree = minimum_spanning_tree(dist, fg.connected_nodes);
            } else {
                tree = minimum_spanning_tree(dist);
            }

            OutputMeta meta{"mst", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, modes, mst_seed);
            std::ofstream file;
            std::ostream& out = open_output(mst_out, file);
            if (mst_format == "graphml") {
                const auto labels = mst_labels.empty() ? std::map<std::string, std::string>{}
                                                       : load_labels_file(mst_labels);
                write_tree_graphml(out, tree, labels, meta);
            } else {
                write_tree_csv(out, tree, meta);
            }
            return 0;
        }

        if (dyn_cmd->parsed()) {
            ConfigHash hash;
            hash.add("cmd", "dynamics");
            hash_input(hash, dyn_in);
            hash.add("window", dyn_window);
            hash.add("mode", dyn_mode);
            hash.add("q", dyn_q);
            hash.add("seed", dyn_seed);
            hash.add("tau_max", std::uint64_t{dyn_tau_max});

            WindowScheme scheme;
            if (dyn_window == "year") {
                scheme = WindowScheme::calendar_year();
            } else {
                try {
                    scheme = WindowScheme::fixed_length(std::stoul(dyn_window));
                } catch (const std::exception&) {
                    throw InputError("bad window '" + dyn_window + "' (expected 'year' or a row count)");
                }
            }

            const RemovalMode mode = parse_mode(dyn_mode, dyn_seed);
            const PricePanel panel = load_input(dyn_in);
            const std::vector<PanelWindow> windows = window_panel(panel, scheme);
            const WindowedNetworkSeries series =
                build_window_series(windows, dyn_in.lag, mode, dyn_q, resolve_threads(dyn_threads));

            std::size_t tau_max = dyn_tau_max;
            if (windows.size() >= 1 && tau_max > windows.size() - 1) {
                std::cerr << "warning: tau-max " << tau_max << " exceeds available history; capping at "
                          << windows.size() - 1 << "\n";
                tau_max = windows.size() - 1;
            }
            const SimilarityReport report = similarity_report(series, tau_max);

            OutputMeta meta{"dynamics", hash.hex(), std::nullopt, std::nullopt};
            finish_meta(meta, {mode}, dyn_seed);
            std::ofstream file;
            write_similarity_csv(open_output(dyn_out, file), report, meta);
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
