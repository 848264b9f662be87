#include "marketnet/io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "marketnet/version.hpp"

namespace marketnet {

namespace {

std::string fmt(double value, int significant) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant, value);
    return buffer;
}

std::string fmt12(double value) { return fmt(value, 12); }

// Shortest-round-trip precision for values that must re-ingest bit-exactly.
std::string fmt17(double value) { return fmt(value, 17); }

std::string fmt_q(double value) { return fmt(value, 10); }

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

nlohmann::json meta_json(const OutputMeta& meta) {
    nlohmann::json j;
    j["tool"] = std::string(kToolName) + " " + kVersion;
    j["command"] = meta.command;
    j["config"] = meta.config_hash;
    if (meta.seed) j["seed"] = *meta.seed;
    if (meta.rng) j["rng"] = *meta.rng;
    return j;
}

void graphml_header(std::ostream& out, const OutputMeta& meta, bool with_sector) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- " << meta_line(meta) << " -->\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    if (with_sector)
        out << "  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n";
    out << "  <key id=\"distance\" for=\"edge\" attr.name=\"distance\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
}

void graphml_node(std::ostream& out, const std::string& symbol,
                  const std::map<std::string, std::string>& labels) {
    const auto it = labels.find(symbol);
    if (it == labels.end()) {
        out << "    <node id=\"" << xml_escape(symbol) << "\"/>\n";
    } else {
        out << "    <node id=\"" << xml_escape(symbol) << "\"><data key=\"sector\">"
            << xml_escape(it->second) << "</data></node>\n";
    }
}

void graphml_edge(std::ostream& out, const std::string& src, const std::string& dst, double distance) {
    out << "    <edge source=\"" << xml_escape(src) << "\" target=\"" << xml_escape(dst)
        << "\"><data key=\"distance\">" << fmt12(distance) << "</data></edge>\n";
}

void graphml_footer(std::ostream& out) { out << "  </graph>\n</graphml>\n"; }

}  // namespace

std::string meta_line(const OutputMeta& meta) {
    std::string line = std::string(kToolName) + " " + kVersion + " cmd=" + meta.command +
                       " config=" + meta.config_hash;
    if (meta.seed) line += " seed=" + std::to_string(*meta.seed);
    if (meta.rng) line += " rng=" + *meta.rng;
    return line;
}

void write_panel_csv(std::ostream& out, const PricePanel& panel, const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "date";
    for (const auto& sym : panel.symbols) out << ',' << sym;
    out << '\n';
    for (std::size_t t = 0; t < panel.prices.rows; ++t) {
        out << panel.dates[t];
        for (std::size_t i = 0; i < panel.prices.cols; ++i)
            out << ',' << fmt17(panel.prices.at(t, i));
        out << '\n';
    }
}

void write_labels_csv(std::ostream& out, const std::map<std::string, std::string>& labels,
                      const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "symbol,label\n";
    for (const auto& [symbol, label] : labels) out << symbol << ',' << label << '\n';
}

void write_returns_csv(std::ostream& out, const PricePanel& panel, const ReturnMatrix& returns,
                       const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "date";
    for (const auto& sym : returns.symbols) out << ',' << sym;
    out << '\n';
    const auto lag = static_cast<std::size_t>(returns.lag);
    for (std::size_t t = 0; t < returns.returns.rows; ++t) {
        out << panel.dates[t + lag];  // each return is stamped with its later date
        for (std::size_t i = 0; i < returns.returns.cols; ++i)
            out << ',' << fmt17(returns.returns.at(t, i));
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& symbols, const Matrix& m,
                      const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? "," : "") << symbols[i];
    out << '\n';
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) out << (c ? "," : "") << fmt12(m.at(r, c));
        out << '\n';
    }
}

void write_edges_csv(std::ostream& out, const FilteredGraph& fg, const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "src,dst,distance\n";
    for (const Edge& e : fg.edges)
        out << fg.symbols[e.src] << ',' << fg.symbols[e.dst] << ',' << fmt12(e.distance) << '\n';
}

void write_tree_csv(std::ostream& out, const SpanningTree& tree, const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "src,dst,distance\n";
    for (const Edge& e : tree.edges)
        out << tree.nodes[e.src] << ',' << tree.nodes[e.dst] << ',' << fmt12(e.distance) << '\n';
}

void write_graphml(std::ostream& out, const FilteredGraph& fg,
                   const std::map<std::string, std::string>& labels, const OutputMeta& meta) {
    graphml_header(out, meta, !labels.empty());
    for (const std::uint32_t i : fg.connected_nodes) graphml_node(out, fg.symbols[i], labels);
    for (const Edge& e : fg.edges)
        graphml_edge(out, fg.symbols[e.src], fg.symbols[e.dst], e.distance);
    graphml_footer(out);
}

void write_tree_graphml(std::ostream& out, const SpanningTree& tree,
                        const std::map<std::string, std::string>& labels, const OutputMeta& meta) {
    graphml_header(out, meta, !labels.empty());
    for (const std::string& node : tree.nodes) graphml_node(out, node, labels);
    for (const Edge& e : tree.edges)
        graphml_edge(out, tree.nodes[e.src], tree.nodes[e.dst], e.distance);
    graphml_footer(out);
}

void write_scan_csv(std::ostream& out, const ScanTable& table, const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "mode,q,n_connected,lcc,slcc,kappa,clustering";
    if (table.with_cliques) out << ",n_cliques,max_clique,rel_cliques,rel_max";
    out << '\n';
    for (const ScanRecord& rec : table.records) {
        out << mode_name(rec.mode) << ',' << fmt_q(rec.q) << ',' << rec.n_connected << ','
            << rec.lcc_size << ',' << rec.slcc_size << ',' << fmt12(rec.kappa) << ','
            << fmt12(rec.clustering);
        if (table.with_cliques) {
            if (rec.has_clique_metrics) {
                out << ',' << rec.cliques.n_cliques << ',' << rec.cliques.max_clique_size << ','
                    << fmt12(rec.cliques.relative_count) << ',' << fmt12(rec.cliques.relative_max);
            } else {
                out << ",,,,";
            }
        }
        out << '\n';
    }
}

void write_similarity_csv(std::ostream& out, const SimilarityReport& report, const OutputMeta& meta) {
    out << "# " << meta_line(meta) << "\n";
    out << "t_label,tau,similarity,n_edges,mode,q\n";
    const std::string mode = mode_name(report.mode);
    const std::string q = fmt_q(report.q);
    for (std::size_t t = 0; t < report.labels.size(); ++t) {
        // tau=0 introduces the window itself: no comparison, just its size.
        out << report.labels[t] << ",0,," << report.edge_counts[t] << ',' << mode << ',' << q
            << '\n';
        for (std::size_t tau = 1; tau <= report.multi_step[t].size(); ++tau)
            out << report.labels[t] << ',' << tau << ',' << fmt12(report.multi_step[t][tau - 1])
                << ',' << report.edge_counts[t] << ',' << mode << ',' << q << '\n';
    }
}

void write_cliques_json(std::ostream& out, const FilteredGraph& fg, const CliqueSet& cliques,
                        const CliqueMetrics* metrics, const OutputMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["mode"] = mode_name(fg.mode);
    j["q"] = fg.q;
    j["n_connected"] = fg.connected_nodes.size();
    if (metrics) {
        j["metrics"] = {{"n_cliques", metrics->n_cliques},
                        {"max_clique", metrics->max_clique_size},
                        {"rel_cliques", metrics->relative_count},
                        {"rel_max", metrics->relative_max},
                        {"clustering", metrics->clustering}};
    }
    j["cliques"] = nlohmann::json::array();
    for (const auto& clique : cliques.cliques) {
        nlohmann::json symbols = nlohmann::json::array();
        for (const std::uint32_t v : clique) symbols.push_back(fg.symbols[v]);
        j["cliques"].push_back(std::move(symbols));
    }
    out << j.dump(2) << '\n';
}

void write_communities_json(std::ostream& out, const CommunityCover& cover, double q,
                            const std::vector<double>* purity, const OutputMeta& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["k"] = cover.k;
    j["q"] = q;
    j["communities"] = nlohmann::json::array();
    for (std::size_t id = 0; id < cover.communities.size(); ++id) {
        nlohmann::json community;
        community["id"] = id;
        community["symbols"] = nlohmann::json::array();
        for (const std::uint32_t v : cover.communities[id])
            community["symbols"].push_back(cover.symbols[v]);
        if (purity) community["purity"] = (*purity)[id];
        j["communities"].push_back(std::move(community));
    }
    j["overlaps"] = nlohmann::json::array();
    for (const auto& [node, ids] : overlap_report(cover).multi_members) {
        nlohmann::json overlap;
        overlap["symbol"] = cover.symbols[node];
        overlap["community_ids"] = ids;
        j["overlaps"].push_back(std::move(overlap));
    }
    out << j.dump(2) << '\n';
}

}  // namespace marketnet
