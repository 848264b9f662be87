#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "marketnet/cliques.hpp"
#include "marketnet/communities.hpp"
#include "marketnet/dynamics.hpp"
#include "marketnet/graph.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/panel.hpp"
#include "marketnet/scan.hpp"

namespace marketnet {

// Provenance stamped on every output file: tool version, command, hash of the
// resolved configuration, and RNG facts when randomness is involved. CSV files
// carry it as a leading '#' line, GraphML as an XML comment, JSON as a "meta"
// object (strict JSON has no comments).
struct OutputMeta {
    std::string command;
    std::string config_hash;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> rng;
};

std::string meta_line(const OutputMeta& meta);  // without comment prefix

void write_panel_csv(std::ostream& out, const PricePanel& panel, const OutputMeta& meta);
void write_labels_csv(std::ostream& out, const std::map<std::string, std::string>& labels, const OutputMeta& meta);
void write_returns_csv(std::ostream& out, const PricePanel& panel, const ReturnMatrix& returns,
                       const OutputMeta& meta);

// Header row of symbols, then one row of 12-significant-digit values per symbol.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& symbols, const Matrix& m,
                      const OutputMeta& meta);

// Edge list "src,dst,distance".
void write_edges_csv(std::ostream& out, const FilteredGraph& fg, const OutputMeta& meta);
void write_tree_csv(std::ostream& out, const SpanningTree& tree, const OutputMeta& meta);

void write_graphml(std::ostream& out, const FilteredGraph& fg,
                   const std::map<std::string, std::string>& labels, const OutputMeta& meta);
void write_tree_graphml(std::ostream& out, const SpanningTree& tree,
                        const std::map<std::string, std::string>& labels, const OutputMeta& meta);

// "mode,q,n_connected,lcc,slcc,kappa,clustering" plus
// "n_cliques,max_clique,rel_cliques,rel_max" when the table carries cliques;
// rows without clique metrics leave those four fields empty.
void write_scan_csv(std::ostream& out, const ScanTable& table, const OutputMeta& meta);

// "t_label,tau,similarity,mode,q"; tau=0 rows carry |E(t)| in the similarity field.
void write_similarity_csv(std::ostream& out, const SimilarityReport& report, const OutputMeta& meta);

void write_cliques_json(std::ostream& out, const FilteredGraph& fg, const CliqueSet& cliques,
                        const CliqueMetrics* metrics, const OutputMeta& meta);

// {k, q, communities:[{id, symbols, purity?}], overlaps:[{symbol, community_ids}]}
void write_communities_json(std::ostream& out, const CommunityCover& cover, double q,
                            const std::vector<double>* purity, const OutputMeta& meta);

}  // namespace marketnet
