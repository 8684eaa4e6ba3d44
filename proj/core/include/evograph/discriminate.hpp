#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "evograph/datum.hpp"
#include "evograph/dep_tree.hpp"
#include "evograph/encapsulate.hpp"
#include "evograph/graph.hpp"
#include "evograph/rng.hpp"
#include "evograph/templates.hpp"

namespace evograph {

struct MiningConfig {
    double ted_max = 0.6;      // normalized tree edit distance ceiling
    double overlap_min = 0.2;  // word overlap band, inclusive low
    double overlap_max = 0.8;  // exclusive high; filters near-duplicates
    int n_semantic = 2;
    int n_evolving = 2;
    int n_keep = 2;            // negatives kept per choice datum
    uint64_t rng_seed = 0;
};

std::vector<std::string> validate_mining_config(const MiningConfig& cfg);

// Jaccard similarity of case-folded token sets. Two empty sets count as
// identical (1.0).
double word_overlap(std::string_view a, std::string_view b);

// Flat stand-in for a dependency parse: the trigger token is the root and
// every remaining non-stopword token is a leaf child in sentence order. When
// the trigger is not a token of the text the first token roots the tree.
DepTree build_dep_tree(std::string_view text, std::string_view trigger);

// Sidecar rows {"id", "tree": [label, [children...]]} keyed by event/node id.
std::map<std::string, DepTree> load_parse_sidecar(const std::filesystem::path& path);

// One pool entry per graph node; trees come from the sidecar when available,
// otherwise from build_dep_tree with a heuristic trigger.
struct PoolEntry {
    std::string text;
    std::string graph_id;
    std::set<std::string> tokens;
    DepTree tree;
};

struct SemanticPool {
    std::vector<PoolEntry> entries;

    static SemanticPool from_graphs(const std::vector<EvolvingGraph>& graphs,
                                    const std::map<std::string, DepTree>* parses = nullptr);
};

// Texts from other graphs that look like the positive: word overlap inside
// [overlap_min, overlap_max) and normalized tree edit distance <= ted_max,
// ranked by ascending distance, then descending overlap, then text. Entries
// from the positive's own graph never qualify.
std::vector<std::string> mine_semantic(const std::string& positive_text,
                                       const DepTree& positive_tree,
                                       const std::string& positive_graph_id,
                                       const SemanticPool& pool, const MiningConfig& cfg);

// Node texts sampled from the opposite-direction subtree of the same graph.
std::vector<std::string> mine_evolving(const std::string& positive_node_id,
                                       const EvolvingGraph& graph, const MiningConfig& cfg,
                                       SplitMix64& rng);

// Assembles the multiple-choice variant of an open datum: keeps n_keep mined
// negatives (never the answer text itself), shuffles them with the answer
// into options, and renders a choice template. Throws
// InsufficientNegativesError when fewer than n_keep usable negatives remain.
InstructionDatum build_choice_datum(const DatumSource& src, const InstructionDatum& open_datum,
                                    const std::vector<std::string>& negatives,
                                    const TemplateStore& store, const MiningConfig& cfg,
                                    double include_text_prob, SplitMix64& rng);

// "A. first\nB. second\n..." rendering used inside {options}.
std::string format_options(const std::vector<std::string>& options);

} // namespace evograph
