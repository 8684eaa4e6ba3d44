#include "evograph/discriminate.hpp"

#include <algorithm>

#include "evograph/diversify.hpp"
#include "evograph/errors.hpp"
#include "evograph/lexicon.hpp"
#include "evograph/serde.hpp"
#include "evograph/ted.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::vector<std::string> validate_mining_config(const MiningConfig& cfg) {
    std::vector<std::string> v;
    if (!(cfg.overlap_min < cfg.overlap_max)) {
        v.push_back("overlap_min must be < overlap_max");
    }
    if (cfg.ted_max < 0.0 || cfg.ted_max > 1.0) v.push_back("ted_max must be in [0, 1]");
    if (cfg.n_semantic < 0) v.push_back("n_semantic must be >= 0");
    if (cfg.n_evolving < 0) v.push_back("n_evolving must be >= 0");
    if (cfg.n_keep < 1) v.push_back("n_keep must be >= 1");
    if (cfg.n_keep > cfg.n_semantic + cfg.n_evolving) {
        v.push_back("n_keep must be <= n_semantic + n_evolving");
    }
    return v;
}

double word_overlap(std::string_view a, std::string_view b) {
    return token_jaccard(token_set(a), token_set(b));
}

DepTree build_dep_tree(std::string_view text, std::string_view trigger) {
    auto tokens = tokenize(text);
    DepTree root;
    if (tokens.empty()) {
        root.label = "";
        return root;
    }
    std::string folded_trigger = casefold(trigger);
    auto root_it = std::find(tokens.begin(), tokens.end(), folded_trigger);
    if (root_it == tokens.end()) root_it = tokens.begin();
    root.label = *root_it;
    tokens.erase(root_it);

    const auto& sw = stopwords();
    for (auto& token : tokens) {
        if (sw.count(token)) continue;
        root.children.push_back(DepTree{std::move(token), {}});
    }
    return root;
}

std::map<std::string, DepTree> load_parse_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::map<std::string, DepTree> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            out[j.at("id").get<std::string>()] = dep_tree_from_json(j.at("tree"));
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    return out;
}

SemanticPool SemanticPool::from_graphs(const std::vector<EvolvingGraph>& graphs,
                                       const std::map<std::string, DepTree>* parses) {
    SemanticPool pool;
    for (const auto& g : graphs) {
        for (const auto& node : g.nodes) {
            PoolEntry entry;
            entry.text = node.text;
            entry.graph_id = g.graph_id;
            entry.tokens = token_set(node.text);
            if (parses != nullptr) {
                auto it = parses->find(node.id);
                if (it != parses->end()) {
                    entry.tree = it->second;
                    pool.entries.push_back(std::move(entry));
                    continue;
                }
            }
            Event probe;
            probe.id = node.id;
            probe.text = node.text;
            entry.tree = build_dep_tree(node.text, extract_trigger(probe));
            pool.entries.push_back(std::move(entry));
        }
    }
    return pool;
}

std::vector<std::string> mine_semantic(const std::string& positive_text,
                                       const DepTree& positive_tree,
                                       const std::string& positive_graph_id,
                                       const SemanticPool& pool, const MiningConfig& cfg) {
    auto violations = validate_mining_config(cfg);
    if (!violations.empty()) throw InputError("mining config: " + violations.front());

    const auto positive_tokens = token_set(positive_text);
    const size_t positive_nodes = node_count(positive_tree);

    struct Scored {
        double nted;
        double overlap;
        const std::string* text;
    };
    std::vector<Scored> scored;
    for (const auto& entry : pool.entries) {
        if (entry.graph_id == positive_graph_id) continue;
        double ov = token_jaccard(positive_tokens, entry.tokens);
        if (ov < cfg.overlap_min || ov >= cfg.overlap_max) continue;
        // The cheap overlap band runs first; the tree distance only prices
        // the survivors.
        int ted = tree_edit_distance(positive_tree, entry.tree);
        double nted = static_cast<double>(ted) /
                      static_cast<double>(std::max(positive_nodes, node_count(entry.tree)));
        if (nted > cfg.ted_max) continue;
        scored.push_back({nted, ov, &entry.text});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.nted != b.nted) return a.nted < b.nted;
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        return *a.text < *b.text;
    });

    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& s : scored) {
        if (out.size() >= static_cast<size_t>(cfg.n_semantic)) break;
        if (!seen.insert(*s.text).second) continue;
        out.push_back(*s.text);
    }
    return out;
}

std::vector<std::string> mine_evolving(const std::string& positive_node_id,
                                       const EvolvingGraph& graph, const MiningConfig& cfg,
                                       SplitMix64& rng) {
    const GraphNode* positive = graph.find_node(positive_node_id);
    if (positive == nullptr) {
        throw NodeNotFoundError("node '" + positive_node_id + "' not in graph '" +
                                graph.graph_id + "'");
    }
    if (positive->direction == NodeDirection::Seed) {
        throw IsSeedError("evolving negatives need a non-seed positive node");
    }
    NodeDirection opposite_dir = positive->direction == NodeDirection::Forward
                                     ? NodeDirection::Backward
                                     : NodeDirection::Forward;
    std::vector<std::string> candidates;
    for (const auto& node : graph.nodes) {
        if (node.direction == opposite_dir) candidates.push_back(node.text);
    }
    return rng.sample(candidates, static_cast<size_t>(cfg.n_evolving));
}

std::string format_options(const std::vector<std::string>& options) {
    std::vector<std::string> lines;
    for (size_t i = 0; i < options.size(); ++i) {
        lines.push_back(std::string(1, static_cast<char>('A' + i)) + ". " + options[i]);
    }
    return join(lines, "\n");
}

InstructionDatum build_choice_datum(const DatumSource& src, const InstructionDatum& open_datum,
                                    const std::vector<std::string>& negatives,
                                    const TemplateStore& store, const MiningConfig& cfg,
                                    double include_text_prob, SplitMix64& rng) {
    auto violations = validate_mining_config(cfg);
    if (!violations.empty()) throw InputError("mining config: " + violations.front());
    if (!src.seed.caption.has_value()) {
        throw InputError("seed event '" + src.seed.id + "' has no caption");
    }

    const std::string folded_answer = casefold(trim(open_datum.answer));
    std::vector<std::string> usable;
    std::set<std::string> seen;
    for (const auto& neg : negatives) {
        std::string folded = casefold(trim(neg));
        if (folded == folded_answer) continue;
        if (!seen.insert(folded).second) continue;
        usable.push_back(neg);
    }
    if (usable.size() < static_cast<size_t>(cfg.n_keep)) {
        throw InsufficientNegativesError(
            "datum '" + open_datum.id + "': " + std::to_string(usable.size()) +
            " usable negatives, need " + std::to_string(cfg.n_keep));
    }

    std::vector<std::string> chosen = rng.sample(usable, static_cast<size_t>(cfg.n_keep));
    std::vector<std::string> options;
    options.push_back(open_datum.answer);
    for (auto& n : chosen) options.push_back(std::move(n));
    rng.shuffle(options);

    auto answer_it = std::find(options.begin(), options.end(), open_datum.answer);
    const int answer_index = static_cast<int>(answer_it - options.begin());

    const bool with_text = rng.next_double() < include_text_prob;
    const Template& tpl = store.select(src.relation, with_text, TaskFormat::Choice, rng);

    InstructionDatum d;
    d.id = hex64(hash_fields({src.graph_id, src.node_id, "choice"}));
    d.image = open_datum.image;
    d.question = render_template(
        tpl, *src.seed.caption,
        with_text ? std::optional<std::string_view>(src.seed.text) : std::nullopt,
        format_options(options));
    d.answer = open_datum.answer;
    d.relation = src.relation;
    d.task = TaskFormat::Choice;
    d.options = std::move(options);
    d.answer_index = answer_index;
    d.provenance = open_datum.provenance;
    return d;
}

} // namespace evograph
